#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "frag/graphs.hpp"

namespace frag {

// A substitution (free-monoid endomorphism) given on letters, optionally
// with a reversing involution on the alphabet: iota(x1 ... xn) is defined
// as iota(xn) ... iota(x1), and compatibility means iota(tau(x)) = tau(iota(x))
// for every letter.
struct Substitution {
    std::vector<char> alphabet;
    std::map<char, std::string> rules;
    std::map<char, char> involution;  // empty when absent

    std::string apply(const std::string& w) const;
    std::string iterate(char seed, int n) const;
    std::string apply_involution(const std::string& w) const;
    void validate() const;  // totality, alphabet closure, involution laws
};

Substitution thue_morse();             // 0 -> 01, 1 -> 10
Substitution fragmented_thue_morse();  // 0 -> 0t1D1t0, 1 -> 1t0D0t1, D->C->B->D, t->t
Substitution mirror_substitution();    // u -> v, U -> V, v -> UV, V -> vu with u<->U, v<->V

// All length-n factors of the substitution subshift, saturated by iterating
// every letter until the factor set is stable under further substitution
// steps.  Throws std::invalid_argument when no letter grows.
std::set<std::string> factor_language(const Substitution& sub, int n);
int complexity(const Substitution& sub, int n);  // p(n)

struct PalindromeCensus {
    int max_length = 0;
    std::string witness;
};
// Longest palindromic factor of length <= up_to.
PalindromeCensus palindrome_census(const Substitution& sub, int up_to);

// Smallest window length such that every factor of that length contains
// every factor of length n.
int repetitivity(const Substitution& sub, int n);

// --- the shift model of the group action ------------------------------------

struct WindowExhausted : std::runtime_error {
    WindowExhausted() : std::runtime_error("shift window exhausted; widen the radius") {}
};

// A finite window of the bi-infinite piece-label word of an orbital chain.
// The origin is a vertex position between edges[origin-1] and edges[origin];
// generators move it across the adjacent edge whose label set contains them.
struct ShiftWindow {
    std::vector<std::set<std::string>> edges;
    int origin = 0;
};

// Piece labels of the chain edges around a regular root, origin at the root.
ShiftWindow encode_orbital_word(const SystemConfig& sys, const Point& root, int radius);

// One generator step: shift toward the side whose adjacent label set
// contains the generator, else stay.  Throws WindowExhausted at the border.
ShiftWindow shift_action(const ShiftWindow& w, const std::string& generator);

// Point is cofinal to none of the system's singular points.
bool is_regular(const SystemConfig& sys, const Point& p);

// Runs the same generator word through the shift model and through exact
// evaluation, comparing positions along the chain after every step.
CheckReport cross_check_models(const SystemConfig& sys, const Point& root,
                               const std::vector<std::string>& word);

}  // namespace frag

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frag/table.hpp"

namespace frag {

// A subgroup of (Z/2Z)^d given by generator bit vectors; bit i tells whether
// the generator acts as the underlying involution on piece i.
struct FragmentationSpec {
    int piece_count = 0;
    std::vector<std::uint64_t> vectors;

    // Parses vectors like {"110", "101"}; leftmost character is piece 0.
    static FragmentationSpec from_strings(const std::vector<std::string>& rows);
    std::vector<std::string> to_strings() const;
};

struct FragmentationReport {
    std::vector<bool> surjective;  // per piece: some element acts as the involution
    bool purely_non_hausdorff = false;
};

// Spans the subgroup over GF(2).  Purely non-Hausdorff iff every projection
// is surjective but no element acts as the involution on all pieces at once.
FragmentationReport check_fragmentation(const FragmentationSpec& spec);

// A singular point together with its germ group.  The germ names come in the
// Klein four-group order: germs[i] * germs[j] = germs[k] for {i,j,k} = {0,1,2},
// and vectors()[i] gives the piece vector of germs[i] (b -> 110, c -> 101,
// d -> 011 pattern).
struct SingularInfo {
    Point point;
    std::vector<std::string> germs;  // three non-identity germ generator names
    PieceClassifier classifier;
};

// The sequence of parities (sign on the level part, sign on the shifted
// part) of a locally-finite element along increasing splitting codes.
// Consecutive pairs follow the evolution (a, b) -> (a + b, a).
struct SignSequence {
    int start_index = -1;
    std::vector<std::array<int, 2>> pairs;
    bool follows_evolution() const;
};

struct CheckReport {
    bool ok = true;
    std::vector<std::string> lines;
    void pass(const std::string& line) { lines.push_back("ok: " + line); }
    void fail(const std::string& line) {
        ok = false;
        lines.push_back("FAIL: " + line);
    }
};

// A concrete group configuration: alphabet, tail machine, named generators,
// singular points with classifiers, and the germ fragmentation data.
struct SystemConfig {
    std::string name;
    Alphabet alphabet;
    MachinePtr machine;
    std::vector<std::string> generator_names;
    std::map<std::string, TableElement> generators;
    std::vector<SingularInfo> singular;
    FragmentationSpec fragmentation;  // piece vectors of the germ generators
    // Which generators agree pointwise with which dihedral involution.
    std::vector<std::string> side_a;
    std::vector<std::string> side_b;

    const TableElement& generator(const std::string& n) const;
    bool is_generator(const std::string& n) const { return generators.count(n) != 0; }
    TableElement identity() const { return TableElement::identity(machine); }
    // Resolves generator names plus, for the golden-mean system, the indexed
    // family a3, b3, ..., built on demand from the prefix recursion.
    TableElement element(const std::string& n) const;

    // Documented probe set for fingerprint cross-checks: every word of
    // bounded weight continued by a small set of separating tails.
    std::vector<Point> default_probes() const;
};

// The golden-mean system: alphabet {1:1, 2:2}, twelve involutions
// a0..d0, a1..d1, a2..d2, singular points (12)^w, 1(12)^w, 2(12)^w.
SystemConfig golden_mean_system();

// The Grigorchuk system over the binary Gray-code action: generators
// a, b1, b2, b3, singular point 1^w.
SystemConfig grigorchuk_system();

// Image of a point under the plain (unfragmented) dihedral involution
// 'a' or 'b' of the system.
Point dihedral_image(const SystemConfig& sys, char which, const Point& p);

// The element of the topological full group permuting the cylinders of a
// prefix code: cells of `domain` map through `perm` (a bijection preserving
// weight), everything outside is fixed.  Throws on weight mismatch.
TableElement level_permutation(const SystemConfig& sys, const std::vector<Word>& domain,
                               const std::map<Word, Word>& perm);

// The copy of the index-0 generator of the given letter (a, b, c or d)
// supported on the cylinder v: x_v(v u) = v x0(u), identity elsewhere.
TableElement x_conjugate(const SystemConfig& sys, char letter, const Word& v);

// Alias x_n for n >= 0: x_{3k} = x over (12)^k, x_{3k+1} over 1(12)^k,
// x_{3k+2} over 2(12)^k; agrees with the named generators for n <= 2.
TableElement x_indexed(const SystemConfig& sys, char letter, int n);
Word x_alias_word(int n);

// Left and right endpoints of the recursive golden-mean chains:
// left: (12)^{n/3} | 1(12)^{(n-1)/3} | 2(12)^{(n-2)/3},
// right: (21)^{n/3} | 1(21)^{(n-1)/3} | 11(21)^{(n-2)/3} by n mod 3.
Word chain_left_end(int n);
Word chain_right_end(int n);

// Verifies the defining relations of the golden-mean family as canonical
// equalities: b_n = a_n c_{n+3}, c_n = a_n d_{n+3}, d_n = b_{n+3} for
// n = 0..5, the two-step expansions b_i = a_i a_{i+3} d_{i+6},
// c_i = a_i b_{i+6}, d_i = a_{i+3} c_{i+6} for i = 0..2, and the matching of
// a_0, a_1, a_2 with level transpositions.
CheckReport relation_suite(const SystemConfig& sys);

// Tries to realize g as a rigid permutation of the splitting code
// level(i) + level(i-1).2; nullopt with the obstructing cell on failure.
std::optional<std::map<Word, Word>> level_map(const SystemConfig& sys,
                                              const TableElement& g, int level,
                                              Word* obstruction = nullptr);

// Parity pairs of g on splitting codes from the smallest representable
// level up to max_level.  Throws std::invalid_argument when g is not
// representable at any level <= max_level.
SignSequence sign_sequence(const SystemConfig& sys, const TableElement& g, int max_level);

// Checks the decomposition y_i = h a_{n-3} d_n with h rigid on the
// splitting code of level n-4, selecting y by the residue of n - i mod 9
// (6 -> b, 3 -> c, 0 -> d); reports the assignment that verified.
CheckReport deep_action_check(const SystemConfig& sys, int n);

// Conjugates the 3-cycle generators of the alternating part over
// level(n-2).2 by y_{i'} (i' = i+1 mod 3) and checks each image equals the
// level permutation with the left-end cell replaced by the right-end one.
CheckReport conjugation_identity_check(const SystemConfig& sys, int n);

}  // namespace frag

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frag/words.hpp"

namespace frag {

// A finite asynchronous transducer whose accepting states form a finite
// group (the germ states).  Transient states are allowed but must resolve
// into a germ state within resolution_depth input letters.  Transducers
// here are weight-preserving: every transition emits output of the same
// weight as the input it consumes.
//
// State 0 is always the identity germ, which copies its input verbatim.
struct TailMachine {
    struct Transition {
        Word in;    // nonempty, inputs of one state form a complete prefix code
        Word out;   // same weight as `in`
        int next;   // target state index
    };

    std::string name;
    Alphabet alphabet;
    std::vector<std::string> state_names;  // germ states first, index 0 = identity
    int germ_count = 0;
    std::vector<std::vector<Transition>> transitions;  // indexed by state
    std::vector<std::vector<int>> product;  // germ group law: product[g][h] = g*h (h first)
    std::vector<int> inverse;               // germ inverses
    // Bound on the input consumed by one resolved step: a transition chain
    // that ends in a germ state.
    int resolution_depth = 0;

    bool is_germ(int s) const { return s >= 0 && s < germ_count; }
    int state_index(const std::string& n) const;  // -1 when absent
    int mul(int g, int h) const { return product[g][h]; }
    int inv(int g) const { return inverse[g]; }

    // Checks: state 0 is the identity, the germ product table is a group,
    // inputs per state are complete prefix codes, weights are preserved,
    // and every state resolves on every input of length resolution_depth.
    void validate() const;

    // One-step expansion of a germ state with all transient states resolved
    // away: a complete input code with germ tails.  Cached after first use.
    const std::vector<Transition>& resolution_code(int germ) const;

  private:
    mutable std::vector<std::vector<Transition>> resolution_cache_;
};

using MachinePtr = std::shared_ptr<const TailMachine>;

// Result of running a machine over a finite word: the full output and the
// state reached after consuming the final letter.
struct Resolved {
    Word out;
    int state;
};

// Runs the transducer over the whole word.  Returns nullopt (NeedMoreInput)
// when the word ends in the middle of a transition or on a transient state.
// Throws std::runtime_error if no transition applies and none could with
// more input (a malformed machine).
std::optional<Resolved> restrict_run(const TailMachine& m, int state, const Word& word);

// Runs a transducer over an eventually periodic input stream until the
// (state, phase) pair repeats, producing the exact eventually periodic
// output.  `step` consumes letters at `pos` of the stream and returns the
// emitted output and next state; it sees the stream only through `at`.
// Used for machine evaluation and for the plain dihedral actions.
struct StreamStep {
    size_t consumed;
    Word out;
    int state;
};
Point run_on_point(const Point& input, int start_state,
                   const std::function<StreamStep(int state, size_t pos)>& step);

}  // namespace frag

#pragma once

// Independent rule-based evaluator used as a test oracle.  Each generator is
// a small rewriting rule applied to the front of a letter stream: match a
// short prefix, emit its image, continue with a (possibly different) rule on
// the rest.  This transcribes the defining one-step recursions directly and
// shares no code with the table/transducer engine it cross-checks.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "frag/words.hpp"

namespace oracle {

struct Rule {
    std::string match;
    std::string emit;
    std::string next;
};

using RuleSet = std::map<std::string, std::vector<Rule>>;

inline const RuleSet& golden_rules() {
    static const RuleSet rules = {
        {"id", {{"1", "1", "id"}, {"2", "2", "id"}}},
        {"a0", {{"11", "2", "id"}, {"12", "12", "id"}, {"2", "11", "id"}}},
        {"b0", {{"11", "2", "id"}, {"12", "12", "c0"}, {"2", "11", "id"}}},
        {"c0", {{"11", "2", "id"}, {"12", "12", "d0"}, {"2", "11", "id"}}},
        {"d0", {{"11", "11", "id"}, {"12", "12", "b0"}, {"2", "2", "id"}}},
        {"a1", {{"1", "1", "a0"}, {"2", "2", "id"}}},
        {"b1", {{"1", "1", "b0"}, {"2", "2", "id"}}},
        {"c1", {{"1", "1", "c0"}, {"2", "2", "id"}}},
        {"d1", {{"1", "1", "d0"}, {"2", "2", "id"}}},
        {"a2", {{"1", "1", "id"}, {"2", "2", "a0"}}},
        {"b2", {{"1", "1", "id"}, {"2", "2", "b0"}}},
        {"c2", {{"1", "1", "id"}, {"2", "2", "c0"}}},
        {"d2", {{"1", "1", "id"}, {"2", "2", "d0"}}},
        // Plain dihedral involutions.
        {"a", {{"1", "1", "b"}, {"2", "2", "b"}}},
        {"b", {{"11", "2", "id"}, {"12", "12", "b"}, {"2", "11", "id"}}},
    };
    return rules;
}

inline const RuleSet& grigorchuk_rules() {
    static const RuleSet rules = {
        {"id", {{"0", "0", "id"}, {"1", "1", "id"}}},
        {"a", {{"0", "1", "id"}, {"1", "0", "id"}}},
        {"b1", {{"0", "0", "a"}, {"1", "1", "b2"}}},
        {"b2", {{"0", "0", "a"}, {"1", "1", "b3"}}},
        {"b3", {{"0", "0", "id"}, {"1", "1", "b1"}}},
        {"b", {{"0", "0", "a"}, {"1", "1", "b"}}},
    };
    return rules;
}

// Applies one named rule to a finite prefix of a stream.  Output may be a
// little shorter than the input when the final letters do not complete a
// rule match; that truncation is bounded by the longest match length.
inline std::string apply(const RuleSet& rules, const std::string& gen,
                         const std::string& input) {
    auto it = rules.find(gen);
    if (it == rules.end()) throw std::invalid_argument("oracle: unknown rule " + gen);
    const std::vector<Rule>* state = &it->second;
    std::string out;
    size_t pos = 0;
    while (pos < input.size()) {
        const Rule* hit = nullptr;
        for (const Rule& r : *state)
            if (input.compare(pos, r.match.size(), r.match) == 0 &&
                pos + r.match.size() <= input.size()) {
                hit = &r;
                break;
            }
        if (!hit) break;  // incomplete match at the end of the prefix
        out += hit->emit;
        pos += hit->match.size();
        state = &rules.at(hit->next);
    }
    return out;
}

// Image of a point under a word of generators (leftmost applied last, the
// usual left-action convention), computed on a long expansion.
inline std::string apply_word(const RuleSet& rules, const std::vector<std::string>& word,
                              const frag::Point& p, size_t depth) {
    std::string s = p.prefix(depth);
    for (auto it = word.rbegin(); it != word.rend(); ++it) s = apply(rules, *it, s);
    return s;
}

// Compares an eventually periodic point against an oracle output prefix.
inline bool matches(const frag::Point& p, const std::string& prefix) {
    for (size_t i = 0; i < prefix.size(); ++i)
        if (p.at(i) != prefix[i]) return false;
    return true;
}

}  // namespace oracle

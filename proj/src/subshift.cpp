#include "frag/subshift.hpp"

#include <algorithm>

namespace frag {

std::string Substitution::apply(const std::string& w) const {
    std::string out;
    for (char x : w) {
        auto it = rules.find(x);
        if (it == rules.end())
            throw std::invalid_argument(std::string("substitution: no rule for ") + x);
        out += it->second;
    }
    return out;
}

std::string Substitution::iterate(char seed, int n) const {
    std::string w(1, seed);
    for (int k = 0; k < n; ++k) w = apply(w);
    return w;
}

std::string Substitution::apply_involution(const std::string& w) const {
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto m = involution.find(*it);
        if (m == involution.end())
            throw std::invalid_argument("substitution: involution undefined");
        out += m->second;
    }
    return out;
}

void Substitution::validate() const {
    std::set<char> letters(alphabet.begin(), alphabet.end());
    if (letters.size() != alphabet.size() || letters.empty())
        throw std::invalid_argument("substitution: bad alphabet");
    for (char x : alphabet) {
        auto it = rules.find(x);
        if (it == rules.end() || it->second.empty())
            throw std::invalid_argument(std::string("substitution: missing rule for ") + x);
        for (char y : it->second)
            if (!letters.count(y))
                throw std::invalid_argument("substitution: rule leaves the alphabet");
    }
    if (!involution.empty()) {
        for (char x : alphabet) {
            auto it = involution.find(x);
            if (it == involution.end() || involution.at(it->second) != x)
                throw std::invalid_argument("substitution: involution is not an involution");
            // Reversing compatibility on letters.
            if (apply_involution(rules.at(x)) != rules.at(it->second))
                throw std::invalid_argument(
                    "substitution: involution does not commute with the rules");
        }
    }
}

Substitution thue_morse() {
    Substitution s{{'0', '1'}, {{'0', "01"}, {'1', "10"}}, {}};
    s.validate();
    return s;
}

Substitution fragmented_thue_morse() {
    Substitution s{{'0', '1', 't', 'B', 'C', 'D'},
                   {{'0', "0t1D1t0"},
                    {'1', "1t0D0t1"},
                    {'D', "C"},
                    {'C', "B"},
                    {'B', "D"},
                    {'t', "t"}},
                   {}};
    s.validate();
    return s;
}

Substitution mirror_substitution() {
    Substitution s{{'u', 'U', 'v', 'V'},
                   {{'u', "v"}, {'U', "V"}, {'v', "UV"}, {'V', "vu"}},
                   {{'u', 'U'}, {'U', 'u'}, {'v', 'V'}, {'V', 'v'}}};
    s.validate();
    return s;
}

std::set<std::string> factor_language(const Substitution& sub, int n) {
    if (n < 1) throw std::invalid_argument("factor_language: n must be >= 1");
    std::map<char, std::string> words;
    for (char x : sub.alphabet) words[x] = std::string(1, x);

    std::set<std::string> factors, prev;
    size_t longest = 0;
    for (int step = 0; step < 64; ++step) {
        for (auto& [x, w] : words) {
            for (size_t i = 0; i + n <= w.size(); ++i) factors.insert(w.substr(i, n));
            longest = std::max(longest, w.size());
        }
        if (factors == prev && !factors.empty() &&
            longest >= static_cast<size_t>(4 * n))
            return factors;
        if (longest > (size_t(1) << 24))
            throw std::runtime_error("factor_language: length budget exceeded before"
                                     " the factor set stabilized");
        prev = factors;
        for (auto& [x, w] : words) w = sub.apply(w);
    }
    throw std::invalid_argument("factor_language: substitution does not grow");
}

int complexity(const Substitution& sub, int n) {
    return static_cast<int>(factor_language(sub, n).size());
}

PalindromeCensus palindrome_census(const Substitution& sub, int up_to) {
    if (up_to < 1) throw std::invalid_argument("palindrome_census: up_to must be >= 1");
    // Every shorter factor is a subword of a length-up_to factor.
    std::set<std::string> pool = factor_language(sub, up_to);
    PalindromeCensus census;
    std::set<std::string> seen;
    for (const std::string& f : pool)
        for (int len = up_to; len > census.max_length; --len)
            for (size_t i = 0; i + len <= f.size(); ++i) {
                std::string w = f.substr(i, len);
                if (!seen.insert(w).second) continue;
                std::string r(w.rbegin(), w.rend());
                if (w == r && len > census.max_length) {
                    census.max_length = len;
                    census.witness = w;
                }
            }
    return census;
}

int repetitivity(const Substitution& sub, int n) {
    std::set<std::string> targets = factor_language(sub, n);
    auto window_works = [&](int len) {
        for (const std::string& w : factor_language(sub, len))
            for (const std::string& t : targets)
                if (w.find(t) == std::string::npos) return false;
        return true;
    };
    // Counting lower bound: a window of length L has L - n + 1 subwords of
    // length n, so L >= n + p(n) - 1.
    int lo = n + static_cast<int>(targets.size()) - 1;
    int hi = lo;
    while (!window_works(hi)) {
        if (hi > 512 * n) throw std::runtime_error("repetitivity: no bound found");
        lo = hi + 1;
        hi *= 2;
    }
    // Monotone in the window length: binary search the threshold.
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (window_works(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// --- shift model ---------------------------------------------------------------

bool is_regular(const SystemConfig& sys, const Point& p) {
    for (const auto& info : sys.singular) {
        const std::string& q = info.point.period();
        for (size_t k = 0; k < q.size(); ++k)
            if (p.period() == q.substr(k) + q.substr(0, k)) return false;
    }
    return true;
}

ShiftWindow encode_orbital_word(const SystemConfig& sys, const Point& root, int radius) {
    if (!is_regular(sys, root))
        throw std::invalid_argument("encode_orbital_word: singular root " + root.str());
    auto chain = as_chain(orbital_ball(sys, root, radius));
    if (!chain) throw std::logic_error("encode_orbital_word: orbit ball is not a chain");
    return {chain->labels, chain->root_pos};
}

ShiftWindow shift_action(const ShiftWindow& w, const std::string& generator) {
    if (w.origin <= 0 || w.origin >= static_cast<int>(w.edges.size()))
        throw WindowExhausted();
    ShiftWindow next = w;
    if (w.edges[w.origin].count(generator))
        ++next.origin;
    else if (w.edges[w.origin - 1].count(generator))
        --next.origin;
    return next;
}

CheckReport cross_check_models(const SystemConfig& sys, const Point& root,
                               const std::vector<std::string>& word) {
    CheckReport rep;
    int radius = static_cast<int>(word.size()) + 2;
    auto chain = as_chain(orbital_ball(sys, root, radius));
    if (!chain || !is_regular(sys, root)) {
        rep.fail("cross_check_models: root must be regular with a chain ball");
        return rep;
    }
    ShiftWindow window{chain->labels, chain->root_pos};
    Point p = root;
    for (size_t step = 0; step < word.size(); ++step) {
        window = shift_action(window, word[step]);
        p = evaluate(sys.generator(word[step]), p);
        auto at = std::find(chain->vertices.begin(), chain->vertices.end(), p);
        int pos = static_cast<int>(at - chain->vertices.begin());
        if (at == chain->vertices.end() || pos != window.origin) {
            rep.fail("divergence at step " + std::to_string(step) + " (" + word[step] +
                     "): point " + p.str() + " vs window origin " +
                     std::to_string(window.origin));
            return rep;
        }
    }
    rep.pass("trajectory of " + std::to_string(word.size()) +
             " generators matches the shift model");
    return rep;
}

}  // namespace frag

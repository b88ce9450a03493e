#include "frag/words.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace frag {

int Alphabet::weight(Letter x) const {
    auto it = weights.find(x);
    if (it == weights.end())
        throw std::invalid_argument(std::string("letter not in alphabet: ") + x);
    return it->second;
}

int Alphabet::weight(const Word& w) const {
    int total = 0;
    for (Letter x : w) total += weight(x);
    return total;
}

void Alphabet::validate() const {
    if (letters.empty()) throw std::invalid_argument("empty alphabet");
    std::set<Letter> seen;
    for (Letter x : letters) {
        if (!seen.insert(x).second)
            throw std::invalid_argument(std::string("duplicate letter: ") + x);
        if (weight(x) < 1) throw std::invalid_argument("letter weight must be >= 1");
    }
    if (weights.size() != letters.size())
        throw std::invalid_argument("weights do not match letters");
}

Alphabet golden_mean_alphabet() {
    return Alphabet{{'1', '2'}, {{'1', 1}, {'2', 2}}};
}

Alphabet binary_alphabet() {
    return Alphabet{{'0', '1'}, {{'0', 1}, {'1', 1}}};
}

static bool length_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::vector<Word> level_set(const Alphabet& alphabet, int n) {
    if (n < 0) throw std::invalid_argument("level_set: negative weight");
    // levels[k] = all words of weight k, built by appending one letter to a
    // lighter level.
    std::vector<std::vector<Word>> levels(n + 1);
    levels[0] = {Word()};
    for (int k = 1; k <= n; ++k) {
        for (Letter x : alphabet.letters) {
            int w = alphabet.weight(x);
            if (w > k) continue;
            for (const Word& u : levels[k - w]) levels[k].push_back(u + x);
        }
        std::sort(levels[k].begin(), levels[k].end(), length_lex_less);
    }
    return levels[n];
}

// --- Point ----------------------------------------------------------------

static std::string primitive_root(const std::string& w) {
    // Smallest d dividing |w| with w = root^k.
    for (size_t d = 1; d <= w.size(); ++d) {
        if (w.size() % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < w.size() && ok; ++i)
            if (w[i] != w[i - d]) ok = false;
        if (ok) return w.substr(0, d);
    }
    return w;
}

Point::Point(std::string preperiod, std::string period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw std::invalid_argument("Point: empty period");
    per_ = primitive_root(per_);
    // Absorb trailing preperiod letters that match the rotated period:
    // u.x (r.x)^inf == u (x.r)^inf.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        per_ = per_.back() + per_.substr(0, per_.size() - 1);
    }
}

Letter Point::at(size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
}

std::string Point::prefix(size_t n) const {
    std::string out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

Point Point::after(size_t n) const {
    if (n <= pre_.size()) return Point(pre_.substr(n), per_);
    size_t k = (n - pre_.size()) % per_.size();
    return Point("", per_.substr(k) + per_.substr(0, k));
}

std::string Point::str() const { return pre_ + "(" + per_ + ")"; }

Point Point::parse(const std::string& text) {
    auto open = text.find('(');
    auto close = text.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        close + 1 != text.size())
        throw std::invalid_argument("Point::parse: expected \"pre(period)\", got " + text);
    return Point(text.substr(0, open), text.substr(open + 1, close - open - 1));
}

bool Point::operator<(const Point& other) const {
    if (pre_ != other.pre_) return pre_ < other.pre_;
    return per_ < other.per_;
}

// --- prefix codes ----------------------------------------------------------

bool pairwise_incomparable(const std::vector<Word>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = 0; j < cells.size(); ++j) {
            if (i == j) continue;
            if (cells[i].size() <= cells[j].size() &&
                cells[j].compare(0, cells[i].size(), cells[i]) == 0)
                return false;
        }
    return true;
}

namespace {
struct TrieNode {
    std::map<Letter, TrieNode> children;
    bool cell = false;
};

bool covers(const TrieNode& node, const Alphabet& alphabet) {
    if (node.cell) return node.children.empty();
    if (node.children.size() != alphabet.letters.size()) return false;
    for (const auto& [x, child] : node.children)
        if (!covers(child, alphabet)) return false;
    return true;
}
}  // namespace

bool code_is_complete(const Alphabet& alphabet, const std::vector<Word>& cells) {
    if (cells.empty()) return false;
    TrieNode root;
    for (const Word& w : cells) {
        TrieNode* node = &root;
        for (Letter x : w) {
            if (!alphabet.contains(x)) return false;
            node = &node->children[x];
        }
        if (node->cell) return false;  // duplicate cell
        node->cell = true;
    }
    return covers(root, alphabet);
}

PrefixCode splitting_code(int n) {
    if (n < 1) throw std::invalid_argument("splitting_code: n must be >= 1");
    Alphabet gm = golden_mean_alphabet();
    PrefixCode code;
    code.cells = level_set(gm, n);
    for (const Word& u : level_set(gm, n - 1)) code.cells.push_back(u + '2');
    std::sort(code.cells.begin(), code.cells.end(), length_lex_less);
    code.complete = code_is_complete(gm, code.cells);
    if (!code.complete)
        throw std::logic_error("splitting_code: completeness check failed");
    return code;
}

bool is_complete(const Alphabet& alphabet, const PrefixCode& code, int depth,
                 Word* offending) {
    size_t max_len = 0;
    for (const Word& w : code.cells) max_len = std::max(max_len, w.size());
    if (static_cast<size_t>(depth) < max_len)
        throw std::invalid_argument("is_complete: depth below max cell length");

    // DFS over all words of the given length, counting cell prefixes.
    std::string word(depth, alphabet.letters[0]);
    std::vector<size_t> idx(depth, 0);
    while (true) {
        int hits = 0;
        for (const Word& c : code.cells)
            if (c.size() <= word.size() && word.compare(0, c.size(), c) == 0) ++hits;
        if (hits != 1) {
            if (offending) *offending = word;
            return false;
        }
        int pos = depth - 1;
        while (pos >= 0 && idx[pos] + 1 == alphabet.letters.size()) {
            idx[pos] = 0;
            word[pos] = alphabet.letters[0];
            --pos;
        }
        if (pos < 0) break;
        ++idx[pos];
        word[pos] = alphabet.letters[idx[pos]];
    }
    return true;
}

// --- classifiers -----------------------------------------------------------

std::optional<int> classify_piece(const Point& p, const PieceClassifier& c) {
    if (c.pattern.empty() || c.modulus < 1)
        throw std::invalid_argument("classify_piece: bad classifier");
    for (size_t i = 0; i < c.prefix.size(); ++i)
        if (p.at(i) != c.prefix[i])
            throw std::invalid_argument("classify_piece: point outside classifier prefix " +
                                        c.prefix);
    // Singular iff the tail is exactly pattern^infinity.
    if (p.after(c.prefix.size()) == Point("", c.pattern)) return std::nullopt;
    size_t pos = c.prefix.size();
    int count = 0;
    while (true) {
        bool match = true;
        for (size_t i = 0; i < c.pattern.size(); ++i)
            if (p.at(pos + i) != c.pattern[i]) {
                match = false;
                break;
            }
        if (!match) break;
        pos += c.pattern.size();
        ++count;
    }
    if (!c.terminals.empty()) {
        bool hit = false;
        for (const Word& t : c.terminals) {
            bool match = true;
            for (size_t i = 0; i < t.size() && match; ++i)
                if (p.at(pos + i) != t[i]) match = false;
            hit = hit || match;
        }
        if (!hit)
            throw std::logic_error("classify_piece: no terminal pattern after " +
                                   std::to_string(count) + " repetitions");
    }
    return count % c.modulus;
}

}  // namespace frag

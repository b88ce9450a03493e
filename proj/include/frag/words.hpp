#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frag {

// Letters are single characters; words are plain strings over an alphabet.
using Letter = char;
using Word = std::string;

// A finite ordered alphabet with a positive integer weight per letter.
// The golden-mean alphabet is {1, 2} with weights 1 and 2; level sets of
// constant weight then have Fibonacci sizes.  Unweighted alphabets use
// weight 1 everywhere.
struct Alphabet {
    std::vector<Letter> letters;
    std::map<Letter, int> weights;

    bool contains(Letter x) const { return weights.count(x) != 0; }
    int weight(Letter x) const;
    int weight(const Word& w) const;
    void validate() const;  // throws std::invalid_argument on a bad alphabet

    bool operator==(const Alphabet&) const = default;
};

Alphabet golden_mean_alphabet();  // {1:1, 2:2}
Alphabet binary_alphabet();       // {0:1, 1:1}

// All words of the given weight, sorted by (length, lex).  Follows the
// recursion  level(n) = union over letters x of level(n - weight(x)) . x.
std::vector<Word> level_set(const Alphabet& alphabet, int n);

// An eventually periodic one-sided infinite sequence, stored in canonical
// form: the period is primitive (not a proper power of a shorter word) and
// the preperiod is as short as possible (any trailing letters that agree
// with the rotated period are absorbed into it).  Two Points are equal iff
// their canonical forms coincide, which makes equality decidable and makes
// Points usable as map keys.
class Point {
  public:
    Point() = default;
    Point(std::string preperiod, std::string period);

    const std::string& preperiod() const { return pre_; }
    const std::string& period() const { return per_; }

    Letter at(size_t i) const;
    std::string prefix(size_t n) const;
    // Drops the first n letters and re-canonicalizes.
    Point after(size_t n) const;

    // "preperiod(period)", e.g. "2(12)" for 2 12 12 12 ...
    std::string str() const;
    static Point parse(const std::string& text);

    bool operator==(const Point&) const = default;
    bool operator<(const Point& other) const;

  private:
    std::string pre_;
    std::string per_ = "?";
};

// A finite set of pairwise incomparable words (no cell is a prefix of
// another).  When `complete` is set, every infinite sequence has exactly
// one cell as a prefix.
struct PrefixCode {
    std::vector<Word> cells;  // sorted by (length, lex)
    bool complete = false;
};

// True iff no cell is a prefix of another.
bool pairwise_incomparable(const std::vector<Word>& cells);

// Exact completeness test via the letter trie: the code is complete iff
// every node above a cell has all letters present and every maximal path
// ends in exactly one cell.
bool code_is_complete(const Alphabet& alphabet, const std::vector<Word>& cells);

// Builds the splitting code  level(n) + level(n-1).2  over the golden-mean
// alphabet and verifies completeness constructively.
PrefixCode splitting_code(int n);

// Brute-force completeness check: every word of the given length has
// exactly one cell as a prefix.  `offending`, when non-null, receives a
// witness on failure.  Requires depth >= max cell length.
bool is_complete(const Alphabet& alphabet, const PrefixCode& code, int depth,
                 Word* offending = nullptr);

// Classifies points into the pieces of a fragmentation: count how many
// times `pattern` repeats at the front (after the fixed `prefix`), reduce
// the count mod `modulus`.  The accumulation point prefix.pattern^infinity
// is the unique input classified as singular.
struct PieceClassifier {
    Word prefix;   // "" for the golden-mean b-side classifier
    Word pattern;  // "12" for golden-mean, "1" for the binary Gray-code side
    std::vector<Word> terminals;  // what follows the maximal pattern power
    int modulus = 3;
};

// nullopt means the point is the singular accumulation point of the
// classifier.  Throws std::invalid_argument if the point does not start
// with the classifier's fixed prefix.
std::optional<int> classify_piece(const Point& p, const PieceClassifier& c);

}  // namespace frag

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "frag/systems.hpp"

namespace frag {

// Inverted orbit of a generator word g1 g2 ... gn at a base point: the set
// of prefix images {g1(p), g1 g2(p), ..., g1...gn(p)}, together with the
// first returns (i, j): the segment g_{i+1}...g_j fixes the base with no
// earlier return in between.  Their count always equals n - |orbit|.
struct InvertedOrbitReport {
    Point base;
    std::vector<std::string> word;
    std::set<Point> orbit;
    std::vector<std::pair<int, int>> first_returns;  // 1 <= i < j <= n
};
InvertedOrbitReport inverted_orbit(const SystemConfig& sys, const Point& base,
                                   const std::vector<std::string>& word);

// Exact maximum of |inverted orbit| over all generator words of length n,
// computed by dynamic programming over reachable orbit sets (extending
// words on the left transforms the orbit set by one evaluation per point).
// An empty generator list means the full generating set.
int nu_exact(const SystemConfig& sys, const Point& base, int n,
             const std::vector<std::string>& generators = {});
inline constexpr int kNuExactBound = 12;

// Lower bound for the maximum: best of `samples` random words.
int nu_sampled(const SystemConfig& sys, const Point& base, int n, int samples,
               std::uint64_t seed, const std::vector<std::string>& generators = {});

// Cumulative ball sizes of the group: sizes[r] counts the distinct canonical
// elements expressible as products of at most r generators.
struct GrowthTable {
    std::vector<long long> sizes;
    bool complete = true;  // false when the element budget stopped the walk
};
GrowthTable growth_ball(const SystemConfig& sys, const std::vector<std::string>& generators,
                        int radius, int jobs = 1, std::size_t element_budget = 4'000'000);

// The ball itself: every distinct canonical element of word length <= radius.
std::vector<TableElement> ball_elements(const SystemConfig& sys,
                                        const std::vector<std::string>& generators,
                                        int radius);

// Numeric realization of the golden-mean coding: folds the contractions
// x -> x/phi (letter 1) and x -> 1 - x/phi^2 (letter 2) over the first
// `iterations` letters of the point.  `width` brackets the fixed point.
struct KappaResult {
    double value = 0;
    double width = 1;
};
KappaResult kappa_numeric(const Point& p, int iterations);

// Distance on the circle R/Z.
double circle_distance(double x, double y);

inline constexpr std::uint64_t kDefaultSeed = 20240917;

}  // namespace frag

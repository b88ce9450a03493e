#include "frag/growth.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace frag {

InvertedOrbitReport inverted_orbit(const SystemConfig& sys, const Point& base,
                                   const std::vector<std::string>& word) {
    InvertedOrbitReport report;
    report.base = base;
    report.word = word;
    int n = static_cast<int>(word.size());
    std::vector<Point> prefix_images;  // prefix_images[k-1] = g1...gk(base)
    for (int k = 1; k <= n; ++k) {
        Point p = base;
        for (int j = k - 1; j >= 0; --j) p = evaluate(sys.generator(word[j]), p);
        prefix_images.push_back(p);
        report.orbit.insert(p);
    }
    // (i, j) is a first return iff the i-th and j-th prefix images coincide
    // with no equal image in between.
    std::map<Point, int> last_seen;
    for (int k = 1; k <= n; ++k) {
        auto [it, fresh] = last_seen.try_emplace(prefix_images[k - 1], k);
        if (!fresh) {
            report.first_returns.emplace_back(it->second, k);
            it->second = k;
        }
    }
    return report;
}

namespace {

std::vector<std::string> pick_generators(const SystemConfig& sys,
                                         const std::vector<std::string>& generators) {
    if (generators.empty()) return sys.generator_names;
    for (const auto& g : generators) sys.generator(g);  // validate names
    return generators;
}

std::string orbit_key(const std::set<Point>& orbit) {
    std::string key;
    for (const Point& p : orbit) {
        key += p.str();
        key += ' ';
    }
    return key;
}

}  // namespace

int nu_exact(const SystemConfig& sys, const Point& base, int n,
             const std::vector<std::string>& generators) {
    if (n < 0) throw std::invalid_argument("nu_exact: negative length");
    if (n > kNuExactBound)
        throw std::invalid_argument("nu_exact: n exceeds the exact bound " +
                                    std::to_string(kNuExactBound) + "; use nu_sampled");
    std::vector<std::string> gens = pick_generators(sys, generators);
    std::vector<const TableElement*> els;
    for (const auto& g : gens) els.push_back(&sys.generator(g));

    // States are orbit sets; prepending a generator g maps the orbit O of a
    // word w to {g(base)} + g(O), the orbit of g w.
    std::unordered_map<std::string, int> memo;
    auto rec = [&](auto&& self, const std::set<Point>& orbit, int remaining) -> int {
        if (remaining == 0) return static_cast<int>(orbit.size());
        std::string key = std::to_string(remaining) + '|' + orbit_key(orbit);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int best = 0;
        for (const TableElement* g : els) {
            std::set<Point> next;
            next.insert(evaluate(*g, base));
            for (const Point& p : orbit) next.insert(evaluate(*g, p));
            best = std::max(best, self(self, next, remaining - 1));
        }
        memo[key] = best;
        return best;
    };
    return rec(rec, {}, n);
}

int nu_sampled(const SystemConfig& sys, const Point& base, int n, int samples,
               std::uint64_t seed, const std::vector<std::string>& generators) {
    if (samples < 1) throw std::invalid_argument("nu_sampled: need at least one sample");
    std::vector<std::string> gens = pick_generators(sys, generators);
    std::vector<const TableElement*> els;
    for (const auto& g : gens) els.push_back(&sys.generator(g));
    std::mt19937_64 rng(seed);
    int best = 0;
    std::vector<int> word(n);
    for (int s = 0; s < samples; ++s) {
        for (int& w : word) w = static_cast<int>(rng() % els.size());
        // Orbit built by left extension over the reversed word.
        std::set<Point> orbit;
        for (int k = n - 1; k >= 0; --k) {
            std::set<Point> next;
            next.insert(evaluate(*els[word[k]], base));
            for (const Point& p : orbit) next.insert(evaluate(*els[word[k]], p));
            orbit.swap(next);
        }
        best = std::max(best, static_cast<int>(orbit.size()));
    }
    return best;
}

GrowthTable growth_ball(const SystemConfig& sys, const std::vector<std::string>& generators,
                        int radius, int jobs, std::size_t element_budget) {
    if (radius < 0) throw std::invalid_argument("growth_ball: negative radius");
    if (jobs < 1) jobs = 1;
    std::vector<std::string> gens = pick_generators(sys, generators);
    std::vector<const TableElement*> els;
    for (const auto& g : gens) els.push_back(&sys.generator(g));

    GrowthTable table;
    std::unordered_set<std::string> seen;
    std::vector<TableElement> frontier = {sys.identity()};
    seen.insert(frontier[0].key());
    table.sizes.push_back(1);

    for (int r = 1; r <= radius; ++r) {
        // Right-multiply the previous sphere by every generator.  Chunked
        // workers produce candidates; merging stays in chunk order so the
        // table is independent of the worker count.
        auto produce = [&](size_t lo, size_t hi) {
            std::vector<TableElement> out;
            for (size_t i = lo; i < hi; ++i)
                for (const TableElement* g : els) out.push_back(compose(frontier[i], *g));
            return out;
        };
        std::vector<TableElement> candidates;
        if (jobs == 1 || frontier.size() < 64) {
            candidates = produce(0, frontier.size());
        } else {
            size_t chunk = (frontier.size() + jobs - 1) / jobs;
            std::vector<std::future<std::vector<TableElement>>> futures;
            for (size_t lo = 0; lo < frontier.size(); lo += chunk)
                futures.push_back(std::async(std::launch::async, produce, lo,
                                             std::min(lo + chunk, frontier.size())));
            for (auto& f : futures) {
                auto part = f.get();
                candidates.insert(candidates.end(), part.begin(), part.end());
            }
        }
        std::vector<TableElement> next;
        for (auto& el : candidates)
            if (seen.insert(el.key()).second) next.push_back(std::move(el));
        table.sizes.push_back(table.sizes.back() + static_cast<long long>(next.size()));
        frontier.swap(next);
        if (seen.size() > element_budget) {
            table.complete = false;
            break;
        }
    }
    return table;
}

std::vector<TableElement> ball_elements(const SystemConfig& sys,
                                        const std::vector<std::string>& generators,
                                        int radius) {
    std::vector<std::string> gens = pick_generators(sys, generators);
    std::vector<TableElement> ball = {sys.identity()};
    std::unordered_set<std::string> seen = {ball[0].key()};
    size_t sphere_begin = 0;
    for (int r = 1; r <= radius; ++r) {
        size_t sphere_end = ball.size();
        for (size_t i = sphere_begin; i < sphere_end; ++i)
            for (const auto& g : gens) {
                TableElement el = compose(ball[i], sys.generator(g));
                if (seen.insert(el.key()).second) ball.push_back(std::move(el));
            }
        sphere_begin = sphere_end;
    }
    return ball;
}

KappaResult kappa_numeric(const Point& p, int iterations) {
    if (iterations < 1) throw std::invalid_argument("kappa_numeric: iterations >= 1");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    double lo = 0.0, hi = 1.0;
    for (int i = iterations - 1; i >= 0; --i) {
        double a, b;
        if (p.at(i) == '1') {
            a = lo / phi;
            b = hi / phi;
        } else if (p.at(i) == '2') {
            a = 1.0 - lo / (phi * phi);
            b = 1.0 - hi / (phi * phi);
        } else {
            throw std::invalid_argument("kappa_numeric: point not over the alphabet {1,2}");
        }
        lo = std::min(a, b);
        hi = std::max(a, b);
    }
    return {(lo + hi) / 2.0, hi - lo};
}

double circle_distance(double x, double y) {
    double d = std::fabs(x - y);
    d = d - std::floor(d);
    return std::min(d, 1.0 - d);
}

}  // namespace frag

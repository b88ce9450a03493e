#include "frag/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace frag {

OrbitalBall orbital_ball(const SystemConfig& sys, const Point& root, int radius) {
    if (radius < 0) throw std::invalid_argument("orbital_ball: negative radius");
    OrbitalBall ball;
    ball.root = root;
    ball.radius = radius;

    std::map<Point, int> index;
    std::vector<int> dist;
    auto add_vertex = [&](const Point& p, int d) {
        ball.vertices.push_back(p);
        dist.push_back(d);
        index[p] = static_cast<int>(ball.vertices.size()) - 1;
        return index[p];
    };
    add_vertex(root, 0);
    std::map<std::pair<int, int>, std::set<std::string>> edges;
    std::deque<int> queue = {0};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        Point pu = ball.vertices[u];
        for (const auto& name : sys.generator_names) {
            Point image = evaluate(sys.generator(name), pu);
            if (image == pu) continue;
            auto it = index.find(image);
            int v;
            if (it == index.end()) {
                if (dist[u] == radius) continue;  // outside the ball
                v = add_vertex(image, dist[u] + 1);
                queue.push_back(v);
            } else {
                v = it->second;
            }
            edges[{std::min(u, v), std::max(u, v)}].insert(name);
        }
    }
    for (auto& [key, labels] : edges)
        ball.edges.push_back({key.first, key.second, labels});
    return ball;
}

std::optional<ChainBall> as_chain(const OrbitalBall& ball) {
    size_t n = ball.vertices.size();
    std::vector<std::vector<std::pair<int, const std::set<std::string>*>>> adj(n);
    for (const auto& e : ball.edges) {
        adj[e.u].emplace_back(e.v, &e.labels);
        adj[e.v].emplace_back(e.u, &e.labels);
    }
    for (size_t i = 0; i < n; ++i)
        if (adj[i].size() > 2) return std::nullopt;

    ChainBall chain;
    if (n == 1) {
        chain.vertices = {ball.root};
        chain.root_pos = 0;
        return chain;
    }
    // Walk from one degree-1 end to the other.
    int start = -1;
    for (size_t i = 0; i < n && start < 0; ++i)
        if (adj[i].size() == 1) start = static_cast<int>(i);
    if (start < 0) return std::nullopt;  // a cycle
    std::vector<int> path = {start};
    int prev = -1, cur = start;
    std::vector<const std::set<std::string>*> labels;
    while (true) {
        int next = -1;
        for (auto [v, l] : adj[cur])
            if (v != prev) {
                next = v;
                labels.push_back(l);
                break;
            }
        if (next < 0) break;
        path.push_back(next);
        prev = cur;
        cur = next;
    }
    if (path.size() != n) return std::nullopt;  // disconnected

    auto emit = [&](bool reversed) {
        chain.vertices.clear();
        chain.labels.clear();
        for (size_t i = 0; i < n; ++i)
            chain.vertices.push_back(ball.vertices[path[reversed ? n - 1 - i : i]]);
        for (size_t i = 0; i + 1 < n; ++i)
            chain.labels.push_back(*labels[reversed ? n - 2 - i : i]);
    };
    emit(ball.vertices[path.front()].str() > ball.vertices[path.back()].str());
    for (size_t i = 0; i < n; ++i)
        if (chain.vertices[i] == ball.root) chain.root_pos = static_cast<int>(i);
    return chain;
}

LabelChain label_chain(const ChainBall& chain) {
    return {chain.labels, chain.root_pos};
}

bool chains_isomorphic(const LabelChain& a, const LabelChain& b) {
    if (a.labels.size() != b.labels.size()) return false;
    if (a.labels == b.labels && a.root_pos == b.root_pos) return true;
    LabelChain mirror{{b.labels.rbegin(), b.labels.rend()},
                      static_cast<int>(b.labels.size()) - b.root_pos};
    return a.labels == mirror.labels && a.root_pos == mirror.root_pos;
}

bool validate_chain(const SystemConfig& sys, const OrbitalBall& ball, Point* violating,
                    std::string* reason) {
    std::set<std::string> a_side(sys.side_a.begin(), sys.side_a.end());
    auto side_of = [&](const std::set<std::string>& labels) -> int {
        // 0 = side a, 1 = side b, -1 = mixed
        bool has_a = false, has_b = false;
        for (const auto& l : labels) (a_side.count(l) ? has_a : has_b) = true;
        return has_a && has_b ? -1 : (has_a ? 0 : 1);
    };
    std::vector<std::vector<int>> incident(ball.vertices.size());
    for (size_t e = 0; e < ball.edges.size(); ++e) {
        incident[ball.edges[e].u].push_back(static_cast<int>(e));
        incident[ball.edges[e].v].push_back(static_cast<int>(e));
    }
    for (size_t v = 0; v < ball.vertices.size(); ++v) {
        if (incident[v].size() > 2) {
            if (violating) *violating = ball.vertices[v];
            if (reason) *reason = "vertex has more than two neighbors";
            return false;
        }
        std::set<int> sides;
        for (int e : incident[v]) {
            int s = side_of(ball.edges[e].labels);
            if (s < 0) {
                if (violating) *violating = ball.vertices[v];
                if (reason) *reason = "edge mixes both dihedral sides";
                return false;
            }
            if (!sides.insert(s).second) {
                if (violating) *violating = ball.vertices[v];
                if (reason) *reason = "incident edges do not alternate sides";
                return false;
            }
        }
    }
    return true;
}

int edge_type(const SystemConfig& sys, const Point& u, const Point& v) {
    if (sys.name != "golden-mean")
        throw std::invalid_argument("edge_type: defined for the golden-mean system");
    if (u == v) throw std::invalid_argument("edge_type: identical points");
    size_t split = 0;
    while (u.at(split) == v.at(split) && split < 4096) ++split;
    // One side continues 11, the other 2, with equal tails.
    const Point& one = u.at(split) == '1' ? u : v;
    const Point& two = u.at(split) == '1' ? v : u;
    if (one.at(split) != '1' || one.at(split + 1) != '1' || two.at(split) != '2' ||
        one.after(split + 2) != two.after(split + 1))
        throw std::invalid_argument("edge_type: points are not adjacent");
    std::string p = u.prefix(split);
    auto repetitions = [&](size_t from) -> std::optional<int> {
        int k = 0;
        for (size_t i = from; i < p.size(); i += 2) {
            if (i + 1 >= p.size() || p[i] != '1' || p[i + 1] != '2') return std::nullopt;
            ++k;
        }
        return k;
    };
    if (auto k = repetitions(0)) return 3 * *k;
    if (p[0] == '1')
        if (auto k = repetitions(1)) return 3 * *k + 1;
    if (p[0] == '2')
        if (auto k = repetitions(1)) return 3 * *k + 2;
    throw std::invalid_argument("edge_type: points are not adjacent (prefix " + p + ")");
}

std::set<std::string> edge_type_labels(int n) {
    if (n < 0) throw std::invalid_argument("edge_type_labels: negative type");
    std::string i = std::to_string(n % 3);
    int depth = n / 3;
    if (depth == 0) return {"a" + i, "b" + i, "c" + i};
    switch (depth % 3) {
        case 0: return {"b" + i, "c" + i};
        case 1: return {"b" + i, "d" + i};
        default: return {"c" + i, "d" + i};
    }
}

ChainGraph build_chain_I(int n) {
    if (n < 0) throw std::invalid_argument("build_chain_I: negative index");
    std::vector<ChainGraph> chains(std::max(n + 1, 2));
    chains[0] = {{""}, {}};
    chains[1] = {{"1"}, {}};
    auto reversed_with = [](const ChainGraph& c, char suffix) {
        ChainGraph r;
        r.vertices.assign(c.vertices.rbegin(), c.vertices.rend());
        for (Word& w : r.vertices) w += suffix;
        r.edge_types.assign(c.edge_types.rbegin(), c.edge_types.rend());
        return r;
    };
    for (int k = 2; k <= n; ++k) {
        ChainGraph left = reversed_with(chains[k - 2], '2');
        ChainGraph right = reversed_with(chains[k - 1], '1');
        chains[k].vertices = left.vertices;
        chains[k].edge_types = left.edge_types;
        chains[k].edge_types.push_back(k - 2);
        chains[k].vertices.insert(chains[k].vertices.end(), right.vertices.begin(),
                                  right.vertices.end());
        chains[k].edge_types.insert(chains[k].edge_types.end(), right.edge_types.begin(),
                                    right.edge_types.end());
    }
    return chains[n];
}

CheckReport cross_validate_chain(const SystemConfig& sys, int n, const Point& tail) {
    CheckReport rep;
    if (sys.name != "golden-mean") {
        rep.fail("cross_validate_chain: golden-mean only");
        return rep;
    }
    ChainGraph chain = build_chain_I(n);
    std::vector<Point> pts;
    for (const Word& v : chain.vertices) pts.emplace_back(v + tail.preperiod(), tail.period());
    size_t m = chain.vertices.size();
    int failures = 0;
    for (size_t j = 0; j < m; ++j) {
        std::set<std::string> right =
            j + 1 < m ? edge_type_labels(chain.edge_types[j]) : std::set<std::string>{};
        std::set<std::string> left =
            j > 0 ? edge_type_labels(chain.edge_types[j - 1]) : std::set<std::string>{};
        bool interior = j > 0 && j + 1 < m;
        for (const auto& name : sys.generator_names) {
            Point image = evaluate(sys.generator(name), pts[j]);
            if (right.count(name)) {
                if (image != pts[j + 1]) {
                    rep.fail(name + " does not cross edge " + chain.vertices[j] + " - " +
                             chain.vertices[j + 1]);
                    ++failures;
                }
            } else if (left.count(name)) {
                if (image != pts[j - 1]) {
                    rep.fail(name + " does not cross edge " + chain.vertices[j] + " - " +
                             chain.vertices[j - 1]);
                    ++failures;
                }
            } else if (interior && image != pts[j]) {
                rep.fail(name + " moves interior vertex " + chain.vertices[j]);
                ++failures;
            }
        }
    }
    if (failures == 0)
        rep.pass("chain of weight " + std::to_string(n) + " verified on tail " + tail.str());
    return rep;
}

std::string GermBallModel::gluing_label(int i, int j) const {
    if (i == j) throw std::invalid_argument("gluing_label: no loop edges");
    if (i == 0) return copies[j];
    if (j == 0) return copies[i];
    // Product of two distinct non-identity Klein elements is the third.
    return copies[6 - i - j];
}

GermBallModel germ_ball(const SystemConfig& sys, const Point& singular, int radius) {
    const SingularInfo* info = nullptr;
    for (const auto& s : sys.singular)
        if (s.point == singular) info = &s;
    if (!info) throw std::invalid_argument("germ_ball: not a singular point: " +
                                           singular.str());
    GermBallModel model;
    model.copies = {"e"};
    for (const auto& g : info->germs) model.copies.push_back(g);
    auto chain = as_chain(orbital_ball(sys, singular, radius));
    if (!chain) throw std::logic_error("germ_ball: singular ball is not a chain");
    // The singular point is an endpoint of its ray; put it first.
    if (chain->root_pos != 0) {
        std::reverse(chain->vertices.begin(), chain->vertices.end());
        std::reverse(chain->labels.begin(), chain->labels.end());
        chain->root_pos = static_cast<int>(chain->vertices.size()) - 1 - chain->root_pos;
    }
    if (chain->root_pos != 0) throw std::logic_error("germ_ball: root is not an endpoint");
    model.base = *chain;
    return model;
}

LabelChain lambda_model(const SystemConfig& sys, int piece, int radius) {
    const SingularInfo& info = sys.singular.front();
    if (piece < 0 || piece >= sys.fragmentation.piece_count)
        throw std::invalid_argument("lambda_model: piece out of range");
    GermBallModel germ = germ_ball(sys, info.point, radius);
    std::set<std::string> middle;
    for (size_t j = 0; j < info.germs.size(); ++j)
        if (sys.fragmentation.vectors[j] >> piece & 1) middle.insert(info.germs[j]);

    LabelChain model;
    const auto& ray = germ.base.labels;  // labels going away from the singular root
    for (int k = radius - 2; k >= 0; --k) model.labels.push_back(ray[k]);
    if (radius >= 1) model.labels.push_back(middle);
    for (int k = 0; k < radius; ++k) model.labels.push_back(ray[k]);
    model.root_pos = radius;
    return model;
}

CheckReport lambda_limit_check(const SystemConfig& sys, int piece, int radius, int depth) {
    CheckReport rep;
    LabelChain model = lambda_model(sys, piece, radius);
    const PieceClassifier& cls = sys.singular.front().classifier;
    int first_match = -1;
    bool stable = true;
    std::vector<int> tested;
    for (int m = piece; m <= depth; m += cls.modulus) {
        // Approximant in piece `m mod modulus`: pattern^m then a terminal.
        Word pre = cls.prefix;
        for (int k = 0; k < m; ++k) pre += cls.pattern;
        Point approx(pre + (sys.name == "golden-mean" ? "2" : "0"),
                     std::string(1, sys.name == "golden-mean" ? '1' : '0'));
        auto chain = as_chain(orbital_ball(sys, approx, radius));
        if (!chain) {
            rep.fail("ball at " + approx.str() + " is not a chain");
            return rep;
        }
        bool match = chains_isomorphic(label_chain(*chain), model);
        tested.push_back(m);
        if (match && first_match < 0) first_match = m;
        if (!match && first_match >= 0) stable = false;
    }
    if (first_match < 0)
        rep.fail("piece " + std::to_string(piece) + ": no approximant reached the model");
    else if (!stable)
        rep.fail("piece " + std::to_string(piece) + ": balls left the model after depth " +
                 std::to_string(first_match));
    else if (tested.size() < 2 || first_match >= tested.back())
        rep.fail("piece " + std::to_string(piece) + ": not enough stable approximants");
    else
        rep.pass("piece " + std::to_string(piece) + " radius " + std::to_string(radius) +
                 ": balls stabilize to the two-copy model from depth " +
                 std::to_string(first_match));
    return rep;
}

RepetitivityResult repetitivity_radius(const SystemConfig& sys, const Point& base, int r,
                                       int search_bound) {
    if (r < 0 || search_bound < 0)
        throw std::invalid_argument("repetitivity_radius: negative argument");
    RepetitivityResult result;
    if (r == 0) return result;

    int span = search_bound + r;
    auto chain = as_chain(orbital_ball(sys, base, span));
    if (!chain) throw std::invalid_argument("repetitivity_radius: base orbit not a chain");
    int root = chain->root_pos;
    int n = static_cast<int>(chain->vertices.size());

    auto ball_at = [&](int pos) -> std::optional<LabelChain> {
        int lo = pos - r, hi = pos + r;  // vertex window [lo, hi]
        if (lo < 0 || hi >= n) return std::nullopt;
        LabelChain lc;
        for (int e = lo; e < hi; ++e) lc.labels.push_back(chain->labels[e]);
        lc.root_pos = r;
        return lc;
    };
    auto target = ball_at(root);
    if (!target) throw std::invalid_argument("repetitivity_radius: window too small");

    // Positions of the window around the base, clipped to the built chain
    // (one-ended orbits have fewer vertices on the closed side).
    int best = 0;
    for (int p = std::max(root - search_bound, r);
         p <= std::min(root + search_bound, n - 1 - r); ++p) {
        int nearest = -1;
        for (int d = 0; d <= search_bound; ++d) {
            for (int q : {p - d, p + d}) {
                auto cand = ball_at(q);
                if (cand && chains_isomorphic(*cand, *target)) {
                    nearest = d;
                    break;
                }
            }
            if (nearest >= 0) break;
        }
        if (nearest < 0) {
            result.exceeded = true;
            result.radius_needed = search_bound;
            result.ratio = static_cast<double>(search_bound) / r;
            return result;
        }
        best = std::max(best, nearest);
    }
    result.radius_needed = best;
    result.ratio = static_cast<double>(best) / r;
    return result;
}

std::string chain_to_dot(const ChainGraph& chain, const std::string& name) {
    std::string dot = "graph " + name + " {\n  rankdir=LR;\n";
    for (size_t i = 0; i < chain.vertices.size(); ++i)
        dot += "  n" + std::to_string(i) + " [label=\"" + chain.vertices[i] + "\"];\n";
    for (size_t e = 0; e < chain.edge_types.size(); ++e) {
        std::string labels;
        for (const auto& l : edge_type_labels(chain.edge_types[e])) {
            if (!labels.empty()) labels += ",";
            labels += l;
        }
        dot += "  n" + std::to_string(e) + " -- n" + std::to_string(e + 1) + " [label=\"" +
               labels + "\"];\n";
    }
    dot += "}\n";
    return dot;
}

std::string ball_to_dot(const OrbitalBall& ball, const std::string& name) {
    std::string dot = "graph " + name + " {\n  rankdir=LR;\n";
    for (size_t i = 0; i < ball.vertices.size(); ++i)
        dot += "  n" + std::to_string(i) + " [label=\"" + ball.vertices[i].str() + "\"" +
               (i == 0 ? ", shape=doublecircle" : "") + "];\n";
    for (const auto& e : ball.edges) {
        std::string labels;
        for (const auto& l : e.labels) {
            if (!labels.empty()) labels += ",";
            labels += l;
        }
        dot += "  n" + std::to_string(e.u) + " -- n" + std::to_string(e.v) + " [label=\"" +
               labels + "\"];\n";
    }
    dot += "}\n";
    return dot;
}

std::string ball_to_json(const OrbitalBall& ball) {
    nlohmann::json j;
    j["root"] = ball.root.str();
    j["radius"] = ball.radius;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : ball.vertices) j["vertices"].push_back(v.str());
    j["edges"] = nlohmann::json::array();
    for (const auto& e : ball.edges) {
        nlohmann::json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["labels"] = e.labels;
        j["edges"].push_back(je);
    }
    return j.dump(2) + "\n";
}

}  // namespace frag

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frag/systems.hpp"

namespace frag {

// Rooted ball of an orbital graph: vertices are points of the orbit within
// the given radius, edges carry the set of generator names mapping one
// endpoint to the other.  Loops are never stored; a generator fixing a
// vertex is recoverable as labeling neither incident edge.
struct OrbitalBall {
    struct Edge {
        int u, v;  // indices into vertices, u < v
        std::set<std::string> labels;
    };
    Point root;
    std::vector<Point> vertices;  // vertices[0] is the root, then BFS order
    std::vector<Edge> edges;
    int radius = 0;
};

OrbitalBall orbital_ball(const SystemConfig& sys, const Point& root, int radius);

// A ball linearized into a path: vertices left to right, label sets between
// consecutive vertices, root position.  Orientation is normalized so the
// smaller end vertex comes first.
struct ChainBall {
    std::vector<Point> vertices;
    std::vector<std::set<std::string>> labels;
    int root_pos = 0;
};
std::optional<ChainBall> as_chain(const OrbitalBall& ball);

// Label sequence with a root offset; the shape compared when two rooted
// chain balls are tested for isomorphism (directly or mirrored).
struct LabelChain {
    std::vector<std::set<std::string>> labels;
    int root_pos = 0;
};
LabelChain label_chain(const ChainBall& chain);
bool chains_isomorphic(const LabelChain& a, const LabelChain& b);

// Every vertex has at most two non-loop neighbors and consecutive edges
// alternate between the two dihedral sides.  On failure reports the vertex.
bool validate_chain(const SystemConfig& sys, const OrbitalBall& ball,
                    Point* violating = nullptr, std::string* reason = nullptr);

// Golden-mean edge types: the pair {p 11 w, p 2 w} has type 3k + i where the
// common prefix p is (12)^k, 1(12)^k or 2(12)^k for i = 0, 1, 2.
int edge_type(const SystemConfig& sys, const Point& u, const Point& v);

// Expected label set of the golden-mean edge type e_n: a_i b_i c_i at depth
// zero, then b_i c_i / b_i d_i / c_i d_i by the residue of the depth mod 3.
std::set<std::string> edge_type_labels(int n);

// The recursive chains over the golden-mean level sets: vertex set is the
// level of weight n, consecutive vertices carry edge types, the chain of
// weight n is (reverse of chain n-2).2 --e_{n-2}-- (reverse of chain n-1).1.
struct ChainGraph {
    std::vector<Word> vertices;    // left to right; leftmost is chain_left_end(n)
    std::vector<int> edge_types;   // size = vertices.size() - 1
};
ChainGraph build_chain_I(int n);

// Evaluates every edge of the chain against the group action on vertex.tail
// points: edge labels move a vertex across, all other generators fix the
// interior vertices.  Endpoint vertices only get their edge checked (their
// second neighbor lies outside the chain).
CheckReport cross_validate_chain(const SystemConfig& sys, int n, const Point& tail);

// The graph of germs at a singular point: one copy of the orbital ray per
// germ, roots glued by the Cayley graph of the germ group.
struct GermBallModel {
    std::vector<std::string> copies;  // germ names, identity first
    ChainBall base;                   // ball of the singular orbital graph, root first
    // Gluing edge label between copies i and j (the germ product).
    std::string gluing_label(int i, int j) const;
};
GermBallModel germ_ball(const SystemConfig& sys, const Point& singular, int radius);

// Limit model of orbital balls at regular points approaching the singular
// point inside piece i: two mirrored copies of the singular ray joined by
// the edge labeled by the germs acting on that piece.
LabelChain lambda_model(const SystemConfig& sys, int piece, int radius);

// Builds balls at the canonical approximants inside the piece and checks
// they stabilize to the model; reports the observed threshold.
CheckReport lambda_limit_check(const SystemConfig& sys, int piece, int radius, int depth);

struct RepetitivityResult {
    int radius_needed = 0;   // R(r)
    bool exceeded = false;   // search bound hit before every position matched
    double ratio = 0.0;      // R(r) / r, 0 when r = 0
};
// Smallest R such that every position of the +-search_bound window around
// base has an isomorphic copy of the radius-r ball at base within distance R.
RepetitivityResult repetitivity_radius(const SystemConfig& sys, const Point& base, int r,
                                       int search_bound);

// Exports.
std::string chain_to_dot(const ChainGraph& chain, const std::string& name);
std::string ball_to_dot(const OrbitalBall& ball, const std::string& name);
std::string ball_to_json(const OrbitalBall& ball);

}  // namespace frag

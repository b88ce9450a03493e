#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frag/machine.hpp"
#include "frag/words.hpp"

namespace frag {

// The normal form of a group element over a tail machine: a finite table of
// cells (v, u, h) meaning  g(v w) = u h(w)  for every infinite w, where the
// inputs v form a complete prefix code, the outputs u form a complete prefix
// code, weight(v) = weight(u) per cell, and every tail h is a germ state.
//
// The canonical form is the unique minimal such table: no family of sibling
// cells equals the one-step resolved expansion of a single parent cell.
// Cells are kept sorted by input word (length, then lex), so two elements
// are equal as transformations iff their canonical tables are identical.
class TableElement {
  public:
    struct Cell {
        Word in;
        Word out;
        int tail;
        bool operator==(const Cell&) const = default;
    };

    TableElement() = default;
    // Canonicalizes and validates the given table.
    TableElement(MachinePtr machine, std::vector<Cell> cells);

    static TableElement identity(MachinePtr machine);
    // The element acting as the given germ state everywhere: table {(e,e,h)}.
    static TableElement germ(MachinePtr machine, int germ_state);

    const MachinePtr& machine() const { return machine_; }
    const std::vector<Cell>& cells() const { return cells_; }
    bool is_identity() const;

    // Stable serialization of the canonical table, usable as a map key.
    std::string key() const;

    bool operator==(const TableElement& other) const;

  private:
    MachinePtr machine_;
    std::vector<Cell> cells_;
};

// Exact image of an eventually periodic point.
Point evaluate(const TableElement& g, const Point& p);

// compose(g2, g1) is the product g2 g1: g1 is applied first.  Both elements
// must live over the same machine.  Throws std::runtime_error if refinement
// exceeds the safety bound (only possible for a malformed machine).
TableElement compose(const TableElement& g2, const TableElement& g1);

TableElement inverse(const TableElement& g);

// Smallest n <= max_power with g^n = identity, by linear iteration with
// canonical-form comparison; nullopt when the bound is exceeded.
std::optional<int> order(const TableElement& g, int max_power);

// Images of the probe points; an independent equality witness used to
// cross-check canonical forms.
std::vector<Point> fingerprint(const TableElement& g, const std::vector<Point>& probes);

// Refines the table so that every cell input has weight >= the given value;
// used by tests and by level-permutation extraction.  The result is NOT
// canonical (it is the expanded table).
std::vector<TableElement::Cell> refine_to_weight(const TableElement& g, int min_weight);

// Refinement safety bound for compose, in weight units.
inline constexpr int kMaxRefineWeight = 64;

}  // namespace frag

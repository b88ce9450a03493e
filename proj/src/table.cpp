#include "frag/table.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace frag {

namespace {

bool cell_less(const TableElement::Cell& a, const TableElement::Cell& b) {
    if (a.in.size() != b.in.size()) return a.in.size() < b.in.size();
    return a.in < b.in;
}

// Strips `suffix` off the end of `w`; nullopt when w does not end with it.
std::optional<Word> strip_suffix(const Word& w, const Word& suffix) {
    if (suffix.size() > w.size()) return std::nullopt;
    if (w.compare(w.size() - suffix.size(), suffix.size(), suffix) != 0)
        return std::nullopt;
    return w.substr(0, w.size() - suffix.size());
}

// Repeatedly replaces any family of sibling cells that equals the resolved
// one-step expansion of a single cell (v, u, h) by that cell.  Confluent:
// merging is bottom-up and merges at disjoint subtrees are independent, so
// the fixed point is the unique minimal table.
void merge_to_minimal(const TailMachine& m, std::vector<TableElement::Cell>& cells) {
    std::map<Word, TableElement::Cell> by_input;
    for (auto& c : cells) by_input[c.in] = c;

    bool changed = true;
    while (changed) {
        changed = false;
        // Longest inputs first so deep families collapse before their parents.
        std::vector<Word> inputs;
        inputs.reserve(by_input.size());
        for (auto& [in, c] : by_input) inputs.push_back(in);
        std::sort(inputs.begin(), inputs.end(), [](const Word& a, const Word& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return a < b;
        });
        for (const Word& in : inputs) {
            auto it = by_input.find(in);
            if (it == by_input.end()) continue;
            const TableElement::Cell cell = it->second;
            bool merged = false;
            for (int h = 0; h < m.germ_count && !merged; ++h) {
                const auto& code = m.resolution_code(h);
                for (const auto& t0 : code) {
                    auto v = strip_suffix(cell.in, t0.in);
                    if (!v) continue;
                    if (cell.tail != t0.next) continue;
                    auto u = strip_suffix(cell.out, t0.out);
                    if (!u) continue;
                    bool family_ok = true;
                    for (const auto& t : code) {
                        auto sib = by_input.find(*v + t.in);
                        if (sib == by_input.end() || sib->second.tail != t.next ||
                            sib->second.out != *u + t.out) {
                            family_ok = false;
                            break;
                        }
                    }
                    if (!family_ok) continue;
                    for (const auto& t : code) by_input.erase(*v + t.in);
                    by_input[*v] = {*v, *u, h};
                    merged = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    cells.clear();
    for (auto& [in, c] : by_input) cells.push_back(c);
    std::sort(cells.begin(), cells.end(), cell_less);
}

}  // namespace

TableElement::TableElement(MachinePtr machine, std::vector<Cell> cells)
    : machine_(std::move(machine)), cells_(std::move(cells)) {
    if (!machine_) throw std::invalid_argument("TableElement: null machine");
    std::vector<Word> ins, outs;
    for (const auto& c : cells_) {
        if (!machine_->is_germ(c.tail))
            throw std::invalid_argument("TableElement: tail is not a germ state");
        if (machine_->alphabet.weight(c.in) != machine_->alphabet.weight(c.out))
            throw std::invalid_argument("TableElement: weight mismatch at cell " + c.in);
        ins.push_back(c.in);
        outs.push_back(c.out);
    }
    // The empty word forms the (complete) trivial code on both sides.
    bool trivial_in = cells_.size() == 1 && cells_[0].in.empty();
    bool trivial_out = cells_.size() == 1 && cells_[0].out.empty();
    if (!trivial_in && !code_is_complete(machine_->alphabet, ins))
        throw std::invalid_argument("TableElement: inputs not a complete prefix code");
    if (!trivial_out && !code_is_complete(machine_->alphabet, outs))
        throw std::invalid_argument("TableElement: outputs not a complete prefix code");
    merge_to_minimal(*machine_, cells_);
}

TableElement TableElement::identity(MachinePtr machine) {
    return germ(std::move(machine), 0);
}

TableElement TableElement::germ(MachinePtr machine, int germ_state) {
    if (!machine->is_germ(germ_state))
        throw std::invalid_argument("TableElement::germ: not a germ state");
    return TableElement(std::move(machine), {{Word(), Word(), germ_state}});
}

bool TableElement::is_identity() const {
    return cells_.size() == 1 && cells_[0].in.empty() && cells_[0].out.empty() &&
           cells_[0].tail == 0;
}

std::string TableElement::key() const {
    std::string k = machine_->name + "|";
    for (const auto& c : cells_) {
        k += c.in;
        k += '>';
        k += c.out;
        k += ':';
        k += machine_->state_names[c.tail];
        k += ';';
    }
    return k;
}

bool TableElement::operator==(const TableElement& other) const {
    return machine_->name == other.machine_->name && cells_ == other.cells_;
}

Point evaluate(const TableElement& g, const Point& p) {
    const TailMachine& m = *g.machine();
    const TableElement::Cell* cell = nullptr;
    for (const auto& c : g.cells()) {
        bool match = true;
        for (size_t i = 0; i < c.in.size() && match; ++i)
            if (p.at(i) != c.in[i]) match = false;
        if (match) {
            cell = &c;
            break;
        }
    }
    if (!cell) throw std::logic_error("evaluate: no cell matches (incomplete table?)");

    Point tail_in = p.after(cell->in.size());
    Point tail_out = run_on_point(tail_in, cell->tail, [&](int state, size_t pos) {
        for (const auto& t : m.transitions[state]) {
            bool match = true;
            for (size_t i = 0; i < t.in.size() && match; ++i)
                if (tail_in.at(pos + i) != t.in[i]) match = false;
            if (match) return StreamStep{t.in.size(), t.out, t.next};
        }
        throw std::runtime_error(m.name + ": stuck on infinite stream");
    });
    return Point(cell->out + tail_out.preperiod(), tail_out.period());
}

TableElement compose(const TableElement& g2, const TableElement& g1) {
    if (g2.machine()->name != g1.machine()->name)
        throw std::invalid_argument("compose: elements over different machines");
    const TailMachine& m = *g1.machine();

    std::deque<TableElement::Cell> work(g1.cells().begin(), g1.cells().end());
    std::vector<TableElement::Cell> result;
    while (!work.empty()) {
        TableElement::Cell c = work.front();
        work.pop_front();
        if (m.alphabet.weight(c.in) > kMaxRefineWeight)
            throw std::runtime_error("compose: refinement exceeded " +
                                     std::to_string(kMaxRefineWeight) +
                                     " weight units (malformed machine?)");
        // Select the g2 cell whose input is a prefix of this cell's output.
        const TableElement::Cell* c2 = nullptr;
        for (const auto& cand : g2.cells())
            if (cand.in.size() <= c.out.size() &&
                c.out.compare(0, cand.in.size(), cand.in) == 0) {
                c2 = &cand;
                break;
            }
        std::optional<Resolved> r;
        if (c2) r = restrict_run(m, c2->tail, c.out.substr(c2->in.size()));
        if (c2 && r) {
            result.push_back({c.in, c2->out + r->out, m.mul(r->state, c.tail)});
        } else {
            // Output too short to pick a unique g2 cell, or the tail push did
            // not resolve; expand one resolved step and retry.
            for (const auto& t : m.resolution_code(c.tail))
                work.push_back({c.in + t.in, c.out + t.out, t.next});
        }
    }
    return TableElement(g1.machine(), std::move(result));
}

TableElement inverse(const TableElement& g) {
    std::vector<TableElement::Cell> cells;
    cells.reserve(g.cells().size());
    for (const auto& c : g.cells())
        cells.push_back({c.out, c.in, g.machine()->inv(c.tail)});
    return TableElement(g.machine(), std::move(cells));
}

std::optional<int> order(const TableElement& g, int max_power) {
    if (max_power < 1) throw std::invalid_argument("order: max_power must be >= 1");
    TableElement power = g;
    for (int n = 1; n <= max_power; ++n) {
        if (power.is_identity()) return n;
        if (n < max_power) power = compose(power, g);
    }
    return std::nullopt;
}

std::vector<Point> fingerprint(const TableElement& g, const std::vector<Point>& probes) {
    std::vector<Point> images;
    images.reserve(probes.size());
    for (const Point& p : probes) images.push_back(evaluate(g, p));
    return images;
}

std::vector<TableElement::Cell> refine_to_weight(const TableElement& g, int min_weight) {
    const TailMachine& m = *g.machine();
    std::deque<TableElement::Cell> work(g.cells().begin(), g.cells().end());
    std::vector<TableElement::Cell> done;
    while (!work.empty()) {
        TableElement::Cell c = work.front();
        work.pop_front();
        if (m.alphabet.weight(c.in) >= min_weight) {
            done.push_back(c);
            continue;
        }
        for (const auto& t : m.resolution_code(c.tail))
            work.push_back({c.in + t.in, c.out + t.out, t.next});
    }
    std::sort(done.begin(), done.end(), cell_less);
    return done;
}

}  // namespace frag

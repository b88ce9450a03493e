#include "frag/machine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace frag {

int TailMachine::state_index(const std::string& n) const {
    for (size_t i = 0; i < state_names.size(); ++i)
        if (state_names[i] == n) return static_cast<int>(i);
    return -1;
}

void TailMachine::validate() const {
    alphabet.validate();
    size_t ns = state_names.size();
    if (ns == 0 || transitions.size() != ns)
        throw std::invalid_argument(name + ": bad state table");
    if (germ_count < 1 || germ_count > static_cast<int>(ns))
        throw std::invalid_argument(name + ": bad germ count");

    // State 0 copies single letters and stays put.
    for (const auto& t : transitions[0])
        if (t.in != t.out || t.next != 0 || t.in.size() != 1)
            throw std::invalid_argument(name + ": state 0 is not the identity");

    for (size_t s = 0; s < ns; ++s) {
        std::vector<Word> inputs;
        for (const auto& t : transitions[s]) {
            if (t.in.empty()) throw std::invalid_argument(name + ": empty input");
            if (alphabet.weight(t.in) != alphabet.weight(t.out))
                throw std::invalid_argument(name + ": weight not preserved at state " +
                                            state_names[s]);
            if (t.next < 0 || t.next >= static_cast<int>(ns))
                throw std::invalid_argument(name + ": bad target state");
            inputs.push_back(t.in);
        }
        if (!code_is_complete(alphabet, inputs))
            throw std::invalid_argument(name + ": inputs of state " + state_names[s] +
                                        " do not form a complete prefix code");
    }

    // Germ group axioms from the product table.
    if (product.size() != static_cast<size_t>(germ_count) ||
        inverse.size() != static_cast<size_t>(germ_count))
        throw std::invalid_argument(name + ": bad germ group tables");
    for (int g = 0; g < germ_count; ++g) {
        if (product[g].size() != static_cast<size_t>(germ_count))
            throw std::invalid_argument(name + ": bad product row");
        if (product[g][0] != g || product[0][g] != g)
            throw std::invalid_argument(name + ": state 0 is not the group identity");
        if (product[g][inverse[g]] != 0 || product[inverse[g]][g] != 0)
            throw std::invalid_argument(name + ": bad inverse");
        for (int h = 0; h < germ_count; ++h) {
            if (!is_germ(product[g][h]))
                throw std::invalid_argument(name + ": germ product leaves germ set");
            for (int k = 0; k < germ_count; ++k)
                if (product[product[g][h]][k] != product[g][product[h][k]])
                    throw std::invalid_argument(name + ": germ product not associative");
        }
    }

    // Transient chains must terminate, and one resolved step (a transition
    // chain ending in a germ state) must consume at most resolution_depth
    // letters from every state.
    for (size_t s = 0; s < ns; ++s) {
        std::vector<Transition> work = transitions[s];
        int guard = 0;
        while (!work.empty()) {
            if (++guard > 1 << 16)
                throw std::invalid_argument(name + ": transient states form a cycle");
            Transition t = work.back();
            work.pop_back();
            if (is_germ(t.next)) {
                if (t.in.size() > static_cast<size_t>(resolution_depth))
                    throw std::invalid_argument(name + ": resolved step from " +
                                                state_names[s] + " on " + t.in +
                                                " exceeds the resolution depth");
                continue;
            }
            for (const auto& u : transitions[t.next])
                work.push_back({t.in + u.in, t.out + u.out, u.next});
        }
    }
}

std::optional<Resolved> restrict_run(const TailMachine& m, int state, const Word& word) {
    Word out;
    size_t pos = 0;
    while (pos < word.size()) {
        const TailMachine::Transition* applicable = nullptr;
        bool extendable = false;
        for (const auto& t : m.transitions[state]) {
            if (word.compare(pos, t.in.size(), t.in) == 0 &&
                pos + t.in.size() <= word.size()) {
                applicable = &t;
                break;
            }
            // Remaining input a proper prefix of this transition's input?
            size_t rem = word.size() - pos;
            if (rem < t.in.size() && t.in.compare(0, rem, word, pos, rem) == 0)
                extendable = true;
        }
        if (!applicable) {
            if (extendable) return std::nullopt;
            throw std::runtime_error(m.name + ": no transition from state " +
                                     m.state_names[state] + " on " + word.substr(pos));
        }
        out += applicable->out;
        state = applicable->next;
        pos += applicable->in.size();
    }
    if (!m.is_germ(state)) return std::nullopt;  // ended on a transient state
    return Resolved{out, state};
}

const std::vector<TailMachine::Transition>& TailMachine::resolution_code(int germ) const {
    if (!is_germ(germ)) throw std::invalid_argument(name + ": not a germ state");
    if (resolution_cache_.empty()) resolution_cache_.resize(germ_count);
    auto& cached = resolution_cache_[germ];
    if (!cached.empty()) return cached;

    std::vector<Transition> work = transitions[germ];
    std::vector<Transition> done;
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 1 << 20)
            throw std::runtime_error(name + ": resolution code does not terminate");
        Transition t = work.back();
        work.pop_back();
        if (is_germ(t.next)) {
            done.push_back(t);
            continue;
        }
        for (const auto& u : transitions[t.next])
            work.push_back({t.in + u.in, t.out + u.out, u.next});
    }
    std::sort(done.begin(), done.end(), [](const Transition& a, const Transition& b) {
        if (a.in.size() != b.in.size()) return a.in.size() < b.in.size();
        return a.in < b.in;
    });
    cached = done;
    return cached;
}

Point run_on_point(const Point& input, int start_state,
                   const std::function<StreamStep(int, size_t)>& step) {
    const std::string& pre = input.preperiod();
    const std::string& per = input.period();
    std::string out;
    int state = start_state;
    size_t pos = 0;
    // Key: (state, offset within the period) at transition boundaries.
    std::map<std::pair<int, size_t>, size_t> seen;
    while (true) {
        if (pos >= pre.size()) {
            size_t phase = (pos - pre.size()) % per.size();
            auto key = std::make_pair(state, phase);
            auto it = seen.find(key);
            if (it != seen.end())
                return Point(out.substr(0, it->second), out.substr(it->second));
            seen[key] = out.size();
        }
        StreamStep s = step(state, pos);
        if (s.consumed == 0)
            throw std::runtime_error("run_on_point: transducer made no progress");
        out += s.out;
        state = s.state;
        pos += s.consumed;
    }
}

}  // namespace frag

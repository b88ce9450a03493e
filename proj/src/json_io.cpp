#include "frag/json_io.hpp"

#include <json.hpp>

namespace frag {

using nlohmann::json;

std::string table_to_json(const TableElement& g) {
    json j;
    j["machine"] = g.machine()->name;
    j["cells"] = json::array();
    for (const auto& c : g.cells()) {
        json cell;
        cell["in"] = c.in;
        cell["out"] = c.out;
        cell["tail"] = g.machine()->state_names[c.tail];
        j["cells"].push_back(cell);
    }
    return j.dump(2) + "\n";
}

TableElement table_from_json(MachinePtr machine, const std::string& text) {
    json j = json::parse(text);
    if (j.at("machine").get<std::string>() != machine->name)
        throw std::invalid_argument("table_from_json: machine mismatch");
    std::vector<TableElement::Cell> cells;
    for (const auto& cell : j.at("cells")) {
        int tail = machine->state_index(cell.at("tail").get<std::string>());
        if (tail < 0) throw std::invalid_argument("table_from_json: unknown tail state");
        cells.push_back({cell.at("in").get<std::string>(),
                         cell.at("out").get<std::string>(), tail});
    }
    return TableElement(std::move(machine), std::move(cells));
}

namespace {

json alphabet_to_json(const Alphabet& a) {
    json j;
    std::string letters;
    for (Letter x : a.letters) letters += x;
    j["letters"] = letters;
    json w;
    for (Letter x : a.letters) w[std::string(1, x)] = a.weight(x);
    j["weights"] = w;
    return j;
}

Alphabet alphabet_from_json(const json& j) {
    Alphabet a;
    for (char x : j.at("letters").get<std::string>()) {
        a.letters.push_back(x);
        a.weights[x] = j.at("weights").at(std::string(1, x)).get<int>();
    }
    a.validate();
    return a;
}

json machine_to_json(const TailMachine& m) {
    json j;
    j["name"] = m.name;
    j["alphabet"] = alphabet_to_json(m.alphabet);
    j["states"] = m.state_names;
    j["germ_count"] = m.germ_count;
    j["resolution_depth"] = m.resolution_depth;
    json trans;
    for (size_t s = 0; s < m.state_names.size(); ++s) {
        json rows = json::array();
        for (const auto& t : m.transitions[s]) {
            json row;
            row["in"] = t.in;
            row["out"] = t.out;
            row["to"] = m.state_names[t.next];
            rows.push_back(row);
        }
        trans[m.state_names[s]] = rows;
    }
    j["transitions"] = trans;
    json prod = json::array();
    for (int g = 0; g < m.germ_count; ++g) {
        json row = json::array();
        for (int h = 0; h < m.germ_count; ++h) row.push_back(m.state_names[m.mul(g, h)]);
        prod.push_back(row);
    }
    j["product"] = prod;
    return j;
}

MachinePtr machine_from_json(const json& j) {
    auto m = std::make_shared<TailMachine>();
    m->name = j.at("name").get<std::string>();
    m->alphabet = alphabet_from_json(j.at("alphabet"));
    m->state_names = j.at("states").get<std::vector<std::string>>();
    m->germ_count = j.at("germ_count").get<int>();
    m->resolution_depth = j.at("resolution_depth").get<int>();
    m->transitions.resize(m->state_names.size());
    for (size_t s = 0; s < m->state_names.size(); ++s)
        for (const auto& row : j.at("transitions").at(m->state_names[s])) {
            int to = m->state_index(row.at("to").get<std::string>());
            if (to < 0) throw std::invalid_argument("machine_from_json: unknown state");
            m->transitions[s].push_back({row.at("in").get<std::string>(),
                                         row.at("out").get<std::string>(), to});
        }
    m->product.assign(m->germ_count, std::vector<int>(m->germ_count));
    for (int g = 0; g < m->germ_count; ++g)
        for (int h = 0; h < m->germ_count; ++h) {
            int v = m->state_index(j.at("product").at(g).at(h).get<std::string>());
            if (v < 0) throw std::invalid_argument("machine_from_json: bad product");
            m->product[g][h] = v;
        }
    m->inverse.resize(m->germ_count);
    for (int g = 0; g < m->germ_count; ++g) {
        m->inverse[g] = -1;
        for (int h = 0; h < m->germ_count; ++h)
            if (m->product[g][h] == 0) m->inverse[g] = h;
    }
    m->validate();
    return m;
}

}  // namespace

std::string system_to_json(const SystemConfig& sys) {
    json j;
    j["name"] = sys.name;
    j["alphabet"] = alphabet_to_json(sys.alphabet);
    j["machine"] = machine_to_json(*sys.machine);
    j["generator_order"] = sys.generator_names;
    json gens;
    for (const auto& [name, el] : sys.generators) {
        json cells = json::array();
        for (const auto& c : el.cells()) {
            json cell;
            cell["in"] = c.in;
            cell["out"] = c.out;
            cell["tail"] = sys.machine->state_names[c.tail];
            cells.push_back(cell);
        }
        gens[name] = cells;
    }
    j["generators"] = gens;
    json singular = json::array();
    for (const auto& s : sys.singular) {
        json row;
        row["point"] = s.point.str();
        row["germs"] = s.germs;
        row["classifier"] = {{"prefix", s.classifier.prefix},
                             {"pattern", s.classifier.pattern},
                             {"terminals", s.classifier.terminals},
                             {"modulus", s.classifier.modulus}};
        singular.push_back(row);
    }
    j["singular"] = singular;
    j["fragmentation"] = sys.fragmentation.to_strings();
    j["side_a"] = sys.side_a;
    j["side_b"] = sys.side_b;
    return j.dump(2) + "\n";
}

SystemConfig system_from_json(const std::string& text) {
    json j = json::parse(text);
    SystemConfig sys;
    sys.name = j.at("name").get<std::string>();
    sys.alphabet = alphabet_from_json(j.at("alphabet"));
    sys.machine = machine_from_json(j.at("machine"));
    sys.generator_names = j.at("generator_order").get<std::vector<std::string>>();
    for (const auto& name : sys.generator_names) {
        std::vector<TableElement::Cell> cells;
        for (const auto& cell : j.at("generators").at(name)) {
            int tail = sys.machine->state_index(cell.at("tail").get<std::string>());
            if (tail < 0) throw std::invalid_argument("system_from_json: unknown tail");
            cells.push_back({cell.at("in").get<std::string>(),
                             cell.at("out").get<std::string>(), tail});
        }
        sys.generators.emplace(name, TableElement(sys.machine, std::move(cells)));
    }
    for (const auto& row : j.at("singular")) {
        SingularInfo info;
        info.point = Point::parse(row.at("point").get<std::string>());
        info.germs = row.at("germs").get<std::vector<std::string>>();
        info.classifier.prefix = row.at("classifier").at("prefix").get<std::string>();
        info.classifier.pattern = row.at("classifier").at("pattern").get<std::string>();
        info.classifier.terminals =
            row.at("classifier").at("terminals").get<std::vector<std::string>>();
        info.classifier.modulus = row.at("classifier").at("modulus").get<int>();
        sys.singular.push_back(info);
    }
    sys.fragmentation = FragmentationSpec::from_strings(
        j.at("fragmentation").get<std::vector<std::string>>());
    sys.side_a = j.at("side_a").get<std::vector<std::string>>();
    sys.side_b = j.at("side_b").get<std::vector<std::string>>();
    return sys;
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["system"] = m.system;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["outputs"] = m.output_digests;
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
    json j = json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.system = j.at("system").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.output_digests = j.at("outputs").get<std::map<std::string, std::string>>();
    return m;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace frag

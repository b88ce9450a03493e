#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "frag/systems.hpp"

namespace frag {

// Canonical JSON form of a table element: machine name plus the cells in
// canonical order.  parse(dump(x)) == x and dump(parse(s)) == s byte for
// byte, so the form doubles as an interchange key.
std::string table_to_json(const TableElement& g);
TableElement table_from_json(MachinePtr machine, const std::string& text);

// Whole system configurations: alphabet, machine transitions and germ
// table, generator tables, singular points with classifiers, fragmentation
// vectors.  The two built-ins serialize through this and reload equal.
std::string system_to_json(const SystemConfig& sys);
SystemConfig system_from_json(const std::string& text);

// Reproducibility record written next to every file-producing command.
struct RunManifest {
    std::string command;
    std::string system;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string version;
    std::map<std::string, std::string> output_digests;  // file -> fnv1a hex
};
std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

std::uint64_t fnv1a(const std::string& bytes);
std::string fnv1a_hex(const std::string& bytes);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace frag

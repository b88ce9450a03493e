#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frag/json_io.hpp"
#include "frag/growth.hpp"

using namespace frag;

TEST_CASE("table elements round-trip bit-exactly") {
    SystemConfig sys = golden_mean_system();
    for (const auto& name : sys.generator_names) {
        const TableElement& g = sys.generator(name);
        std::string text = table_to_json(g);
        TableElement back = table_from_json(sys.machine, text);
        CHECK(back == g);
        CHECK(table_to_json(back) == text);  // dump(parse(s)) == s
    }
    TableElement w = compose(sys.generator("a0"), sys.generator("b1"));
    CHECK(table_from_json(sys.machine, table_to_json(w)) == w);

    SystemConfig g = grigorchuk_system();
    CHECK_THROWS_AS(table_from_json(g.machine, table_to_json(w)), std::invalid_argument);
}

TEST_CASE("serialized cells are in canonical order") {
    SystemConfig sys = golden_mean_system();
    std::string text = table_to_json(sys.generator("a0"));
    auto p11 = text.find("\"11\"");
    auto p12 = text.find("\"12\"");
    auto p2 = text.find("\"2\"");
    CHECK(p2 < p11);
    CHECK(p11 < p12);
}

TEST_CASE("system configurations reload equal") {
    for (const auto& sys : {golden_mean_system(), grigorchuk_system()}) {
        std::string text = system_to_json(sys);
        SystemConfig back = system_from_json(text);
        CHECK(back.name == sys.name);
        CHECK(back.alphabet == sys.alphabet);
        CHECK(back.generator_names == sys.generator_names);
        for (const auto& name : sys.generator_names)
            CHECK(back.generator(name) == sys.generator(name));
        CHECK(back.singular.size() == sys.singular.size());
        for (size_t i = 0; i < sys.singular.size(); ++i) {
            CHECK(back.singular[i].point == sys.singular[i].point);
            CHECK(back.singular[i].germs == sys.singular[i].germs);
        }
        CHECK(back.fragmentation.to_strings() == sys.fragmentation.to_strings());
        CHECK(system_to_json(back) == text);
        // The reloaded machine works: a generator still squares to identity.
        CHECK(order(back.generator(back.generator_names[0]), 2) == 2);
    }
}

TEST_CASE("manifests") {
    RunManifest m;
    m.command = "growth";
    m.system = "golden-mean";
    m.parameters = {{"radius", "4"}, {"gens", "all"}};
    m.seed = kDefaultSeed;
    m.version = kToolVersion;
    m.output_digests = {{"growth.csv", fnv1a_hex("0,1\n1,13\n")}};
    std::string text = manifest_to_json(m);
    RunManifest back = manifest_from_json(text);
    CHECK(back.command == m.command);
    CHECK(back.parameters == m.parameters);
    CHECK(back.seed == m.seed);
    CHECK(back.output_digests == m.output_digests);
    CHECK(manifest_to_json(back) == text);
}

TEST_CASE("fnv1a digests") {
    CHECK(fnv1a("") == 14695981039346656037ULL);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

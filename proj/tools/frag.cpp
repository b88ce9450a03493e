// Command-line surface: element orders, growth tables, recursive chains,
// orbital balls, inverted-orbit tables, substitution statistics, and the
// verification suites.  Every file-producing command writes a manifest with
// digests so reruns can be checked byte for byte.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "frag/graphs.hpp"
#include "frag/growth.hpp"
#include "frag/json_io.hpp"
#include "frag/subshift.hpp"

using namespace frag;

namespace {

SystemConfig load_system(const std::string& name, const std::string& json_path) {
    if (!json_path.empty()) {
        std::ifstream in(json_path);
        if (!in) throw CLI::ValidationError("--system-json", "cannot open " + json_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return system_from_json(ss.str());
    }
    if (name == "f" || name == "golden-mean") return golden_mean_system();
    if (name == "grigorchuk" || name == "grig") return grigorchuk_system();
    throw CLI::ValidationError("--system", "unknown system " + name);
}

void write_file(const std::string& path, const std::string& contents,
                RunManifest* manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (manifest) manifest->output_digests[path] = fnv1a_hex(contents);
}

void finish_manifest(RunManifest manifest, const std::string& anchor_path) {
    manifest.version = kToolVersion;
    write_file(anchor_path + ".manifest.json", manifest_to_json(manifest), nullptr);
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

int report_outcome(const CheckReport& rep) {
    for (const auto& line : rep.lines) std::cout << line << "\n";
    return rep.ok ? 0 : 1;
}

Point parse_point_arg(const std::string& text) {
    try {
        return Point::parse(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError("point", e.what());
    }
}

// --- verification suites -----------------------------------------------------

CheckReport suite_relations() {
    SystemConfig f = golden_mean_system();
    SystemConfig g = grigorchuk_system();
    CheckReport rep = relation_suite(f);

    for (const auto& sys : {f, g})
        for (const auto& name : sys.generator_names) {
            if (order(sys.generator(name), 2) == 2)
                rep.pass(sys.name + ": " + name + " is an involution");
            else
                rep.fail(sys.name + ": " + name + " is not an involution");
        }

    auto klein = [&rep](const SystemConfig& sys, const std::vector<std::string>& names) {
        std::vector<TableElement> k = {sys.identity()};
        for (const auto& n : names) k.push_back(sys.generator(n));
        bool ok = true;
        for (const auto& x : k)
            for (const auto& y : k)
                if (std::count(k.begin(), k.end(), compose(x, y)) != 1) ok = false;
        if (ok && compose(k[1], k[2]) == k[3])
            rep.pass(sys.name + ": {e, " + names[0] + ", " + names[1] + ", " + names[2] +
                     "} is a Klein four-group");
        else
            rep.fail(sys.name + ": Klein group check failed");
    };
    klein(f, {"b0", "c0", "d0"});
    klein(g, {"b1", "b2", "b3"});

    for (int n = 6; n <= 9; ++n) {
        CheckReport r = deep_action_check(f, n);
        rep.lines.insert(rep.lines.end(), r.lines.begin(), r.lines.end());
        rep.ok = rep.ok && r.ok;
    }
    for (int n = 5; n <= 7; ++n) {
        CheckReport r = conjugation_identity_check(f, n);
        rep.ok = rep.ok && r.ok;
        rep.lines.push_back((r.ok ? "ok: " : "FAIL: ") + std::string("conjugation of the") +
                            " alternating part at weight " + std::to_string(n));
    }
    return rep;
}

CheckReport suite_returns(std::uint64_t seed) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    for (const auto& sys : {golden_mean_system(), grigorchuk_system()}) {
        Point base = sys.singular.front().point;
        int bad = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            size_t len = rng() % 31;
            std::vector<std::string> word;
            for (size_t i = 0; i < len; ++i)
                word.push_back(sys.generator_names[rng() % sys.generator_names.size()]);
            auto r = inverted_orbit(sys, base, word);
            if (r.first_returns.size() + r.orbit.size() != len) ++bad;
        }
        if (bad == 0)
            rep.pass(sys.name + ": first returns + orbit size = word length on 1000 words");
        else
            rep.fail(sys.name + ": " + std::to_string(bad) + " words broke the identity");
    }
    return rep;
}

CheckReport suite_models(std::uint64_t seed) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    for (const auto& sys : {golden_mean_system(), grigorchuk_system()}) {
        int bad = 0;
        for (int trial = 0; trial < 500; ++trial) {
            Point root = [&] {
                while (true) {
                    Word pre, per;
                    size_t len = rng() % 8, plen = 1 + rng() % 5;
                    for (size_t i = 0; i < len; ++i)
                        pre += sys.alphabet.letters[rng() % sys.alphabet.letters.size()];
                    for (size_t i = 0; i < plen; ++i)
                        per += sys.alphabet.letters[rng() % sys.alphabet.letters.size()];
                    Point p(pre, per);
                    if (is_regular(sys, p)) return p;
                }
            }();
            std::vector<std::string> word;
            size_t wlen = rng() % 21;
            for (size_t i = 0; i < wlen; ++i)
                word.push_back(sys.generator_names[rng() % sys.generator_names.size()]);
            if (!cross_check_models(sys, root, word).ok) ++bad;
        }
        if (bad == 0)
            rep.pass(sys.name + ": shift model matches evaluation on 500 trajectories");
        else
            rep.fail(sys.name + ": " + std::to_string(bad) + " trajectories diverged");
    }
    return rep;
}

CheckReport suite_frag() {
    CheckReport rep;
    auto expect = [&rep](const std::vector<std::string>& rows, bool want) {
        auto r = check_fragmentation(FragmentationSpec::from_strings(rows));
        std::string label = "{";
        for (const auto& row : rows) label += row + " ";
        label.back() = '}';
        if (r.purely_non_hausdorff == want)
            rep.pass(label + (want ? " purely non-Hausdorff" : " rejected"));
        else
            rep.fail(label + " classified incorrectly");
    };
    expect({"110", "101"}, true);
    expect({"100", "010", "001"}, false);
    expect({"1"}, false);
    for (const auto& sys : {golden_mean_system(), grigorchuk_system()}) {
        auto r = check_fragmentation(sys.fragmentation);
        bool all = r.purely_non_hausdorff;
        for (bool s : r.surjective) all = all && s;
        if (all)
            rep.pass(sys.name + ": germ fragmentation is surjective per piece and purely"
                     " non-Hausdorff");
        else
            rep.fail(sys.name + ": germ fragmentation check failed");
    }
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with fragmented dihedral actions on sequence spaces"};
    app.require_subcommand(1);

    std::string system_name = "f", system_json;
    std::uint64_t seed = kDefaultSeed;
    int jobs = 1;

    auto add_system_opts = [&](CLI::App* cmd) {
        cmd->add_option("--system", system_name, "f | grigorchuk")->capture_default_str();
        cmd->add_option("--system-json", system_json, "load a system configuration file");
    };

    // order
    auto* cmd_order = app.add_subcommand("order", "order of a product of generators");
    std::vector<std::string> word;
    int max_power = 1 << 14;
    add_system_opts(cmd_order);
    cmd_order->add_option("word", word, "generator names, leftmost applied last");
    cmd_order->add_option("--max", max_power, "give up beyond this power")
        ->capture_default_str();

    // growth
    auto* cmd_growth = app.add_subcommand("growth", "ball sizes under composition");
    int radius = 4;
    std::string out_path, gens_csv;
    add_system_opts(cmd_growth);
    cmd_growth->add_option("--radius", radius)->required();
    cmd_growth->add_option("--out", out_path, "CSV output path")->required();
    cmd_growth->add_option("--gens", gens_csv, "comma-separated generator subset");
    cmd_growth->add_option("--jobs", jobs, "worker count (output independent)")
        ->capture_default_str();

    // chain
    auto* cmd_chain = app.add_subcommand("chain", "recursive golden-mean chain of weight n");
    int chain_n = 0;
    std::string dot_path;
    cmd_chain->add_option("n", chain_n)->required();
    cmd_chain->add_option("--dot", dot_path, "DOT output path");

    // ball
    auto* cmd_ball = app.add_subcommand("ball", "rooted orbital ball");
    std::string root_text = "(12)", ball_dot, ball_json;
    int ball_radius = 4;
    add_system_opts(cmd_ball);
    cmd_ball->add_option("--root", root_text, "point, e.g. 2(12)")->required();
    cmd_ball->add_option("--radius", ball_radius)->required();
    cmd_ball->add_option("--dot", ball_dot);
    cmd_ball->add_option("--json", ball_json);

    // nu
    auto* cmd_nu = app.add_subcommand("nu", "inverted-orbit table");
    std::string base_text = "(12)";
    int nu_exact_max = 6, nu_sampled_max = 0, samples = 1000;
    add_system_opts(cmd_nu);
    cmd_nu->add_option("--base", base_text, "base point")->required();
    cmd_nu->add_option("--max-exact", nu_exact_max)->capture_default_str();
    cmd_nu->add_option("--max-sampled", nu_sampled_max,
                       "extend with sampled lower bounds up to this length");
    cmd_nu->add_option("--samples", samples)->capture_default_str();
    cmd_nu->add_option("--seed", seed)->capture_default_str();
    cmd_nu->add_option("--out", out_path, "CSV output path")->required();
    cmd_nu->add_option("--gens", gens_csv, "comma-separated generator subset");

    // factors
    auto* cmd_factors = app.add_subcommand("factors", "substitution complexity table");
    std::string sub_name = "tm";
    int max_n = 10;
    cmd_factors->add_option("--sub", sub_name, "tm | tm-frag | mirror")
        ->capture_default_str();
    cmd_factors->add_option("--max-n", max_n)->capture_default_str();
    cmd_factors->add_option("--out", out_path, "CSV output path")->required();

    // repetitivity
    auto* cmd_rep = app.add_subcommand("repetitivity", "return radii of orbital balls");
    std::string rep_base = "(1)";
    int max_r = 8, bound = 60;
    add_system_opts(cmd_rep);
    cmd_rep->add_option("--base", rep_base)->capture_default_str();
    cmd_rep->add_option("--max-r", max_r)->capture_default_str();
    cmd_rep->add_option("--bound", bound)->capture_default_str();
    cmd_rep->add_option("--out", out_path, "CSV output path")->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    cmd_verify->add_option("--suite", suite, "all | relations | returns | models | frag")
        ->capture_default_str();
    cmd_verify->add_option("--seed", seed)->capture_default_str();

    // dump-system
    auto* cmd_dump = app.add_subcommand("dump-system",
                                        "write a system configuration as JSON");
    add_system_opts(cmd_dump);
    cmd_dump->add_option("--out", out_path, "JSON output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_order) {
            SystemConfig sys = load_system(system_name, system_json);
            TableElement g = sys.identity();
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                if (!it->empty()) g = compose(sys.element(*it), g);
            auto n = order(g, max_power);
            if (!n) {
                std::cout << "ExceedsBound(" << max_power << ")\n";
                return 1;
            }
            std::cout << *n << "\n";
            return 0;
        }

        if (*cmd_growth) {
            SystemConfig sys = load_system(system_name, system_json);
            std::vector<std::string> gens;
            std::stringstream ss(gens_csv);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) gens.push_back(item);
            GrowthTable table = growth_ball(sys, gens, radius, jobs);
            std::string csv =
                "# gamma(n): distinct canonical elements of word length <= n"
                " (ball, not sphere)\n";
            for (size_t n = 0; n < table.sizes.size(); ++n)
                csv += std::to_string(n) + "," + std::to_string(table.sizes[n]) + "\n";
            if (!table.complete) csv += "# element budget reached; table is partial\n";
            RunManifest manifest{"growth", sys.name,
                                 {{"radius", std::to_string(radius)},
                                  {"gens", gens_csv.empty() ? "all" : gens_csv},
                                  {"jobs", std::to_string(jobs)}},
                                 0, kToolVersion, {}};
            write_file(out_path, csv, &manifest);
            finish_manifest(manifest, out_path);
            std::cout << "ball sizes written to " << out_path << "\n";
            return table.complete ? 0 : 1;
        }

        if (*cmd_chain) {
            ChainGraph chain = build_chain_I(chain_n);
            std::cout << "vertices: " << chain.vertices.size() << "\n";
            if (!chain.vertices.empty())
                std::cout << "left: " << chain.vertices.front()
                          << "  right: " << chain.vertices.back() << "\n";
            if (!dot_path.empty()) {
                RunManifest manifest{"chain", "golden-mean",
                                     {{"n", std::to_string(chain_n)}}, 0, kToolVersion, {}};
                write_file(dot_path, chain_to_dot(chain, "chain" + std::to_string(chain_n)),
                           &manifest);
                finish_manifest(manifest, dot_path);
            }
            return 0;
        }

        if (*cmd_ball) {
            SystemConfig sys = load_system(system_name, system_json);
            OrbitalBall ball = orbital_ball(sys, parse_point_arg(root_text), ball_radius);
            std::cout << "vertices: " << ball.vertices.size()
                      << "  edges: " << ball.edges.size() << "\n";
            RunManifest manifest{"ball", sys.name,
                                 {{"root", root_text},
                                  {"radius", std::to_string(ball_radius)}},
                                 0, kToolVersion, {}};
            std::string anchor;
            if (!ball_dot.empty()) {
                write_file(ball_dot, ball_to_dot(ball, "ball"), &manifest);
                anchor = ball_dot;
            }
            if (!ball_json.empty()) {
                write_file(ball_json, ball_to_json(ball), &manifest);
                if (anchor.empty()) anchor = ball_json;
            }
            if (!anchor.empty()) finish_manifest(manifest, anchor);
            return 0;
        }

        if (*cmd_nu) {
            SystemConfig sys = load_system(system_name, system_json);
            std::vector<std::string> gens;
            std::stringstream ss(gens_csv);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) gens.push_back(item);
            Point base = parse_point_arg(base_text);
            std::string csv = "# n,nu,exact,delta  (delta = nu/n)\n";
            for (int n = 1; n <= nu_exact_max; ++n) {
                int v = nu_exact(sys, base, n, gens);
                csv += std::to_string(n) + "," + std::to_string(v) + ",1," +
                       format_double(static_cast<double>(v) / n) + "\n";
            }
            for (int n = nu_exact_max + 1; n <= nu_sampled_max; ++n) {
                int v = nu_sampled(sys, base, n, samples, seed, gens);
                csv += std::to_string(n) + "," + std::to_string(v) + ",0," +
                       format_double(static_cast<double>(v) / n) + "\n";
            }
            RunManifest manifest{"nu", sys.name,
                                 {{"base", base_text},
                                  {"max_exact", std::to_string(nu_exact_max)},
                                  {"max_sampled", std::to_string(nu_sampled_max)},
                                  {"samples", std::to_string(samples)},
                                  {"gens", gens_csv.empty() ? "all" : gens_csv}},
                                 seed, kToolVersion, {}};
            write_file(out_path, csv, &manifest);
            finish_manifest(manifest, out_path);
            std::cout << "nu table written to " << out_path << "\n";
            return 0;
        }

        if (*cmd_factors) {
            Substitution sub = sub_name == "tm" ? thue_morse()
                               : sub_name == "tm-frag" ? fragmented_thue_morse()
                               : sub_name == "mirror" ? mirror_substitution()
                               : throw CLI::ValidationError("--sub", "unknown substitution");
            std::string csv = "# n,p(n),R(n),R(n)/n\n";
            for (int n = 1; n <= max_n; ++n) {
                int p = complexity(sub, n);
                int r = repetitivity(sub, n);
                csv += std::to_string(n) + "," + std::to_string(p) + "," +
                       std::to_string(r) + "," +
                       format_double(static_cast<double>(r) / n) + "\n";
            }
            RunManifest manifest{"factors", sub_name,
                                 {{"max_n", std::to_string(max_n)}}, 0, kToolVersion, {}};
            write_file(out_path, csv, &manifest);
            finish_manifest(manifest, out_path);
            std::cout << "factor table written to " << out_path << "\n";
            return 0;
        }

        if (*cmd_rep) {
            SystemConfig sys = load_system(system_name, system_json);
            Point base = parse_point_arg(rep_base);
            std::string csv = "# r,R,ratio\n";
            bool exceeded = false;
            for (int r = 1; r <= max_r; ++r) {
                auto res = repetitivity_radius(sys, base, r, bound);
                exceeded = exceeded || res.exceeded;
                csv += std::to_string(r) + "," + std::to_string(res.radius_needed) + "," +
                       format_double(res.ratio) + (res.exceeded ? ",exceeded" : "") + "\n";
            }
            RunManifest manifest{"repetitivity", sys.name,
                                 {{"base", rep_base},
                                  {"max_r", std::to_string(max_r)},
                                  {"bound", std::to_string(bound)}},
                                 0, kToolVersion, {}};
            write_file(out_path, csv, &manifest);
            finish_manifest(manifest, out_path);
            std::cout << "repetitivity table written to " << out_path << "\n";
            return exceeded ? 1 : 0;
        }

        if (*cmd_dump) {
            SystemConfig sys = load_system(system_name, system_json);
            write_file(out_path, system_to_json(sys), nullptr);
            std::cout << "system configuration written to " << out_path << "\n";
            return 0;
        }

        if (*cmd_verify) {
            CheckReport all;
            auto merge = [&all](const CheckReport& r) {
                all.ok = all.ok && r.ok;
                all.lines.insert(all.lines.end(), r.lines.begin(), r.lines.end());
            };
            if (suite == "relations" || suite == "all") merge(suite_relations());
            if (suite == "returns" || suite == "all") merge(suite_returns(seed));
            if (suite == "models" || suite == "all") merge(suite_models(seed));
            if (suite == "frag" || suite == "all") merge(suite_frag());
            if (all.lines.empty())
                throw CLI::ValidationError("--suite", "unknown suite " + suite);
            int code = report_outcome(all);
            std::cout << (all.ok ? "PASS" : "FAIL") << " (" << all.lines.size()
                      << " checks)\n";
            return code;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

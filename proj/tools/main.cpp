#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sublogic/classifier.hpp"
#include "sublogic/errors.hpp"
#include "sublogic/generators.hpp"
#include "sublogic/parser.hpp"
#include "sublogic/semantics.hpp"
#include "sublogic/solvers.hpp"
#include "sublogic/transforms.hpp"

using namespace sublogic;
using nlohmann::json;

namespace {

// "-" reads standard input, so reductions chain through pipes.
std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// SUBLOGIC_LIMITS=closure=14,domain=3
Limits limits_from_env() {
    Limits limits;
    const char* env = std::getenv("SUBLOGIC_LIMITS");
    if (!env)
        return limits;
    std::string s(env);
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("SUBLOGIC_LIMITS: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        int value = std::stoi(item.substr(eq + 1));
        if (key == "closure")
            limits.closure_limit = value;
        else if (key == "domain")
            limits.brute_max_domain = value;
        else
            throw Error("SUBLOGIC_LIMITS: unknown key '" + key + "'");
    }
    return limits;
}

QuantifierSet parse_quantifiers(const std::string& s) {
    if (s == "none") return QuantifierSet::none();
    if (s == "exists") return QuantifierSet::only_exists();
    if (s == "forall") return QuantifierSet::only_forall();
    if (s == "both") return QuantifierSet::both();
    throw Error("bad quantifier set '" + s + "' (none|exists|forall|both)");
}

std::string quantifiers_name(QuantifierSet q) {
    if (q.empty()) return "none";
    if (q.exists && q.forall) return "both";
    return q.exists ? "exists" : "forall";
}

json descriptor_json(const CloneDescriptor& d) {
    json j;
    j["named"] = d.named ? json(clone_name(*d.named)) : json(nullptr);
    j["contains"] = json::array();
    for (Clone c : d.contains)
        j["contains"].push_back(clone_name(c));
    j["within"] = json::array();
    for (Clone c : d.within)
        j["within"].push_back(clone_name(c));
    j["conservative"] = d.conservative;
    return j;
}

json verdict_json(const ComplexityVerdict& v) {
    json j;
    j["class"] = complexity_name(v.cls);
    if (v.open_bounds) {
        j["lower"] = v.open_bounds->first;
        j["upper"] = v.open_bounds->second;
    }
    j["provenance"] = v.provenance;
    return j;
}

int cmd_clone(const std::string& file, bool as_json) {
    CloneDescriptor d = identify_clone(parse_operators(read_file(file)));
    if (as_json) {
        std::cout << descriptor_json(d).dump(2) << "\n";
        return 0;
    }
    if (d.named) {
        std::cout << clone_name(*d.named) << "\n";
    } else {
        std::string lo, hi;
        for (Clone c : d.contains)
            lo += (lo.empty() ? "" : ",") + clone_name(c);
        for (Clone c : d.within)
            hi += (hi.empty() ? "" : ",") + clone_name(c);
        std::cout << "unnamed (contains: " << lo << "; within: " << hi << ")\n";
    }
    return 0;
}

std::string table_row_text(const TableRow& r) {
    std::ostringstream os;
    os << kind_name(r.kind) << " " << quantifiers_name(r.q) << " " << clone_name(r.clone)
       << ": " << r.verdict.to_string();
    return os.str();
}

int cmd_classify(const std::string& file, const std::string& problem,
                 const std::string& quantifiers, bool table, bool as_json) {
    if (table) {
        auto rows = classification_table();
        if (as_json) {
            json j = json::array();
            for (const auto& r : rows) {
                json e = verdict_json(r.verdict);
                e["clone"] = clone_name(r.clone);
                e["problem"] = kind_name(r.kind);
                e["quantifiers"] = quantifiers_name(r.q);
                j.push_back(e);
            }
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& r : rows)
                std::cout << table_row_text(r) << "\n";
        }
        return 0;
    }
    auto kind = kind_by_name(problem);
    if (!kind)
        throw Error("bad problem kind '" + problem + "'");
    if (file.empty())
        throw Error("classify needs an operator file (or --table)");
    ComplexityVerdict v =
        classify(*kind, parse_quantifiers(quantifiers), parse_operators(read_file(file)));
    if (as_json)
        std::cout << verdict_json(v).dump(2) << "\n";
    else
        std::cout << v.to_string() << "\n";
    return 0;
}

int cmd_solve(const std::string& file, const std::string& method_str, bool cross_check,
              bool with_model, bool as_json) {
    auto method = method_by_name(method_str);
    if (!method)
        throw Error("bad method '" + method_str + "'");
    ProblemInstance inst = parse_instance(read_file(file));
    SolveResult r = dispatch(inst, *method, cross_check, limits_from_env());
    if (as_json) {
        json j;
        j["status"] = status_name(r.status);
        j["method"] = r.method;
        j["witness"] = r.witness;
        j["stats"] = {{"types", r.stats.types_generated},
                      {"rules", r.stats.rules_fired},
                      {"decisions", r.stats.decisions}};
        if (with_model && r.model)
            j["model"] = r.model->to_string();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << status_name(r.status) << "\n";
    if (with_model && r.model) {
        std::cout << "model\n" << r.model->to_string();
    }
    for (const auto& w : r.witness)
        std::cout << "# " << w << "\n";
    return 0;
}

int cmd_reduce(const std::string& file, const std::string& transform,
               const std::string& target_kind, const std::string& target_ops_file,
               bool as_json) {
    ProblemInstance inst = parse_instance(read_file(file));
    TransformResult res;
    if (transform == "lift") {
        auto kind = kind_by_name(target_kind);
        if (!kind)
            throw Error("lift needs --target-kind csat|tsat|tcsat|osat|ocsat");
        res = lift(inst, *kind);
    } else if (transform == "simulate-constants") {
        res = simulate_constants(inst);
    } else if (transform == "tcsat-to-tsat") {
        res = tcsat_to_tsat(inst);
    } else if (transform == "lewis") {
        res = lewis_relativize(inst);
    } else if (transform == "dualize") {
        res = dualize(inst, inst.kind == ProblemKind::TCSAT ? DualizeMode::Tcsat
                                                            : DualizeMode::Tsat);
    } else if (transform == "change-base") {
        if (target_ops_file.empty())
            throw Error("change-base needs --target-ops FILE");
        res = change_base(inst, parse_operators(read_file(target_ops_file)));
    } else if (transform == "normalize") {
        res = normalize_nf(inst);
    } else if (transform == "nf7") {
        res = eliminate_conjunction_nf7(inst);
    } else {
        throw Error("unknown transform '" + transform + "'");
    }
    if (as_json) {
        json j;
        j["instance"] = print_instance(res.instance);
        j["input_kind"] = kind_name(res.report.input_kind);
        j["output_kind"] = kind_name(res.report.output_kind);
        j["fresh_names"] = res.report.fresh_names;
        j["axioms_added"] = res.report.axioms_added;
        j["axioms_rewritten"] = res.report.axioms_rewritten;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << print_instance(res.instance);
    }
    return 0;
}

int cmd_gen(const std::string& what, uint64_t seed, int nodes, int edges, int from, int to,
            int sources, int vars, int clauses, const std::string& problem,
            const std::string& quantifiers, const std::string& clone_str,
            const RandomParams& params, bool with_answer, bool as_json) {
    ProblemInstance inst;
    std::optional<bool> expected;
    if (what == "gap") {
        Digraph g = random_digraph(nodes, edges, seed);
        int t = to < 0 ? nodes - 1 : to;
        inst = gen_gap(g, from, t);
        expected = !gap_reachable(g, from, t);
    } else if (what == "hgap") {
        Hypergraph h = random_hypergraph(nodes, edges, seed);
        std::vector<int> srcs;
        for (int i = 0; i < std::min(sources, nodes); ++i)
            srcs.push_back(i);
        int t = to < 0 ? nodes - 1 : to;
        inst = gen_hgap(h, srcs, t);
        expected = !hgap_reachable(h, srcs, t);
    } else if (what == "one-in-three") {
        auto cls = random_one_in_three(vars, clauses, seed);
        inst = gen_one_in_three(cls);
        expected = one_in_three_satisfiable(cls);
    } else if (what == "random") {
        RandomProfile profile;
        auto kind = kind_by_name(problem);
        if (!kind)
            throw Error("gen random needs --problem");
        profile.kind = *kind;
        profile.q = parse_quantifiers(quantifiers);
        auto c = clone_by_name(clone_str);
        if (!c)
            throw Error("unknown clone '" + clone_str + "'");
        profile.base = *c;
        inst = gen_random(profile, seed, params);
    } else {
        throw Error("unknown generator '" + what + "'");
    }
    std::string text = print_instance(inst);
    if (with_answer && expected)
        text += std::string("# expected: ") + (*expected ? "sat" : "unsat") + "\n";
    if (as_json) {
        json j;
        j["instance"] = text;
        if (with_answer && expected)
            j["expected"] = *expected ? "sat" : "unsat";
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return 0;
}

std::string bench_profile(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    std::string clone = "I2";
    if (!sig.used_operators.empty()) {
        CloneDescriptor d = identify_clone(sig.used_operators);
        clone = d.named ? clone_name(*d.named) : "?";
    }
    return kind_name(inst.kind) + "/" +
           quantifiers_name({sig.uses_exists, sig.uses_forall}) + "/" + clone;
}

int cmd_bench(const std::string& dir, const std::string& method_str, int jobs, bool as_json) {
    auto method = method_by_name(method_str);
    if (!method)
        throw Error("bad method '" + method_str + "'");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Row {
        std::string id, profile, method, status;
        int64_t ms = 0, types = 0, rules = 0;
        std::string error;
    };
    Limits limits = limits_from_env();
    auto run_one = [&](const std::filesystem::path& path) -> Row {
        Row row;
        row.id = path.filename().string();
        try {
            ProblemInstance inst = parse_instance(read_file(path.string()));
            row.profile = bench_profile(inst);
            auto start = std::chrono::steady_clock::now();
            SolveResult r = dispatch(inst, *method, false, limits);
            auto end = std::chrono::steady_clock::now();
            row.method = r.method;
            row.status = status_name(r.status);
            row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
            row.types = r.stats.types_generated;
            row.rules = r.stats.rules_fired;
        } catch (const std::exception& e) {
            row.status = "ERROR";
            row.error = e.what();
        }
        return row;
    };

    std::vector<Row> rows(files.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < files.size(); ++i)
            rows[i] = run_one(files[i]);
    } else {
        // Parallel solving; rows land in input order regardless of finish order.
        std::vector<std::future<Row>> futures;
        for (const auto& f : files)
            futures.push_back(std::async(std::launch::deferred, run_one, f));
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::mutex m;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= files.size())
                        return;
                    Row r = run_one(files[i]);
                    std::lock_guard<std::mutex> lock(m);
                    rows[i] = std::move(r);
                }
            });
        for (auto& t : pool)
            t.join();
    }

    if (as_json) {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"id", r.id},
                         {"profile", r.profile},
                         {"method", r.method},
                         {"status", r.status},
                         {"ms", r.ms},
                         {"types", r.types},
                         {"rules", r.rules}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "id,profile,method,status,ms,types,rules\n";
        for (const auto& r : rows)
            std::cout << r.id << "," << r.profile << "," << r.method << "," << r.status << ","
                      << r.ms << "," << r.types << "," << r.rules << "\n";
    }
    for (const auto& r : rows)
        if (!r.error.empty())
            std::cerr << r.id << ": " << r.error << "\n";
    return 0;
}

int cmd_selftest(bool as_json) {
    int failures = 0;
    std::vector<std::string> lines;
    // Base identification for every stored clone.
    for (Clone c : all_clones()) {
        OperatorSet base;
        for (const auto& op : clone_base(c))
            base.add(op);
        CloneDescriptor d = identify_clone(base);
        bool ok = d.named && *d.named == c;
        if (!ok)
            ++failures;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + "identify " + clone_name(c));
    }
    // Classification against the hand-encoded paper tables.
    auto check_cells = [&](const std::vector<GoldenCell>& cells, const std::string& what) {
        int bad = 0;
        for (const auto& cell : cells) {
            OperatorSet base;
            for (const auto& op : clone_base(cell.clone))
                base.add(op);
            if (classify(cell.kind, cell.q, base).cls != cell.expect)
                ++bad;
        }
        failures += bad;
        lines.push_back(std::string(bad == 0 ? "ok   " : "FAIL ") + what + " (" +
                        std::to_string(cells.size()) + " cells, " + std::to_string(bad) +
                        " mismatches)");
    };
    check_cells(golden_overview_table(), "overview table");
    check_cells(golden_per_clone_table(), "per-clone table");

    if (as_json) {
        json j;
        j["failures"] = failures;
        j["lines"] = lines;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& l : lines)
            std::cout << l << "\n";
        std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
    }
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean-operator fragments of ALC: clone analysis, complexity "
                 "classification, solving, reductions, and instance generation"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    auto* clone_cmd = app.add_subcommand("clone", "identify the clone of an operator set");
    std::string clone_file;
    clone_cmd->add_option("ops_file", clone_file, "operator declarations")->required();

    auto* classify_cmd = app.add_subcommand("classify", "complexity of a fragment");
    std::string cl_problem = "tsat", cl_quant = "both", cl_file;
    bool cl_table = false;
    classify_cmd->add_option("--problem", cl_problem, "tsat|tcsat|osat|ocsat");
    classify_cmd->add_option("--quantifiers", cl_quant, "none|exists|forall|both");
    classify_cmd->add_flag("--table", cl_table, "print the full classification table");
    classify_cmd->add_option("ops_file", cl_file, "operator declarations");

    auto* solve_cmd = app.add_subcommand("solve", "decide an instance");
    std::string sv_method = "auto", sv_file;
    bool sv_cross = false, sv_model = false;
    solve_cmd->add_option("--method", sv_method,
                          "auto|typeelim|brute|nlgraph|saturation|el|forallv|propsat");
    solve_cmd->add_flag("--cross-check", sv_cross, "verify against the oracle solvers");
    solve_cmd->add_flag("--model", sv_model, "print a model when satisfiable");
    solve_cmd->add_option("file", sv_file, "instance file")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "apply a reduction");
    std::string rd_transform, rd_target_kind, rd_target_ops, rd_file;
    reduce_cmd
        ->add_option("--transform", rd_transform,
                     "lift|simulate-constants|tcsat-to-tsat|lewis|dualize|change-base|"
                     "normalize|nf7")
        ->required();
    reduce_cmd->add_option("--target-kind", rd_target_kind, "lift target");
    reduce_cmd->add_option("--target-ops", rd_target_ops, "change-base target operators");
    reduce_cmd->add_option("file", rd_file, "instance file")->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate instances");
    std::string gn_what, gn_problem = "tsat", gn_quant = "none", gn_clone = "BF";
    uint64_t gn_seed = 1;
    int gn_nodes = 10, gn_edges = 15, gn_from = 0, gn_to = -1, gn_sources = 2, gn_vars = 6,
        gn_clauses = 5;
    bool gn_answer = false;
    gen_cmd->add_option("what", gn_what, "gap|hgap|one-in-three|random")->required();
    gen_cmd->add_option("--seed", gn_seed, "rng seed");
    gen_cmd->add_option("--nodes", gn_nodes, "graph nodes");
    gen_cmd->add_option("--edges", gn_edges, "graph (hyper)edges");
    gen_cmd->add_option("--from", gn_from, "gap source node");
    gen_cmd->add_option("--to", gn_to, "target node (default: last)");
    gen_cmd->add_option("--sources", gn_sources, "hgap source-set size");
    gen_cmd->add_option("--vars", gn_vars, "one-in-three variables");
    gen_cmd->add_option("--clauses", gn_clauses, "one-in-three clauses");
    gen_cmd->add_option("--problem", gn_problem, "random profile kind");
    gen_cmd->add_option("--quantifiers", gn_quant, "random profile quantifiers");
    gen_cmd->add_option("--clone", gn_clone, "random profile base clone");
    gen_cmd->add_flag("--with-answer", gn_answer, "append the ground-truth verdict");
    RandomParams gn_params;
    gen_cmd->add_option("--atoms", gn_params.atoms, "random profile atom pool");
    gen_cmd->add_option("--roles", gn_params.roles, "random profile role pool");
    gen_cmd->add_option("--axioms", gn_params.axioms, "random profile axiom cap");
    gen_cmd->add_option("--depth", gn_params.depth, "random profile concept depth");
    gen_cmd->add_option("--individuals", gn_params.individuals, "random profile individuals");
    gen_cmd->add_option("--assertions", gn_params.assertions, "random profile assertion cap");

    auto* bench_cmd = app.add_subcommand("bench", "run a directory of instances");
    std::string bn_dir, bn_method = "auto";
    int bn_jobs = 1;
    bench_cmd->add_option("dir", bn_dir, "instance directory")->required();
    bench_cmd->add_option("--method", bn_method, "solver method");
    bench_cmd->add_option("--jobs", bn_jobs, "parallel workers");

    app.add_subcommand("selftest", "base identifications and table reproduction");

    CLI11_PARSE(app, argc, argv);

    try {
        if (clone_cmd->parsed())
            return cmd_clone(clone_file, as_json);
        if (classify_cmd->parsed())
            return cmd_classify(cl_file, cl_problem, cl_quant, cl_table, as_json);
        if (solve_cmd->parsed())
            return cmd_solve(sv_file, sv_method, sv_cross, sv_model, as_json);
        if (reduce_cmd->parsed())
            return cmd_reduce(rd_file, rd_transform, rd_target_kind, rd_target_ops, as_json);
        if (gen_cmd->parsed())
            return cmd_gen(gn_what, gn_seed, gn_nodes, gn_edges, gn_from, gn_to, gn_sources,
                           gn_vars, gn_clauses, gn_problem, gn_quant, gn_clone, gn_params,
                           gn_answer, as_json);
        if (bench_cmd->parsed())
            return cmd_bench(bn_dir, bn_method, bn_jobs, as_json);
        if (app.get_subcommand("selftest")->parsed())
            return cmd_selftest(as_json);
    } catch (const DiscrepancyError& e) {
        std::cerr << "discrepancy: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

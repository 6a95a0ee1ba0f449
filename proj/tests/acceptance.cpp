// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs through ctest as the release gate.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "sublogic/classifier.hpp"
#include "sublogic/errors.hpp"
#include "sublogic/generators.hpp"
#include "sublogic/parser.hpp"
#include "sublogic/semantics.hpp"
#include "sublogic/solvers.hpp"
#include "sublogic/transforms.hpp"

using namespace sublogic;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("%s  criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!ok)
        ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

OperatorSet base_of(Clone c) {
    OperatorSet ops;
    for (const auto& op : clone_base(c))
        ops.add(op);
    return ops;
}

// ---------------------------------------------------------------------------

void criterion1_clone_identification() {
    const Clone figure_bases[] = {Clone::BF, Clone::R0, Clone::R1, Clone::M,  Clone::S1,
                                  Clone::S11, Clone::D, Clone::L,  Clone::L0, Clone::L3,
                                  Clone::E0, Clone::E,  Clone::V0, Clone::V,  Clone::N2,
                                  Clone::N,  Clone::I0, Clone::I};
    int bad = 0;
    double worst = 0;
    for (Clone c : figure_bases) {
        auto start = Clock::now();
        CloneDescriptor d = identify_clone(base_of(c));
        double secs = seconds_since(start);
        worst = std::max(worst, secs);
        if (!(d.named && *d.named == c && secs < 1.0))
            ++bad;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "18 bases, %d mismatches, worst %.3fs", bad, worst);
    report(1, "clone identification of the function-table bases", bad == 0, detail);
}

void criterion2_classification_tables() {
    int bad = 0;
    size_t cells = 0;
    auto run = [&](const std::vector<GoldenCell>& golden) {
        for (const auto& cell : golden) {
            ++cells;
            if (classify(cell.kind, cell.q, base_of(cell.clone)).cls != cell.expect)
                ++bad;
        }
    };
    run(golden_overview_table());
    run(golden_per_clone_table());
    report(2, "classification reproduces both paper tables", bad == 0,
           std::to_string(cells) + " cells, " + std::to_string(bad) + " mismatches");
}

// ---------------------------------------------------------------------------

struct Family {
    std::string name;
    Method expected_method;
    std::function<RandomProfile(uint64_t)> profile;
};

void criterion3_cross_validation() {
    Limits limits;
    std::vector<Family> families;
    families.push_back({"quantifier-free any-B", Method::PropSat, [](uint64_t seed) {
                            RandomProfile p;
                            Clone bases[] = {Clone::BF, Clone::L, Clone::M, Clone::D};
                            p.base = bases[seed % 4];
                            ProblemKind kinds[] = {ProblemKind::TSAT, ProblemKind::TCSAT,
                                                   ProblemKind::OSAT, ProblemKind::OCSAT};
                            p.kind = kinds[seed % 4];
                            p.q = QuantifierSet::none();
                            return p;
                        }});
    families.push_back({"no quantifiers / N", Method::NlGraph, [](uint64_t seed) {
                            RandomProfile p;
                            Clone bases[] = {Clone::N, Clone::N2, Clone::I, Clone::I0};
                            p.base = bases[seed % 4];
                            ProblemKind kinds[] = {ProblemKind::TSAT, ProblemKind::TCSAT,
                                                   ProblemKind::OSAT, ProblemKind::OCSAT};
                            p.kind = kinds[seed % 4];
                            p.q = QuantifierSet::none();
                            return p;
                        }});
    families.push_back({"forall / E tsat", Method::Saturation, [](uint64_t seed) {
                            RandomProfile p;
                            Clone bases[] = {Clone::E, Clone::E0};
                            p.base = bases[seed % 2];
                            p.kind = ProblemKind::TSAT;
                            p.q = QuantifierSet::only_forall();
                            return p;
                        }});
    families.push_back({"exists / E with abox", Method::El, [](uint64_t seed) {
                            RandomProfile p;
                            Clone bases[] = {Clone::E, Clone::E0};
                            p.base = bases[seed % 2];
                            p.kind = seed % 3 ? ProblemKind::OCSAT : ProblemKind::OSAT;
                            p.q = QuantifierSet::only_exists();
                            return p;
                        }});
    families.push_back({"forall / V with abox", Method::ForallV, [](uint64_t seed) {
                            RandomProfile p;
                            Clone bases[] = {Clone::V, Clone::V0};
                            p.base = bases[seed % 2];
                            p.kind = seed % 3 ? ProblemKind::OCSAT : ProblemKind::OSAT;
                            p.q = QuantifierSet::only_forall();
                            return p;
                        }});

    auto start = Clock::now();
    RandomParams params;
    params.atoms = 5;
    params.roles = 2;
    params.axioms = 8;
    params.depth = 2;
    params.individuals = 3;
    params.assertions = 2;

    bool all_ok = true;
    std::string detail;
    for (const auto& family : families) {
        int ran = 0, disagreements = 0, brute_checked = 0;
        for (uint64_t seed = 1; ran < 500; ++seed) {
            ProblemInstance inst = gen_random(family.profile(seed), seed, params);
            if (subconcept_closure(inst).size() > 14)
                continue;
            ++ran;
            SolveResult specialized = dispatch(inst, family.expected_method, false, limits);
            SolveResult oracle = solve_typeelim(inst, limits);
            if (specialized.status != oracle.status)
                ++disagreements;
            if (oracle.model && !check_model(*oracle.model, inst))
                ++disagreements;
            try {
                SolveResult brute = solve_bruteforce(inst, limits.brute_max_domain, limits);
                if (brute.status != Status::UNKNOWN) {
                    ++brute_checked;
                    if (brute.status != oracle.status)
                        ++disagreements;
                }
            } catch (const LimitError&) {
            }
        }
        if (disagreements != 0)
            all_ok = false;
        detail += family.name + ": 500 run, " + std::to_string(disagreements) +
                  " disagreements, " + std::to_string(brute_checked) + " brute-conclusive; ";
    }
    double secs = seconds_since(start);
    all_ok = all_ok && secs < 300.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    report(3, "solver cross-validation", all_ok, detail + buf);
}

// ---------------------------------------------------------------------------

void criterion4_reduction_soundness() {
    Limits limits;
    limits.closure_limit = 24;

    auto equisat = [&](const ProblemInstance& a, const ProblemInstance& b) {
        return solve_typeelim(a, limits).status == solve_typeelim(b, limits).status;
    };
    auto in_reach = [&](const ProblemInstance& inst, size_t cap) {
        return subconcept_closure(inst).size() <= cap;
    };

    struct Xform {
        std::string name;
        std::function<std::optional<ProblemInstance>(uint64_t)> gen;
        std::function<ProblemInstance(const ProblemInstance&)> apply;
    };
    RandomParams small;
    small.atoms = 4;
    small.roles = 2;
    small.axioms = 4;
    small.depth = 2;
    small.individuals = 2;
    small.assertions = 2;

    auto draw = [&](RandomProfile p, uint64_t seed,
                    size_t cap) -> std::optional<ProblemInstance> {
        ProblemInstance inst = gen_random(p, seed, small);
        if (!in_reach(inst, cap))
            return std::nullopt;
        return inst;
    };

    std::vector<Xform> xforms;
    xforms.push_back({"lift",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = Clone::BF;
                          p.kind = seed % 2 ? ProblemKind::TSAT : ProblemKind::CSAT;
                          p.q = seed % 3 ? QuantifierSet::both() : QuantifierSet::none();
                          return draw(p, seed, 10);
                      },
                      [](const ProblemInstance& i) {
                          return lift(i, ProblemKind::OCSAT).instance;
                      }});
    xforms.push_back({"simulate_constants",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = Clone::N;
                          p.kind = ProblemKind::TSAT;
                          p.q = seed % 2 ? QuantifierSet::none() : QuantifierSet::both();
                          return draw(p, seed, 10);
                      },
                      [](const ProblemInstance& i) {
                          return simulate_constants(i).instance;
                      }});
    xforms.push_back({"tcsat_to_tsat",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = seed % 2 ? Clone::E : Clone::BF;
                          p.kind = ProblemKind::TCSAT;
                          p.q = seed % 3 ? QuantifierSet::only_exists()
                                         : QuantifierSet::both();
                          return draw(p, seed, 11);
                      },
                      [](const ProblemInstance& i) { return tcsat_to_tsat(i).instance; }});
    xforms.push_back({"lewis_relativize",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = seed % 2 ? Clone::E : Clone::M;
                          p.kind = ProblemKind::TSAT;
                          p.q = QuantifierSet::both();
                          return draw(p, seed, 9);
                      },
                      [](const ProblemInstance& i) {
                          return lewis_relativize(i).instance;
                      }});
    xforms.push_back({"dualize_tsat",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = Clone::M;
                          p.kind = ProblemKind::TSAT;
                          QuantifierSet qs[] = {QuantifierSet::none(),
                                                QuantifierSet::only_exists(),
                                                QuantifierSet::only_forall(),
                                                QuantifierSet::both()};
                          p.q = qs[seed % 4];
                          return draw(p, seed, 10);
                      },
                      [](const ProblemInstance& i) {
                          return dualize(i, DualizeMode::Tsat).instance;
                      }});
    xforms.push_back({"dualize_tcsat",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = Clone::M;
                          p.kind = ProblemKind::TCSAT;
                          p.q = seed % 2 ? QuantifierSet::only_forall()
                                         : QuantifierSet::both();
                          return draw(p, seed, 9);
                      },
                      [](const ProblemInstance& i) {
                          return dualize(i, DualizeMode::Tcsat).instance;
                      }});
    xforms.push_back({"change_base",
                      [&](uint64_t seed) -> std::optional<ProblemInstance> {
                          RandomProfile p;
                          p.base = Clone::BF;
                          p.kind = seed % 2 ? ProblemKind::TSAT : ProblemKind::TCSAT;
                          p.q = seed % 3 ? QuantifierSet::none() : QuantifierSet::both();
                          RandomParams tiny = small;
                          tiny.atoms = 3;
                          tiny.axioms = 2;
                          ProblemInstance inst = gen_random(p, seed, tiny);
                          if (!in_reach(inst, 7))
                              return std::nullopt;
                          return inst;
                      },
                      [](const ProblemInstance& i) {
                          OperatorSet nand{{"nand", TruthTable::from_bits(2, "1110")}};
                          return change_base(i, nand).instance;
                      }});
    xforms.push_back({"normalize_nf",
                      [&](uint64_t seed) {
                          RandomProfile p;
                          p.base = seed % 2 ? Clone::E : Clone::E0;
                          p.kind = ProblemKind::TSAT;
                          p.q = QuantifierSet::both();
                          return draw(p, seed, 10);
                      },
                      [](const ProblemInstance& i) { return normalize_nf(i).instance; }});
    xforms.push_back({"eliminate_conjunction_nf7",
                      [&](uint64_t seed) -> std::optional<ProblemInstance> {
                          RandomProfile p;
                          p.base = seed % 2 ? Clone::E : Clone::E0;
                          p.kind = ProblemKind::TSAT;
                          p.q = QuantifierSet::both();
                          auto inst = draw(p, seed, 8);
                          if (!inst)
                              return std::nullopt;
                          // NF7 consumes normalized input.
                          return normalize_nf(*inst).instance;
                      },
                      [](const ProblemInstance& i) {
                          return eliminate_conjunction_nf7(i).instance;
                      }});

    bool all_ok = true;
    std::string detail;
    for (const auto& xf : xforms) {
        int ran = 0, violations = 0;
        for (uint64_t seed = 1; ran < 200 && seed < 100000; ++seed) {
            auto inst = xf.gen(seed);
            if (!inst)
                continue;
            ProblemInstance out = xf.apply(*inst);
            if (!in_reach(out, 24))
                continue;
            ++ran;
            if (!equisat(*inst, out))
                ++violations;
        }
        if (violations != 0 || ran < 200)
            all_ok = false;
        detail += xf.name + ": " + std::to_string(ran) + " run, " +
                  std::to_string(violations) + " violations; ";
    }
    report(4, "reduction soundness", all_ok, detail);
}

// ---------------------------------------------------------------------------

void criterion5_generator_ground_truth() {
    int bad_gap = 0, bad_hgap = 0, bad_one3 = 0;
    Limits limits;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        Digraph g = random_digraph(5 + seed % 26, 2 + seed % 45, seed);
        int s = static_cast<int>(seed % g.nodes);
        int t = static_cast<int>((seed * 7) % g.nodes);
        bool reach = gap_reachable(g, s, t);
        ProblemInstance inst = gen_gap(g, s, t);
        if (dispatch(inst, Method::Auto, false, limits).status !=
            (reach ? Status::UNSAT : Status::SAT))
            ++bad_gap;
    }
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        Hypergraph h = random_hypergraph(4 + seed % 12, 2 + seed % 16, seed);
        std::vector<int> sources{static_cast<int>(seed % h.nodes),
                                 static_cast<int>((seed * 3) % h.nodes)};
        int t = static_cast<int>((seed * 5) % h.nodes);
        bool reach = hgap_reachable(h, sources, t);
        ProblemInstance inst = gen_hgap(h, sources, t);
        if (dispatch(inst, Method::Auto, false, limits).status !=
            (reach ? Status::UNSAT : Status::SAT))
            ++bad_hgap;
    }
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        auto clauses = random_one_in_three(3 + static_cast<int>(seed % 18),
                                           2 + static_cast<int>(seed % 10), seed);
        bool sat = one_in_three_satisfiable(clauses);
        ProblemInstance inst = gen_one_in_three(clauses);
        if (dispatch(inst, Method::Auto, false, limits).status !=
            (sat ? Status::SAT : Status::UNSAT))
            ++bad_one3;
    }
    bool ok = bad_gap == 0 && bad_hgap == 0 && bad_one3 == 0;
    report(5, "generator ground truth", ok,
           "gap " + std::to_string(bad_gap) + ", hgap " + std::to_string(bad_hgap) +
               ", one-in-three " + std::to_string(bad_one3) + " mismatches of 100 each");
}

// ---------------------------------------------------------------------------

void criterion6_triviality() {
    const Clone r1_sets[] = {Clone::R1, Clone::I1, Clone::E1, Clone::V1, Clone::M1};
    const Clone r0_sets[] = {Clone::R0, Clone::I0, Clone::E0, Clone::V0, Clone::L0};
    int bad = 0;
    for (Clone c : r1_sets) {
        RandomProfile p;
        p.base = c;
        p.kind = ProblemKind::OCSAT;
        p.q = QuantifierSet::both();
        for (uint64_t seed = 1; seed <= 100; ++seed) {
            ProblemInstance inst = gen_random(p, seed);
            Interpretation full;
            full.domain_size = 1;
            Signature sig = signature(inst);
            for (const auto& a : sig.atoms)
                full.concept_ext[a] = 1;
            for (const auto& r : sig.roles)
                full.role_ext[r].insert({0, 0});
            for (const auto& ind : sig.individuals)
                full.individuals[ind] = 0;
            if (!check_model(full, inst))
                ++bad;
        }
    }
    for (Clone c : r0_sets) {
        RandomProfile p;
        p.base = c;
        p.kind = ProblemKind::TSAT;
        p.q = QuantifierSet::both();
        for (uint64_t seed = 1; seed <= 100; ++seed) {
            ProblemInstance inst = gen_random(p, seed);
            // All-empty singleton; the role self-loop keeps both quantified
            // concepts empty as well.
            Interpretation empty;
            empty.domain_size = 1;
            for (const auto& r : signature(inst).roles)
                empty.role_ext[r].insert({0, 0});
            if (!check_model(empty, inst))
                ++bad;
        }
    }
    report(6, "triviality of R1 / R0 fragments", bad == 0,
           "10 operator sets x 100 instances, " + std::to_string(bad) + " failures");
}

// ---------------------------------------------------------------------------

void criterion7_performance_floor() {
    // Seven atoms and seven exists-restrictions with unconstraining axioms:
    // closure is exactly 14 and every one of the 2^14 candidate types is
    // coherent, so the elimination loop sees the full type space.
    ProblemInstance inst;
    inst.kind = ProblemKind::TSAT;
    for (int i = 0; i < 7; ++i) {
        CPtr node = exists("R", atom("A" + std::to_string(i)));
        inst.ontology.tbox.push_back({node, node});
    }
    inst.validate();
    size_t closure = subconcept_closure(inst).size();
    auto start = Clock::now();
    SolveResult r = solve_typeelim(inst);
    double secs = seconds_since(start);
    char detail[128];
    std::snprintf(detail, sizeof detail, "closure %zu, %lld types, %s in %.2fs", closure,
                  static_cast<long long>(r.stats.types_generated),
                  status_name(r.status).c_str(), secs);
    report(7, "type elimination at closure 14 under 10s",
           closure == 14 && r.stats.types_generated == 16384 && secs < 10.0 &&
               r.status == Status::SAT,
           detail);
}

} // namespace

int main() {
    auto start = Clock::now();
    criterion1_clone_identification();
    criterion2_classification_tables();
    criterion3_cross_validation();
    criterion4_reduction_soundness();
    criterion5_generator_ground_truth();
    criterion6_triviality();
    criterion7_performance_floor();
    std::printf("acceptance: %d failure(s), %.1fs total\n", g_failures,
                seconds_since(start));
    return g_failures == 0 ? 0 : 1;
}

#include "doctest.h"

#include "helpers.hpp"
#include "sublogic/parser.hpp"
#include "sublogic/semantics.hpp"
#include "sublogic/solvers.hpp"
#include "sublogic/transforms.hpp"

using namespace sublogic;
using sublogic::testing::fragment_instance;

namespace {

// Satisfiability equivalence through type elimination on both sides.
void check_preserves(const ProblemInstance& before, const ProblemInstance& after) {
    Status a = solve_typeelim(before).status;
    Status b = solve_typeelim(after).status;
    CHECK(a == b);
}

} // namespace

TEST_CASE("lift steps") {
    auto csat = parse_instance("operator and 2 0001\nproblem csat\nquery (and A B)\n");
    auto osat = lift(csat, ProblemKind::OSAT);
    CHECK(osat.instance.kind == ProblemKind::OSAT);
    CHECK(osat.instance.ontology.concept_assertions.size() == 1);
    check_preserves(csat, osat.instance);

    auto tsat = parse_instance("problem tsat\ntbox\nA <= B\n");
    auto tcsat = lift(tsat, ProblemKind::TCSAT);
    CHECK(tcsat.instance.kind == ProblemKind::TCSAT);
    CHECK(tcsat.instance.query->key().front() == '_');
    check_preserves(tsat, tcsat.instance);

    auto ocsat = lift(tsat, ProblemKind::OCSAT);
    CHECK(ocsat.instance.kind == ProblemKind::OCSAT);
    check_preserves(tsat, ocsat.instance);

    CHECK_THROWS_AS(lift(osat.instance, ProblemKind::TSAT), ArgumentError);
}

TEST_CASE("simulate_constants follows the lemma construction") {
    auto inst = parse_instance("operator not 1 10\noperator top 0 1\n"
                               "problem tsat\ntbox\n(top) <= A\n");
    auto res = simulate_constants(inst);
    const auto& t = res.instance.ontology.tbox;
    REQUIRE(t.size() == 3);
    CHECK(t[0].lhs->key() == "_top");
    CHECK(t[0].rhs->key() == "A");
    CHECK(t[1].lhs->key() == "(not _top)");
    CHECK(t[1].rhs->key() == "_top");
    CHECK(t[2].lhs->key() == "_bot");
    CHECK(t[2].rhs->key() == "(not _bot)");
    CHECK_FALSE(res.instance.operators.has("top"));
    check_preserves(inst, res.instance);

    // No constants anywhere: unchanged.
    auto plain = parse_instance("operator not 1 10\nproblem tsat\ntbox\nA <= (not B)\n");
    CHECK(simulate_constants(plain).instance == plain);

    // Negation not expressible: error.
    auto noneg = parse_instance("operator and 2 0001\noperator top 0 1\n"
                                "problem tsat\ntbox\n(top) <= A\n");
    CHECK_THROWS_AS(simulate_constants(noneg), NotExpressibleError);
}

TEST_CASE("simulate_constants preserves satisfiability on N instances") {
    RandomProfile profile;
    profile.base = Clone::N;
    profile.kind = ProblemKind::TSAT;
    int ran = 0;
    for (uint64_t seed = 1; ran < 50; ++seed) {
        auto inst = fragment_instance(profile, seed);
        if (!inst)
            continue;
        ++ran;
        check_preserves(*inst, simulate_constants(*inst).instance);
    }
}

TEST_CASE("tcsat_to_tsat") {
    auto inst = parse_instance("operator bot 0 0\nproblem tcsat\ntbox\nA <= B\nquery A\n");
    auto res = tcsat_to_tsat(inst);
    CHECK(res.instance.kind == ProblemKind::TSAT);
    REQUIRE(res.instance.ontology.tbox.size() == 2);
    CHECK(res.instance.ontology.tbox[1].lhs->key() == "(top)");
    CHECK(res.instance.ontology.tbox[1].rhs->key() == "(some _R A)");
    check_preserves(inst, res.instance);

    auto bot_query = parse_instance("operator bot 0 0\nproblem tcsat\ntbox\nA <= B\n"
                                    "query (bot)\n");
    CHECK(solve_typeelim(tcsat_to_tsat(bot_query).instance).status == Status::UNSAT);

    RandomProfile profile;
    profile.base = Clone::E;
    profile.kind = ProblemKind::TCSAT;
    profile.q = QuantifierSet::only_exists();
    int ran = 0;
    for (uint64_t seed = 1; ran < 50; ++seed) {
        auto inst2 = fragment_instance(profile, seed, 11);
        if (!inst2)
            continue;
        ++ran;
        check_preserves(*inst2, tcsat_to_tsat(*inst2).instance);
    }
}

TEST_CASE("lewis relativization") {
    auto inst = parse_instance("operator top 0 1\nproblem tsat\ntbox\n(top) <= A\n");
    auto res = lewis_relativize(inst);
    CHECK(res.instance.kind == ProblemKind::TCSAT);
    CHECK(res.instance.query->key() == "_T");
    const auto& t = res.instance.ontology.tbox;
    REQUIRE(t.size() == 3);
    CHECK(t[0].lhs->key() == "_T");
    CHECK(t[0].rhs->key() == "A");
    CHECK(t[1].lhs->key() == "_T"); // top_T <= T
    CHECK(t[1].rhs->key() == "_T");
    CHECK(t[2].lhs->key() == "A");
    CHECK(t[2].rhs->key() == "_T");
    CHECK_FALSE(res.instance.operators.has("top"));
    check_preserves(inst, res.instance);

    auto empty = parse_instance("problem tsat\ntbox\n");
    auto r2 = lewis_relativize(empty);
    CHECK(solve_typeelim(r2.instance).status == Status::SAT);

    RandomProfile profile;
    profile.base = Clone::E;
    profile.kind = ProblemKind::TSAT;
    profile.q = QuantifierSet::both();
    int ran = 0;
    for (uint64_t seed = 1; ran < 50; ++seed) {
        auto inst2 = fragment_instance(profile, seed, 9);
        if (!inst2)
            continue;
        ++ran;
        check_preserves(*inst2, lewis_relativize(*inst2).instance);
    }
}

TEST_CASE("dualize") {
    auto inst = parse_instance("problem tsat\ntbox\nA <= (some R B)\n");
    auto res = dualize(inst, DualizeMode::Tsat);
    REQUIRE(res.instance.ontology.tbox.size() == 1);
    CHECK(res.instance.ontology.tbox[0].lhs->key() == "(all R _d_B)");
    CHECK(res.instance.ontology.tbox[0].rhs->key() == "_d_A");
    check_preserves(inst, res.instance);

    // Involution up to renaming: atoms come back doubly primed.
    auto twice = dualize(res.instance, DualizeMode::Tsat);
    REQUIRE(twice.instance.ontology.tbox.size() == 1);
    CHECK(twice.instance.ontology.tbox[0].lhs->key() == "_d__d_A");
    CHECK(twice.instance.ontology.tbox[0].rhs->key() == "(some R _d__d_B)");

    auto tc = parse_instance("operator or 2 0111\nproblem tcsat\ntbox\n"
                             "A <= (or B C)\nquery A\n");
    auto res2 = dualize(tc, DualizeMode::Tcsat);
    CHECK(res2.instance.kind == ProblemKind::TCSAT);
    CHECK(res2.instance.query->key() == "A");
    // Disjointness axiom on the query's dual copy.
    bool found = false;
    for (const auto& ax : res2.instance.ontology.tbox)
        found = found || (ax.lhs->key() == "(and A _d_A)" && ax.rhs->key() == "(bot)");
    CHECK(found);
    check_preserves(tc, res2.instance);
}

TEST_CASE("dualize preserves satisfiability on random instances") {
    RandomProfile profile;
    profile.base = Clone::M;
    int ran = 0;
    for (uint64_t seed = 1; ran < 50; ++seed) {
        profile.kind = seed % 2 ? ProblemKind::TSAT : ProblemKind::TCSAT;
        profile.q = seed % 3 == 0 ? QuantifierSet::only_exists()
                                  : (seed % 3 == 1 ? QuantifierSet::only_forall()
                                                   : QuantifierSet::both());
        auto inst = fragment_instance(profile, seed, 10);
        if (!inst)
            continue;
        ++ran;
        auto mode = inst->kind == ProblemKind::TSAT ? DualizeMode::Tsat : DualizeMode::Tcsat;
        check_preserves(*inst, dualize(*inst, mode).instance);
    }
}

TEST_CASE("change_base") {
    auto inst = parse_instance("operator and 2 0001\noperator not 1 10\n"
                               "problem tsat\ntbox\nA <= (not (and A B))\n");
    OperatorSet nand{{"nand", TruthTable::from_bits(2, "1110")}};
    auto res = change_base(inst, nand);
    CHECK(res.instance.operators == nand);
    Signature sig = signature(res.instance);
    for (const auto& [name, t] : sig.used_operators.entries())
        CHECK(name == "nand");
    check_preserves(inst, res.instance);

    // Rebasing to the same base only unfolds definitions.
    OperatorSet same{{"and", tbl::and2()}, {"not", tbl::not1()}};
    check_preserves(inst, change_base(inst, same).instance);

    // Clone mismatch in either direction errors out.
    OperatorSet just_and{{"and", tbl::and2()}};
    CHECK_THROWS_AS(change_base(inst, just_and), NotExpressibleError);

    // {xor, top} instances rebased onto the ternary affine base.
    auto linst = parse_instance("operator xor 2 0110\noperator top 0 1\n"
                                "problem tsat\ntbox\nA <= (xor B (top))\n");
    OperatorSet l3ish{{"xor3n", tbl::xor3neg()}, {"top", tbl::top0()}, {"xor", tbl::xor2()}};
    check_preserves(linst, change_base(linst, l3ish).instance);
}

TEST_CASE("change_base on quantified random instances") {
    RandomProfile profile;
    profile.base = Clone::BF;
    profile.kind = ProblemKind::TCSAT;
    OperatorSet nand{{"nand", TruthTable::from_bits(2, "1110")}};
    int ran = 0;
    for (uint64_t seed = 1; ran < 30; ++seed) {
        profile.q = seed % 2 ? QuantifierSet::only_exists() : QuantifierSet::both();
        auto inst = fragment_instance(profile, seed, 8);
        if (!inst)
            continue;
        ++ran;
        auto res = change_base(*inst, nand);
        if (subconcept_closure(res.instance).size() <= 20)
            check_preserves(*inst, res.instance);
    }
}

TEST_CASE("normalize_nf") {
    auto inst = parse_instance("operator and 2 0001\nproblem tsat\ntbox\n"
                               "(some r (and A B)) <= C\n");
    auto res = normalize_nf(inst);
    CHECK(is_normal_form(res.instance.ontology.tbox));
    check_preserves(inst, res.instance);
    // The fresh definition atom feeds an exists-on-the-left axiom.
    bool def_found = false, ex_found = false;
    for (const auto& ax : res.instance.ontology.tbox) {
        def_found = def_found || ax.lhs->key() == "(and A B)";
        ex_found = ex_found || (ax.lhs->kind == Concept::Kind::Exists &&
                                ax.rhs->key() == "C");
    }
    CHECK(def_found);
    CHECK(ex_found);

    // Already normal: unchanged.
    auto normal = parse_instance("operator and 2 0001\nproblem tsat\ntbox\n"
                                 "(and A B) <= C\nA <= (all r B)\n");
    auto res2 = normalize_nf(normal);
    CHECK(res2.instance.ontology.tbox.size() == 2);
    CHECK(is_normal_form(res2.instance.ontology.tbox));

    auto bad = parse_instance("operator or 2 0111\nproblem tsat\ntbox\n(or A B) <= C\n");
    CHECK_THROWS_AS(normalize_nf(bad), FragmentError);
}

TEST_CASE("normalize_nf on random E instances") {
    RandomProfile profile;
    profile.base = Clone::E;
    profile.kind = ProblemKind::TSAT;
    int ran = 0;
    for (uint64_t seed = 1; ran < 50; ++seed) {
        profile.q = seed % 2 ? QuantifierSet::only_exists() : QuantifierSet::both();
        auto inst = fragment_instance(profile, seed, 10);
        if (!inst)
            continue;
        ++ran;
        auto res = normalize_nf(*inst);
        CHECK(is_normal_form(res.instance.ontology.tbox));
        if (subconcept_closure(res.instance).size() <= 20)
            check_preserves(*inst, res.instance);
    }
}

TEST_CASE("nf7 conjunction elimination") {
    auto inst = parse_instance("operator and 2 0001\nproblem tsat\ntbox\n(and A B) <= C\n");
    auto res = eliminate_conjunction_nf7(inst);
    REQUIRE(res.instance.ontology.tbox.size() == 3);
    CHECK_FALSE(signature(res.instance).used_operators.has("and"));
    check_preserves(inst, res.instance);

    auto clean = parse_instance("problem tsat\ntbox\nA <= (all r B)\n");
    CHECK(eliminate_conjunction_nf7(clean).instance == clean);

    auto not_normal = parse_instance("operator and 2 0001\nproblem tsat\ntbox\n"
                                     "(and (and A B) C) <= D\n");
    CHECK_THROWS_AS(eliminate_conjunction_nf7(not_normal), ArgumentError);
}

TEST_CASE("transform preconditions reject wrong kinds") {
    auto tsat = parse_instance("problem tsat\ntbox\nA <= B\n");
    auto tcsat = parse_instance("problem tcsat\ntbox\nA <= B\nquery A\n");
    CHECK_THROWS_AS(tcsat_to_tsat(tsat), ArgumentError);
    CHECK_THROWS_AS(lewis_relativize(tcsat), ArgumentError);
    CHECK_THROWS_AS(dualize(tsat, DualizeMode::Tcsat), ArgumentError);
    CHECK_THROWS_AS(dualize(tcsat, DualizeMode::Tsat), ArgumentError);
}

TEST_CASE("transforms introduce only underscore-prefixed names") {
    auto check_fresh = [](const TransformResult& res, const ProblemInstance& input) {
        for (const auto& n : res.report.fresh_names) {
            CHECK(!n.empty());
            CHECK(n[0] == '_');
        }
        Signature before = signature(input);
        Signature after = signature(res.instance);
        for (const auto& a : after.atoms)
            if (!before.atoms.count(a))
                CHECK(a[0] == '_');
        for (const auto& r : after.roles)
            if (!before.roles.count(r))
                CHECK(r[0] == '_');
    };
    auto inst = parse_instance("operator top 0 1\noperator not 1 10\nproblem tsat\ntbox\n"
                               "(top) <= (some r (not A))\n");
    check_fresh(lift(inst, ProblemKind::OCSAT), inst);
    check_fresh(simulate_constants(inst), inst);
    check_fresh(lewis_relativize(inst), inst);
    check_fresh(dualize(inst, DualizeMode::Tsat), inst);
    auto e_inst = parse_instance("operator and 2 0001\nproblem tsat\ntbox\n"
                                 "(some r (and A B)) <= C\n");
    check_fresh(normalize_nf(e_inst), e_inst);
    auto conj = parse_instance("operator and 2 0001\nproblem tsat\ntbox\n(and A B) <= C\n");
    check_fresh(eliminate_conjunction_nf7(conj), conj);
}

TEST_CASE("nf7 preserves satisfiability after normalization") {
    RandomProfile profile;
    profile.base = Clone::E0;
    profile.kind = ProblemKind::TSAT;
    profile.q = QuantifierSet::both();
    int ran = 0;
    for (uint64_t seed = 1; ran < 40; ++seed) {
        auto inst = fragment_instance(profile, seed, 8);
        if (!inst)
            continue;
        ++ran;
        auto normal = normalize_nf(*inst);
        auto res = eliminate_conjunction_nf7(normal.instance);
        if (subconcept_closure(res.instance).size() <= 20)
            check_preserves(normal.instance, res.instance);
    }
}

#include "doctest.h"

#include "sublogic/classifier.hpp"
#include "sublogic/generators.hpp"
#include "sublogic/parser.hpp"
#include "sublogic/semantics.hpp"

using namespace sublogic;

namespace {

OperatorSet base_of(Clone c) {
    OperatorSet ops;
    for (const auto& op : clone_base(c))
        ops.add(op);
    return ops;
}

ComplexityClass cls(ProblemKind kind, QuantifierSet q, Clone c) {
    return classify(kind, q, base_of(c)).cls;
}

constexpr auto TRIV = ComplexityClass::Trivial;
constexpr auto NL = ComplexityClass::NLComplete;
constexpr auto P = ComplexityClass::PComplete;
constexpr auto NP = ComplexityClass::NPComplete;
constexpr auto EXP = ComplexityClass::ExpTimeComplete;
constexpr auto OPEN = ComplexityClass::Open;

} // namespace

TEST_CASE("classify: named single cases") {
    CHECK(cls(ProblemKind::TSAT, QuantifierSet::none(), Clone::E) == P);
    CHECK(classify(ProblemKind::OCSAT, QuantifierSet::only_exists(), base_of(Clone::V0)).cls ==
          OPEN);
    CHECK(cls(ProblemKind::TSAT, QuantifierSet::both(), Clone::L0) == TRIV); // xor is in R0
    CHECK(cls(ProblemKind::TCSAT, QuantifierSet::none(), Clone::N2) == NL);
    CHECK(cls(ProblemKind::OCSAT, QuantifierSet::both(), Clone::I0) == EXP);

    auto open = classify(ProblemKind::OSAT, QuantifierSet::only_exists(), base_of(Clone::V));
    REQUIRE(open.open_bounds.has_value());
    CHECK(open.open_bounds->first == "P-hard");
    CHECK(open.open_bounds->second == "in EXPTIME");
    CHECK(open.to_string() == "open: P-hard, in EXPTIME per Thm 6 footnote");

    CHECK_THROWS_AS(classify(ProblemKind::CSAT, QuantifierSet::none(), base_of(Clone::BF)),
                    ArgumentError);
}

// The overview table: TSAT rows for I, V, E, N/N2, M, L3..BF, trivial rest.
TEST_CASE("classify reproduces the TSAT overview table") {
    struct Row {
        QuantifierSet q;
        ComplexityClass i, v, e, n, m, l3, bf;
    };
    const Row rows[] = {
        {QuantifierSet::none(), NL, P, P, NL, NP, NP, NP},
        {QuantifierSet::only_exists(), P, P, P, EXP, EXP, EXP, EXP},
        {QuantifierSet::only_forall(), P, P, P, EXP, EXP, EXP, EXP},
        {QuantifierSet::both(), EXP, EXP, EXP, EXP, EXP, EXP, EXP},
    };
    for (const Row& r : rows) {
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::I) == r.i);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::V) == r.v);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::E) == r.e);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::N) == r.n);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::N2) == r.n);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::M) == r.m);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::L3) == r.l3);
        CHECK(cls(ProblemKind::TSAT, r.q, Clone::BF) == r.bf);
        // "otherwise" columns are trivial.
        for (Clone c : {Clone::R0, Clone::R1, Clone::R2, Clone::S1, Clone::S11, Clone::E0,
                        Clone::V0, Clone::L0, Clone::L1, Clone::L2, Clone::I0, Clone::I1,
                        Clone::I2, Clone::D1, Clone::D2, Clone::M0, Clone::M1, Clone::M2})
            CHECK(cls(ProblemKind::TSAT, r.q, c) == TRIV);
    }
}

// The overview table, TCSAT/OSAT/OCSAT part: columns I/I0, V/V0, E/E0, N/N2,
// S11..M, L3/L0..BF, trivial rest.
TEST_CASE("classify reproduces the ontology-problem overview table") {
    for (ProblemKind kind : {ProblemKind::TCSAT, ProblemKind::OSAT, ProblemKind::OCSAT}) {
        for (Clone c : {Clone::I0, Clone::I})
            CHECK(cls(kind, QuantifierSet::none(), c) == NL);
        for (Clone c : {Clone::N2, Clone::N})
            CHECK(cls(kind, QuantifierSet::none(), c) == NL);
        for (Clone c : {Clone::E0, Clone::E, Clone::V0, Clone::V})
            CHECK(cls(kind, QuantifierSet::none(), c) == P);
        for (Clone c : {Clone::S11, Clone::M, Clone::L3, Clone::L0, Clone::BF, Clone::D,
                        Clone::R0, Clone::S1, Clone::L, Clone::M0})
            CHECK(cls(kind, QuantifierSet::none(), c) == NP);

        for (Clone c : {Clone::I0, Clone::I, Clone::E0, Clone::E})
            CHECK(cls(kind, QuantifierSet::only_exists(), c) == P);
        for (Clone c : {Clone::V0, Clone::V})
            CHECK(cls(kind, QuantifierSet::only_exists(), c) ==
                  (kind == ProblemKind::TCSAT ? P : OPEN));
        for (Clone c : {Clone::N2, Clone::S11, Clone::M, Clone::L0, Clone::BF, Clone::D})
            CHECK(cls(kind, QuantifierSet::only_exists(), c) == EXP);

        for (Clone c : {Clone::I0, Clone::I, Clone::V0, Clone::V})
            CHECK(cls(kind, QuantifierSet::only_forall(), c) == P);
        for (Clone c : {Clone::E0, Clone::E, Clone::N2, Clone::S11, Clone::M, Clone::L0,
                        Clone::BF})
            CHECK(cls(kind, QuantifierSet::only_forall(), c) == EXP);

        for (Clone c : {Clone::I0, Clone::I, Clone::N2, Clone::V0, Clone::V, Clone::E0,
                        Clone::E, Clone::S11, Clone::D, Clone::M, Clone::R0})
            CHECK(cls(kind, QuantifierSet::both(), c) == EXP);

        for (QuantifierSet q : {QuantifierSet::none(), QuantifierSet::only_exists(),
                                QuantifierSet::only_forall(), QuantifierSet::both()})
            for (Clone c : {Clone::R1, Clone::M1, Clone::E1, Clone::V1, Clone::I1,
                            Clone::L1, Clone::R2, Clone::M2, Clone::L2, Clone::D1,
                            Clone::D2, Clone::I2})
                CHECK(cls(kind, q, c) == TRIV);
    }
}

TEST_CASE("otherwise-rule coverage over the stored clones") {
    // Every named clone not under R0/R1 contains N2 or I; every one not
    // under R1 contains N2 or I0 (checked exhaustively).
    for (Clone c : all_clones()) {
        if (!clone_leq(c, Clone::R0) && !clone_leq(c, Clone::R1))
            CHECK((clone_leq(Clone::N2, c) || clone_leq(Clone::I, c)));
        if (!clone_leq(c, Clone::R1))
            CHECK((clone_leq(Clone::N2, c) || clone_leq(Clone::I0, c)));
    }
}

TEST_CASE("duality coherence of classification") {
    for (Clone c : all_clones()) {
        auto d = clone_dual(c);
        if (!d)
            continue;
        OperatorSet dual_base;
        int i = 0;
        for (const auto& op : clone_base(c))
            dual_base.add({"d" + std::to_string(i++), op.table.dual()});
        auto lhs = classify(ProblemKind::TSAT, QuantifierSet::only_forall(), base_of(c));
        auto rhs = classify(ProblemKind::TSAT, QuantifierSet::only_exists(), dual_base);
        CHECK(lhs.cls == rhs.cls);
    }
}

TEST_CASE("monotone sanity: verdicts never drop when the clone grows") {
    auto rank = [](ComplexityClass c) {
        switch (c) {
        case ComplexityClass::Trivial: return 0;
        case ComplexityClass::NLComplete: return 1;
        case ComplexityClass::PComplete: return 2;
        case ComplexityClass::NPComplete: return 3;
        case ComplexityClass::Open: return 3;
        case ComplexityClass::ExpTimeComplete: return 4;
        }
        return 0;
    };
    for (ProblemKind kind : {ProblemKind::TSAT, ProblemKind::TCSAT, ProblemKind::OSAT,
                             ProblemKind::OCSAT})
        for (QuantifierSet q : {QuantifierSet::none(), QuantifierSet::only_exists(),
                                QuantifierSet::only_forall(), QuantifierSet::both()})
            for (Clone small : all_clones())
                for (Clone big : all_clones())
                    if (clone_leq(small, big))
                        CHECK(rank(cls(kind, q, small)) <= rank(cls(kind, q, big)));
}

TEST_CASE("classify_instance") {
    Digraph g;
    g.nodes = 3;
    g.edges = {{0, 1}};
    ProblemInstance gap = gen_gap(g, 0, 1);
    auto v = classify_instance(gap);
    CHECK(v.cls == NL);

    auto clauses = random_one_in_three(4, 3, 7);
    ProblemInstance one3 = gen_one_in_three(clauses);
    CHECK(classify_instance(one3).cls == NP); // {xor, top} generates L, above L3

    Hypergraph h;
    h.nodes = 3;
    h.edges = {{{0, 1}, 2}};
    CHECK(classify_instance(gen_hgap(h, {0}, 2)).cls == P); // {and, top, bot} is E

    auto empty = parse_instance("problem tsat\ntbox\n");
    CHECK(classify_instance(empty).cls == TRIV);
}

TEST_CASE("classification_table is total and deterministic") {
    auto rows = classification_table();
    CHECK(rows.size() == all_clones().size() * 4 * 4);
    auto rows2 = classification_table();
    for (size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].verdict == rows2[i].verdict);
}

#include "sublogic/classifier.hpp"

#include <array>

#include "sublogic/errors.hpp"
#include "sublogic/semantics.hpp"

namespace sublogic {

const std::string& complexity_name(ComplexityClass c) {
    static const std::string names[] = {"trivial",     "NL-complete", "P-complete",
                                        "NP-complete", "EXPTIME-complete", "open"};
    return names[static_cast<size_t>(c)];
}

std::string ComplexityVerdict::to_string() const {
    std::string s = complexity_name(cls);
    if (open_bounds)
        s += ": " + open_bounds->first + ", " + open_bounds->second;
    if (!provenance.empty()) {
        s += " per ";
        for (size_t i = 0; i < provenance.size(); ++i)
            s += (i ? ", " : "") + provenance[i];
    }
    return s;
}

namespace {

ComplexityVerdict verdict(ComplexityClass c, std::vector<std::string> prov) {
    return {c, std::nullopt, std::move(prov)};
}

ComplexityVerdict open_verdict(std::vector<std::string> prov) {
    return {ComplexityClass::Open, std::make_pair(std::string("P-hard"), std::string("in EXPTIME")),
            std::move(prov)};
}

bool within(const CloneDescriptor& d, Clone c) { return d.within.count(c) != 0; }

bool named_in(const CloneDescriptor& d, std::initializer_list<Clone> cs) {
    if (!d.named)
        return false;
    for (Clone c : cs)
        if (*d.named == c)
            return true;
    return false;
}

ComplexityVerdict classify_tsat(QuantifierSet q, const CloneDescriptor& d) {
    if (within(d, Clone::R0))
        return verdict(ComplexityClass::Trivial, {"Thm 2(3)"});
    if (within(d, Clone::R1))
        return verdict(ComplexityClass::Trivial, {"Thm 2(4)"});
    if (q.empty()) {
        if (named_in(d, {Clone::I, Clone::N2, Clone::N}))
            return verdict(ComplexityClass::NLComplete, {"Thm 3(3)"});
        if (named_in(d, {Clone::E, Clone::V}))
            return verdict(ComplexityClass::PComplete, {"Thm 3(2)"});
        return verdict(ComplexityClass::NPComplete, {"Thm 3(1)"});
    }
    if (q.single()) {
        if (named_in(d, {Clone::I, Clone::E, Clone::V}))
            return verdict(ComplexityClass::PComplete, {"Thm 4(2)"});
        return verdict(ComplexityClass::ExpTimeComplete, {"Thm 4(1)"});
    }
    return verdict(ComplexityClass::ExpTimeComplete, {"Thm 2(1)"});
}

ComplexityVerdict classify_ontology_problems(ProblemKind kind, QuantifierSet q,
                                    const CloneDescriptor& d) {
    if (within(d, Clone::R1)) {
        std::string prov = q.empty() ? "Thm 5(4)" : (q.single() ? "Thm 6(4)" : "Thm 2(4)");
        return verdict(ComplexityClass::Trivial, {prov});
    }
    if (q.empty()) {
        if (named_in(d, {Clone::I0, Clone::I, Clone::N2, Clone::N}))
            return verdict(ComplexityClass::NLComplete, {"Thm 5(3)"});
        if (named_in(d, {Clone::E0, Clone::E, Clone::V0, Clone::V}))
            return verdict(ComplexityClass::PComplete, {"Thm 5(2)"});
        return verdict(ComplexityClass::NPComplete, {"Thm 5(1)"});
    }
    if (q.forall && !q.exists) {
        if (named_in(d, {Clone::I0, Clone::I, Clone::V0, Clone::V}))
            return verdict(ComplexityClass::PComplete, {"Thm 6(2)"});
        if (named_in(d, {Clone::E0, Clone::E}))
            return verdict(ComplexityClass::ExpTimeComplete, {"Thm 6(3)"});
        return verdict(ComplexityClass::ExpTimeComplete, {"Thm 6(1)"});
    }
    if (q.exists && !q.forall) {
        if (named_in(d, {Clone::I0, Clone::I}))
            return verdict(ComplexityClass::PComplete, {"Thm 6(2)"});
        if (named_in(d, {Clone::E0, Clone::E}))
            return verdict(ComplexityClass::PComplete, {"Thm 6(3)"});
        if (named_in(d, {Clone::V0, Clone::V})) {
            if (kind == ProblemKind::TCSAT)
                return verdict(ComplexityClass::PComplete, {"Thm 6(2)"});
            return open_verdict({"Thm 6 footnote"});
        }
        return verdict(ComplexityClass::ExpTimeComplete, {"Thm 6(1)"});
    }
    return verdict(ComplexityClass::ExpTimeComplete, {"Thm 2(2)"});
}

} // namespace

ComplexityVerdict classify(ProblemKind kind, QuantifierSet q, const CloneDescriptor& d) {
    if (kind == ProblemKind::CSAT)
        throw ArgumentError("classify: concept satisfiability without theories is out of "
                            "scope (prior work)");
    // The non-trivial rules key on exact named clones; an unidentified,
    // non-trivial clone can only arise from the conservative high-arity path.
    if (!d.named && !within(d, Clone::R0) && !within(d, Clone::R1)) {
        if (kind == ProblemKind::TSAT && !q.empty())
            throw ArgumentError("classify: clone unidentified (arity-capped closure); "
                                "candidate verdicts: P-complete / EXPTIME-complete");
        throw ArgumentError("classify: clone unidentified (arity-capped closure); "
                            "candidate verdicts: NL / P / NP / EXPTIME-complete");
    }
    if (kind == ProblemKind::TSAT)
        return classify_tsat(q, d);
    return classify_ontology_problems(kind, q, d);
}

ComplexityVerdict classify(ProblemKind kind, QuantifierSet q, const OperatorSet& B) {
    if (B.empty()) {
        // No operators: the projection-only clone I2, inside R0 and R1.
        CloneDescriptor d;
        d.named = Clone::I2;
        for (Clone c : all_clones()) {
            d.within.insert(c);
            if (clone_leq(c, Clone::I2))
                d.contains.insert(c);
        }
        return classify(kind, q, d);
    }
    return classify(kind, q, identify_clone(B));
}

ComplexityVerdict classify_instance(const ProblemInstance& inst) {
    Signature sig = signature(inst);
    QuantifierSet q{sig.uses_exists, sig.uses_forall};
    ProblemKind kind = inst.kind == ProblemKind::CSAT ? ProblemKind::TCSAT : inst.kind;
    return classify(kind, q, sig.used_operators);
}

std::vector<TableRow> classification_table() {
    std::vector<TableRow> rows;
    for (Clone c : all_clones()) {
        OperatorSet base;
        for (const auto& op : clone_base(c))
            base.add(op);
        for (ProblemKind kind : {ProblemKind::TSAT, ProblemKind::TCSAT, ProblemKind::OSAT,
                                 ProblemKind::OCSAT}) {
            for (QuantifierSet q : {QuantifierSet::none(), QuantifierSet::only_exists(),
                                    QuantifierSet::only_forall(), QuantifierSet::both()}) {
                rows.push_back({c, kind, q, classify(kind, q, base)});
            }
        }
    }
    return rows;
}

namespace {

constexpr auto kTriv = ComplexityClass::Trivial;
constexpr auto kNL = ComplexityClass::NLComplete;
constexpr auto kP = ComplexityClass::PComplete;
constexpr auto kNP = ComplexityClass::NPComplete;
constexpr auto kExp = ComplexityClass::ExpTimeComplete;
constexpr auto kOpen = ComplexityClass::Open;

const std::vector<Clone> kFunctionTableClones = {
    Clone::BF, Clone::R0, Clone::R1, Clone::M,  Clone::S1, Clone::S11,
    Clone::D,  Clone::L,  Clone::L0, Clone::L3, Clone::E0, Clone::E,
    Clone::V0, Clone::V,  Clone::N2, Clone::N,  Clone::I0, Clone::I,
};

void push_rows(std::vector<GoldenCell>& out, Clone c, ProblemKind kind,
               std::array<ComplexityClass, 4> per_q) {
    const QuantifierSet qs[4] = {QuantifierSet::none(), QuantifierSet::only_exists(),
                                 QuantifierSet::only_forall(), QuantifierSet::both()};
    for (int i = 0; i < 4; ++i)
        out.push_back({c, kind, qs[i], per_q[i]});
}

} // namespace

std::vector<GoldenCell> golden_overview_table() {
    std::vector<GoldenCell> out;
    for (Clone c : kFunctionTableClones) {
        // TSAT row family: trivial under R0/R1, NL at I and N/N2, P at E/V,
        // NP (respectively EXPTIME once quantifiers appear) above.
        std::array<ComplexityClass, 4> tsat;
        if (clone_leq(c, Clone::R0) || clone_leq(c, Clone::R1)) {
            tsat = {kTriv, kTriv, kTriv, kTriv};
        } else if (c == Clone::I || c == Clone::N2 || c == Clone::N) {
            tsat = {kNL, c == Clone::I ? kP : kExp, c == Clone::I ? kP : kExp, kExp};
        } else if (c == Clone::E || c == Clone::V) {
            tsat = {kP, kP, kP, kExp};
        } else { // M, D, L, L3, BF: the "L3 to BF" and M columns
            tsat = {kNP, kExp, kExp, kExp};
        }
        push_rows(out, c, ProblemKind::TSAT, tsat);

        for (ProblemKind kind : {ProblemKind::TCSAT, ProblemKind::OSAT, ProblemKind::OCSAT}) {
            std::array<ComplexityClass, 4> row;
            if (clone_leq(c, Clone::R1)) {
                row = {kTriv, kTriv, kTriv, kTriv};
            } else if (c == Clone::I0 || c == Clone::I) {
                row = {kNL, kP, kP, kExp};
            } else if (c == Clone::N2 || c == Clone::N) {
                row = {kNL, kExp, kExp, kExp};
            } else if (c == Clone::E0 || c == Clone::E) {
                row = {kP, kP, kExp, kExp};
            } else if (c == Clone::V0 || c == Clone::V) {
                // The footnote case: OSAT/OCSAT with exists only is open.
                ComplexityClass ex = kind == ProblemKind::TCSAT ? kP : kOpen;
                row = {kP, ex, kP, kExp};
            } else { // S1, S11, M, D, L, L0, L3, R0, BF
                row = {kNP, kExp, kExp, kExp};
            }
            push_rows(out, c, kind, row);
        }
    }
    return out;
}

std::vector<GoldenCell> golden_per_clone_table() {
    // Columns I0, I, N2, V0, V, E0, E, S11, D, M, R1, R0 of the per-clone
    // appendix table; each entry lists {empty, forall, exists, both}.
    struct Column {
        Clone c;
        std::array<ComplexityClass, 4> tsat, tcsat, ocsat;
    };
    const std::vector<Column> cols = {
        {Clone::I0, {kTriv, kTriv, kTriv, kTriv}, {kNL, kP, kP, kExp}, {kNL, kP, kP, kExp}},
        {Clone::I, {kNL, kP, kP, kExp}, {kNL, kP, kP, kExp}, {kNL, kP, kP, kExp}},
        {Clone::N2, {kNL, kExp, kExp, kExp}, {kNL, kExp, kExp, kExp}, {kNL, kExp, kExp, kExp}},
        {Clone::V0, {kTriv, kTriv, kTriv, kTriv}, {kP, kP, kP, kExp}, {kP, kP, kOpen, kExp}},
        {Clone::V, {kP, kP, kP, kExp}, {kP, kP, kP, kExp}, {kP, kP, kOpen, kExp}},
        {Clone::E0, {kTriv, kTriv, kTriv, kTriv}, {kP, kExp, kP, kExp}, {kP, kExp, kP, kExp}},
        {Clone::E, {kP, kP, kP, kExp}, {kP, kExp, kP, kExp}, {kP, kExp, kP, kExp}},
        {Clone::S11, {kTriv, kTriv, kTriv, kTriv}, {kNP, kExp, kExp, kExp},
         {kNP, kExp, kExp, kExp}},
        {Clone::D, {kNP, kExp, kExp, kExp}, {kNP, kExp, kExp, kExp}, {kNP, kExp, kExp, kExp}},
        {Clone::M, {kNP, kExp, kExp, kExp}, {kNP, kExp, kExp, kExp}, {kNP, kExp, kExp, kExp}},
        {Clone::R1, {kTriv, kTriv, kTriv, kTriv}, {kTriv, kTriv, kTriv, kTriv},
         {kTriv, kTriv, kTriv, kTriv}},
        {Clone::R0, {kTriv, kTriv, kTriv, kTriv}, {kNP, kExp, kExp, kExp},
         {kNP, kExp, kExp, kExp}},
    };
    std::vector<GoldenCell> out;
    const QuantifierSet qs[4] = {QuantifierSet::none(), QuantifierSet::only_forall(),
                                 QuantifierSet::only_exists(), QuantifierSet::both()};
    for (const Column& col : cols) {
        for (int i = 0; i < 4; ++i) {
            out.push_back({col.c, ProblemKind::TSAT, qs[i], col.tsat[i]});
            out.push_back({col.c, ProblemKind::TCSAT, qs[i], col.tcsat[i]});
            out.push_back({col.c, ProblemKind::OCSAT, qs[i], col.ocsat[i]});
            out.push_back({col.c, ProblemKind::OSAT, qs[i], col.ocsat[i]});
        }
    }
    return out;
}

} // namespace sublogic

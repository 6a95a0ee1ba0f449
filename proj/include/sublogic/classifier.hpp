#pragma once

#include "sublogic/ast.hpp"
#include "sublogic/clones.hpp"

namespace sublogic {

enum class ComplexityClass { Trivial, NLComplete, PComplete, NPComplete, ExpTimeComplete, Open };

const std::string& complexity_name(ComplexityClass c);

struct ComplexityVerdict {
    ComplexityClass cls;
    // Present exactly when cls == Open.
    std::optional<std::pair<std::string, std::string>> open_bounds; // (lower, upper)
    std::vector<std::string> provenance;

    std::string to_string() const;
    bool operator==(const ComplexityVerdict& o) const {
        return cls == o.cls && open_bounds == o.open_bounds;
    }
};

// Classification by ordered rules, first match wins. CSAT is out of scope.
ComplexityVerdict classify(ProblemKind kind, QuantifierSet q, const OperatorSet& B);
ComplexityVerdict classify(ProblemKind kind, QuantifierSet q, const CloneDescriptor& d);

// Q and B inferred from the instance signature.
ComplexityVerdict classify_instance(const ProblemInstance& inst);

// One row of the classification tables, for the golden reproduction test and
// the CLI --table output.
struct TableRow {
    Clone clone;
    ProblemKind kind;
    QuantifierSet q;
    ComplexityVerdict verdict;
};

std::vector<TableRow> classification_table();

// Hand-encoded expected classes, kept independent of the classify rules;
// the selftest and the acceptance suite compare against them.
struct GoldenCell {
    Clone clone;
    ProblemKind kind;
    QuantifierSet q;
    ComplexityClass expect;
};

// The overview table cells, per standard base and quantifier row.
std::vector<GoldenCell> golden_overview_table();
// The per-clone appendix table (12 explicit columns for TSAT/TCSAT/OCSAT,
// with OSAT carried over by the OSAT = OCSAT interreduction).
std::vector<GoldenCell> golden_per_clone_table();

} // namespace sublogic

#include "sublogic/clones.hpp"

#include <array>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace sublogic {

namespace {

constexpr uint64_t kClosureWorkBudget = 200'000'000; // tuple compositions

struct CloneInfo {
    Clone clone;
    std::string name;
    std::vector<NamedOperator> base;
};

const std::vector<CloneInfo>& clone_table() {
    static const std::vector<CloneInfo> table = [] {
        using namespace tbl;
        std::vector<CloneInfo> t;
        auto add = [&](Clone c, std::string n, std::vector<NamedOperator> base) {
            t.push_back({c, std::move(n), std::move(base)});
        };
        add(Clone::I2, "I2", {{"id", id1()}});
        add(Clone::I0, "I0", {{"bot", bot0()}});
        add(Clone::I1, "I1", {{"top", top0()}});
        add(Clone::I, "I", {{"bot", bot0()}, {"top", top0()}});
        add(Clone::N2, "N2", {{"not", not1()}});
        add(Clone::N, "N", {{"not", not1()}, {"top", top0()}});
        add(Clone::E0, "E0", {{"and", and2()}, {"bot", bot0()}});
        add(Clone::E1, "E1", {{"and", and2()}, {"top", top0()}});
        add(Clone::E, "E", {{"and", and2()}, {"bot", bot0()}, {"top", top0()}});
        add(Clone::V0, "V0", {{"or", or2()}, {"bot", bot0()}});
        add(Clone::V1, "V1", {{"or", or2()}, {"top", top0()}});
        add(Clone::V, "V", {{"or", or2()}, {"bot", bot0()}, {"top", top0()}});
        add(Clone::L2, "L2", {{"xor3", xor3()}});
        add(Clone::L0, "L0", {{"xor", xor2()}});
        add(Clone::L1, "L1", {{"eq", eq2()}});
        add(Clone::L3, "L3", {{"xor3n", xor3neg()}});
        add(Clone::L, "L", {{"xor", xor2()}, {"top", top0()}});
        add(Clone::D2, "D2", {{"maj", maj3()}});
        add(Clone::D1, "D1", {{"d1b", d1base3()}});
        add(Clone::D, "D", {{"sd", sd3()}});
        add(Clone::S11, "S11", {{"andor", andor3()}, {"bot", bot0()}});
        add(Clone::S1, "S1", {{"andnot", TruthTable::from_bits(2, "0010")}});
        add(Clone::M2, "M2", {{"and", and2()}, {"or", or2()}});
        add(Clone::M0, "M0", {{"and", and2()}, {"or", or2()}, {"bot", bot0()}});
        add(Clone::M1, "M1", {{"and", and2()}, {"or", or2()}, {"top", top0()}});
        add(Clone::M, "M", {{"and", and2()}, {"or", or2()}, {"bot", bot0()}, {"top", top0()}});
        add(Clone::R2, "R2", {{"or", or2()}, {"andeq", r2base3()}});
        add(Clone::R0, "R0", {{"and", and2()}, {"xor", xor2()}});
        add(Clone::R1, "R1", {{"or", or2()}, {"eq", eq2()}});
        add(Clone::BF, "BF", {{"and", and2()}, {"not", not1()}});
        return t;
    }();
    return table;
}

const CloneInfo& info(Clone c) {
    return clone_table()[static_cast<size_t>(c)];
}

bool p(const TruthTable& f, Property prop) { return check_property(f, prop); }

} // namespace

const std::vector<Clone>& all_clones() {
    static const std::vector<Clone> order = [] {
        std::vector<Clone> v;
        for (const auto& ci : clone_table())
            v.push_back(ci.clone);
        return v;
    }();
    return order;
}

const std::string& clone_name(Clone c) { return info(c).name; }

std::optional<Clone> clone_by_name(const std::string& name) {
    for (const auto& ci : clone_table())
        if (ci.name == name)
            return ci.clone;
    return std::nullopt;
}

const std::vector<NamedOperator>& clone_base(Clone c) { return info(c).base; }

bool clone_member(const TruthTable& f, Clone c) {
    switch (c) {
    case Clone::BF: return true;
    case Clone::R0: return p(f, Property::ZeroReproducing);
    case Clone::R1: return p(f, Property::OneReproducing);
    case Clone::R2:
        return p(f, Property::ZeroReproducing) && p(f, Property::OneReproducing);
    case Clone::M: return p(f, Property::Monotone);
    case Clone::M0: return clone_member(f, Clone::M) && clone_member(f, Clone::R0);
    case Clone::M1: return clone_member(f, Clone::M) && clone_member(f, Clone::R1);
    case Clone::M2: return clone_member(f, Clone::M) && clone_member(f, Clone::R2);
    case Clone::S1: return p(f, Property::OneSeparating);
    case Clone::S11: return p(f, Property::OneSeparating) && p(f, Property::Monotone);
    case Clone::D: return p(f, Property::SelfDual);
    case Clone::D1: return clone_member(f, Clone::D) && clone_member(f, Clone::R2);
    case Clone::D2: return clone_member(f, Clone::D) && clone_member(f, Clone::M);
    case Clone::L: return p(f, Property::Affine);
    case Clone::L0: return clone_member(f, Clone::L) && clone_member(f, Clone::R0);
    case Clone::L1: return clone_member(f, Clone::L) && clone_member(f, Clone::R1);
    case Clone::L2: return clone_member(f, Clone::L) && clone_member(f, Clone::R2);
    case Clone::L3: return clone_member(f, Clone::L) && clone_member(f, Clone::D);
    case Clone::E: return f.is_constant() || f.is_and_of_subset();
    case Clone::E0: return clone_member(f, Clone::E) && clone_member(f, Clone::R0);
    case Clone::E1: return clone_member(f, Clone::E) && clone_member(f, Clone::R1);
    case Clone::V: return f.is_constant() || f.is_or_of_subset();
    case Clone::V0: return clone_member(f, Clone::V) && clone_member(f, Clone::R0);
    case Clone::V1: return clone_member(f, Clone::V) && clone_member(f, Clone::R1);
    case Clone::N: return f.is_constant() || f.is_projection() || f.is_negation_of();
    case Clone::N2: return f.is_projection() || f.is_negation_of();
    case Clone::I: return f.is_constant() || f.is_projection();
    case Clone::I0: return (f.is_constant() && f.constant_value() == 0) || f.is_projection();
    case Clone::I1: return (f.is_constant() && f.constant_value() == 1) || f.is_projection();
    case Clone::I2: return f.is_projection();
    }
    return false;
}

bool clone_leq(Clone c1, Clone c2) {
    // [base(c1)] subseteq c2 iff every base function is a member; c2 is closed.
    static const auto matrix = [] {
        const size_t n = clone_table().size();
        std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                bool leq = true;
                for (const auto& op : clone_table()[i].base)
                    leq = leq && clone_member(op.table, clone_table()[j].clone);
                m[i][j] = leq;
            }
        }
        return m;
    }();
    return matrix[static_cast<size_t>(c1)][static_cast<size_t>(c2)];
}

std::optional<Clone> clone_dual(Clone c) {
    switch (c) {
    case Clone::BF: return Clone::BF;
    case Clone::R0: return Clone::R1;
    case Clone::R1: return Clone::R0;
    case Clone::R2: return Clone::R2;
    case Clone::M: return Clone::M;
    case Clone::M0: return Clone::M1;
    case Clone::M1: return Clone::M0;
    case Clone::M2: return Clone::M2;
    case Clone::D: return Clone::D;
    case Clone::D1: return Clone::D1;
    case Clone::D2: return Clone::D2;
    case Clone::L: return Clone::L;
    case Clone::L0: return Clone::L1;
    case Clone::L1: return Clone::L0;
    case Clone::L2: return Clone::L2;
    case Clone::L3: return Clone::L3;
    case Clone::E: return Clone::V;
    case Clone::E0: return Clone::V1;
    case Clone::E1: return Clone::V0;
    case Clone::V: return Clone::E;
    case Clone::V0: return Clone::E1;
    case Clone::V1: return Clone::E0;
    case Clone::N: return Clone::N;
    case Clone::N2: return Clone::N2;
    case Clone::I: return Clone::I;
    case Clone::I0: return Clone::I1;
    case Clone::I1: return Clone::I0;
    case Clone::I2: return Clone::I2;
    case Clone::S1:
    case Clone::S11:
        return std::nullopt; // duals are the S0 family, not stored
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closure computation

namespace {

// An operator usable in closure composition: a declared operator of arity
// <= kClosureArityCap used directly, or a variable-identification minor of a
// higher-arity operator. argmap maps the original argument positions onto
// the (<= cap) minor slots.
struct ClosureOp {
    std::string name;
    TruthTable original;
    int slots = 0;               // arity of the minor
    std::vector<int> argmap;     // original arity entries, values < slots
};

struct ClosureState {
    std::vector<uint64_t> tables;
    std::unordered_map<uint64_t, int> index;
    struct Deriv {
        int proj = -1;                 // projection index when >= 0
        std::string op;                // operator name otherwise
        std::vector<int> kids;         // table indices, original operator arity
    };
    std::vector<Deriv> deriv;
    bool budget_exhausted = false;

    bool add(uint64_t t, Deriv d) {
        auto [it, fresh] = index.emplace(t, static_cast<int>(tables.size()));
        if (!fresh)
            return false;
        tables.push_back(t);
        deriv.push_back(std::move(d));
        return true;
    }
};

std::vector<ClosureOp> expand_ops(const OperatorSet& B) {
    std::vector<ClosureOp> ops;
    for (const auto& [name, t] : B.entries()) {
        if (t.arity() == 0)
            continue; // handled as a generator
        if (t.arity() <= kClosureArityCap) {
            ClosureOp op{name, t, t.arity(), {}};
            for (int i = 0; i < t.arity(); ++i)
                op.argmap.push_back(i);
            ops.push_back(std::move(op));
        } else {
            // All identifications onto kClosureArityCap slots.
            std::vector<int> map(t.arity(), 0);
            std::unordered_set<uint64_t> seen;
            std::function<void(int)> rec = [&](int pos) {
                if (pos == t.arity()) {
                    // Minor table over `slots` variables.
                    int slots = kClosureArityCap;
                    uint64_t bits = 0;
                    for (int row = 0; row < (1 << slots); ++row) {
                        std::vector<int> args(t.arity());
                        for (int j = 0; j < t.arity(); ++j)
                            args[j] = (row >> (slots - 1 - map[j])) & 1;
                        if (t.eval(args))
                            bits |= uint64_t{1} << row;
                    }
                    if (seen.insert(bits).second)
                        ops.push_back({name, t, slots, map});
                    return;
                }
                for (int s = 0; s < kClosureArityCap; ++s) {
                    map[pos] = s;
                    rec(pos + 1);
                }
            };
            rec(0);
        }
    }
    return ops;
}

// Least fixed point of composition over the n-ary projections, B's nullary
// constants, and application of B's operators. Stops early when `target`
// shows up. Returns with budget_exhausted set instead of looping forever.
ClosureState run_closure(const OperatorSet& B, int n, std::optional<uint64_t> target,
                         uint64_t budget) {
    if (n < 1 || n > kClosureArityCap)
        throw LimitError("closure arity " + std::to_string(n) + " out of range [1," +
                         std::to_string(kClosureArityCap) + "]");
    ClosureState st;
    const int rows = 1 << n;
    for (int j = 0; j < n; ++j) {
        uint64_t bits = 0;
        for (int i = 0; i < rows; ++i)
            if ((i >> (n - 1 - j)) & 1)
                bits |= uint64_t{1} << i;
        st.add(bits, {j, "", {}});
    }
    for (const auto& [name, t] : B.entries()) {
        if (t.arity() == 0) {
            uint64_t bits = t.row(0) ? (rows == 64 ? ~uint64_t{0} : (uint64_t{1} << rows) - 1) : 0;
            st.add(bits, {-1, name, {}});
        }
    }
    if (target && st.index.count(*target))
        return st;

    auto ops = expand_ops(B);
    uint64_t work = 0;
    size_t frontier_start = 0;
    while (frontier_start < st.tables.size()) {
        size_t frontier_end = st.tables.size();
        for (const auto& op : ops) {
            const int k = op.slots;
            std::vector<int> tuple(k, 0);
            std::function<bool(int)> rec = [&](int pos) -> bool {
                if (pos == k) {
                    int mx = 0;
                    for (int v : tuple)
                        mx = std::max(mx, v);
                    // Each tuple is processed in exactly one round: the one
                    // where its newest component first appeared.
                    if (static_cast<size_t>(mx) < frontier_start)
                        return true;
                    if (++work > budget) {
                        st.budget_exhausted = true;
                        return false;
                    }
                    uint64_t bits = 0;
                    for (int i = 0; i < rows; ++i) {
                        int idx = 0;
                        for (int j = 0; j < static_cast<int>(op.argmap.size()); ++j) {
                            int s = op.argmap[j];
                            idx = (idx << 1) |
                                  static_cast<int>((st.tables[tuple[s]] >> i) & 1u);
                        }
                        if (op.original.row(idx))
                            bits |= uint64_t{1} << i;
                    }
                    if (!st.index.count(bits)) {
                        std::vector<int> kids;
                        for (int j = 0; j < static_cast<int>(op.argmap.size()); ++j)
                            kids.push_back(tuple[op.argmap[j]]);
                        st.add(bits, {-1, op.name, std::move(kids)});
                        if (target && bits == *target)
                            return false;
                    }
                    return true;
                }
                for (size_t v = 0; v < frontier_end; ++v) {
                    tuple[pos] = static_cast<int>(v);
                    if (!rec(pos + 1))
                        return false;
                }
                return true;
            };
            if (!rec(0))
                return st;
        }
        frontier_start = frontier_end;
    }
    return st;
}

} // namespace

std::set<uint64_t> nary_closure(const OperatorSet& B, int n) {
    auto st = run_closure(B, n, std::nullopt, kClosureWorkBudget);
    if (st.budget_exhausted)
        throw LimitError("closure work budget exhausted (" +
                         std::to_string(kClosureWorkBudget) + " compositions)");
    return {st.tables.begin(), st.tables.end()};
}

bool contains_function(const OperatorSet& B, const TruthTable& g) {
    TruthTable goal = g.arity() == 0 ? g.lift_to_unary() : g;
    if (goal.arity() > kClosureArityCap)
        throw LimitError("contains_function: arity " + std::to_string(goal.arity()) +
                         " exceeds closure cap " + std::to_string(kClosureArityCap));
    auto st = run_closure(B, goal.arity(), goal.bits(), kClosureWorkBudget);
    if (st.index.count(goal.bits()))
        return true;
    if (st.budget_exhausted)
        throw LimitError("contains_function: closure work budget exhausted");
    return false;
}

bool contains_clone(const OperatorSet& B, Clone c) {
    for (const auto& op : clone_base(c))
        if (!contains_function(B, op.table))
            return false;
    return true;
}

CloneDescriptor identify_clone(const OperatorSet& B) {
    if (B.empty())
        throw ArgumentError("identify_clone: operator set must be nonempty");
    CloneDescriptor d;

    for (Clone c : all_clones()) {
        bool in = true;
        for (const auto& [name, t] : B.entries())
            in = in && clone_member(t, c);
        if (in)
            d.within.insert(c);
    }

    // The contains side needs closures at the base arities (1..3). Reuse one
    // closure run per arity. Budget overruns make the answer conservative.
    std::array<std::optional<ClosureState>, kClosureArityCap + 1> closures;
    auto in_closure = [&](const TruthTable& f) {
        TruthTable g = f.arity() == 0 ? f.lift_to_unary() : f;
        int n = g.arity();
        if (!closures[n]) {
            closures[n] = run_closure(B, n, std::nullopt, kClosureWorkBudget);
            if (closures[n]->budget_exhausted)
                d.conservative = true;
        }
        return closures[n]->index.count(g.bits()) != 0;
    };
    for (Clone c : all_clones()) {
        bool has = true;
        for (const auto& op : clone_base(c))
            has = has && in_closure(op.table);
        if (has)
            d.contains.insert(c);
    }
    // Downward closure keeps the fingerprint lattice-consistent even when the
    // closure run was cut short.
    for (Clone c : all_clones())
        if (d.contains.count(c))
            for (Clone c2 : all_clones())
                if (clone_leq(c2, c))
                    d.contains.insert(c2);

    for (Clone c : all_clones()) {
        if (d.within.count(c) && d.contains.count(c)) {
            d.named = c;
            break;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Witness terms

std::string Term::to_string() const {
    if (op.empty())
        return "x" + std::to_string(var + 1);
    std::string s = op + "(";
    for (size_t i = 0; i < kids.size(); ++i) {
        if (i) s += ", ";
        s += kids[i].to_string();
    }
    return s + ")";
}

int Term::eval(const OperatorSet& B, const std::vector<int>& args) const {
    if (op.empty())
        return args.at(var);
    std::vector<int> kid_vals;
    kid_vals.reserve(kids.size());
    for (const auto& k : kids)
        kid_vals.push_back(k.eval(B, args));
    return B.table(op).eval(kid_vals);
}

Term witness_term(const OperatorSet& B, const TruthTable& g) {
    TruthTable goal = g.arity() == 0 ? g.lift_to_unary() : g;
    if (goal.arity() > kClosureArityCap)
        throw LimitError("witness_term: arity exceeds closure cap");
    auto st = run_closure(B, goal.arity(), goal.bits(), kClosureWorkBudget);
    auto it = st.index.find(goal.bits());
    if (it == st.index.end()) {
        if (st.budget_exhausted)
            throw LimitError("witness_term: closure work budget exhausted");
        throw NotExpressibleError("function " + goal.bit_string() + " is not in [B]");
    }
    std::function<Term(int)> build = [&](int idx) -> Term {
        const auto& dv = st.deriv[idx];
        if (dv.proj >= 0)
            return Term{"", dv.proj, {}};
        Term t{dv.op, -1, {}};
        for (int kid : dv.kids)
            t.kids.push_back(build(kid));
        return t;
    };
    return build(it->second);
}

} // namespace sublogic

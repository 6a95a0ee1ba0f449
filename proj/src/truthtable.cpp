#include "sublogic/truthtable.hpp"

#include <algorithm>

namespace sublogic {

TruthTable::TruthTable(int arity, uint64_t bits) : arity_(arity), bits_(bits) {
    if (arity < 0 || arity > kArityCap)
        throw ArgumentError("operator arity out of range [0," + std::to_string(kArityCap) +
                            "]: " + std::to_string(arity));
    if (arity < 6)
        bits_ &= (uint64_t{1} << (1 << arity)) - 1;
}

TruthTable TruthTable::from_bits(int arity, const std::string& bitstring) {
    if (arity < 0 || arity > kArityCap)
        throw ArgumentError("operator arity out of range: " + std::to_string(arity));
    if (bitstring.size() != static_cast<size_t>(1 << arity))
        throw ArgumentError("bitstring length " + std::to_string(bitstring.size()) +
                            " does not match arity " + std::to_string(arity) + " (need " +
                            std::to_string(1 << arity) + ")");
    uint64_t bits = 0;
    for (size_t i = 0; i < bitstring.size(); ++i) {
        if (bitstring[i] == '1')
            bits |= uint64_t{1} << i;
        else if (bitstring[i] != '0')
            throw ArgumentError("bitstring must contain only 0/1");
    }
    return TruthTable(arity, bits);
}

int TruthTable::index_of(const std::vector<int>& args) {
    int idx = 0;
    for (size_t j = 0; j < args.size(); ++j)
        idx = (idx << 1) | (args[j] ? 1 : 0);
    return idx;
}

int TruthTable::eval(const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw ArgumentError("eval: expected " + std::to_string(arity_) + " arguments, got " +
                            std::to_string(args.size()));
    return row(index_of(args));
}

TruthTable TruthTable::dual() const {
    const int n = rows();
    uint64_t out = 0;
    for (int i = 0; i < n; ++i) {
        int comp = (n - 1) ^ i;
        if (!row(comp))
            out |= uint64_t{1} << i;
    }
    return TruthTable(arity_, out);
}

TruthTable TruthTable::lift_to_unary() const {
    if (arity_ != 0)
        return *this;
    return TruthTable(1, row(0) ? 0b11u : 0b00u);
}

std::string TruthTable::bit_string() const {
    std::string s(rows(), '0');
    for (int i = 0; i < rows(); ++i)
        if (row(i)) s[i] = '1';
    return s;
}

bool TruthTable::is_constant() const {
    uint64_t full = (rows() == 64) ? ~uint64_t{0} : (uint64_t{1} << rows()) - 1;
    return bits_ == 0 || bits_ == full;
}

int TruthTable::constant_value() const { return row(0); }

std::vector<int> TruthTable::support() const {
    std::vector<int> deps;
    for (int j = 0; j < arity_; ++j) {
        int bit = 1 << (arity_ - 1 - j);
        for (int i = 0; i < rows(); ++i) {
            if ((i & bit) == 0 && row(i) != row(i | bit)) {
                deps.push_back(j);
                break;
            }
        }
    }
    return deps;
}

bool TruthTable::is_projection(int* coord) const {
    for (int j = 0; j < arity_; ++j) {
        int bit = 1 << (arity_ - 1 - j);
        bool ok = true;
        for (int i = 0; i < rows(); ++i)
            if (row(i) != ((i & bit) ? 1 : 0)) { ok = false; break; }
        if (ok) {
            if (coord) *coord = j;
            return true;
        }
    }
    return false;
}

bool TruthTable::is_negation_of(int* coord) const {
    for (int j = 0; j < arity_; ++j) {
        int bit = 1 << (arity_ - 1 - j);
        bool ok = true;
        for (int i = 0; i < rows(); ++i)
            if (row(i) != ((i & bit) ? 0 : 1)) { ok = false; break; }
        if (ok) {
            if (coord) *coord = j;
            return true;
        }
    }
    return false;
}

bool TruthTable::is_and_of_subset(std::vector<int>* coords) const {
    if (is_constant())
        return false;
    // Coordinates that are 1 in every row of f^-1(1).
    int mask = rows() - 1;
    for (int i = 0; i < rows(); ++i)
        if (row(i)) mask &= i;
    if (mask == 0)
        return false;
    for (int i = 0; i < rows(); ++i)
        if (row(i) != (((i & mask) == mask) ? 1 : 0))
            return false;
    if (coords) {
        coords->clear();
        for (int j = 0; j < arity_; ++j)
            if (mask & (1 << (arity_ - 1 - j))) coords->push_back(j);
    }
    return true;
}

bool TruthTable::is_or_of_subset(std::vector<int>* coords) const {
    if (is_constant())
        return false;
    int mask = rows() - 1;
    for (int i = 0; i < rows(); ++i)
        if (!row(i)) mask &= ~i;
    mask &= rows() - 1;
    if (mask == 0)
        return false;
    for (int i = 0; i < rows(); ++i)
        if (row(i) != (((i & mask) != 0) ? 1 : 0))
            return false;
    if (coords) {
        coords->clear();
        for (int j = 0; j < arity_; ++j)
            if (mask & (1 << (arity_ - 1 - j))) coords->push_back(j);
    }
    return true;
}

namespace {

bool monotone(const TruthTable& t) {
    for (int i = 0; i < t.rows(); ++i) {
        for (int j = 0; j < t.arity(); ++j) {
            int bit = 1 << (t.arity() - 1 - j);
            if ((i & bit) == 0 && t.row(i) > t.row(i | bit))
                return false;
        }
    }
    return true;
}

bool affine(const TruthTable& t) {
    // Moebius/XOR transform; affine iff the ANF has no monomial of degree >= 2.
    std::vector<int> a(t.rows());
    for (int i = 0; i < t.rows(); ++i)
        a[i] = t.row(i);
    for (int j = 0; j < t.arity(); ++j) {
        int bit = 1 << j;
        for (int i = 0; i < t.rows(); ++i)
            if (i & bit) a[i] ^= a[i ^ bit];
    }
    for (int i = 0; i < t.rows(); ++i)
        if (a[i] && (i & (i - 1)) != 0)
            return false;
    return true;
}

bool separating(const TruthTable& t, int c) {
    // Some coordinate i with b_i = c for every tuple b in f^-1(c).
    // Vacuously true when f^-1(c) is empty.
    bool any_row = false;
    int keep = (1 << t.arity()) - 1;
    for (int i = 0; i < t.rows(); ++i) {
        if (t.row(i) == c) {
            any_row = true;
            keep &= (c == 1) ? i : ~i;
        }
    }
    keep &= (1 << t.arity()) - 1;
    if (!any_row)
        return true;
    return t.arity() > 0 && keep != 0;
}

} // namespace

bool check_property(const TruthTable& t, Property p) {
    switch (p) {
    case Property::ZeroReproducing: return t.row(0) == 0;
    case Property::OneReproducing: return t.row(t.rows() - 1) == 1;
    case Property::Monotone: return monotone(t);
    case Property::SelfDual: return t.dual() == t;
    case Property::Affine: return affine(t);
    case Property::OneSeparating: return separating(t, 1);
    case Property::ZeroSeparating: return separating(t, 0);
    }
    return false;
}

OperatorSet::OperatorSet(std::initializer_list<NamedOperator> ops) {
    for (const auto& op : ops)
        add(op);
}

void OperatorSet::add(const NamedOperator& op) {
    if (op.name.empty())
        throw ArgumentError("operator name must be nonempty");
    auto it = ops_.find(op.name);
    if (it != ops_.end()) {
        if (it->second != op.table)
            throw ArgumentError("operator '" + op.name + "' redeclared with a different table");
        return;
    }
    ops_.emplace(op.name, op.table);
}

const TruthTable& OperatorSet::table(const std::string& name) const {
    auto it = ops_.find(name);
    if (it == ops_.end())
        throw ArgumentError("unknown operator '" + name + "'");
    return it->second;
}

std::vector<TruthTable> OperatorSet::tables() const {
    std::vector<TruthTable> out;
    out.reserve(ops_.size());
    for (const auto& [name, t] : ops_)
        out.push_back(t);
    return out;
}

std::optional<std::string> OperatorSet::name_of(const TruthTable& t) const {
    for (const auto& [name, tab] : ops_)
        if (tab == t)
            return name;
    return std::nullopt;
}

namespace tbl {
TruthTable and2() { return TruthTable::from_bits(2, "0001"); }
TruthTable or2() { return TruthTable::from_bits(2, "0111"); }
TruthTable not1() { return TruthTable::from_bits(1, "10"); }
TruthTable xor2() { return TruthTable::from_bits(2, "0110"); }
TruthTable eq2() { return TruthTable::from_bits(2, "1001"); }
TruthTable top0() { return TruthTable::from_bits(0, "1"); }
TruthTable bot0() { return TruthTable::from_bits(0, "0"); }
TruthTable id1() { return TruthTable::from_bits(1, "01"); }
TruthTable andor3() { return TruthTable::from_bits(3, "00000111"); }
TruthTable sd3() { return TruthTable::from_bits(3, "10001110"); }
TruthTable d1base3() { return TruthTable::from_bits(3, "00101011"); }
TruthTable maj3() { return TruthTable::from_bits(3, "00010111"); }
TruthTable xor3() { return TruthTable::from_bits(3, "01101001"); }
TruthTable xor3neg() { return TruthTable::from_bits(3, "10010110"); }
TruthTable r2base3() { return TruthTable::from_bits(3, "00001001"); }
} // namespace tbl

} // namespace sublogic

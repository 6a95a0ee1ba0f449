#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sublogic/errors.hpp"

namespace sublogic {

// Cap on the arity of declared operators.
inline constexpr int kArityCap = 6;
// Cap on the arity used in clone closure computations. 2^(2^4) = 65536
// candidate tables is tractable, 2^(2^5) is not.
inline constexpr int kClosureArityCap = 4;

// A Boolean function of fixed arity as a row-indexed bit sequence.
// Row index = the argument tuple read as a binary number, first argument
// most significant; row 0 is the all-false tuple. Row i is bit i of bits().
class TruthTable {
  public:
    TruthTable() = default;
    TruthTable(int arity, uint64_t bits);

    // Parses a bitstring like "0001" (row 0 first).
    static TruthTable from_bits(int arity, const std::string& bitstring);

    int arity() const { return arity_; }
    uint64_t bits() const { return bits_; }
    int rows() const { return 1 << arity_; }

    int row(int i) const { return static_cast<int>((bits_ >> i) & 1u); }
    int eval(const std::vector<int>& args) const;
    // Row index of an argument tuple, first argument most significant.
    static int index_of(const std::vector<int>& args);

    // f^d(x1..xn) = not f(not x1, .., not xn). Involutive.
    TruthTable dual() const;

    // 0-ary tables lift to the unary constant function for clone math.
    TruthTable lift_to_unary() const;

    std::string bit_string() const;

    bool is_constant() const;           // constant 0 or 1, any arity
    int constant_value() const;         // requires is_constant()
    bool is_projection(int* coord = nullptr) const;       // f(x) = x_i
    bool is_negation_of(int* coord = nullptr) const;      // f(x) = not x_i
    // f(x) = AND/OR over a nonempty subset of coordinates; reports the subset.
    bool is_and_of_subset(std::vector<int>* coords = nullptr) const;
    bool is_or_of_subset(std::vector<int>* coords = nullptr) const;
    // Coordinates the function actually depends on.
    std::vector<int> support() const;

    bool operator==(const TruthTable& o) const { return arity_ == o.arity_ && bits_ == o.bits_; }
    bool operator!=(const TruthTable& o) const { return !(*this == o); }

  private:
    int arity_ = 0;
    uint64_t bits_ = 0;
};

enum class Property {
    ZeroReproducing,
    OneReproducing,
    Monotone,
    SelfDual,
    Affine,
    OneSeparating,
    ZeroSeparating,
};

bool check_property(const TruthTable& t, Property p);

struct NamedOperator {
    std::string name;
    TruthTable table;
};

// A finite set of named Boolean operators, keyed by name.
class OperatorSet {
  public:
    OperatorSet() = default;
    explicit OperatorSet(std::initializer_list<NamedOperator> ops);

    void add(const NamedOperator& op);
    bool has(const std::string& name) const { return ops_.count(name) != 0; }
    const TruthTable& table(const std::string& name) const;
    bool empty() const { return ops_.empty(); }
    size_t size() const { return ops_.size(); }

    const std::map<std::string, TruthTable>& entries() const { return ops_; }
    std::vector<TruthTable> tables() const;
    // Name of a declared operator with this exact table, if any.
    std::optional<std::string> name_of(const TruthTable& t) const;

    bool operator==(const OperatorSet& o) const { return ops_ == o.ops_; }

  private:
    std::map<std::string, TruthTable> ops_;
};

// The standard operators used throughout: and 0001, or 0111, not 10,
// xor 0110, eq 1001, top 1, bot 0.
namespace tbl {
TruthTable and2();
TruthTable or2();
TruthTable not1();
TruthTable xor2();
TruthTable eq2();
TruthTable top0();
TruthTable bot0();
TruthTable id1();
TruthTable andor3();  // x and (y or z)
TruthTable sd3();     // (x and not y) or (x and not z) or (not y and not z)
TruthTable d1base3(); // xy or x(not z) or y(not z)
TruthTable maj3();
TruthTable xor3();         // x + y + z
TruthTable xor3neg();      // x + y + z + 1
TruthTable r2base3();      // x and (y eq z)
} // namespace tbl

} // namespace sublogic

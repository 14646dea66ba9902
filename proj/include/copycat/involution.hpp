#pragma once

// Finite presentations of fixed-point-free partial involutions on Position.
//
// A RuleTable is a list of rules `SIDE <-> SIDE`. A side is a prefix of
// literal L/R tags and index patterns, followed by one tail variable that
// binds the rest of the word. A token matching one side of a rule is
// rewritten to the other side under the same substitution. When all sides
// of a table have pairwise-disjoint instance sets the induced map is
// single-valued, injective, self-inverse and free of fixed points.
//
// Table text format, one rule per line:
//
//   L L #n w <-> R L #2n w
//   L R L #n w <-> R L #2n+1 w
//   L #<m,n> w <-> R #m #n w
//
// Index patterns: #k (literal), #n (variable), #2n, #2n+1, #<m,n> (Cantor).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "copycat/position.hpp"

namespace copycat {

/// Cantor pairing <m,n> = (m+n)(m+n+1)/2 + n. nullopt on 64-bit overflow.
std::optional<std::uint64_t> cantor_pair(std::uint64_t m, std::uint64_t n);
/// Inverse of cantor_pair via the triangular root; total on uint64.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

struct IndexExpr {
  enum class Kind : std::uint8_t { Var, Const, Double, DoubleSucc, CPair };

  Kind kind = Kind::Var;
  std::string first;   // variable name (Var, Double, DoubleSucc, CPair)
  std::string second;  // second variable of CPair
  std::uint64_t value = 0;  // Const

  static IndexExpr var(std::string n) { return {Kind::Var, std::move(n), {}, 0}; }
  static IndexExpr constant(std::uint64_t k) { return {Kind::Const, {}, {}, k}; }
  static IndexExpr twice(std::string n) { return {Kind::Double, std::move(n), {}, 0}; }
  static IndexExpr twice_plus_one(std::string n) { return {Kind::DoubleSucc, std::move(n), {}, 0}; }
  static IndexExpr cantor(std::string m, std::string n) { return {Kind::CPair, std::move(m), std::move(n), 0}; }

  std::vector<std::string> variables() const;

  friend bool operator==(const IndexExpr&, const IndexExpr&) = default;
};

/// Variable assignment for index variables, kept in insertion order.
using Valuation = std::vector<std::pair<std::string, std::uint64_t>>;

std::optional<std::uint64_t> lookup(const Valuation& v, std::string_view name);

/// nullopt if a variable is unbound or the result overflows.
std::optional<std::uint64_t> eval_index(const IndexExpr& e, const Valuation& v);

/// The unique valuation sending `e` to k, or nullopt when k is outside the
/// range of `e`.
std::optional<Valuation> invert_index(const IndexExpr& e, std::uint64_t k);

struct PatternItem {
  enum class Kind : std::uint8_t { LitL, LitR, Index };
  Kind kind = Kind::LitL;
  IndexExpr index;

  static PatternItem lit_l() { return {Kind::LitL, {}}; }
  static PatternItem lit_r() { return {Kind::LitR, {}}; }
  static PatternItem idx(IndexExpr e) { return {Kind::Index, std::move(e)}; }
};

struct PatternSide {
  std::vector<PatternItem> prefix;
  std::string tail = "w";
};

struct Rule {
  PatternSide left;
  PatternSide right;
};

struct RuleTable {
  std::string name;
  std::vector<Rule> rules;
};

struct Violation {
  std::string message;
};

/// Empty result means the table presents a fixed-point-free partial
/// involution.
std::vector<Violation> validate_table(const RuleTable& t);

/// Rewrites `u` through the first matching side. nullopt when no side
/// matches (or the rewritten index overflows).
std::optional<Position> apply_table(const RuleTable& t, const Position& u);

/// Matches a single side; on success returns the bound index variables and
/// the residual tail.
std::optional<std::pair<Valuation, Position>> match_side(const PatternSide& side, const Position& u);

/// Builds the instance of `side` under `v` with `tail` appended.
std::optional<Position> instantiate_side(const PatternSide& side, const Valuation& v, Position tail);

/// Parses the table text format. Throws ParseError on malformed input; does
/// not validate.
RuleTable parse_table(std::string name, std::string_view text);
std::string render_side(const PatternSide& s);
std::string render_table(const RuleTable& t);

}  // namespace copycat

#pragma once

// The Geometry-of-Interaction token machine.
//
// An Element is a partial involution on positions, presented as a finite
// tree: a primitive rule table, a linear application node, or a !-box.
// Application f . g is evaluated by the execution formula
//
//   f . g = f22  u  f21 ; g ; (f11 ; g)* ; f12
//
// realised as a token loop. In f's address space the argument sits under L
// and the continuation under R; a query u on f . g enters f at R.u, and
// every L-exit of f bounces once off g before re-entering f at L.
//
// Evaluation is fuelled: every table lookup and every loop iteration costs
// one unit, so divergent interactions surface as OutOfFuel rather than as a
// hang.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <optional>
#include <vector>

#include "copycat/cl.hpp"
#include "copycat/involution.hpp"
#include "copycat/position.hpp"

namespace copycat {

class Element;

namespace detail {
struct Node;
}  // namespace detail

class Element {
public:
  /// Throws std::invalid_argument if the table fails validate_table.
  static Element prim(RuleTable table);
  static Element apply(Element fun, Element arg);
  static Element bang(Element body);

  bool is_prim() const;
  bool is_app() const;
  bool is_bang() const;

  const RuleTable& table() const;   // requires is_prim()
  const Element& fun() const;       // requires is_app()
  const Element& arg() const;       // requires is_app()
  const Element& body() const;      // requires is_bang()

  /// Number of nodes, counting shared subtrees once per occurrence.
  std::size_t size() const;

  const detail::Node& node() const { return *node_; }

private:
  explicit Element(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  enum class Kind : std::uint8_t { Prim, App, Bang };
  Kind kind;
  RuleTable table;                 // Prim
  std::optional<Element> first;    // App: function, Bang: body
  std::optional<Element> second;   // App: argument
};
}  // namespace detail

struct EvalResult {
  enum class Kind : std::uint8_t { Defined, Undefined, OutOfFuel };

  Kind kind = Kind::Undefined;
  Position value;              // Defined only
  std::uint64_t steps_used = 0;

  bool defined() const { return kind == Kind::Defined; }
  bool conclusive() const { return kind != Kind::OutOfFuel; }

  friend bool operator==(const EvalResult& a, const EvalResult& b) {
    return a.kind == b.kind && (a.kind != Kind::Defined || a.value == b.value);
  }
};

std::string render_result(const EvalResult& r);

inline constexpr std::uint64_t kDefaultFuel = 10'000;

EvalResult eval_element(const Element& e, const Position& u, std::uint64_t fuel = kDefaultFuel);

enum class Combinator { I, B, C, K, D, Delta, F, W };

Element lca_combinator(Combinator c);
RuleTable lca_table(Combinator c);

/// Linear application f . g.
Element app(Element f, Element g);
/// !e: acts as e on every copy #n.w.
Element bang(Element e);
/// a .s b = a . !b
Element std_app(Element a, Element b);

enum class Derived { Dp, Bs, Cs, Is, Ks, Ws, Ss };

Element derived_standard(Derived d);

/// Interprets a closed CL term in the standard algebra derived from the
/// linear one: S K B C I W map to Ss Ks Bs Cs Is Ws and application to .s.
/// Throws std::invalid_argument on a free variable.
Element interpret_cl(const cl::Term& t);

/// Looks up any combinator or derived element by its CLI name
/// (I B C K D delta F W Dp Bs Cs Is Ks Ws Ss). Throws std::invalid_argument.
Element element_by_name(std::string_view name);

/// Linear element expressions: elem := NAME | '(' elem elem ')' | '!' elem.
/// Throws ParseError.
Element parse_element(std::string_view text);
std::string render_element(const Element& e);

}  // namespace copycat

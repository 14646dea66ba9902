#pragma once

// A finite CCS fragment: prefix, choice, inaction, parallel composition with
// (`|`) and without (`||`) synchronisation. Transitions are derived by the
// SOS rules; the reachable graph is an LTS on which strong and weak
// bisimilarity, Hennessy-Milner formulas and trace sets are computed.
//
// Process syntax (prefix binds tightest, then | and ||, then +):
//
//   proc := par ('+' par)*
//   par  := pre (('|' | '||') pre)*
//   pre  := act '.' pre | '0' | '(' proc ')'
//   act  := ident | ident "'" | "tau"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace copycat::ccs {

struct Action {
  enum class Kind : std::uint8_t { Name, CoName, Tau };
  Kind kind = Kind::Tau;
  std::string id;

  static Action name(std::string a) { return {Kind::Name, std::move(a)}; }
  static Action coname(std::string a) { return {Kind::CoName, std::move(a)}; }
  static Action tau() { return {Kind::Tau, {}}; }

  bool is_tau() const { return kind == Kind::Tau; }
  /// a <-> a'; nullopt for tau.
  std::optional<Action> complement() const;
  std::string render() const;

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

namespace detail {
struct ProcNode;
}

class Process {
public:
  enum class Kind : std::uint8_t { Nil, Prefix, Sum, Par, Sync };

  static Process nil();
  static Process prefix(Action a, Process p);
  static Process sum(Process p, Process q);
  static Process par(Process p, Process q);   // no interaction
  static Process sync(Process p, Process q);  // with synchronisation

  Kind kind() const;
  const Action& action() const;    // Prefix
  const Process& left() const;     // Prefix continuation, or left operand
  const Process& right() const;    // binary operators

  friend bool operator==(const Process& a, const Process& b);

private:
  explicit Process(std::shared_ptr<const detail::ProcNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ProcNode> node_;
};

namespace detail {
struct ProcNode {
  Process::Kind kind;
  Action action;
  std::optional<Process> left;
  std::optional<Process> right;
};
}  // namespace detail

/// Canonical text; structurally equal processes render identically and the
/// text parses back to the same tree.
std::string render_process(const Process& p);
Process parse_process(std::string_view text);

/// Exactly the SOS-derivable steps, sorted and without duplicates.
std::vector<std::pair<Action, Process>> transitions(const Process& p);

/// `NAME = PROCESS` per line; `#` starts a comment. Throws ParseError.
std::map<std::string, Process> parse_process_file(std::string_view text);

class StateBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Transition {
  std::size_t src;
  std::size_t action;  // index into Lts::alphabet()
  std::size_t dst;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

class Lts {
public:
  std::size_t num_states() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }
  const std::vector<Action>& alphabet() const { return alphabet_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Outgoing transitions of s, as indices into transitions().
  const std::vector<std::size_t>& out(std::size_t s) const { return out_[s]; }

  std::optional<std::size_t> find_state(const Process& p) const;
  std::optional<std::size_t> find_state(const std::string& key) const;
  std::optional<std::size_t> find_action(const Action& a) const;

  std::size_t add_state(std::string key);
  std::size_t intern(const Action& a);
  void add_transition(std::size_t src, std::size_t action, std::size_t dst);
  /// Sorts and deduplicates the transition list.
  void finalize();

private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Action> alphabet_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Breadth-first closure of `transitions` from the roots, which receive
/// state ids 0..roots.size()-1 (duplicates collapse). Throws
/// StateBudgetExceeded once more than max_states states are discovered.
Lts build_lts(const std::vector<Process>& roots, std::size_t max_states = 100'000);

/// Block id per state of the coarsest partition stable under every action.
std::vector<std::size_t> bisim_partition(const Lts& lts);
bool strong_bisim(const Lts& lts, std::size_t s, std::size_t t);

/// Greatest fixed point from the full relation, deleting pairs that violate
/// either transfer clause. Quadratic memory; used as the oracle for
/// bisim_partition.
std::vector<std::vector<bool>> naive_bisim_relation(const Lts& lts);
bool naive_bisim(const Lts& lts, std::size_t s, std::size_t t);

/// Same states; transitions become s =a=> t = tau* a tau* for a != tau and
/// s =tau=> t = tau* (reflexive).
Lts weak_saturate(const Lts& lts);
bool weak_bisim(const Lts& lts, std::size_t s, std::size_t t);

namespace detail {
struct HmlNode;
}

class Hml {
public:
  enum class Kind : std::uint8_t { True, False, And, Or, Not, Box, Diamond };

  static Hml tt();
  static Hml ff();
  static Hml conj(Hml a, Hml b);
  static Hml disj(Hml a, Hml b);
  static Hml neg(Hml a);
  static Hml box(Action a, Hml f);
  static Hml diamond(Action a, Hml f);

  Kind kind() const;
  const Action& action() const;
  const Hml& first() const;
  const Hml& second() const;

private:
  explicit Hml(std::shared_ptr<const detail::HmlNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::HmlNode> node_;
};

namespace detail {
struct HmlNode {
  Hml::Kind kind;
  Action action;
  std::optional<Hml> first;
  std::optional<Hml> second;
};
}  // namespace detail

/// Syntax: tt ff  f /\ g  f \/ g  ~f  [a]f  <a>f  (f). Throws ParseError.
Hml parse_hml(std::string_view text);
std::string render_hml(const Hml& f);
bool hml_eval(const Lts& lts, std::size_t s, const Hml& f);

using Trace = std::vector<Action>;
/// Every action sequence of length <= maxlen that s can perform, including
/// the empty one.
std::set<Trace> traces(const Lts& lts, std::size_t s, std::size_t maxlen);
/// Actions separated by spaces; the empty trace renders as "ε".
std::string render_trace(const Trace& t);

/// Aldebaran format with `initial` as the first state.
std::string export_aut(const Lts& lts, std::size_t initial = 0);

}  // namespace copycat::ccs

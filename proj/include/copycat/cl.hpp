#pragma once

// Combinatory logic: terms over S K B C I W and variables, bracket
// abstraction, a normal-order reducer, and Church numerals
// n = (S B)^n (K I). This is the independent oracle the GoI machine is
// checked against.
//
// Text form: juxtaposition is application and associates left, so
// "S K K a" is ((S K) K) a. Constants are the single upper-case letters
// S K B C I W; variables are identifiers starting with a lower-case letter.
// parse_lambda additionally accepts `\x y. body`.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace copycat::cl {

enum class Comb : std::uint8_t { S, K, B, C, I, W };

char comb_letter(Comb c);
/// Number of arguments a combinator consumes when it fires.
int comb_arity(Comb c);

namespace detail {
struct TermNode;
}

class Term {
public:
  static Term constant(Comb c);
  static Term var(std::string name);
  static Term apply(Term fun, Term arg);

  bool is_const() const;
  bool is_var() const;
  bool is_apply() const;

  Comb comb() const;                 // requires is_const()
  const std::string& name() const;   // requires is_var()
  const Term& fun() const;           // requires is_apply()
  const Term& arg() const;           // requires is_apply()

  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);

private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  enum class Kind : std::uint8_t { Const, Var, Apply };
  Kind kind;
  Comb comb = Comb::S;
  std::string name;
  std::optional<Term> fun;
  std::optional<Term> arg;
};
}  // namespace detail

/// Left-associated application: ap(f, a, b) = (f a) b.
inline Term ap(Term f, Term a) { return Term::apply(std::move(f), std::move(a)); }
template <typename... Rest>
Term ap(Term f, Term a, Term b, Rest... rest) {
  return ap(ap(std::move(f), std::move(a)), std::move(b), std::move(rest)...);
}

inline Term S() { return Term::constant(Comb::S); }
inline Term K() { return Term::constant(Comb::K); }
inline Term B() { return Term::constant(Comb::B); }
inline Term C() { return Term::constant(Comb::C); }
inline Term I() { return Term::constant(Comb::I); }
inline Term W() { return Term::constant(Comb::W); }
inline Term v(std::string name) { return Term::var(std::move(name)); }

std::set<std::string> free_vars(const Term& t);
bool occurs_free(std::string_view x, const Term& t);

/// lambda* x. m using K (x not free), I (m = x), S (application), tried in
/// that order.
Term bracket_abstract(const std::string& x, const Term& m);

/// m[n/x]. CL has no binders, so this is plain replacement.
Term substitute(const Term& m, const std::string& x, const Term& n);

struct NormalizeResult {
  bool normal = false;     // false: step budget exhausted
  Term term;               // normal form, or the term reached when the budget ran out
  std::uint64_t steps = 0;
};

/// Leftmost-outermost reduction with at most `max_steps` contractions.
NormalizeResult normalize(const Term& t, std::uint64_t max_steps = 10'000);

/// True when no S/K/B/C/I/W redex occurs anywhere in t.
bool is_normal(const Term& t);

/// (S B)^n (K I), right nested.
Term church(std::uint64_t n);

/// lambda* m n f x. m f (n f x)
Term church_add();
/// lambda* m n f. m (n f)
Term church_mul();

enum class Verdict { True, False, Inconclusive };
const char* verdict_name(Verdict v);

/// Applies both terms to fresh variables f x, normalises, and compares the
/// normal forms syntactically.
Verdict numeral_equal(const Term& m, const Term& n, std::uint64_t max_steps = 10'000);

/// Throws ParseError.
Term parse_term(std::string_view text);
/// Like parse_term, but also accepts `\x y. body`, desugared by iterated
/// bracket abstraction.
Term parse_lambda(std::string_view text);

std::string render_term(const Term& t);

}  // namespace copycat::cl

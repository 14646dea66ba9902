#include "copycat/cl.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

#include "copycat/error.hpp"

namespace copycat::cl {

using detail::TermNode;

char comb_letter(Comb c) {
  switch (c) {
    case Comb::S: return 'S';
    case Comb::K: return 'K';
    case Comb::B: return 'B';
    case Comb::C: return 'C';
    case Comb::I: return 'I';
    case Comb::W: return 'W';
  }
  return '?';
}

int comb_arity(Comb c) {
  switch (c) {
    case Comb::S:
    case Comb::B:
    case Comb::C: return 3;
    case Comb::K:
    case Comb::W: return 2;
    case Comb::I: return 1;
  }
  return 0;
}

Term Term::constant(Comb c) {
  return Term(std::make_shared<const TermNode>(TermNode{TermNode::Kind::Const, c, {}, std::nullopt, std::nullopt}));
}
Term Term::var(std::string name) {
  return Term(std::make_shared<const TermNode>(
      TermNode{TermNode::Kind::Var, Comb::S, std::move(name), std::nullopt, std::nullopt}));
}
Term Term::apply(Term fun, Term arg) {
  return Term(std::make_shared<const TermNode>(
      TermNode{TermNode::Kind::Apply, Comb::S, {}, std::move(fun), std::move(arg)}));
}

bool Term::is_const() const { return node_->kind == TermNode::Kind::Const; }
bool Term::is_var() const { return node_->kind == TermNode::Kind::Var; }
bool Term::is_apply() const { return node_->kind == TermNode::Kind::Apply; }
Comb Term::comb() const { return node_->comb; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::fun() const { return *node_->fun; }
const Term& Term::arg() const { return *node_->arg; }

std::size_t Term::size() const { return is_apply() ? 1 + fun().size() + arg().size() : 1; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case TermNode::Kind::Const: return a.comb() == b.comb();
    case TermNode::Kind::Var: return a.name() == b.name();
    case TermNode::Kind::Apply: return a.fun() == b.fun() && a.arg() == b.arg();
  }
  return false;
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.name());
  if (t.is_apply()) {
    collect_vars(t.fun(), out);
    collect_vars(t.arg(), out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

bool occurs_free(std::string_view x, const Term& t) {
  if (t.is_var()) return t.name() == x;
  if (t.is_apply()) return occurs_free(x, t.fun()) || occurs_free(x, t.arg());
  return false;
}

Term bracket_abstract(const std::string& x, const Term& m) {
  if (!occurs_free(x, m)) return ap(K(), m);
  if (m.is_var()) return I();
  return ap(S(), bracket_abstract(x, m.fun()), bracket_abstract(x, m.arg()));
}

Term substitute(const Term& m, const std::string& x, const Term& n) {
  if (m.is_var()) return m.name() == x ? n : m;
  if (m.is_const()) return m;
  if (!occurs_free(x, m)) return m;
  return ap(substitute(m.fun(), x, n), substitute(m.arg(), x, n));
}

// --- reduction ---------------------------------------------------------------

namespace {

class Reducer {
public:
  explicit Reducer(std::uint64_t budget) : budget_(budget) {}

  // Reduces t to normal form, leftmost-outermost. Once the budget is spent
  // the partially reduced term is returned unchanged from that point on.
  Term run(Term t) {
    for (;;) {
      std::vector<Term> args;
      Term head = t;
      while (head.is_apply()) {
        args.push_back(head.arg());
        head = head.fun();
      }
      // args is innermost-last; reverse to application order.
      std::reverse(args.begin(), args.end());

      if (head.is_const() && static_cast<int>(args.size()) >= comb_arity(head.comb())) {
        if (steps_ == budget_) {
          exhausted_ = true;
          return t;
        }
        ++steps_;
        t = contract(head.comb(), args);
        continue;
      }
      // The head can never fire, so the leftmost redex lies in the first
      // argument that is not yet normal.
      Term out = head;
      for (std::size_t i = 0; i < args.size(); ++i) {
        Term a = exhausted_ ? args[i] : run(args[i]);
        out = ap(out, a);
      }
      return out;
    }
  }

  std::uint64_t steps() const { return steps_; }
  bool exhausted() const { return exhausted_; }

private:
  static Term contract(Comb c, const std::vector<Term>& a) {
    Term r = [&] {
      switch (c) {
        case Comb::S: return ap(a[0], a[2], ap(a[1], a[2]));
        case Comb::K: return a[0];
        case Comb::I: return a[0];
        case Comb::B: return ap(a[0], ap(a[1], a[2]));
        case Comb::C: return ap(a[0], a[2], a[1]);
        case Comb::W: return ap(a[0], a[1], a[1]);
      }
      throw std::logic_error("unreachable");
    }();
    for (std::size_t i = static_cast<std::size_t>(comb_arity(c)); i < a.size(); ++i) r = ap(r, a[i]);
    return r;
  }

  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  bool exhausted_ = false;
};

}  // namespace

NormalizeResult normalize(const Term& t, std::uint64_t max_steps) {
  Reducer r(max_steps);
  Term out = r.run(t);
  return {!r.exhausted(), out, r.steps()};
}

bool is_normal(const Term& t) {
  Term head = t;
  int nargs = 0;
  while (head.is_apply()) {
    if (!is_normal(head.arg())) return false;
    head = head.fun();
    ++nargs;
  }
  return !(head.is_const() && nargs >= comb_arity(head.comb()));
}

Term church(std::uint64_t n) {
  Term t = ap(K(), I());
  for (std::uint64_t i = 0; i < n; ++i) t = ap(ap(S(), B()), t);
  return t;
}

namespace {

Term abstract_all(std::initializer_list<const char*> xs, Term body) {
  std::vector<std::string> names(xs.begin(), xs.end());
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = bracket_abstract(*it, body);
  return body;
}

}  // namespace

Term church_add() {
  return abstract_all({"m", "n", "f", "x"}, ap(v("m"), v("f"), ap(v("n"), v("f"), v("x"))));
}

Term church_mul() { return abstract_all({"m", "n", "f"}, ap(v("m"), ap(v("n"), v("f")))); }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict numeral_equal(const Term& m, const Term& n, std::uint64_t max_steps) {
  // Fresh names must avoid anything free in the inputs.
  auto fv = free_vars(m);
  auto fv2 = free_vars(n);
  fv.insert(fv2.begin(), fv2.end());
  auto fresh = [&](std::string base) {
    while (fv.count(base)) base += "'";
    fv.insert(base);
    return base;
  };
  Term f = v(fresh("f")), x = v(fresh("x"));
  auto a = normalize(ap(m, f, x), max_steps);
  auto b = normalize(ap(n, f, x), max_steps);
  if (!a.normal || !b.normal) return Verdict::Inconclusive;
  return a.term == b.term ? Verdict::True : Verdict::False;
}

// --- text ----------------------------------------------------------------------

namespace {

class TermParser {
public:
  TermParser(std::string_view s, bool allow_lambda) : s_(s), allow_lambda_(allow_lambda) {}

  Term parse() {
    Term t = term();
    skip();
    if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
    return t;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  bool at_atom() {
    skip();
    if (i_ == s_.size()) return false;
    char c = s_[i_];
    return c == '(' || c == '\\' || std::isalpha(static_cast<unsigned char>(c));
  }

  Term term() {
    if (!at_atom()) throw ParseError("expected a term", i_);
    Term t = atom();
    while (at_atom()) t = ap(t, atom());
    return t;
  }

  std::string ident() {
    std::size_t start = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  Term atom() {
    skip();
    std::size_t at = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Term t = term();
      skip();
      if (i_ == s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
      return t;
    }
    if (c == '\\') {
      if (!allow_lambda_) throw ParseError("lambda is only accepted by the compiler", at);
      ++i_;
      std::vector<std::string> params;
      for (;;) {
        skip();
        if (i_ < s_.size() && s_[i_] == '.') break;
        if (i_ == s_.size() || !std::islower(static_cast<unsigned char>(s_[i_])))
          throw ParseError("expected a parameter name or '.'", i_);
        params.push_back(ident());
      }
      if (params.empty()) throw ParseError("lambda without parameters", at);
      ++i_;  // '.'
      Term body = term();
      for (auto it = params.rbegin(); it != params.rend(); ++it) body = bracket_abstract(*it, body);
      return body;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      ++i_;
      switch (c) {
        case 'S': return S();
        case 'K': return K();
        case 'B': return B();
        case 'C': return C();
        case 'I': return I();
        case 'W': return W();
        default: throw ParseError(std::string("unknown combinator '") + c + "'", at);
      }
    }
    if (std::islower(static_cast<unsigned char>(c))) return v(ident());
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view s_;
  bool allow_lambda_;
  std::size_t i_ = 0;
};

void render_into(const Term& t, std::string& out, bool as_arg) {
  if (t.is_const()) {
    out += comb_letter(t.comb());
    return;
  }
  if (t.is_var()) {
    out += t.name();
    return;
  }
  if (as_arg) out += '(';
  render_into(t.fun(), out, false);
  out += ' ';
  render_into(t.arg(), out, true);
  if (as_arg) out += ')';
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text, false).parse(); }
Term parse_lambda(std::string_view text) { return TermParser(text, true).parse(); }

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out, false);
  return out;
}

}  // namespace copycat::cl

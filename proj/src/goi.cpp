#include "copycat/goi.hpp"

#include <cctype>
#include <stdexcept>

#include "copycat/error.hpp"

namespace copycat {

using detail::Node;

Element Element::prim(RuleTable table) {
  auto problems = validate_table(table);
  if (!problems.empty())
    throw std::invalid_argument("table " + table.name + " is not a partial involution: " + problems.front().message);
  return Element(std::make_shared<const Node>(Node{Node::Kind::Prim, std::move(table), std::nullopt, std::nullopt}));
}

Element Element::apply(Element fun, Element arg) {
  return Element(std::make_shared<const Node>(Node{Node::Kind::App, {}, std::move(fun), std::move(arg)}));
}

Element Element::bang(Element body) {
  return Element(std::make_shared<const Node>(Node{Node::Kind::Bang, {}, std::move(body), std::nullopt}));
}

bool Element::is_prim() const { return node_->kind == Node::Kind::Prim; }
bool Element::is_app() const { return node_->kind == Node::Kind::App; }
bool Element::is_bang() const { return node_->kind == Node::Kind::Bang; }

const RuleTable& Element::table() const { return node_->table; }
const Element& Element::fun() const { return *node_->first; }
const Element& Element::arg() const { return *node_->second; }
const Element& Element::body() const { return *node_->first; }

std::size_t Element::size() const {
  if (is_prim()) return 1;
  if (is_bang()) return 1 + body().size();
  return 1 + fun().size() + arg().size();
}

std::string render_result(const EvalResult& r) {
  switch (r.kind) {
    case EvalResult::Kind::Defined: return render_token(r.value);
    case EvalResult::Kind::Undefined: return "undefined";
    case EvalResult::Kind::OutOfFuel: return "out-of-fuel";
  }
  return {};
}

// --- evaluation -------------------------------------------------------------

namespace {

enum class Status { Ok, Undefined, OutOfFuel };

// Rewrites `tok` in place. On anything but Ok the contents of `tok` are
// unspecified.
Status run(const Element& e, Position& tok, std::uint64_t& fuel) {
  const Node& node = e.node();
  if (node.kind == Node::Kind::Prim) {
    if (fuel == 0) return Status::OutOfFuel;
    --fuel;
    auto out = apply_table(node.table, tok);
    if (!out) return Status::Undefined;
    tok = std::move(*out);
    return Status::Ok;
  }
  if (node.kind == Node::Kind::Bang) {
    if (tok.empty() || tok.front().kind != TagKind::Idx) return Status::Undefined;
    Tag copy = tok.front();
    tok.pop_front();
    Status s = run(*node.first, tok, fuel);
    if (s != Status::Ok) return s;
    tok.push_front(copy);
    return Status::Ok;
  }
  const Element& fun = *node.first;
  const Element& arg = *node.second;
  tok.push_front(Tag::r());
  for (;;) {
    if (fuel == 0) return Status::OutOfFuel;
    --fuel;
    Status s = run(fun, tok, fuel);
    if (s != Status::Ok) return s;
    if (tok.empty()) return Status::Undefined;
    TagKind k = tok.front().kind;
    if (k == TagKind::R) {
      tok.pop_front();
      return Status::Ok;
    }
    if (k != TagKind::L) return Status::Undefined;
    tok.pop_front();
    s = run(arg, tok, fuel);
    if (s != Status::Ok) return s;
    tok.push_front(Tag::l());
  }
}

}  // namespace

EvalResult eval_element(const Element& e, const Position& u, std::uint64_t fuel) {
  Position tok = u;
  std::uint64_t left = fuel;
  Status s = run(e, tok, left);
  EvalResult r;
  r.steps_used = fuel - left;
  switch (s) {
    case Status::Ok:
      r.kind = EvalResult::Kind::Defined;
      r.value = std::move(tok);
      break;
    case Status::Undefined: r.kind = EvalResult::Kind::Undefined; break;
    case Status::OutOfFuel: r.kind = EvalResult::Kind::OutOfFuel; break;
  }
  return r;
}

// --- combinators ------------------------------------------------------------

// Argument ports: first argument under L, second under R L, third under R R L,
// result under the remaining R...R.
RuleTable lca_table(Combinator c) {
  switch (c) {
    case Combinator::I: return parse_table("I", "L w <-> R w");
    case Combinator::B:
      return parse_table("B",
                         "L L w <-> R L R w\n"
                         "L R w <-> R R R w\n"
                         "R L L w <-> R R L w");
    case Combinator::C:
      return parse_table("C",
                         "L L w <-> R R L w\n"
                         "L R L w <-> R L w\n"
                         "L R R w <-> R R R w");
    case Combinator::K: return parse_table("K", "L w <-> R R w");
    case Combinator::D: return parse_table("D", "L #0 w <-> R w");
    case Combinator::Delta: return parse_table("delta", "L #<m,n> w <-> R #m #n w");
    case Combinator::F:
      return parse_table("F",
                         "L #n L w <-> R L #n w\n"
                         "L #n R w <-> R R #n w");
    case Combinator::W:
      // Copies of the shared argument are split by parity: even copies feed
      // x's first argument, odd copies its second.
      return parse_table("W",
                         "L L #n w <-> R L #2n w\n"
                         "L R L #n w <-> R L #2n+1 w\n"
                         "L R R w <-> R R w");
  }
  throw std::invalid_argument("unknown combinator");
}

Element lca_combinator(Combinator c) { return Element::prim(lca_table(c)); }

Element app(Element f, Element g) { return Element::apply(std::move(f), std::move(g)); }
Element bang(Element e) { return Element::bang(std::move(e)); }
Element std_app(Element a, Element b) { return app(std::move(a), bang(std::move(b))); }

Element derived_standard(Derived d) {
  const Element B = lca_combinator(Combinator::B);
  const Element C = lca_combinator(Combinator::C);
  const Element I = lca_combinator(Combinator::I);
  const Element K = lca_combinator(Combinator::K);
  const Element D = lca_combinator(Combinator::D);
  const Element delta = lca_combinator(Combinator::Delta);
  const Element F = lca_combinator(Combinator::F);
  const Element W = lca_combinator(Combinator::W);

  // D' = C (B B I) (B D I), satisfying D' x !y = x y.
  const Element Dp = app(app(C, app(app(B, B), I)), app(app(B, D), I));

  switch (d) {
    case Derived::Dp: return Dp;
    case Derived::Bs:
      // C (B (B B B) (D' I)) (C ((B B) F) delta)
      return app(app(C, app(app(B, app(app(B, B), B)), app(Dp, I))), app(app(C, app(app(B, B), F)), delta));
    case Derived::Cs: return app(Dp, C);
    case Derived::Is: return app(Dp, I);
    case Derived::Ks: return app(Dp, K);
    case Derived::Ws: return app(Dp, W);
    case Derived::Ss: {
      // S = B (B (B W) C) (B B), read in the standard algebra.
      const Element Bs = derived_standard(Derived::Bs);
      const Element Cs = derived_standard(Derived::Cs);
      const Element Ws = derived_standard(Derived::Ws);
      return std_app(std_app(Bs, std_app(std_app(Bs, std_app(Bs, Ws)), Cs)), std_app(Bs, Bs));
    }
  }
  throw std::invalid_argument("unknown derived combinator");
}

Element element_by_name(std::string_view name) {
  if (name == "I") return lca_combinator(Combinator::I);
  if (name == "B") return lca_combinator(Combinator::B);
  if (name == "C") return lca_combinator(Combinator::C);
  if (name == "K") return lca_combinator(Combinator::K);
  if (name == "D") return lca_combinator(Combinator::D);
  if (name == "delta") return lca_combinator(Combinator::Delta);
  if (name == "F") return lca_combinator(Combinator::F);
  if (name == "W") return lca_combinator(Combinator::W);
  if (name == "Dp") return derived_standard(Derived::Dp);
  if (name == "Bs") return derived_standard(Derived::Bs);
  if (name == "Cs") return derived_standard(Derived::Cs);
  if (name == "Is") return derived_standard(Derived::Is);
  if (name == "Ks") return derived_standard(Derived::Ks);
  if (name == "Ws") return derived_standard(Derived::Ws);
  if (name == "Ss") return derived_standard(Derived::Ss);
  throw std::invalid_argument("unknown element name '" + std::string(name) + "'");
}

// --- text -------------------------------------------------------------------

namespace {

class ElementParser {
public:
  explicit ElementParser(std::string_view s) : s_(s) {}

  Element parse() {
    Element e = elem();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected input after element", i_);
    return e;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Element elem() {
    skip();
    if (i_ == s_.size()) throw ParseError("expected an element", i_);
    char c = s_[i_];
    if (c == '!') {
      ++i_;
      return bang(elem());
    }
    if (c == '(') {
      ++i_;
      Element f = elem();
      Element g = elem();
      skip();
      if (i_ == s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
      return app(std::move(f), std::move(g));
    }
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) throw ParseError(std::string("unexpected character '") + c + "'", i_);
    std::string_view name = s_.substr(start, i_ - start);
    try {
      return element_by_name(name);
    } catch (const std::invalid_argument&) {
      throw ParseError("unknown element name '" + std::string(name) + "'", start);
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Element parse_element(std::string_view text) { return ElementParser(text).parse(); }

std::string render_element(const Element& e) {
  if (e.is_prim()) return e.table().name;
  if (e.is_bang()) return "!" + render_element(e.body());
  return "(" + render_element(e.fun()) + " " + render_element(e.arg()) + ")";
}

}  // namespace copycat

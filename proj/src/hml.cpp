#include <cctype>
#include <functional>
#include <sstream>

#include "copycat/ccs.hpp"
#include "copycat/error.hpp"

namespace copycat::ccs {

using detail::HmlNode;

Hml Hml::tt() {
  static const Hml t(std::make_shared<const HmlNode>(HmlNode{Kind::True, {}, std::nullopt, std::nullopt}));
  return t;
}
Hml Hml::ff() {
  static const Hml f(std::make_shared<const HmlNode>(HmlNode{Kind::False, {}, std::nullopt, std::nullopt}));
  return f;
}
Hml Hml::conj(Hml a, Hml b) {
  return Hml(std::make_shared<const HmlNode>(HmlNode{Kind::And, {}, std::move(a), std::move(b)}));
}
Hml Hml::disj(Hml a, Hml b) {
  return Hml(std::make_shared<const HmlNode>(HmlNode{Kind::Or, {}, std::move(a), std::move(b)}));
}
Hml Hml::neg(Hml a) {
  return Hml(std::make_shared<const HmlNode>(HmlNode{Kind::Not, {}, std::move(a), std::nullopt}));
}
Hml Hml::box(Action a, Hml f) {
  return Hml(std::make_shared<const HmlNode>(HmlNode{Kind::Box, std::move(a), std::move(f), std::nullopt}));
}
Hml Hml::diamond(Action a, Hml f) {
  return Hml(std::make_shared<const HmlNode>(HmlNode{Kind::Diamond, std::move(a), std::move(f), std::nullopt}));
}

Hml::Kind Hml::kind() const { return node_->kind; }
const Action& Hml::action() const { return node_->action; }
const Hml& Hml::first() const { return *node_->first; }
const Hml& Hml::second() const { return *node_->second; }

// --- text ---------------------------------------------------------------------

namespace {

class HmlParser {
public:
  explicit HmlParser(std::string_view s) : s_(s) {}

  Hml parse() {
    Hml f = disj();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected input in formula", i_);
    return f;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }

  Hml disj() {
    Hml f = conj();
    while (eat("\\/")) f = Hml::disj(f, conj());
    return f;
  }
  Hml conj() {
    Hml f = unary();
    while (eat("/\\")) f = Hml::conj(f, unary());
    return f;
  }

  Hml unary() {
    skip();
    if (i_ == s_.size()) throw ParseError("expected a formula", i_);
    if (eat("~")) return Hml::neg(unary());
    if (eat("[")) {
      Action a = action();
      if (!eat("]")) throw ParseError("expected ']'", i_);
      return Hml::box(std::move(a), unary());
    }
    if (eat("<")) {
      Action a = action();
      if (!eat(">")) throw ParseError("expected '>'", i_);
      return Hml::diamond(std::move(a), unary());
    }
    if (eat("(")) {
      Hml f = disj();
      if (!eat(")")) throw ParseError("expected ')'", i_);
      return f;
    }
    std::size_t at = i_;
    std::string word = ident();
    if (word == "tt") return Hml::tt();
    if (word == "ff") return Hml::ff();
    throw ParseError(word.empty() ? "expected a formula" : "unknown constant '" + word + "'", at);
  }

  std::string ident() {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  Action action() {
    skip();
    std::size_t at = i_;
    if (i_ == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[i_]))) throw ParseError("expected an action", at);
    std::string id = ident();
    if (i_ < s_.size() && s_[i_] == '\'') {
      ++i_;
      if (id == "tau") throw ParseError("tau has no complement", at);
      return Action::coname(id);
    }
    return id == "tau" ? Action::tau() : Action::name(id);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// 0: disjunction, 1: conjunction, 2: unary/atomic.
int hml_level(const Hml& f) {
  switch (f.kind()) {
    case Hml::Kind::Or: return 0;
    case Hml::Kind::And: return 1;
    default: return 2;
  }
}

void render_hml_at(const Hml& f, int ctx, std::string& out) {
  if (hml_level(f) < ctx) {
    out += '(';
    render_hml_at(f, 0, out);
    out += ')';
    return;
  }
  switch (f.kind()) {
    case Hml::Kind::True: out += "tt"; break;
    case Hml::Kind::False: out += "ff"; break;
    case Hml::Kind::Or:
      render_hml_at(f.first(), 0, out);
      out += " \\/ ";
      render_hml_at(f.second(), 1, out);
      break;
    case Hml::Kind::And:
      render_hml_at(f.first(), 1, out);
      out += " /\\ ";
      render_hml_at(f.second(), 2, out);
      break;
    case Hml::Kind::Not:
      out += '~';
      render_hml_at(f.first(), 2, out);
      break;
    case Hml::Kind::Box:
    case Hml::Kind::Diamond: {
      const bool box = f.kind() == Hml::Kind::Box;
      out += box ? '[' : '<';
      out += f.action().render();
      out += box ? ']' : '>';
      render_hml_at(f.first(), 2, out);
      break;
    }
  }
}

}  // namespace

Hml parse_hml(std::string_view text) { return HmlParser(text).parse(); }

std::string render_hml(const Hml& f) {
  std::string out;
  render_hml_at(f, 0, out);
  return out;
}

bool hml_eval(const Lts& lts, std::size_t s, const Hml& f) {
  switch (f.kind()) {
    case Hml::Kind::True: return true;
    case Hml::Kind::False: return false;
    case Hml::Kind::And: return hml_eval(lts, s, f.first()) && hml_eval(lts, s, f.second());
    case Hml::Kind::Or: return hml_eval(lts, s, f.first()) || hml_eval(lts, s, f.second());
    case Hml::Kind::Not: return !hml_eval(lts, s, f.first());
    case Hml::Kind::Box:
    case Hml::Kind::Diamond: {
      const bool box = f.kind() == Hml::Kind::Box;
      auto a = lts.find_action(f.action());
      if (!a) return box;
      for (std::size_t ti : lts.out(s)) {
        const Transition& t = lts.transitions()[ti];
        if (t.action != *a) continue;
        bool holds = hml_eval(lts, t.dst, f.first());
        if (box && !holds) return false;
        if (!box && holds) return true;
      }
      return box;
    }
  }
  return false;
}

// --- traces and export ----------------------------------------------------------

std::set<Trace> traces(const Lts& lts, std::size_t s, std::size_t maxlen) {
  std::set<Trace> out;
  Trace cur;
  std::function<void(std::size_t)> walk = [&](std::size_t u) {
    out.insert(cur);
    if (cur.size() == maxlen) return;
    for (std::size_t ti : lts.out(u)) {
      const Transition& t = lts.transitions()[ti];
      cur.push_back(lts.alphabet()[t.action]);
      walk(t.dst);
      cur.pop_back();
    }
  };
  walk(s);
  return out;
}

std::string render_trace(const Trace& t) {
  if (t.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += t[i].render();
  }
  return out;
}

std::string export_aut(const Lts& lts, std::size_t initial) {
  const std::size_t n = lts.num_states();
  if (initial >= n) throw std::out_of_range("initial state out of range");
  // Aldebaran wants the initial state to be 0: swap it with state 0.
  auto renum = [&](std::size_t s) { return s == initial ? 0 : s == 0 ? initial : s; };
  std::vector<Transition> ts;
  for (const auto& t : lts.transitions()) ts.push_back({renum(t.src), t.action, renum(t.dst)});
  std::sort(ts.begin(), ts.end());
  std::ostringstream os;
  os << "des (0, " << ts.size() << ", " << n << ")\n";
  for (const auto& t : ts) os << '(' << t.src << ", \"" << lts.alphabet()[t.action].render() << "\", " << t.dst << ")\n";
  return os.str();
}

}  // namespace copycat::ccs

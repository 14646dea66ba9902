#include "copycat/involution.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "copycat/error.hpp"

namespace copycat {

std::optional<std::uint64_t> cantor_pair(std::uint64_t m, std::uint64_t n) {
  unsigned __int128 s = static_cast<unsigned __int128>(m) + n;
  unsigned __int128 k = s * (s + 1) / 2 + n;
  if (k > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(k);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
  // Largest s with s(s+1)/2 <= k.
  using u128 = unsigned __int128;
  auto tri = [](u128 s) { return s * (s + 1) / 2; };
  std::uint64_t lo = 0, hi = 1ULL << 33;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (tri(mid) <= k) lo = mid; else hi = mid - 1;
  }
  std::uint64_t n = k - static_cast<std::uint64_t>(tri(lo));
  return {lo - n, n};
}

std::vector<std::string> IndexExpr::variables() const {
  switch (kind) {
    case Kind::Const: return {};
    case Kind::CPair: return {first, second};
    default: return {first};
  }
}

std::optional<std::uint64_t> lookup(const Valuation& v, std::string_view name) {
  for (const auto& [k, x] : v)
    if (k == name) return x;
  return std::nullopt;
}

std::optional<std::uint64_t> eval_index(const IndexExpr& e, const Valuation& v) {
  using K = IndexExpr::Kind;
  if (e.kind == K::Const) return e.value;
  auto a = lookup(v, e.first);
  if (!a) return std::nullopt;
  switch (e.kind) {
    case K::Var: return a;
    case K::Double:
      if (*a > UINT64_MAX / 2) return std::nullopt;
      return 2 * *a;
    case K::DoubleSucc:
      if (*a > (UINT64_MAX - 1) / 2) return std::nullopt;
      return 2 * *a + 1;
    case K::CPair: {
      auto b = lookup(v, e.second);
      if (!b) return std::nullopt;
      return cantor_pair(*a, *b);
    }
    case K::Const: break;
  }
  return std::nullopt;
}

std::optional<Valuation> invert_index(const IndexExpr& e, std::uint64_t k) {
  using K = IndexExpr::Kind;
  switch (e.kind) {
    case K::Var: return Valuation{{e.first, k}};
    case K::Const:
      if (k != e.value) return std::nullopt;
      return Valuation{};
    case K::Double:
      if (k % 2 != 0) return std::nullopt;
      return Valuation{{e.first, k / 2}};
    case K::DoubleSucc:
      if (k % 2 != 1) return std::nullopt;
      return Valuation{{e.first, k / 2}};
    case K::CPair: {
      auto [m, n] = cantor_unpair(k);
      return Valuation{{e.first, m}, {e.second, n}};
    }
  }
  return std::nullopt;
}

namespace {

// Allocation-free binding store used on the matching hot path.
struct Bindings {
  static constexpr std::size_t kMax = 8;
  std::array<const std::string*, kMax> names{};
  std::array<std::uint64_t, kMax> values{};
  std::size_t count = 0;

  bool bind(const std::string& name, std::uint64_t v) {
    if (count == kMax) return false;
    names[count] = &name;
    values[count] = v;
    ++count;
    return true;
  }
  std::optional<std::uint64_t> get(const std::string& name) const {
    for (std::size_t i = 0; i < count; ++i)
      if (*names[i] == name) return values[i];
    return std::nullopt;
  }
};

bool match_index(const IndexExpr& e, std::uint64_t k, Bindings& b) {
  using K = IndexExpr::Kind;
  switch (e.kind) {
    case K::Var: return b.bind(e.first, k);
    case K::Const: return k == e.value;
    case K::Double: return k % 2 == 0 && b.bind(e.first, k / 2);
    case K::DoubleSucc: return k % 2 == 1 && b.bind(e.first, k / 2);
    case K::CPair: {
      auto [m, n] = cantor_unpair(k);
      return b.bind(e.first, m) && b.bind(e.second, n);
    }
  }
  return false;
}

std::optional<std::uint64_t> eval_bound(const IndexExpr& e, const Bindings& b) {
  using K = IndexExpr::Kind;
  if (e.kind == K::Const) return e.value;
  auto a = b.get(e.first);
  if (!a) return std::nullopt;
  switch (e.kind) {
    case K::Var: return a;
    case K::Double:
      if (*a > UINT64_MAX / 2) return std::nullopt;
      return 2 * *a;
    case K::DoubleSucc:
      if (*a > (UINT64_MAX - 1) / 2) return std::nullopt;
      return 2 * *a + 1;
    case K::CPair: {
      auto c = b.get(e.second);
      if (!c) return std::nullopt;
      return cantor_pair(*a, *c);
    }
    case K::Const: break;
  }
  return std::nullopt;
}

bool match_prefix(const PatternSide& side, const Position& u, Bindings& b) {
  if (u.size() < side.prefix.size()) return false;
  for (std::size_t i = 0; i < side.prefix.size(); ++i) {
    const auto& item = side.prefix[i];
    const Tag& t = u[i];
    switch (item.kind) {
      case PatternItem::Kind::LitL:
        if (t.kind != TagKind::L) return false;
        break;
      case PatternItem::Kind::LitR:
        if (t.kind != TagKind::R) return false;
        break;
      case PatternItem::Kind::Index:
        if (t.kind != TagKind::Idx || !match_index(item.index, t.index, b)) return false;
        break;
    }
  }
  return true;
}

// `u` with its first `drop` tags replaced by the instance of `side`.
std::optional<Position> rewrite(const PatternSide& side, const Bindings& b, Position u,
                                std::size_t drop) {
  for (std::size_t i = 0; i < drop; ++i) u.pop_front();
  for (std::size_t i = side.prefix.size(); i-- > 0;) {
    const auto& item = side.prefix[i];
    switch (item.kind) {
      case PatternItem::Kind::LitL: u.push_front(Tag::l()); break;
      case PatternItem::Kind::LitR: u.push_front(Tag::r()); break;
      case PatternItem::Kind::Index: {
        auto k = eval_bound(item.index, b);
        if (!k) return std::nullopt;
        u.push_front(Tag::idx(*k));
        break;
      }
    }
  }
  return u;
}

}  // namespace

std::optional<std::pair<Valuation, Position>> match_side(const PatternSide& side, const Position& u) {
  Bindings b;
  if (!match_prefix(side, u, b)) return std::nullopt;
  Valuation v;
  for (std::size_t i = 0; i < b.count; ++i) v.emplace_back(*b.names[i], b.values[i]);
  Position tail = u;
  for (std::size_t i = 0; i < side.prefix.size(); ++i) tail.pop_front();
  return std::pair{std::move(v), std::move(tail)};
}

std::optional<Position> instantiate_side(const PatternSide& side, const Valuation& v, Position tail) {
  Bindings b;
  for (const auto& [name, x] : v)
    if (!b.bind(name, x)) return std::nullopt;
  return rewrite(side, b, std::move(tail), 0);
}

std::optional<Position> apply_table(const RuleTable& t, const Position& u) {
  for (const auto& rule : t.rules) {
    Bindings b;
    if (match_prefix(rule.left, u, b)) return rewrite(rule.right, b, u, rule.left.prefix.size());
    b = Bindings{};
    if (match_prefix(rule.right, u, b)) return rewrite(rule.left, b, u, rule.right.prefix.size());
  }
  return std::nullopt;
}

// --- validation -------------------------------------------------------------

namespace {

enum class Range { All, Even, Odd, Single };

struct IndexRange {
  Range kind;
  std::uint64_t value = 0;
};

IndexRange range_of(const IndexExpr& e) {
  using K = IndexExpr::Kind;
  switch (e.kind) {
    case K::Const: return {Range::Single, e.value};
    case K::Double: return {Range::Even};
    case K::DoubleSucc: return {Range::Odd};
    case K::Var:
    case K::CPair: return {Range::All};
  }
  return {Range::All};
}

bool contains(const IndexRange& r, std::uint64_t k) {
  switch (r.kind) {
    case Range::All: return true;
    case Range::Even: return k % 2 == 0;
    case Range::Odd: return k % 2 == 1;
    case Range::Single: return k == r.value;
  }
  return false;
}

bool ranges_overlap(const IndexRange& a, const IndexRange& b) {
  if (a.kind == Range::Single) return contains(b, a.value);
  if (b.kind == Range::Single) return contains(a, b.value);
  if (a.kind == Range::All || b.kind == Range::All) return true;
  return a.kind == b.kind;
}

bool items_overlap(const PatternItem& a, const PatternItem& b) {
  using K = PatternItem::Kind;
  if (a.kind != b.kind) return false;
  if (a.kind != K::Index) return true;
  return ranges_overlap(range_of(a.index), range_of(b.index));
}

// Every index variable in a side occurs once, so positions are independent
// and a positionwise check over the common prefix decides overlap exactly.
// The shorter side's tail absorbs whatever the longer side adds.
bool sides_overlap(const PatternSide& a, const PatternSide& b) {
  std::size_t n = std::min(a.prefix.size(), b.prefix.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!items_overlap(a.prefix[i], b.prefix[i])) return false;
  return true;
}

std::vector<std::string> side_variables(const PatternSide& s) {
  std::vector<std::string> vars;
  for (const auto& item : s.prefix)
    if (item.kind == PatternItem::Kind::Index)
      for (auto& v : item.index.variables()) vars.push_back(std::move(v));
  return vars;
}

}  // namespace

std::vector<Violation> validate_table(const RuleTable& t) {
  std::vector<Violation> out;
  auto where = [&](std::size_t r) { return "rule " + std::to_string(r + 1) + " of " + t.name; };

  struct SideRef {
    const PatternSide* side;
    std::size_t rule;
    const char* which;
  };
  std::vector<SideRef> sides;

  for (std::size_t r = 0; r < t.rules.size(); ++r) {
    const auto& rule = t.rules[r];
    auto lv = side_variables(rule.left);
    auto rv = side_variables(rule.right);
    for (auto* vars : {&lv, &rv}) {
      std::set<std::string> seen;
      for (const auto& v : *vars)
        if (!seen.insert(v).second)
          out.push_back({where(r) + ": index variable '" + v + "' occurs twice in one side"});
      if (vars->size() > 8) out.push_back({where(r) + ": more than 8 index variables in one side"});
    }
    std::set<std::string> ls(lv.begin(), lv.end()), rs(rv.begin(), rv.end());
    if (ls != rs) out.push_back({where(r) + ": left and right sides bind different index variables"});
    if (rule.left.tail != rule.right.tail)
      out.push_back({where(r) + ": left and right sides use different tail variables"});
    for (const auto& v : ls)
      if (v == rule.left.tail) out.push_back({where(r) + ": '" + v + "' is both an index and a tail variable"});
    sides.push_back({&rule.left, r, "left"});
    sides.push_back({&rule.right, r, "right"});
  }

  for (std::size_t i = 0; i < sides.size(); ++i)
    for (std::size_t j = i + 1; j < sides.size(); ++j)
      if (sides_overlap(*sides[i].side, *sides[j].side))
        out.push_back({"overlapping sides: " + std::string(sides[i].which) + " of " + where(sides[i].rule) +
                       " (" + render_side(*sides[i].side) + ") and " + sides[j].which + " of " +
                       where(sides[j].rule) + " (" + render_side(*sides[j].side) + ")"});
  return out;
}

// --- text format ------------------------------------------------------------

namespace {

class SideParser {
public:
  SideParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  PatternSide parse() {
    PatternSide side;
    std::vector<std::string_view> words;
    std::vector<std::size_t> offsets;
    std::size_t i = 0;
    while (i < text_.size()) {
      while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
      if (i == text_.size()) break;
      std::size_t start = i;
      while (i < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
      words.push_back(text_.substr(start, i - start));
      offsets.push_back(base_ + start);
    }
    if (words.empty()) throw ParseError("empty rule side", base_);
    for (std::size_t k = 0; k + 1 < words.size(); ++k) side.prefix.push_back(item(words[k], offsets[k]));
    std::string_view tail = words.back();
    if (!is_ident(tail)) throw ParseError("side must end in a tail variable", offsets.back());
    side.tail = std::string(tail);
    return side;
  }

private:
  static bool is_ident(std::string_view s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
  }

  static std::uint64_t number(std::string_view s, std::size_t at) {
    std::uint64_t k = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad number '" + std::string(s) + "'", at);
    return k;
  }

  PatternItem item(std::string_view w, std::size_t at) {
    if (w == "L") return PatternItem::lit_l();
    if (w == "R") return PatternItem::lit_r();
    if (w.size() < 2 || w[0] != '#') throw ParseError("bad pattern item '" + std::string(w) + "'", at);
    std::string_view body = w.substr(1);
    if (std::isdigit(static_cast<unsigned char>(body[0])) && body[0] != '2') {
      return PatternItem::idx(IndexExpr::constant(number(body, at)));
    }
    if (body[0] == '<') {
      auto comma = body.find(',');
      if (comma == std::string_view::npos || body.back() != '>')
        throw ParseError("bad Cantor pattern '" + std::string(w) + "'", at);
      auto m = body.substr(1, comma - 1);
      auto n = body.substr(comma + 1, body.size() - comma - 2);
      if (!is_ident(m) || !is_ident(n)) throw ParseError("bad Cantor pattern '" + std::string(w) + "'", at);
      return PatternItem::idx(IndexExpr::cantor(std::string(m), std::string(n)));
    }
    if (body[0] == '2') {
      // "#2n", "#2n+1", or a literal starting with 2.
      std::string_view rest = body.substr(1);
      if (!rest.empty() && std::islower(static_cast<unsigned char>(rest[0]))) {
        if (rest.size() > 2 && rest.substr(rest.size() - 2) == "+1") {
          auto v = rest.substr(0, rest.size() - 2);
          if (!is_ident(v)) throw ParseError("bad pattern item '" + std::string(w) + "'", at);
          return PatternItem::idx(IndexExpr::twice_plus_one(std::string(v)));
        }
        if (!is_ident(rest)) throw ParseError("bad pattern item '" + std::string(w) + "'", at);
        return PatternItem::idx(IndexExpr::twice(std::string(rest)));
      }
      return PatternItem::idx(IndexExpr::constant(number(body, at)));
    }
    if (is_ident(body)) return PatternItem::idx(IndexExpr::var(std::string(body)));
    throw ParseError("bad pattern item '" + std::string(w) + "'", at);
  }

  std::string_view text_;
  std::size_t base_;
};

std::string render_index(const IndexExpr& e) {
  using K = IndexExpr::Kind;
  switch (e.kind) {
    case K::Var: return "#" + e.first;
    case K::Const: return "#" + std::to_string(e.value);
    case K::Double: return "#2" + e.first;
    case K::DoubleSucc: return "#2" + e.first + "+1";
    case K::CPair: return "#<" + e.first + "," + e.second + ">";
  }
  return {};
}

}  // namespace

RuleTable parse_table(std::string name, std::string_view text) {
  RuleTable t{std::move(name), {}};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of("\n;", pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      auto arrow = line.find("<->");
      if (arrow == std::string_view::npos) throw ParseError("rule is missing '<->'", pos);
      Rule r;
      r.left = SideParser(line.substr(0, arrow), pos).parse();
      r.right = SideParser(line.substr(arrow + 3), pos + arrow + 3).parse();
      t.rules.push_back(std::move(r));
    }
    pos = end + 1;
  }
  return t;
}

std::string render_side(const PatternSide& s) {
  std::string out;
  for (const auto& item : s.prefix) {
    switch (item.kind) {
      case PatternItem::Kind::LitL: out += "L "; break;
      case PatternItem::Kind::LitR: out += "R "; break;
      case PatternItem::Kind::Index: out += render_index(item.index) + " "; break;
    }
  }
  out += s.tail;
  return out;
}

std::string render_table(const RuleTable& t) {
  std::ostringstream os;
  for (const auto& r : t.rules) os << render_side(r.left) << " <-> " << render_side(r.right) << "\n";
  return os.str();
}

}  // namespace copycat

#include "copycat/position.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "copycat/error.hpp"

namespace copycat {

Position::Position(std::initializer_list<Tag> tags) : rev_(tags.begin(), tags.end()) {
  std::reverse(rev_.begin(), rev_.end());
}

Position::Position(const std::vector<Tag>& front_to_back)
    : rev_(front_to_back.rbegin(), front_to_back.rend()) {}

std::vector<Tag> Position::tags() const { return {rev_.rbegin(), rev_.rend()}; }

std::strong_ordering operator<=>(const Position& a, const Position& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.rev_.rbegin(), a.rev_.rend(), b.rev_.rbegin(),
                                                b.rev_.rend());
}

Position split(Side side, Position w) {
  w.push_front(side == Side::First ? Tag::l() : Tag::r());
  return w;
}

std::optional<std::pair<Side, Position>> unsplit(const Position& w) {
  if (w.empty() || w.front().kind == TagKind::Idx) return std::nullopt;
  Side side = w.front().kind == TagKind::L ? Side::First : Side::Second;
  Position rest = w;
  rest.pop_front();
  return std::pair{side, std::move(rest)};
}

Position pair_copy(std::uint64_t n, Position w) {
  w.push_front(Tag::idx(n));
  return w;
}

std::optional<std::pair<std::uint64_t, Position>> unpair_copy(const Position& w) {
  if (w.empty() || w.front().kind != TagKind::Idx) return std::nullopt;
  std::uint64_t n = w.front().index;
  Position rest = w;
  rest.pop_front();
  return std::pair{n, std::move(rest)};
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

Position parse_token(std::string_view text) {
  std::vector<Tag> tags;
  std::size_t i = 0;
  const std::size_t n = text.size();
  for (;;) {
    while (i < n && is_space(text[i])) ++i;
    if (i == n) throw ParseError("token is missing its terminating '$'", i);
    std::size_t start = i;
    while (i < n && !is_space(text[i])) ++i;
    std::string_view word = text.substr(start, i - start);
    if (word == "$") break;
    if (word == "L") {
      tags.push_back(Tag::l());
    } else if (word == "R") {
      tags.push_back(Tag::r());
    } else if (word.size() >= 2 && word[0] == '#') {
      std::uint64_t k = 0;
      auto digits = word.substr(1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec == std::errc::result_out_of_range)
        throw ParseError("copy index out of range '" + std::string(word) + "'", start);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw ParseError("malformed tag '" + std::string(word) + "'", start);
      tags.push_back(Tag::idx(k));
    } else {
      throw ParseError("malformed tag '" + std::string(word) + "'", start);
    }
  }
  while (i < n && is_space(text[i])) ++i;
  if (i != n) throw ParseError("unexpected input after '$'", i);
  return Position(tags);
}

std::string render_tag(const Tag& t) {
  switch (t.kind) {
    case TagKind::L: return "L";
    case TagKind::R: return "R";
    case TagKind::Idx: return "#" + std::to_string(t.index);
  }
  return {};
}

std::string render_token(const Position& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += render_tag(p[i]);
    out += ' ';
  }
  out += '$';
  return out;
}

}  // namespace copycat

std::size_t std::hash<copycat::Position>::operator()(const copycat::Position& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& t = p[i];
    std::uint64_t v = t.kind == copycat::TagKind::Idx ? t.index + 2 : static_cast<std::uint64_t>(t.kind);
    h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

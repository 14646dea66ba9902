#pragma once

// Positions are finite words of routing tags. A particle (token) travelling
// through a GoI network carries exactly one Position.
//
//   L, R   -- the two summands of the splitting function Pos + Pos -> Pos
//   #k     -- copy index k of the pairing N x Pos -> Pos used by `!`
//
// Text form: tags separated by whitespace, terminated by a mandatory `$`,
// e.g. "L #3 R $". The empty word is "$".

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace copycat {

enum class TagKind : std::uint8_t { L, R, Idx };

struct Tag {
  TagKind kind = TagKind::L;
  std::uint64_t index = 0;  // meaningful only for Idx

  static constexpr Tag l() noexcept { return {TagKind::L, 0}; }
  static constexpr Tag r() noexcept { return {TagKind::R, 0}; }
  static constexpr Tag idx(std::uint64_t k) noexcept { return {TagKind::Idx, k}; }

  friend constexpr bool operator==(const Tag&, const Tag&) = default;
  friend constexpr auto operator<=>(const Tag&, const Tag&) = default;
};

/// A finite tag word. Stored back-to-front so that the two hot operations,
/// prepending a tag and stripping the first tag, are O(1).
class Position {
public:
  Position() = default;
  Position(std::initializer_list<Tag> tags);
  explicit Position(const std::vector<Tag>& front_to_back);

  std::size_t size() const noexcept { return rev_.size(); }
  bool empty() const noexcept { return rev_.empty(); }

  /// i-th tag counted from the front.
  const Tag& operator[](std::size_t i) const { return rev_[rev_.size() - 1 - i]; }
  const Tag& front() const { return rev_.back(); }

  void push_front(Tag t) { rev_.push_back(t); }
  void pop_front() { rev_.pop_back(); }

  std::vector<Tag> tags() const;

  friend bool operator==(const Position&, const Position&) = default;
  /// Shortlex order on the front-to-back word.
  friend std::strong_ordering operator<=>(const Position& a, const Position& b);

private:
  std::vector<Tag> rev_;
};

enum class Side { First, Second };

/// s(inl w) = L.w, s(inr w) = R.w
Position split(Side side, Position w);

/// Partial inverse of `split`; nullopt on the empty word or a leading Idx tag.
std::optional<std::pair<Side, Position>> unsplit(const Position& w);

/// p(n, w) = #n.w
Position pair_copy(std::uint64_t n, Position w);

/// Partial inverse of `pair_copy`; nullopt unless w starts with an Idx tag.
std::optional<std::pair<std::uint64_t, Position>> unpair_copy(const Position& w);

/// Throws ParseError on a malformed tag, a missing `$`, trailing input, or
/// an index that does not fit in 64 bits.
Position parse_token(std::string_view text);
std::string render_token(const Position& p);

std::string render_tag(const Tag& t);

}  // namespace copycat

template <>
struct std::hash<copycat::Position> {
  std::size_t operator()(const copycat::Position& p) const noexcept;
};

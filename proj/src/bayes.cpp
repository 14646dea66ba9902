#include "copycat/bayes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "copycat/error.hpp"

namespace copycat::bayes {

ClassicalState make_state(std::vector<double> v) {
  if (v.size() < 2) throw InvalidState("a state needs at least two entries");
  double sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw InvalidState("entry " + std::to_string(i + 1) + " is not finite");
    if (v[i] < -kNegTolerance) throw InvalidState("entry " + std::to_string(i + 1) + " is negative");
    if (v[i] < 0) v[i] = 0;
    sum += v[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "entries sum to " << sum << ", not 1";
    throw InvalidState(os.str());
  }
  return ClassicalState(std::move(v));
}

ClassicalState parse_state(std::string_view text) {
  std::vector<double> v;
  std::size_t pos = 0;
  for (;;) {
    std::size_t end = text.find(',', pos);
    std::string_view item = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double d = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size())
      throw ParseError("bad number '" + std::string(item) + "'", pos);
    v.push_back(d);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return make_state(std::move(v));
}

std::string render_state(const ClassicalState& x) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? "," : "") << x[i];
  return os.str();
}

ClassicalState pure_state(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("pure state index out of range");
  std::vector<double> v(n, 0.0);
  v[i] = 1.0;
  return make_state(std::move(v));
}

ClassicalState bottom(std::size_t n) { return make_state(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

std::optional<ClassicalState> bayes_proj(const ClassicalState& x, std::size_t i) {
  if (x.dim() < 3) throw std::out_of_range("projection needs a state of dimension at least 3");
  if (i >= x.dim()) throw std::out_of_range("projection index out of range");
  if (x[i] > 1.0 - kSumTolerance) return std::nullopt;
  std::vector<double> v;
  v.reserve(x.dim() - 1);
  double rest = 0;
  for (std::size_t j = 0; j < x.dim(); ++j)
    if (j != i) {
      v.push_back(x[j]);
      rest += x[j];
    }
  for (double& d : v) d /= rest;
  return make_state(std::move(v));
}

namespace {

void same_dim(const ClassicalState& x, const ClassicalState& y) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
}

}  // namespace

bool leq_recursive(const ClassicalState& x, const ClassicalState& y, double eps) {
  same_dim(x, y);
  if (x.dim() == 2) {
    const double x1 = x[0], y1 = y[0];
    return (y1 <= x1 + eps && x1 <= 0.5 + eps) || (0.5 <= x1 + eps && x1 <= y1 + eps);
  }
  for (std::size_t i = 0; i < x.dim(); ++i) {
    auto px = bayes_proj(x, i);
    auto py = bayes_proj(y, i);
    if (!px || !py) continue;
    if (!leq_recursive(*px, *py, eps)) return false;
  }
  return true;
}

bool leq_symmetric(const ClassicalState& x, const ClassicalState& y, double eps) {
  same_dim(x, y);
  const std::size_t n = x.dim();
  if (n > kMaxSymmetricDim) throw std::invalid_argument("dimension too large for permutation search");
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < n; ++i) {
      const double xa = x[s[i]], xb = x[s[i + 1]], ya = y[s[i]], yb = y[s[i + 1]];
      ok = xb <= xa + eps && yb <= ya + eps && xa * yb <= xb * ya + eps;
    }
    if (ok) return true;
  } while (std::next_permutation(s.begin(), s.end()));
  return false;
}

double entropy(const ClassicalState& x) {
  double h = 0;
  for (double p : x.probs())
    if (p > 0) h -= p * std::log2(p);
  return h;
}

std::set<std::size_t> up_max(const ClassicalState& x, double eps) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (leq_symmetric(x, pure_state(x.dim(), i), eps)) out.insert(i);
  return out;
}

// --- irreducibles -------------------------------------------------------------

namespace {

struct GridSetup {
  ClassicalState x;
  std::vector<ClassicalState> tops;
  std::vector<std::pair<std::size_t, std::size_t>> points;  // (a, b); c = res - a - b
};

GridSetup grid_setup(const std::set<std::size_t>& subset, std::size_t resolution) {
  if (resolution != 32 && resolution != 64) throw std::invalid_argument("resolution must be 32 or 64");
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  if (*subset.rbegin() >= 3) throw std::invalid_argument("subset indices must lie in {1,2,3}");
  std::vector<double> u(3, 0.0);
  for (auto i : subset) u[i] = 1.0 / static_cast<double>(subset.size());
  GridSetup g{make_state(u), {}, {}};
  for (auto i : subset) g.tops.push_back(pure_state(3, i));
  for (std::size_t a = 0; a <= resolution; ++a)
    for (std::size_t b = 0; a + b <= resolution; ++b) g.points.emplace_back(a, b);
  return g;
}

ClassicalState grid_state(std::size_t a, std::size_t b, std::size_t res) {
  const double r = static_cast<double>(res);
  return make_state({a / r, b / r, static_cast<double>(res - a - b) / r});
}

// 0: not a lower bound, 1: lower bound below x, 2: lower bound not below x.
int classify(const GridSetup& g, const ClassicalState& y) {
  for (const auto& e : g.tops)
    if (!leq_symmetric(y, e)) return 0;
  return leq_symmetric(y, g.x) ? 1 : 2;
}

GridReport grid_fold(const GridSetup& g, const std::set<std::size_t>& subset, const std::vector<int>& cls,
                     std::size_t resolution) {
  GridReport r;
  r.up_max_ok = up_max(g.x) == subset;
  r.grid_points = g.points.size();
  r.greatest_ok = true;
  for (std::size_t k = 0; k < cls.size(); ++k) {
    if (cls[k] != 0) ++r.lower_bounds;
    if (cls[k] == 2 && r.greatest_ok) {
      r.greatest_ok = false;
      r.counterexample = grid_state(g.points[k].first, g.points[k].second, resolution);
    }
  }
  return r;
}

}  // namespace

GridReport irreducible_grid_check(const std::set<std::size_t>& subset, std::size_t resolution) {
  GridSetup g = grid_setup(subset, resolution);
  std::vector<int> cls(g.points.size());
  const auto count = static_cast<std::ptrdiff_t>(g.points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k)
    cls[k] = classify(g, grid_state(g.points[k].first, g.points[k].second, resolution));
  return grid_fold(g, subset, cls, resolution);
}

GridReport irreducible_grid_check_serial(const std::set<std::size_t>& subset, std::size_t resolution) {
  GridSetup g = grid_setup(subset, resolution);
  std::vector<int> cls(g.points.size());
  for (std::size_t k = 0; k < g.points.size(); ++k)
    cls[k] = classify(g, grid_state(g.points[k].first, g.points[k].second, resolution));
  return grid_fold(g, subset, cls, resolution);
}

// --- sampling -------------------------------------------------------------------

ClassicalState sample_state(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(n);
  double sum = 0;
  for (auto& d : v) sum += d = exp1(rng);
  for (auto& d : v) d /= sum;
  return make_state(std::move(v));
}

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 finaliser over a combined word.
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + k + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Moves a fraction t of the mass onto the largest coordinate; the result is
// above x in the order.
ClassicalState sharpen(const ClassicalState& x, double t) {
  std::size_t top = static_cast<std::size_t>(std::max_element(x.probs().begin(), x.probs().end()) - x.probs().begin());
  std::vector<double> v(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) v[i] = (1 - t) * x[i] + (i == top ? t : 0.0);
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& d : v) d /= sum;
  return make_state(std::move(v));
}

std::pair<ClassicalState, ClassicalState> draw_pair(std::size_t n, std::size_t k, std::uint64_t seed) {
  ClassicalState x = sample_state(n, mix(seed, 2 * k));
  if (k % 2 == 0) {
    std::mt19937_64 rng(mix(seed, 2 * k + 1));
    return {x, sharpen(x, std::uniform_real_distribution<double>(0.0, 1.0)(rng))};
  }
  return {x, sample_state(n, mix(seed, 2 * k + 1))};
}

struct PairOutcome {
  bool stable = false;
  bool agree = false;
  bool comparable = false;
  bool entropy_bad = false;
  bool bottom_bad = false;
};

PairOutcome check_pair(std::size_t n, std::size_t k, std::uint64_t seed, double eps) {
  auto [x, y] = draw_pair(n, k, seed);
  PairOutcome o;
  const bool r1 = leq_recursive(x, y, eps), r10 = leq_recursive(x, y, 10 * eps);
  const bool s1 = leq_symmetric(x, y, eps), s10 = leq_symmetric(x, y, 10 * eps);
  o.stable = r1 == r10 && s1 == s10;
  if (o.stable) {
    o.agree = r1 == s1;
    o.comparable = s1;
  }
  // Entropy is checked against the order without slack, so that the
  // 1e-12 bound is not swamped by the comparison tolerance.
  if (leq_symmetric(x, y, 0.0) && entropy(x) < entropy(y) - 1e-12) o.entropy_bad = true;
  const ClassicalState bot = bottom(n);
  o.bottom_bad = !leq_symmetric(bot, x, eps) || !leq_recursive(bot, x, eps);
  return o;
}

SweepReport sweep_fold(std::size_t n, std::size_t samples, std::uint64_t seed, const std::vector<PairOutcome>& out) {
  SweepReport r;
  r.pairs = samples;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& o = out[k];
    r.stable += o.stable;
    r.agree += o.stable && o.agree;
    r.comparable += o.comparable;
    r.entropy_violations += o.entropy_bad;
    r.bottom_failures += o.bottom_bad;
    if (o.stable && !o.agree && !r.first_disagreement) r.first_disagreement = draw_pair(n, k, seed);
  }
  return r;
}

}  // namespace

SweepReport property_sweep(std::size_t n, std::size_t samples, std::uint64_t seed, double eps) {
  std::vector<PairOutcome> out(samples);
  const auto count = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < count; ++k) out[k] = check_pair(n, static_cast<std::size_t>(k), seed, eps);
  return sweep_fold(n, samples, seed, out);
}

SweepReport property_sweep_serial(std::size_t n, std::size_t samples, std::uint64_t seed, double eps) {
  std::vector<PairOutcome> out(samples);
  for (std::size_t k = 0; k < samples; ++k) out[k] = check_pair(n, k, seed, eps);
  return sweep_fold(n, samples, seed, out);
}

}  // namespace copycat::bayes

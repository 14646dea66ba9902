#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "copycat/bayes.hpp"
#include "copycat/error.hpp"

using namespace copycat::bayes;
using doctest::Approx;

namespace {

ClassicalState S(std::vector<double> v) { return make_state(std::move(v)); }

// Eq. (1) written out directly.
bool leq2(double x1, double y1, double eps) {
  return (y1 <= x1 + eps && x1 <= 0.5 + eps) || (0.5 <= x1 + eps && x1 <= y1 + eps);
}

// x^t renormalised; for t >= 1 this is above x.
ClassicalState power(const ClassicalState& x, double t) {
  std::vector<double> v(x.dim());
  double sum = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) sum += v[i] = std::pow(x[i], t);
  for (auto& d : v) d /= sum;
  return make_state(v);
}

double dist(const ClassicalState& a, const ClassicalState& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<ClassicalState> samples(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<ClassicalState> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_state(n, seed + i));
  return out;
}

}  // namespace

TEST_CASE("states") {
  CHECK(S({0.5, 0.3, 0.2}).dim() == 3);
  CHECK_THROWS_AS(S({0.6, 0.6, -0.2}), InvalidState);
  CHECK_THROWS_AS(S({0.5, 0.4}), InvalidState);
  CHECK_THROWS_AS(S({1.0}), InvalidState);
  CHECK(S({1.0 + 1e-13, -1e-13})[1] == 0.0);
  CHECK(parse_state("0.5,0.3,0.2") == S({0.5, 0.3, 0.2}));
  CHECK_THROWS_AS(parse_state("0.5,x"), copycat::ParseError);
  CHECK_THROWS_AS(parse_state("0.5,,0.5"), copycat::ParseError);
  CHECK_THROWS_AS(parse_state("0.5,0.4"), InvalidState);
  auto x = S({0.5, 0.3, 0.2});
  CHECK(parse_state(render_state(x)) == x);
  CHECK(bottom(4)[2] == 0.25);
  CHECK(pure_state(3, 1) == S({0, 1, 0}));
}

TEST_CASE("projections") {
  auto x = S({0.5, 0.3, 0.2});
  auto p0 = bayes_proj(x, 0);
  REQUIRE(p0);
  CHECK((*p0)[0] == Approx(0.6));
  CHECK((*p0)[1] == Approx(0.4));
  auto p1 = bayes_proj(x, 1);
  REQUIRE(p1);
  CHECK((*p1)[0] == Approx(0.5 / 0.7));
  CHECK((*p1)[1] == Approx(0.2 / 0.7));
  CHECK_FALSE(bayes_proj(pure_state(3, 1), 1));
  CHECK(bayes_proj(pure_state(3, 1), 0));
  CHECK_THROWS_AS(bayes_proj(x, 3), std::out_of_range);
  CHECK_THROWS_AS(bayes_proj(S({0.5, 0.5}), 0), std::out_of_range);
}

TEST_CASE("order examples") {
  CHECK(leq_recursive(S({0.5, 0.5}), S({0.9, 0.1})));
  CHECK_FALSE(leq_recursive(S({0.3, 0.7}), S({0.6, 0.4})));
  CHECK(leq_recursive(bottom(3), S({0.5, 0.25, 0.25})));
  CHECK(leq_symmetric(bottom(3), S({0.5, 0.25, 0.25})));
  CHECK(leq_symmetric(S({0.5, 0.3, 0.2}), S({0.7, 0.2, 0.1})));
  CHECK(leq_recursive(S({0.5, 0.3, 0.2}), S({0.7, 0.2, 0.1})));
  CHECK_FALSE(leq_symmetric(S({0.5, 0.3, 0.2}), S({0.2, 0.3, 0.5})));
  CHECK_FALSE(leq_recursive(S({0.5, 0.3, 0.2}), S({0.2, 0.3, 0.5})));
  CHECK_FALSE(leq_symmetric(pure_state(3, 0), pure_state(3, 1)));
  CHECK_FALSE(leq_recursive(pure_state(3, 0), pure_state(3, 1)));
  CHECK_THROWS_AS(leq_recursive(bottom(2), bottom(3)), std::invalid_argument);
  CHECK_THROWS_AS(leq_symmetric(bottom(2), bottom(3)), std::invalid_argument);
  CHECK_THROWS_AS(leq_symmetric(bottom(9), bottom(9)), std::invalid_argument);
  CHECK(leq_recursive(bottom(9), pure_state(9, 4)));
}

TEST_CASE("dimension two matches the base case") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 5000; ++i) {
    double a = u(rng), b = u(rng);
    auto x = S({a, 1 - a}), y = S({b, 1 - b});
    CHECK(leq_recursive(x, y, 0.0) == leq2(a, b, 0.0));
    if (std::abs(a - b) > 1e-6 && std::abs(a - 0.5) > 1e-6) CHECK(leq_symmetric(x, y) == leq2(a, b, 1e-9));
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(pure_state(3, 0)) == 0.0);
  CHECK(entropy(bottom(2)) == Approx(1.0).epsilon(1e-14));
  CHECK(entropy(bottom(3)) == Approx(std::log2(3.0)).epsilon(1e-14));
  CHECK(entropy(S({0.5, 0.25, 0.25})) == Approx(1.5));
  for (std::size_t n = 2; n <= 6; ++n) {
    CHECK(std::abs(entropy(bottom(n)) - std::log2(double(n))) <= 1e-12);
    for (std::size_t i = 0; i < n; ++i) CHECK(entropy(pure_state(n, i)) == 0.0);
  }
}

TEST_CASE("maximal elements above a state") {
  CHECK(up_max(S({0.5, 0.3, 0.2})) == std::set<std::size_t>{0});
  CHECK(up_max(bottom(3)) == std::set<std::size_t>{0, 1, 2});
  CHECK(up_max(S({0.4, 0.4, 0.2})) == std::set<std::size_t>{0, 1});
  CHECK(up_max(pure_state(4, 2)) == std::set<std::size_t>{2});
}

TEST_CASE("irreducible elements on the grid") {
  for (std::set<std::size_t> s : std::vector<std::set<std::size_t>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    auto r = irreducible_grid_check(s, 32);
    CHECK(r.passed());
    CHECK(r.grid_points == 33 * 34 / 2);
    CHECK_FALSE(r.counterexample);
  }
  // y <= e_i exactly when y_i is a largest coordinate; 32 is not a multiple
  // of 3 so the uniform state is off the grid.
  auto count = [](const std::set<std::size_t>& s) {
    std::size_t c = 0;
    for (int a = 0; a <= 32; ++a)
      for (int b = 0; a + b <= 32; ++b) {
        int y[3] = {a, b, 32 - a - b}, top = std::max({a, b, 32 - a - b});
        bool all = true;
        for (auto i : s) all &= y[i] == top;
        c += all;
      }
    return c;
  };
  for (std::set<std::size_t> s : std::vector<std::set<std::size_t>>{{1}, {0, 2}, {0, 1, 2}})
    CHECK(irreducible_grid_check(s, 32).lower_bounds == count(s));
  CHECK(count({0, 1, 2}) == 0);
  CHECK_THROWS_AS(irreducible_grid_check({}, 32), std::invalid_argument);
  CHECK_THROWS_AS(irreducible_grid_check({3}, 32), std::invalid_argument);
  CHECK_THROWS_AS(irreducible_grid_check({0}, 16), std::invalid_argument);

  for (std::set<std::size_t> s : std::vector<std::set<std::size_t>>{{0}, {0, 2}, {0, 1, 2}}) {
    auto a = irreducible_grid_check(s, 32), b = irreducible_grid_check_serial(s, 32);
    CHECK(a.up_max_ok == b.up_max_ok);
    CHECK(a.greatest_ok == b.greatest_ok);
    CHECK(a.grid_points == b.grid_points);
    CHECK(a.lower_bounds == b.lower_bounds);
  }
}

TEST_CASE("sampling") {
  CHECK(sample_state(2, 42) == sample_state(2, 42));
  CHECK(sample_state(3, 42) != sample_state(3, 43));
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto x = sample_state(4, s);
    double sum = 0;
    for (double d : x.probs()) sum += d;
    CHECK(std::abs(sum - 1) <= 1e-12);
  }
}

TEST_CASE("partial order laws") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto xs = samples(n, 60, 1000 * n);
    for (const auto& x : xs) {
      CHECK(leq_symmetric(x, x));
      CHECK(leq_recursive(x, x));
      CHECK(leq_symmetric(bottom(n), x));
      CHECK(leq_recursive(bottom(n), x));
    }
    // power sharpening gives comparable pairs and chains
    std::size_t chains = 0;
    for (const auto& x : xs) {
      auto y = power(x, 1.5), z = power(x, 3.0);
      CHECK(leq_symmetric(x, y));
      CHECK(leq_symmetric(y, z));
      CHECK(leq_symmetric(x, z));
      CHECK(entropy(x) >= entropy(z) - 1e-12);
      ++chains;
    }
    CHECK(chains == xs.size());
    std::size_t triples = 0;
    for (const auto& x : xs)
      for (const auto& y : xs) {
        bool xy = leq_symmetric(x, y, 0.0), yx = leq_symmetric(y, x, 0.0);
        if (xy && yx) CHECK(dist(x, y) <= 1e-7);
        if (!xy) continue;
        CHECK(entropy(x) >= entropy(y) - 1e-12);
        for (const auto& z : xs)
          if (leq_symmetric(y, z, 0.0)) {
            ++triples;
            CHECK(leq_symmetric(x, z, 1e-12));
          }
      }
    CHECK(triples > 0);
  }
}

TEST_CASE("pure states are maximal") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& y : samples(n, 100, 77 + n)) {
        CHECK_FALSE(leq_symmetric(pure_state(n, i), y));
        CHECK_FALSE(leq_recursive(pure_state(n, i), y));
      }
}

TEST_CASE("projections are monotone") {
  std::size_t checked = 0;
  for (std::size_t n = 3; n <= 5; ++n)
    for (const auto& x : samples(n, 80, 500 + n))
      for (double t : {1.2, 2.0, 5.0}) {
        auto y = power(x, t);
        REQUIRE(leq_symmetric(x, y));
        for (std::size_t i = 0; i < n; ++i) {
          auto px = bayes_proj(x, i), py = bayes_proj(y, i);
          if (!px || !py) continue;
          ++checked;
          CHECK(leq_symmetric(*px, *py, 1e-9));
        }
      }
  CHECK(checked > 1000);
}

TEST_CASE("sweep") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto par = property_sweep(n, 2000, 9);
    auto ser = property_sweep_serial(n, 2000, 9);
    CHECK(par.passed());
    CHECK(par.pairs == 2000);
    CHECK(par.stable == ser.stable);
    CHECK(par.agree == ser.agree);
    CHECK(par.comparable == ser.comparable);
    CHECK(par.entropy_violations == ser.entropy_violations);
    CHECK(par.bottom_failures == ser.bottom_failures);
    CHECK(par.comparable >= 900);
    CHECK(par.stable >= 1900);
  }
}

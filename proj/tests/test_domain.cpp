#include <doctest.h>

#include <random>

#include "copycat/domain.hpp"

using namespace copycat::domain;

namespace {

PartialFn fact_step(const PartialFn& f) { return factorial_functional(f); }

std::uint64_t fact(std::uint64_t n) { return n == 0 ? 1 : n * fact(n - 1); }

}  // namespace

TEST_CASE("inclusion") {
  CHECK(pf_leq({}, {{0, 1}}));
  CHECK_FALSE(pf_leq({{0, 1}}, {{0, 2}}));
  CHECK_FALSE(pf_leq({{0, 1}}, {}));
  PartialFn f{{0, 1}, {3, 4}, {7, 7}};
  CHECK(pf_leq(f, f));
  CHECK(pf_leq({{3, 4}}, f));

  std::mt19937_64 rng(81);
  for (int i = 0; i < 500; ++i) {
    PartialFn g, h;
    for (int k = 0; k < 6; ++k)
      if (rng() % 2) g[rng() % 8] = rng() % 3;
    h = g;
    for (int k = 0; k < 3; ++k) h.emplace(rng() % 8, rng() % 3);
    CHECK(pf_leq(g, h));
    bool contained = true;
    for (auto [x, y] : h) contained &= g.count(x) && g.at(x) == y;
    CHECK(pf_leq(h, g) == contained);
  }
}

TEST_CASE("factorial functional") {
  CHECK(factorial_functional({}) == PartialFn{{0, 1}});
  CHECK(factorial_functional({{0, 1}}) == PartialFn{{0, 1}, {1, 1}});
  CHECK(factorial_functional({{0, 1}, {1, 1}}) == PartialFn{{0, 1}, {1, 1}, {2, 2}});
  // only the pointwise rule matters, not what f claims elsewhere
  CHECK(factorial_functional({{4, 10}}) == PartialFn{{0, 1}, {5, 50}});
  CHECK(factorial_functional({{4, 10}}, 3) == PartialFn{{0, 1}});
  CHECK_THROWS_AS(factorial_functional({}, 21), std::invalid_argument);
  CHECK_THROWS_AS(factorial_functional({{19, ~0ull}}), std::overflow_error);
}

TEST_CASE("Kleene chain") {
  auto c = lfp_iterate(fact_step, 3);
  REQUIRE(c.size() == 4);
  CHECK(c.front().empty());
  CHECK(c.back() == PartialFn{{0, 1}, {1, 1}, {2, 2}});
  CHECK(chain_lub({c[0], c[1], c[2]}) == PartialFn{{0, 1}, {1, 1}});

  auto id = lfp_iterate([](const PartialFn& f) { return f; }, 5);
  CHECK(id.size() == 6);
  for (const auto& f : id) CHECK(f.empty());

  auto six = lfp_iterate(fact_step, 6);
  CHECK(six.back().size() == 6);
  CHECK(six.back().at(5) == 120);

  CHECK(chain_lub({PartialFn{}}).empty());
  CHECK_THROWS_AS(lfp_iterate([](const PartialFn& f) { return f.empty() ? PartialFn{{0, 1}} : PartialFn{{0, 2}}; }, 3),
                  ChainError);
  CHECK_THROWS_AS(chain_lub({{{0, 1}}, {{0, 2}}}), ChainError);
}

TEST_CASE("chain growth and stabilisation") {
  auto c = lfp_iterate(fact_step, 21);
  for (std::size_t k = 1; k < c.size(); ++k) {
    CHECK(c[k].size() == k);
    for (std::uint64_t n = 0; n < k; ++n) CHECK(c[k].at(n) == fact(n));
    CHECK(pf_leq(c[k - 1], c[k]));
    // below the frontier the next item changes nothing
    for (std::uint64_t n = 0; n + 1 < k; ++n) CHECK(c[k].at(n) == c[k - 1].at(n));
  }
  auto lub = chain_lub(c);
  CHECK(lub == c.back());
  for (const auto& f : c) CHECK(pf_leq(f, lub));
}

TEST_CASE("the chain sits below any fixpoint") {
  // hand-written fixpoints on {0..5}: factorial extended arbitrarily past 5
  std::vector<PartialFn> fixed{
      {{0, 1}, {1, 1}, {2, 2}, {3, 6}, {4, 24}, {5, 120}},
      {{0, 1}, {1, 1}, {2, 2}, {3, 6}, {4, 24}, {5, 120}, {6, 720}, {9, 3}},
  };
  auto item = lfp_iterate(fact_step, 6).back();
  for (const auto& a : fixed) {
    auto fa = factorial_functional(a, 5);
    for (std::uint64_t n = 0; n <= 5; ++n) CHECK(fa.at(n) == a.at(n));
    CHECK(pf_leq(item, a));
  }
}

TEST_CASE("rendering") {
  CHECK(render_fn({}) == "{}");
  CHECK(render_fn({{0, 1}, {1, 1}}) == "{(0,1), (1,1)}");
}

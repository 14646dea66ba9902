#include <doctest.h>

#include "copycat/probe.hpp"
#include "gen.hpp"

using namespace copycat;

TEST_CASE("probe enumeration") {
  auto one = probe_tokens(1, 0);
  REQUIRE(one.size() == 4);
  CHECK(render_token(one[0]) == "$");
  CHECK(render_token(one[1]) == "L $");
  CHECK(render_token(one[2]) == "R $");
  CHECK(render_token(one[3]) == "#0 $");
  CHECK(probe_tokens(0, 5).size() == 1);
  CHECK(probe_tokens(2, 1).size() == 21);
  // geometric count over 2 + (max_index + 1) letters
  for (std::size_t d = 0; d <= 4; ++d)
    for (std::uint64_t m = 0; m <= 4; ++m) {
      std::size_t letters = 3 + m, want = 0, pow = 1;
      for (std::size_t k = 0; k <= d; ++k, pow *= letters) want += pow;
      CHECK(probe_tokens(d, m).size() == want);
    }
  auto ps = probe_tokens(3, 2);
  for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i - 1] < ps[i]);
  CHECK_THROWS_AS(probe_tokens(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(probe_tokens(2, 17), std::invalid_argument);
}

TEST_CASE("parallel sweep reproduces the serial one") {
  gen::Rng r(41);
  auto probes = probe_tokens(3, 2);
  int distinguished = 0, inconclusive = 0;
  for (int i = 0; i < 80; ++i) {
    Element a = gen::element(r, 3), b = gen::element(r, 3);
    std::uint64_t fuel = r.coin() ? 50 : 5000;
    auto p = probe_equiv(a, b, probes, fuel);
    auto s = probe_equiv_serial(a, b, probes, fuel);
    CHECK(p.verdict == s.verdict);
    CHECK(p.total == s.total);
    CHECK(p.conclusive == s.conclusive);
    CHECK(p.defined == s.defined);
    CHECK(p.witness == s.witness);
    CHECK(p.left == s.left);
    CHECK(p.right == s.right);
    CHECK(p.out_of_fuel == s.out_of_fuel);
    distinguished += p.verdict == ProbeReport::Verdict::Distinguished;
    inconclusive += p.verdict == ProbeReport::Verdict::Inconclusive;

    auto ea = eval_all(a, probes, fuel);
    auto es = eval_all_serial(a, probes, fuel);
    REQUIRE(ea.size() == es.size());
    for (std::size_t k = 0; k < ea.size(); ++k) {
      CHECK(ea[k] == es[k]);
      CHECK(ea[k].steps_used == es[k].steps_used);
    }
  }
  CHECK(distinguished > 0);
}

TEST_CASE("verdicts follow their definition") {
  gen::Rng r(42);
  auto probes = probe_tokens(3, 1);
  for (int i = 0; i < 60; ++i) {
    Element a = gen::element(r, 3), b = gen::element(r, 3);
    auto rep = probe_equiv_serial(a, b, probes, 200);
    auto ra = eval_all_serial(a, probes, 200), rb = eval_all_serial(b, probes, 200);
    std::optional<std::size_t> first_diff;
    std::size_t starved = 0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      bool conclusive = ra[k].conclusive() && rb[k].conclusive();
      if (!conclusive) ++starved;
      if (conclusive && !(ra[k] == rb[k]) && !first_diff) first_diff = k;
    }
    if (first_diff) {
      CHECK(rep.verdict == ProbeReport::Verdict::Distinguished);
      CHECK(*rep.witness == probes[*first_diff]);
    } else if (starved) {
      CHECK(rep.verdict == ProbeReport::Verdict::Inconclusive);
      CHECK(rep.out_of_fuel.size() == starved);
    } else {
      CHECK(rep.verdict == ProbeReport::Verdict::Equivalent);
    }
  }
}

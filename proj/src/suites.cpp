#include "copycat/suites.hpp"

#include <algorithm>
#include <cstdio>

namespace copycat {

std::vector<Element> default_pool() {
  const Element C = lca_combinator(Combinator::C);
  const Element K = lca_combinator(Combinator::K);
  return {lca_combinator(Combinator::I), lca_combinator(Combinator::B), C, K, app(C, K)};
}

namespace {

std::string inst(std::initializer_list<std::pair<const char*, const Element*>> xs) {
  std::string out;
  for (auto& [n, e] : xs) {
    if (!out.empty()) out += ' ';
    out += std::string(n) + "=" + render_element(*e);
  }
  return out;
}

}  // namespace

std::vector<Equation> lca_suite(const std::vector<Element>& pool) {
  const Element I = lca_combinator(Combinator::I), B = lca_combinator(Combinator::B),
                C = lca_combinator(Combinator::C), K = lca_combinator(Combinator::K),
                D = lca_combinator(Combinator::D), delta = lca_combinator(Combinator::Delta),
                F = lca_combinator(Combinator::F), W = lca_combinator(Combinator::W);
  std::vector<Equation> out;
  for (const auto& x : pool) out.push_back({"I", inst({{"x", &x}}), app(I, x), x});
  for (const auto& x : pool)
    for (const auto& y : pool)
      for (const auto& z : pool)
        out.push_back({"B", inst({{"x", &x}, {"y", &y}, {"z", &z}}), app(app(app(B, x), y), z), app(x, app(y, z))});
  for (const auto& x : pool)
    for (const auto& y : pool)
      for (const auto& z : pool)
        out.push_back({"C", inst({{"x", &x}, {"y", &y}, {"z", &z}}), app(app(app(C, x), y), z), app(app(x, z), y)});
  for (const auto& x : pool)
    for (const auto& y : pool) out.push_back({"K", inst({{"x", &x}, {"y", &y}}), app(app(K, x), bang(y)), x});
  for (const auto& x : pool) out.push_back({"D", inst({{"x", &x}}), app(D, bang(x)), x});
  for (const auto& x : pool) out.push_back({"delta", inst({{"x", &x}}), app(delta, bang(x)), bang(bang(x))});
  for (const auto& x : pool)
    for (const auto& y : pool)
      out.push_back({"F", inst({{"x", &x}, {"y", &y}}), app(app(F, bang(x)), bang(y)), bang(app(x, y))});
  for (const auto& x : pool)
    for (const auto& y : pool)
      out.push_back({"W", inst({{"x", &x}, {"y", &y}}), app(app(W, x), bang(y)), app(app(x, bang(y)), bang(y))});
  return out;
}

std::vector<Equation> standard_suite(const std::vector<Element>& pool, const std::vector<Element>& ss_pool) {
  const Element Bs = derived_standard(Derived::Bs), Cs = derived_standard(Derived::Cs),
                Is = derived_standard(Derived::Is), Ks = derived_standard(Derived::Ks),
                Ws = derived_standard(Derived::Ws), Dp = derived_standard(Derived::Dp),
                Ss = derived_standard(Derived::Ss);
  auto sa = [](Element a, Element b) { return std_app(std::move(a), std::move(b)); };
  std::vector<Equation> out;
  for (const auto& x : pool) out.push_back({"Is", inst({{"x", &x}}), sa(Is, x), x});
  for (const auto& x : pool)
    for (const auto& y : pool) out.push_back({"Ks", inst({{"x", &x}, {"y", &y}}), sa(sa(Ks, x), y), x});
  for (const auto& x : pool)
    for (const auto& y : pool)
      out.push_back({"Ws", inst({{"x", &x}, {"y", &y}}), sa(sa(Ws, x), y), sa(sa(x, y), y)});
  for (const auto& x : pool)
    for (const auto& y : pool)
      for (const auto& z : pool)
        out.push_back({"Bs", inst({{"x", &x}, {"y", &y}, {"z", &z}}), sa(sa(sa(Bs, x), y), z), sa(x, sa(y, z))});
  for (const auto& x : pool)
    for (const auto& y : pool)
      for (const auto& z : pool)
        out.push_back({"Cs", inst({{"x", &x}, {"y", &y}, {"z", &z}}), sa(sa(sa(Cs, x), y), z), sa(sa(x, z), y)});
  for (const auto& x : pool)
    for (const auto& y : pool)
      out.push_back({"Dp", inst({{"x", &x}, {"y", &y}}), app(app(Dp, x), bang(y)), app(x, y)});
  for (const auto& x : ss_pool)
    for (const auto& y : ss_pool)
      for (const auto& z : ss_pool)
        out.push_back(
            {"Ss", inst({{"x", &x}, {"y", &y}, {"z", &z}}), sa(sa(sa(Ss, x), y), z), sa(sa(x, z), sa(y, z))});
  return out;
}

std::vector<FamilyResult> run_suite(const std::vector<Equation>& eqs, const std::vector<Position>& probes,
                                    std::uint64_t fuel, double min_conclusive) {
  std::vector<FamilyResult> out;
  for (const auto& eq : eqs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const FamilyResult& f) { return f.family == eq.family; });
    if (it == out.end()) {
      out.push_back({eq.family, 0, 0, 0, 1.0, {}});
      it = out.end() - 1;
    }
    auto rep = probe_equiv(eq.lhs, eq.rhs, probes, fuel);
    ++it->instances;
    it->min_conclusive = std::min(it->min_conclusive, rep.conclusive_ratio());
    if (rep.verdict == ProbeReport::Verdict::Distinguished) {
      ++it->distinguished;
      it->failures.push_back(eq.instance + ": distinguished at " + render_token(*rep.witness) + " (" +
                             render_result(rep.left) + " vs " + render_result(rep.right) + ")");
      continue;
    }
    if (rep.verdict == ProbeReport::Verdict::Equivalent) ++it->equivalent;
    if (rep.conclusive_ratio() < min_conclusive) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * rep.conclusive_ratio());
      it->failures.push_back(eq.instance + ": only " + buf + " of probes conclusive");
    }
  }
  return out;
}

bool suite_passed(const std::vector<FamilyResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const FamilyResult& f) { return f.passed(); });
}

}  // namespace copycat

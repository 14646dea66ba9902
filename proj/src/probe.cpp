#include "copycat/probe.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace copycat {

std::vector<Position> probe_tokens(std::size_t depth, std::uint64_t max_index) {
  if (depth > kMaxProbeDepth) throw std::invalid_argument("probe depth must be <= 8");
  if (max_index > kMaxProbeIndex) throw std::invalid_argument("probe max index must be <= 16");

  std::vector<Tag> alphabet{Tag::l(), Tag::r()};
  for (std::uint64_t k = 0; k <= max_index; ++k) alphabet.push_back(Tag::idx(k));

  std::vector<Position> out{Position{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= depth; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      std::vector<Tag> base = out[i].tags();
      base.push_back(Tag{});
      for (const Tag& t : alphabet) {
        base.back() = t;
        out.emplace_back(base);
      }
    }
    level_begin = level_end;
  }
  return out;
}

const char* verdict_name(ProbeReport::Verdict v) {
  switch (v) {
    case ProbeReport::Verdict::Equivalent: return "equivalent";
    case ProbeReport::Verdict::Distinguished: return "distinguished";
    case ProbeReport::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<EvalResult> eval_all_serial(const Element& e, const std::vector<Position>& probes,
                                        std::uint64_t fuel) {
  std::vector<EvalResult> out;
  out.reserve(probes.size());
  for (const auto& u : probes) out.push_back(eval_element(e, u, fuel));
  return out;
}

std::vector<EvalResult> eval_all(const Element& e, const std::vector<Position>& probes, std::uint64_t fuel) {
  std::vector<EvalResult> out(probes.size());
  const auto n = static_cast<std::int64_t>(probes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) out[i] = eval_element(e, probes[i], fuel);
  return out;
}

namespace {

// Folds one probe's pair of results into the report. Returns true when the
// probe distinguishes the elements.
bool fold(ProbeReport& rep, const Position& u, EvalResult&& l, EvalResult&& r) {
  ++rep.total;
  if (!l.conclusive() || !r.conclusive()) {
    rep.out_of_fuel.push_back(u);
    return false;
  }
  ++rep.conclusive;
  if (l == r) {
    if (l.defined()) ++rep.defined;
    return false;
  }
  rep.verdict = ProbeReport::Verdict::Distinguished;
  rep.witness = u;
  rep.left = std::move(l);
  rep.right = std::move(r);
  return true;
}

void finish(ProbeReport& rep) {
  if (rep.verdict != ProbeReport::Verdict::Distinguished && !rep.out_of_fuel.empty())
    rep.verdict = ProbeReport::Verdict::Inconclusive;
}

}  // namespace

ProbeReport probe_equiv_serial(const Element& a, const Element& b, const std::vector<Position>& probes,
                               std::uint64_t fuel) {
  ProbeReport rep;
  for (const auto& u : probes)
    if (fold(rep, u, eval_element(a, u, fuel), eval_element(b, u, fuel))) break;
  finish(rep);
  return rep;
}

ProbeReport probe_equiv(const Element& a, const Element& b, const std::vector<Position>& probes,
                        std::uint64_t fuel) {
  std::vector<EvalResult> left(probes.size()), right(probes.size());
  const auto n = static_cast<std::int64_t>(probes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    left[i] = eval_element(a, probes[i], fuel);
    right[i] = eval_element(b, probes[i], fuel);
  }
  ProbeReport rep;
  for (std::size_t i = 0; i < probes.size(); ++i)
    if (fold(rep, probes[i], std::move(left[i]), std::move(right[i]))) break;
  finish(rep);
  return rep;
}

ProbeReport probe_equiv(const Element& a, const Element& b, const ProbeOptions& opt) {
  return probe_equiv(a, b, probe_tokens(opt.depth, opt.max_index), opt.fuel);
}

}  // namespace copycat

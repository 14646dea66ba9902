#pragma once

// Extensional comparison of GoI elements on a finite probe set.
//
// Extensional equality of partial involutions is undecidable; we compare two
// elements token by token on every word of bounded length. Each probe is an
// independent query, so the sweep is an OpenMP parallel loop. The serial
// sweep is kept as the reference the parallel one is tested against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "copycat/goi.hpp"
#include "copycat/position.hpp"

namespace copycat {

inline constexpr std::size_t kMaxProbeDepth = 8;
inline constexpr std::uint64_t kMaxProbeIndex = 16;

/// All words of length <= depth over {L, R, #0..#max_index}, shortest first,
/// then lexicographic with L < R < #0 < #1 < ... Throws std::invalid_argument
/// when depth > 8 or max_index > 16.
std::vector<Position> probe_tokens(std::size_t depth, std::uint64_t max_index);

struct ProbeOptions {
  std::size_t depth = 5;
  std::uint64_t max_index = 4;
  std::uint64_t fuel = kDefaultFuel;
};

struct ProbeReport {
  enum class Verdict { Equivalent, Distinguished, Inconclusive };

  Verdict verdict = Verdict::Equivalent;
  std::size_t total = 0;
  std::size_t conclusive = 0;  // probes where neither side ran out of fuel
  std::size_t defined = 0;     // conclusive probes where both sides are Defined

  // Distinguished: first differing probe in probe order.
  std::optional<Position> witness;
  EvalResult left;
  EvalResult right;

  // Inconclusive (and also filled for Equivalent/Distinguished sweeps that
  // hit fuel limits elsewhere): probes where either side ran out of fuel.
  std::vector<Position> out_of_fuel;

  double conclusive_ratio() const { return total == 0 ? 1.0 : static_cast<double>(conclusive) / total; }
};

const char* verdict_name(ProbeReport::Verdict v);

/// Parallel sweep. Results are folded in probe order after the parallel
/// evaluation, so the report is identical to probe_equiv_serial's.
ProbeReport probe_equiv(const Element& a, const Element& b, const ProbeOptions& opt = {});
ProbeReport probe_equiv(const Element& a, const Element& b, const std::vector<Position>& probes,
                        std::uint64_t fuel);

ProbeReport probe_equiv_serial(const Element& a, const Element& b, const std::vector<Position>& probes,
                               std::uint64_t fuel);

/// Evaluates `e` on every probe. Parallel over probes.
std::vector<EvalResult> eval_all(const Element& e, const std::vector<Position>& probes, std::uint64_t fuel);
std::vector<EvalResult> eval_all_serial(const Element& e, const std::vector<Position>& probes,
                                        std::uint64_t fuel);

}  // namespace copycat

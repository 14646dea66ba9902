#pragma once

// The equation families checked extensionally against the probe sweep:
// the eight linear combinatory algebra equations, and the standard
// combinatory algebra equations for the derived combinators.

#include <string>
#include <vector>

#include "copycat/goi.hpp"
#include "copycat/probe.hpp"

namespace copycat {

struct Equation {
  std::string family;    // "B", "K", "Bs", ...
  std::string instance;  // e.g. "x=I y=(C K)"
  Element lhs;
  Element rhs;
};

/// {I, B, C, K, (C K)}.
std::vector<Element> default_pool();

/// I x = x, B x y z = x (y z), C x y z = x z y, K x !y = x, D !x = x,
/// delta !x = !!x, F !x !y = !(x y), W x !y = x !y !y.
std::vector<Equation> lca_suite(const std::vector<Element>& pool);

/// Is, Ks, Ws, Bs, Cs under std_app, D' x !y = x y, and Ss x y z = x z (y z)
/// with x, y, z ranging over `ss_pool`.
std::vector<Equation> standard_suite(const std::vector<Element>& pool, const std::vector<Element>& ss_pool);

struct FamilyResult {
  std::string family;
  std::size_t instances = 0;
  std::size_t equivalent = 0;
  std::size_t distinguished = 0;
  double min_conclusive = 1.0;          // lowest conclusive ratio over the instances
  std::vector<std::string> failures;  // one line per failing instance
  bool passed() const { return failures.empty(); }
};

/// Runs every equation and groups the outcome by family, in first-seen
/// order. An instance passes when it is not distinguished and at least
/// `min_conclusive` of its probes are conclusive.
std::vector<FamilyResult> run_suite(const std::vector<Equation>& eqs, const std::vector<Position>& probes,
                                    std::uint64_t fuel, double min_conclusive);

bool suite_passed(const std::vector<FamilyResult>& r);

}  // namespace copycat

#pragma once

// The Bayesian order on classical states: probability vectors of length
// n >= 2. Two independent decision procedures are provided (recursion
// through Bayesian projections, and the permutation characterisation),
// plus Shannon entropy and a grid search for irreducible elements at n = 3.
//
// Indices in this API are 0-based; the CLI and reports print them 1-based.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace copycat::bayes {

inline constexpr double kSumTolerance = 1e-9;
inline constexpr double kNegTolerance = 1e-12;
inline constexpr double kDefaultEps = 1e-9;
inline constexpr std::size_t kMaxSymmetricDim = 8;

class InvalidState : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ClassicalState {
public:
  std::size_t dim() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  friend bool operator==(const ClassicalState&, const ClassicalState&) = default;

private:
  friend ClassicalState make_state(std::vector<double> v);
  explicit ClassicalState(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// Throws InvalidState for length < 2, an entry below -1e-12, or a sum off
/// by more than 1e-9. Tiny negatives are clamped to 0.
ClassicalState make_state(std::vector<double> v);
/// "0.5,0.3,0.2". Throws ParseError on bad numbers, InvalidState otherwise.
ClassicalState parse_state(std::string_view text);
std::string render_state(const ClassicalState& x);

ClassicalState pure_state(std::size_t n, std::size_t i);
ClassicalState bottom(std::size_t n);

/// Drops coordinate i and renormalises. nullopt when x is (numerically) e_i.
/// Throws std::out_of_range for a bad index or a state of dimension 2.
std::optional<ClassicalState> bayes_proj(const ClassicalState& x, std::size_t i);

/// Throws std::invalid_argument on dimension mismatch.
bool leq_recursive(const ClassicalState& x, const ClassicalState& y, double eps = kDefaultEps);
/// Also throws when the dimension exceeds kMaxSymmetricDim.
bool leq_symmetric(const ClassicalState& x, const ClassicalState& y, double eps = kDefaultEps);

/// Shannon entropy in bits.
double entropy(const ClassicalState& x);

/// {i : x <= e_i}.
std::set<std::size_t> up_max(const ClassicalState& x, double eps = kDefaultEps);

struct GridReport {
  bool up_max_ok = false;
  bool greatest_ok = false;
  std::size_t grid_points = 0;
  std::size_t lower_bounds = 0;  // grid states below every e_i, i in S
  std::optional<ClassicalState> counterexample;
  bool passed() const { return up_max_ok && greatest_ok; }
};

/// n = 3 only; S is a nonempty subset of {0,1,2}; resolution 32 or 64.
GridReport irreducible_grid_check(const std::set<std::size_t>& subset, std::size_t resolution);
GridReport irreducible_grid_check_serial(const std::set<std::size_t>& subset, std::size_t resolution);

/// Normalised exponentials from mt19937_64(seed).
ClassicalState sample_state(std::size_t n, std::uint64_t seed);

struct SweepReport {
  std::size_t pairs = 0;
  std::size_t stable = 0;          // pairs whose verdicts survive eps -> 10 eps
  std::size_t agree = 0;           // stable pairs where both procedures agree
  std::size_t comparable = 0;      // stable pairs with x <= y
  std::size_t entropy_violations = 0;
  std::size_t bottom_failures = 0;
  std::optional<std::pair<ClassicalState, ClassicalState>> first_disagreement;
  bool passed() const { return agree == stable && entropy_violations == 0 && bottom_failures == 0; }
};

/// Draws `samples` pairs in dimension n from consecutive seeds. Half of the
/// pairs are constructed to be comparable so that the order is exercised
/// on both verdicts. Results do not depend on the thread count.
SweepReport property_sweep(std::size_t n, std::size_t samples, std::uint64_t seed, double eps = kDefaultEps);
SweepReport property_sweep_serial(std::size_t n, std::size_t samples, std::uint64_t seed,
                                  double eps = kDefaultEps);

}  // namespace copycat::bayes

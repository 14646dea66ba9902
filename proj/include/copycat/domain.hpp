#pragma once

// Finite partial functions N -> N ordered by graph inclusion, and Kleene
// iteration from the empty function.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace copycat::domain {

using PartialFn = std::map<std::uint64_t, std::uint64_t>;
using Chain = std::vector<PartialFn>;
using StepFn = std::function<PartialFn(const PartialFn&)>;

class ChainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxFactorialArg = 20;

/// Graph inclusion.
bool pf_leq(const PartialFn& f, const PartialFn& g);

/// F(f)(0) = 1, F(f)(n) = n * f(n-1) for 1 <= n <= upto where f(n-1) is
/// defined. Throws std::overflow_error if the product does not fit and
/// std::invalid_argument for upto > 20.
PartialFn factorial_functional(const PartialFn& f, std::uint64_t upto = kMaxFactorialArg);

/// [bot, step(bot), ..., step^k(bot)]. Throws ChainError when an item is not
/// included in its successor.
Chain lfp_iterate(const StepFn& step, std::size_t k);

/// Union of the graphs. Throws ChainError if two items disagree somewhere.
PartialFn chain_lub(const Chain& c);

/// "{(0,1), (1,1)}"; the empty function renders as "{}".
std::string render_fn(const PartialFn& f);

}  // namespace copycat::domain

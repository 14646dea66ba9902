#include "copycat/domain.hpp"

namespace copycat::domain {

bool pf_leq(const PartialFn& f, const PartialFn& g) {
  for (const auto& [x, y] : f) {
    auto it = g.find(x);
    if (it == g.end() || it->second != y) return false;
  }
  return true;
}

PartialFn factorial_functional(const PartialFn& f, std::uint64_t upto) {
  if (upto > kMaxFactorialArg) throw std::invalid_argument("upto must be at most 20");
  PartialFn out{{0, 1}};
  for (std::uint64_t n = 1; n <= upto; ++n) {
    auto it = f.find(n - 1);
    if (it == f.end()) continue;
    std::uint64_t v = 0;
    if (__builtin_mul_overflow(n, it->second, &v))
      throw std::overflow_error("factorial value at " + std::to_string(n) + " overflows");
    out.emplace(n, v);
  }
  return out;
}

Chain lfp_iterate(const StepFn& step, std::size_t k) {
  Chain c{PartialFn{}};
  for (std::size_t i = 0; i < k; ++i) {
    PartialFn next = step(c.back());
    if (!pf_leq(c.back(), next))
      throw ChainError("item " + std::to_string(i) + " is not below item " + std::to_string(i + 1) +
                       "; the step function is not monotone");
    c.push_back(std::move(next));
  }
  return c;
}

PartialFn chain_lub(const Chain& c) {
  PartialFn out;
  for (const auto& f : c)
    for (const auto& [x, y] : f) {
      auto [it, fresh] = out.emplace(x, y);
      if (!fresh && it->second != y) throw ChainError("chain items disagree at " + std::to_string(x));
    }
  return out;
}

std::string render_fn(const PartialFn& f) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, y] : f) {
    if (!first) out += ", ";
    first = false;
    out += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }
  return out + "}";
}

}  // namespace copycat::domain

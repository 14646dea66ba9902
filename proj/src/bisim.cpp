#include <algorithm>
#include <map>
#include <vector>

#include "copycat/ccs.hpp"

namespace copycat::ccs {

// Signature refinement: a state's signature is its current block together
// with the set of (action, target block) pairs it can reach in one step.
// Splitting by signature until the block count stops growing yields the
// coarsest stable partition.
std::vector<std::size_t> bisim_partition(const Lts& lts) {
  const std::size_t n = lts.num_states();
  std::vector<std::size_t> block(n, 0);
  std::size_t blocks = n == 0 ? 0 : 1;
  using Sig = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
  for (;;) {
    std::map<Sig, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      Sig sig{block[s], {}};
      for (std::size_t ti : lts.out(s)) {
        const Transition& t = lts.transitions()[ti];
        sig.second.emplace_back(t.action, block[t.dst]);
      }
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
      auto [it, fresh] = ids.emplace(std::move(sig), ids.size());
      next[s] = it->second;
    }
    block = std::move(next);
    if (ids.size() == blocks) return block;
    blocks = ids.size();
  }
}

bool strong_bisim(const Lts& lts, std::size_t s, std::size_t t) {
  auto block = bisim_partition(lts);
  return block.at(s) == block.at(t);
}

namespace {

// Every move of s is matched by some move of t into a related pair.
bool simulates(const Lts& lts, const std::vector<std::vector<bool>>& rel, std::size_t s, std::size_t t, bool flip) {
  for (std::size_t si : lts.out(s)) {
    const Transition& a = lts.transitions()[si];
    bool matched = false;
    for (std::size_t ti : lts.out(t)) {
      const Transition& b = lts.transitions()[ti];
      if (b.action != a.action) continue;
      if (flip ? rel[b.dst][a.dst] : rel[a.dst][b.dst]) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<bool>> naive_bisim_relation(const Lts& lts) {
  const std::size_t n = lts.num_states();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (!rel[s][t]) continue;
        if (!simulates(lts, rel, s, t, false) || !simulates(lts, rel, t, s, true)) {
          rel[s][t] = false;
          changed = true;
        }
      }
  }
  return rel;
}

bool naive_bisim(const Lts& lts, std::size_t s, std::size_t t) { return naive_bisim_relation(lts).at(s).at(t); }

Lts weak_saturate(const Lts& lts) {
  const std::size_t n = lts.num_states();
  auto tau_idx = lts.find_action(Action::tau());

  // Reflexive-transitive tau closure per state.
  std::vector<std::vector<std::size_t>> closure(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      closure[s].push_back(u);
      if (!tau_idx) continue;
      for (std::size_t ti : lts.out(u)) {
        const Transition& t = lts.transitions()[ti];
        if (t.action == *tau_idx && !seen[t.dst]) {
          seen[t.dst] = true;
          stack.push_back(t.dst);
        }
      }
    }
    std::sort(closure[s].begin(), closure[s].end());
  }

  Lts out;
  for (const auto& k : lts.keys()) out.add_state(k);
  for (const auto& a : lts.alphabet()) out.intern(a);
  const std::size_t tau = out.intern(Action::tau());

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t u : closure[s]) {
      out.add_transition(s, tau, u);
      for (std::size_t ti : lts.out(u)) {
        const Transition& t = lts.transitions()[ti];
        if (tau_idx && t.action == *tau_idx) continue;
        for (std::size_t w : closure[t.dst]) out.add_transition(s, t.action, w);
      }
    }
  }
  out.finalize();
  return out;
}

bool weak_bisim(const Lts& lts, std::size_t s, std::size_t t) { return strong_bisim(weak_saturate(lts), s, t); }

}  // namespace copycat::ccs

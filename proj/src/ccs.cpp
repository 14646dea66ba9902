#include "copycat/ccs.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "copycat/error.hpp"

namespace copycat::ccs {

using detail::ProcNode;

std::optional<Action> Action::complement() const {
  switch (kind) {
    case Kind::Name: return coname(id);
    case Kind::CoName: return name(id);
    case Kind::Tau: return std::nullopt;
  }
  return std::nullopt;
}

std::string Action::render() const {
  switch (kind) {
    case Kind::Name: return id;
    case Kind::CoName: return id + "'";
    case Kind::Tau: return "tau";
  }
  return {};
}

Process Process::nil() {
  static const Process zero(std::make_shared<const ProcNode>(ProcNode{Kind::Nil, {}, std::nullopt, std::nullopt}));
  return zero;
}
Process Process::prefix(Action a, Process p) {
  return Process(std::make_shared<const ProcNode>(ProcNode{Kind::Prefix, std::move(a), std::move(p), std::nullopt}));
}
Process Process::sum(Process p, Process q) {
  return Process(std::make_shared<const ProcNode>(ProcNode{Kind::Sum, {}, std::move(p), std::move(q)}));
}
Process Process::par(Process p, Process q) {
  return Process(std::make_shared<const ProcNode>(ProcNode{Kind::Par, {}, std::move(p), std::move(q)}));
}
Process Process::sync(Process p, Process q) {
  return Process(std::make_shared<const ProcNode>(ProcNode{Kind::Sync, {}, std::move(p), std::move(q)}));
}

Process::Kind Process::kind() const { return node_->kind; }
const Action& Process::action() const { return node_->action; }
const Process& Process::left() const { return *node_->left; }
const Process& Process::right() const { return *node_->right; }

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Process::Kind::Nil: return true;
    case Process::Kind::Prefix: return a.action() == b.action() && a.left() == b.left();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

// --- rendering ----------------------------------------------------------------

namespace {

enum class Level { Sum, Par, Pre };

Level level_of(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Sum: return Level::Sum;
    case Process::Kind::Par:
    case Process::Kind::Sync: return Level::Par;
    default: return Level::Pre;
  }
}

// Renders p in a context that accepts at least `ctx` without parentheses.
void render_at(const Process& p, Level ctx, std::string& out) {
  if (static_cast<int>(level_of(p)) < static_cast<int>(ctx)) {
    out += '(';
    render_at(p, Level::Sum, out);
    out += ')';
    return;
  }
  switch (p.kind()) {
    case Process::Kind::Nil: out += '0'; break;
    case Process::Kind::Prefix:
      out += p.action().render();
      out += '.';
      render_at(p.left(), Level::Pre, out);
      break;
    case Process::Kind::Sum:
      render_at(p.left(), Level::Sum, out);
      out += " + ";
      render_at(p.right(), Level::Par, out);
      break;
    case Process::Kind::Par:
    case Process::Kind::Sync:
      render_at(p.left(), Level::Par, out);
      out += p.kind() == Process::Kind::Par ? " || " : " | ";
      render_at(p.right(), Level::Pre, out);
      break;
  }
}

}  // namespace

std::string render_process(const Process& p) {
  std::string out;
  render_at(p, Level::Sum, out);
  return out;
}

// --- parsing ------------------------------------------------------------------

namespace {

class ProcessParser {
public:
  explicit ProcessParser(std::string_view s, std::size_t base = 0) : s_(s), base_(base) {}

  Process parse() {
    Process p = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, base_ + i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  Process sum() {
    Process p = par();
    while (peek('+')) {
      ++i_;
      p = Process::sum(p, par());
    }
    return p;
  }

  Process par() {
    Process p = pre();
    while (peek('|')) {
      ++i_;
      if (i_ < s_.size() && s_[i_] == '|') {
        ++i_;
        p = Process::par(p, pre());
      } else {
        p = Process::sync(p, pre());
      }
    }
    return p;
  }

  Process pre() {
    skip();
    if (i_ == s_.size()) fail("expected a process");
    char c = s_[i_];
    if (c == '0') {
      ++i_;
      return Process::nil();
    }
    if (c == '(') {
      ++i_;
      Process p = sum();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      Action a = action();
      if (!peek('.')) fail("expected '.' after action");
      ++i_;
      return Process::prefix(std::move(a), pre());
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Action action() {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    std::string id(s_.substr(start, i_ - start));
    if (i_ < s_.size() && s_[i_] == '\'') {
      ++i_;
      if (id == "tau") fail("tau has no complement");
      return Action::coname(id);
    }
    if (id == "tau") return Action::tau();
    return Action::name(id);
  }

  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};

}  // namespace

Process parse_process(std::string_view text) { return ProcessParser(text).parse(); }

std::map<std::string, Process> parse_process_file(std::string_view text) {
  std::map<std::string, Process> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'NAME = PROCESS'", pos);
      std::string_view name = line.substr(0, eq);
      auto b = name.find_first_not_of(" \t");
      auto e = name.find_last_not_of(" \t");
      if (b == std::string_view::npos) throw ParseError("missing process name", pos);
      name = name.substr(b, e - b + 1);
      bool ok = std::isalpha(static_cast<unsigned char>(name[0])) &&
                std::all_of(name.begin(), name.end(),
                            [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
      if (!ok) throw ParseError("bad process name '" + std::string(name) + "'", pos + b);
      if (out.count(std::string(name))) throw ParseError("duplicate process name '" + std::string(name) + "'", pos + b);
      out.emplace(std::string(name), ProcessParser(line.substr(eq + 1), pos + eq + 1).parse());
    }
    pos = end + 1;
  }
  return out;
}

// --- SOS ----------------------------------------------------------------------

namespace {

void derive(const Process& p, std::vector<std::pair<Action, Process>>& out) {
  switch (p.kind()) {
    case Process::Kind::Nil: return;
    case Process::Kind::Prefix: out.emplace_back(p.action(), p.left()); return;
    case Process::Kind::Sum:
      derive(p.left(), out);
      derive(p.right(), out);
      return;
    case Process::Kind::Par:
    case Process::Kind::Sync: {
      const bool sync = p.kind() == Process::Kind::Sync;
      auto rebuild = [&](Process l, Process r) { return sync ? Process::sync(l, r) : Process::par(l, r); };
      std::vector<std::pair<Action, Process>> ls, rs;
      derive(p.left(), ls);
      derive(p.right(), rs);
      for (auto& [a, l2] : ls) out.emplace_back(a, rebuild(l2, p.right()));
      for (auto& [a, r2] : rs) out.emplace_back(a, rebuild(p.left(), r2));
      if (sync)
        for (auto& [a, l2] : ls) {
          auto co = a.complement();
          if (!co) continue;
          for (auto& [b, r2] : rs)
            if (b == *co) out.emplace_back(Action::tau(), Process::sync(l2, r2));
        }
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Action, Process>> transitions(const Process& p) {
  std::vector<std::pair<Action, Process>> raw;
  derive(p, raw);
  std::vector<std::tuple<Action, std::string, Process>> keyed;
  keyed.reserve(raw.size());
  for (auto& [a, q] : raw) keyed.emplace_back(a, render_process(q), q);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  std::vector<std::pair<Action, Process>> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && std::get<0>(keyed[i]) == std::get<0>(keyed[i - 1]) && std::get<1>(keyed[i]) == std::get<1>(keyed[i - 1]))
      continue;
    out.emplace_back(std::get<0>(keyed[i]), std::get<2>(keyed[i]));
  }
  return out;
}

// --- LTS ----------------------------------------------------------------------

std::optional<std::size_t> Lts::find_state(const Process& p) const { return find_state(render_process(p)); }

std::optional<std::size_t> Lts::find_state(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Lts::find_action(const Action& a) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), a);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::size_t Lts::add_state(std::string key) {
  auto [it, fresh] = index_.emplace(key, keys_.size());
  if (fresh) {
    keys_.push_back(std::move(key));
    out_.emplace_back();
  }
  return it->second;
}

std::size_t Lts::intern(const Action& a) {
  if (auto i = find_action(a)) return *i;
  alphabet_.push_back(a);
  return alphabet_.size() - 1;
}

void Lts::add_transition(std::size_t src, std::size_t action, std::size_t dst) {
  transitions_.push_back({src, action, dst});
}

void Lts::finalize() {
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
  for (auto& o : out_) o.clear();
  out_.resize(keys_.size());
  for (std::size_t i = 0; i < transitions_.size(); ++i) out_[transitions_[i].src].push_back(i);
}

Lts build_lts(const std::vector<Process>& roots, std::size_t max_states) {
  Lts lts;
  std::vector<Process> procs;
  std::deque<std::size_t> work;
  auto visit = [&](const Process& p) {
    std::string key = render_process(p);
    if (auto s = lts.find_state(key)) return *s;
    if (lts.num_states() >= max_states)
      throw StateBudgetExceeded("state budget of " + std::to_string(max_states) + " exceeded");
    std::size_t s = lts.add_state(std::move(key));
    procs.push_back(p);
    work.push_back(s);
    return s;
  };
  for (const auto& r : roots) visit(r);
  while (!work.empty()) {
    std::size_t s = work.front();
    work.pop_front();
    Process p = procs[s];
    for (auto& [a, q] : transitions(p)) {
      std::size_t t = visit(q);
      lts.add_transition(s, lts.intern(a), t);
    }
  }
  lts.finalize();
  return lts;
}

}  // namespace copycat::ccs

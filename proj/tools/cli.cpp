#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "copycat/bayes.hpp"
#include "copycat/ccs.hpp"
#include "copycat/cl.hpp"
#include "copycat/domain.hpp"
#include "copycat/error.hpp"
#include "copycat/goi.hpp"
#include "copycat/probe.hpp"
#include "copycat/suites.hpp"

namespace copycat::cli {

namespace {

using Json = nlohmann::ordered_json;

// Thrown for bad input that CLI11 cannot see (unknown names, unreadable
// files); mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string percent(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * r);
  return buf;
}

std::string real(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", d);
  return buf;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json result_json(const EvalResult& r) {
  Json j;
  j["result"] = r.kind == EvalResult::Kind::Defined     ? "defined"
                : r.kind == EvalResult::Kind::Undefined ? "undefined"
                                                        : "out-of-fuel";
  j["value"] = r.defined() ? Json(render_token(r.value)) : Json(nullptr);
  j["steps"] = r.steps_used;
  return j;
}

// --- goi ------------------------------------------------------------------------

struct GoiOpts {
  std::vector<std::string> lin;
  std::vector<std::string> cl;
  std::string token;
  std::uint64_t fuel = kDefaultFuel;
  std::size_t depth = 5;
  std::uint64_t max_index = 4;
  double min_conclusive = 0.95;
  bool check = false;
  bool json = false;
};

std::vector<Element> elements_of(const GoiOpts& o, std::size_t want) {
  if (!o.lin.empty() && !o.cl.empty()) throw UsageError("use either --lin or --cl, not both");
  const auto& src = o.lin.empty() ? o.cl : o.lin;
  if (src.size() != want)
    throw UsageError("expected " + std::to_string(want) + " element" + (want > 1 ? "s" : "") + ", got " +
                     std::to_string(src.size()));
  std::vector<Element> out;
  for (const auto& s : src) out.push_back(o.lin.empty() ? interpret_cl(cl::parse_term(s)) : parse_element(s));
  return out;
}

int goi_eval(const GoiOpts& o, std::ostream& out) {
  Element e = elements_of(o, 1).front();
  Position tok = parse_token(o.token);
  EvalResult r = eval_element(e, tok, o.fuel);
  if (o.json) {
    Json j{{"element", o.lin.empty() ? o.cl.front() : render_element(e)}, {"token", render_token(tok)}};
    j.update(result_json(r));
    emit(out, j);
  } else {
    out << render_result(r) << '\n';
  }
  return r.kind == EvalResult::Kind::OutOfFuel ? kInconclusive : kOk;
}

int goi_equiv(const GoiOpts& o, std::ostream& out) {
  auto es = elements_of(o, 2);
  ProbeOptions po{o.depth, o.max_index, o.fuel};
  ProbeReport r = probe_equiv(es[0], es[1], po);
  if (o.json) {
    Json j{{"verdict", verdict_name(r.verdict)},
           {"probes", r.total},
           {"conclusive", r.conclusive},
           {"defined", r.defined},
           {"conclusive_ratio", r.conclusive_ratio()},
           {"out_of_fuel", r.out_of_fuel.size()}};
    if (r.witness)
      j["witness"] = Json{{"token", render_token(*r.witness)},
                          {"left", render_result(r.left)},
                          {"right", render_result(r.right)}};
    else
      j["witness"] = nullptr;
    emit(out, j);
  } else {
    out << verdict_name(r.verdict) << '\n';
    out << "probes " << r.total << ", conclusive " << r.conclusive << " (" << percent(r.conclusive_ratio())
        << "), defined " << r.defined << '\n';
    if (r.witness)
      out << "witness " << render_token(*r.witness) << ": " << render_result(r.left) << " vs "
          << render_result(r.right) << '\n';
  }
  if (r.verdict == ProbeReport::Verdict::Inconclusive) return kInconclusive;
  if (o.check && r.verdict == ProbeReport::Verdict::Distinguished) return kCheckFailed;
  return kOk;
}

int goi_check_lca(const GoiOpts& o, std::ostream& out) {
  auto probes = probe_tokens(o.depth, o.max_index);
  auto res = run_suite(lca_suite(default_pool()), probes, o.fuel, o.min_conclusive);
  const bool ok = suite_passed(res);
  if (o.json) {
    Json fams = Json::array();
    for (const auto& f : res)
      fams.push_back({{"family", f.family},
                      {"instances", f.instances},
                      {"equivalent", f.equivalent},
                      {"distinguished", f.distinguished},
                      {"min_conclusive", f.min_conclusive},
                      {"failures", f.failures}});
    emit(out, Json{{"probes", probes.size()}, {"families", fams}, {"passed", ok}});
  } else {
    for (const auto& f : res) {
      out << std::left << std::setw(6) << f.family << std::right << std::setw(4) << f.instances
          << " instances, " << f.equivalent << " equivalent, min conclusive " << percent(f.min_conclusive) << "  "
          << (f.passed() ? "ok" : "FAILED") << '\n';
      for (const auto& line : f.failures) out << "  " << line << '\n';
    }
    out << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kOk : kCheckFailed;
}

// --- cl -------------------------------------------------------------------------

int cl_normalize(const std::string& text, std::uint64_t max_steps, bool json, std::ostream& out, std::ostream& err) {
  auto r = cl::normalize(cl::parse_term(text), max_steps);
  if (json)
    emit(out, Json{{"term", cl::render_term(r.term)}, {"normal", r.normal}, {"steps", r.steps}});
  else
    out << cl::render_term(r.term) << '\n';
  if (!r.normal) {
    err << "step budget of " << max_steps << " exhausted; term shown is not a normal form\n";
    return kInconclusive;
  }
  return kOk;
}

// --- ccs ------------------------------------------------------------------------

std::map<std::string, ccs::Process> load_processes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ccs::parse_process_file(ss.str());
}

const ccs::Process& lookup(const std::map<std::string, ccs::Process>& procs, const std::string& name) {
  auto it = procs.find(name);
  if (it == procs.end()) throw UsageError("no process named '" + name + "'");
  return it->second;
}

struct CcsOpts {
  std::string file, p, q, formula, out_path;
  std::size_t maxlen = 0;
  std::size_t max_states = 100'000;
  bool weak = false;
  bool check = false;
  bool json = false;
};

int ccs_bisim(const CcsOpts& o, std::ostream& out) {
  auto procs = load_processes(o.file);
  const auto& p = lookup(procs, o.p);
  const auto& q = lookup(procs, o.q);
  auto lts = ccs::build_lts({p, q}, o.max_states);
  auto s = *lts.find_state(p), t = *lts.find_state(q);
  bool b = o.weak ? ccs::weak_bisim(lts, s, t) : ccs::strong_bisim(lts, s, t);
  if (o.json)
    emit(out, Json{{"p", o.p}, {"q", o.q}, {"mode", o.weak ? "weak" : "strong"}, {"states", lts.num_states()},
                   {"bisimilar", b}});
  else
    out << (b ? "true" : "false") << '\n';
  return o.check && !b ? kCheckFailed : kOk;
}

int ccs_hml(const CcsOpts& o, std::ostream& out) {
  auto procs = load_processes(o.file);
  const auto& p = lookup(procs, o.p);
  auto f = ccs::parse_hml(o.formula);
  auto lts = ccs::build_lts({p}, o.max_states);
  bool b = ccs::hml_eval(lts, 0, f);
  if (o.json)
    emit(out, Json{{"p", o.p}, {"formula", ccs::render_hml(f)}, {"holds", b}});
  else
    out << (b ? "true" : "false") << '\n';
  return o.check && !b ? kCheckFailed : kOk;
}

int ccs_traces(const CcsOpts& o, std::ostream& out) {
  auto procs = load_processes(o.file);
  auto lts = ccs::build_lts({lookup(procs, o.p)}, o.max_states);
  auto ts = ccs::traces(lts, 0, o.maxlen);
  if (o.json) {
    Json arr = Json::array();
    for (const auto& t : ts) {
      Json one = Json::array();
      for (const auto& a : t) one.push_back(a.render());
      arr.push_back(one);
    }
    emit(out, Json{{"p", o.p}, {"maxlen", o.maxlen}, {"traces", arr}});
  } else {
    for (const auto& t : ts) out << ccs::render_trace(t) << '\n';
  }
  return kOk;
}

int ccs_export(const CcsOpts& o, std::ostream& out) {
  auto procs = load_processes(o.file);
  auto lts = ccs::build_lts({lookup(procs, o.p)}, o.max_states);
  std::string aut = ccs::export_aut(lts, 0);
  if (o.out_path == "-") {
    out << aut;
  } else {
    std::ofstream f(o.out_path);
    if (!f) throw UsageError("cannot write '" + o.out_path + "'");
    f << aut;
  }
  if (o.out_path != "-") {
    if (o.json)
      emit(out, Json{{"p", o.p}, {"out", o.out_path}, {"states", lts.num_states()},
                     {"transitions", lts.transitions().size()}});
    else
      out << "wrote " << lts.num_states() << " states, " << lts.transitions().size() << " transitions to "
          << o.out_path << '\n';
  }
  return kOk;
}

// --- bayes ----------------------------------------------------------------------

struct BayesOpts {
  std::string x, y;
  std::string method = "recursive";
  double eps = bayes::kDefaultEps;
  std::size_t n = 3;
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
  bool check = false;
  bool json = false;
};

Json state_json(const bayes::ClassicalState& s) { return Json(s.probs()); }

int bayes_leq(const BayesOpts& o, std::ostream& out) {
  auto x = bayes::parse_state(o.x);
  auto y = bayes::parse_state(o.y);
  if (x.dim() != y.dim()) throw UsageError("states have different dimensions");
  if (o.method == "symmetric" && x.dim() > bayes::kMaxSymmetricDim)
    throw UsageError("the symmetric method supports at most 8 coordinates");
  bool b = o.method == "symmetric" ? bayes::leq_symmetric(x, y, o.eps) : bayes::leq_recursive(x, y, o.eps);
  if (o.json)
    emit(out, Json{{"x", state_json(x)}, {"y", state_json(y)}, {"method", o.method}, {"eps", o.eps}, {"leq", b}});
  else
    out << (b ? "true" : "false") << '\n';
  return o.check && !b ? kCheckFailed : kOk;
}

int bayes_entropy(const BayesOpts& o, std::ostream& out) {
  auto x = bayes::parse_state(o.x);
  double h = bayes::entropy(x);
  if (o.json)
    emit(out, Json{{"x", state_json(x)}, {"entropy", h}});
  else
    out << real(h) << '\n';
  return kOk;
}

int bayes_check(const BayesOpts& o, std::ostream& out) {
  if (o.n < 2 || o.n > bayes::kMaxSymmetricDim) throw UsageError("--n must lie between 2 and 8");
  auto r = bayes::property_sweep(o.n, o.samples, o.seed, o.eps);
  if (o.json) {
    Json j{{"n", o.n},
           {"samples", o.samples},
           {"seed", o.seed},
           {"stable", r.stable},
           {"agree", r.agree},
           {"comparable", r.comparable},
           {"entropy_violations", r.entropy_violations},
           {"bottom_failures", r.bottom_failures},
           {"passed", r.passed()}};
    if (r.first_disagreement)
      j["disagreement"] = Json{{"x", state_json(r.first_disagreement->first)},
                               {"y", state_json(r.first_disagreement->second)}};
    emit(out, j);
  } else {
    out << "pairs " << r.pairs << ", stable " << r.stable << ", agree " << r.agree << ", comparable "
        << r.comparable << '\n';
    out << "entropy violations " << r.entropy_violations << ", bottom failures " << r.bottom_failures << '\n';
    if (r.first_disagreement)
      out << "disagreement at " << bayes::render_state(r.first_disagreement->first) << " vs "
          << bayes::render_state(r.first_disagreement->second) << '\n';
    out << (r.passed() ? "PASS" : "FAIL") << '\n';
  }
  return r.passed() ? kOk : kCheckFailed;
}

// --- domain ---------------------------------------------------------------------

int domain_lfp_fact(std::size_t upto, bool json, std::ostream& out) {
  auto chain = domain::lfp_iterate([](const domain::PartialFn& f) { return domain::factorial_functional(f); }, upto);
  auto fn_json = [](const domain::PartialFn& f) {
    Json a = Json::array();
    for (const auto& [x, y] : f) a.push_back({x, y});
    return a;
  };
  if (json) {
    Json items = Json::array();
    for (const auto& f : chain) items.push_back(fn_json(f));
    emit(out, Json{{"upto", upto}, {"chain", items}, {"lub", fn_json(domain::chain_lub(chain))}});
    return kOk;
  }
  for (std::size_t k = 0; k < chain.size(); ++k) out << "f" << k << " = " << domain::render_fn(chain[k]) << '\n';
  out << "n\tf(n)\n";
  for (const auto& [x, y] : domain::chain_lub(chain)) out << x << '\t' << y << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GoI token machine with combinatory logic, CCS, Bayesian order and fixpoint tools", "copycat"};
  app.require_subcommand(1);

  GoiOpts g;
  CcsOpts c;
  BayesOpts b;
  std::string cl_text;
  std::uint64_t cl_steps = 10'000;
  std::uint64_t church_n = 0;
  std::size_t lfp_upto = 6;
  bool cl_json = false, dom_json = false;

  auto* goi = app.add_subcommand("goi", "token machine over partial involutions");
  goi->require_subcommand(1);
  auto* geval = goi->add_subcommand("eval", "run one token through an element");
  geval->add_option("--lin", g.lin, "element expression, e.g. \"((B I) !K)\"");
  geval->add_option("--cl", g.cl, "CL term, interpreted in the standard algebra");
  geval->add_option("--token", g.token, "input token, e.g. \"L #0 R $\"")->required();
  geval->add_option("--fuel", g.fuel, "step budget")->capture_default_str();
  geval->add_flag("--json", g.json);

  auto* gequiv = goi->add_subcommand("equiv", "compare two elements on all probe tokens");
  gequiv->add_option("--lin", g.lin, "element expression (give two)");
  gequiv->add_option("--cl", g.cl, "CL term (give two)");
  gequiv->add_option("--depth", g.depth, "probe word length bound")->capture_default_str();
  gequiv->add_option("--max-index", g.max_index, "largest copy index in probes")->capture_default_str();
  gequiv->add_option("--fuel", g.fuel, "step budget per evaluation")->capture_default_str();
  gequiv->add_flag("--check", g.check, "exit 3 when distinguished");
  gequiv->add_flag("--json", g.json);

  auto* glca = goi->add_subcommand("check-lca", "verify the eight combinator equations on a pool");
  glca->add_option("--depth", g.depth)->capture_default_str();
  glca->add_option("--max-index", g.max_index)->capture_default_str();
  glca->add_option("--fuel", g.fuel)->capture_default_str();
  glca->add_option("--min-conclusive", g.min_conclusive, "required conclusive fraction per instance")
      ->capture_default_str();
  glca->add_flag("--json", g.json);

  auto* clc = app.add_subcommand("cl", "combinatory logic");
  clc->require_subcommand(1);
  auto* clnorm = clc->add_subcommand("normalize", "normal-order reduction");
  clnorm->add_option("TERM", cl_text)->required();
  clnorm->add_option("--max-steps", cl_steps)->capture_default_str();
  clnorm->add_flag("--json", cl_json);
  auto* clcomp = clc->add_subcommand("compile", "bracket-abstract a lambda term");
  clcomp->add_option("LAMBDA", cl_text, "e.g. \"\\\\x y. y x\"")->required();
  clcomp->add_flag("--json", cl_json);
  auto* clch = clc->add_subcommand("church", "print the Church numeral (S B)^n (K I)");
  clch->add_option("N", church_n)->required()->check(CLI::Range(std::uint64_t{0}, std::uint64_t{100'000}));
  clch->add_flag("--json", cl_json);

  auto* ccsc = app.add_subcommand("ccs", "process algebra");
  ccsc->require_subcommand(1);
  auto add_states = [&](CLI::App* s) {
    s->add_option("--max-states", c.max_states, "LTS size limit")->capture_default_str();
    s->add_flag("--json", c.json);
  };
  auto* cbisim = ccsc->add_subcommand("bisim", "strong or weak bisimilarity");
  cbisim->add_option("FILE", c.file)->required();
  cbisim->add_option("P", c.p)->required();
  cbisim->add_option("Q", c.q)->required();
  cbisim->add_flag("--weak", c.weak);
  cbisim->add_flag("--check", c.check, "exit 3 when not bisimilar");
  add_states(cbisim);
  auto* chml = ccsc->add_subcommand("hml", "evaluate a Hennessy-Milner formula");
  chml->add_option("FILE", c.file)->required();
  chml->add_option("P", c.p)->required();
  chml->add_option("FORMULA", c.formula)->required();
  chml->add_flag("--check", c.check, "exit 3 when the formula fails");
  add_states(chml);
  auto* ctr = ccsc->add_subcommand("traces", "action sequences up to a length");
  ctr->add_option("FILE", c.file)->required();
  ctr->add_option("P", c.p)->required();
  ctr->add_option("--maxlen", c.maxlen)->required()->check(CLI::Range(0, 64));
  add_states(ctr);
  auto* caut = ccsc->add_subcommand("export-aut", "write the LTS in Aldebaran format");
  caut->add_option("FILE", c.file)->required();
  caut->add_option("P", c.p)->required();
  caut->add_option("OUT", c.out_path, "output path, or - for standard output")->required();
  add_states(caut);

  auto* bay = app.add_subcommand("bayes", "Bayesian order on classical states");
  bay->require_subcommand(1);
  auto* bleq = bay->add_subcommand("leq", "decide x <= y");
  bleq->add_option("X", b.x, "e.g. 0.5,0.3,0.2")->required();
  bleq->add_option("Y", b.y)->required();
  bleq->add_option("--method", b.method)->check(CLI::IsMember({"recursive", "symmetric"}))->capture_default_str();
  bleq->add_option("--eps", b.eps)->check(CLI::NonNegativeNumber)->capture_default_str();
  bleq->add_flag("--check", b.check, "exit 3 when x is not below y");
  bleq->add_flag("--json", b.json);
  auto* bent = bay->add_subcommand("entropy", "Shannon entropy in bits");
  bent->add_option("X", b.x)->required();
  bent->add_flag("--json", b.json);
  auto* bchk = bay->add_subcommand("check", "seeded property sweep");
  bchk->add_option("--n", b.n)->required();
  bchk->add_option("--samples", b.samples)->required();
  bchk->add_option("--seed", b.seed)->required();
  bchk->add_option("--eps", b.eps)->check(CLI::NonNegativeNumber)->capture_default_str();
  bchk->add_flag("--json", b.json);

  auto* dom = app.add_subcommand("domain", "least fixpoints of partial functions");
  dom->require_subcommand(1);
  auto* dfact = dom->add_subcommand("lfp-fact", "Kleene chain of the factorial functional");
  dfact->add_option("--upto", lfp_upto, "number of iterations")->capture_default_str()->check(CLI::Range(0, 100));
  dfact->add_flag("--json", dom_json);

  std::vector<const char*> argv{"copycat"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (geval->parsed()) return goi_eval(g, out);
    if (gequiv->parsed()) return goi_equiv(g, out);
    if (glca->parsed()) return goi_check_lca(g, out);
    if (clnorm->parsed()) return cl_normalize(cl_text, cl_steps, cl_json, out, err);
    if (clcomp->parsed()) {
      auto t = cl::parse_lambda(cl_text);
      if (cl_json)
        emit(out, Json{{"lambda", cl_text}, {"term", cl::render_term(t)}, {"size", t.size()}});
      else
        out << cl::render_term(t) << '\n';
      return kOk;
    }
    if (clch->parsed()) {
      auto t = cl::church(church_n);
      if (cl_json)
        emit(out, Json{{"n", church_n}, {"term", cl::render_term(t)}});
      else
        out << cl::render_term(t) << '\n';
      return kOk;
    }
    if (cbisim->parsed()) return ccs_bisim(c, out);
    if (chml->parsed()) return ccs_hml(c, out);
    if (ctr->parsed()) return ccs_traces(c, out);
    if (caut->parsed()) return ccs_export(c, out);
    if (bleq->parsed()) return bayes_leq(b, out);
    if (bent->parsed()) return bayes_entropy(b, out);
    if (bchk->parsed()) return bayes_check(b, out);
    if (dfact->parsed()) return domain_lfp_fact(lfp_upto, dom_json, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ccs::StateBudgetExceeded& e) {
    err << e.what() << '\n';
    return kInconclusive;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  err << "no command given\n";
  return kUsage;
}

}  // namespace copycat::cli

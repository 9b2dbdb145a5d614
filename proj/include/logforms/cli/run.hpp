#pragma once

#include <exception>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "logforms/cli/job.hpp"
#include "logforms/deformation/ae.hpp"
#include "logforms/deformation/milnor.hpp"
#include "logforms/forms/derham.hpp"

namespace logforms {

using Json = nlohmann::ordered_json;

inline constexpr const char* kResultSchema = "logforms-result/1";

namespace detail {

struct RunContext {
  const JobSpec& job;
  /// Cleared by any count that is only a global statement.
  bool local = true;
};

inline Json dim_json(const Dimension& d) { return d.is_finite() ? Json(*d.value) : Json("INFINITE"); }

inline Json claim(Json value, const std::string& route) { return Json{{"value", std::move(value)}, {"route", route}}; }

inline Json poly_list(const std::vector<Poly>& ps, const std::vector<std::string>& vars) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(format_poly(p, vars));
  return a;
}

inline Json element_json(const FreeElement& f, const std::vector<std::string>& vars) {
  return poly_list(std::vector<Poly>(f.entries().begin(), f.entries().end()), vars);
}

inline Json basis_json(const LogBasis& b, const std::vector<std::string>& vars) {
  Json fields = Json::array();
  for (const auto& f : b.theta) fields.push_back(element_json(f, vars));
  return Json{{"fields", fields}, {"unit", b.unit.get_str()}, {"witnesses", poly_list(b.witnesses, vars)}};
}

/// Labels of the exterior basis in degree k, e.g. "dx^dz".
inline Json form_labels(const std::vector<std::string>& vars, std::size_t nforms, std::size_t k) {
  ExteriorAlgebra ext(nforms);
  Json a = Json::array();
  for (auto mask : ext.basis(k)) {
    std::string s;
    for (std::size_t i = 0; i < nforms; ++i)
      if (mask >> i & 1u) s += (s.empty() ? "d" : "^d") + vars[i];
    a.push_back(s.empty() ? "1" : s);
  }
  return a;
}

inline Json table_json(const std::map<long, std::size_t>& t) {
  Json a = Json::array();
  for (const auto& [d, v] : t) a.push_back(Json::array({d, v}));
  return a;
}

inline Json not_applicable(const std::string& name, const std::string& why) {
  return Json{{"name", name}, {"status", "not-applicable"}, {"reason", why}};
}

/// The agreement summary of a multi-route claim.
inline void summarize_routes(Json& r, Json routes) {
  std::vector<Json> values;
  for (const auto& x : routes)
    if (x.contains("value")) values.push_back(x["value"]);
  bool agree = !values.empty();
  for (const auto& v : values) agree = agree && v == values.front();
  r["routes"] = std::move(routes);
  r["agree"] = agree;
  r["value"] = agree ? values.front() : Json(nullptr);
}

inline Divisor job_divisor(const JobSpec& j) {
  auto amb = j.ambient();
  std::optional<Weights> w;
  if (amb.positive()) w = amb.weights;
  return make_divisor(amb.vars, *j.divisor, std::move(w));
}

inline LogBasis certified(const Divisor& d, const std::string& what) {
  auto v = is_free(d);
  if (v.kind != FreenessVerdict::Kind::Free)
    throw PreconditionError(what + " is not certified free (" + v.reason + ")");
  return std::move(*v.basis);
}

inline InducingMap job_map(const JobSpec& j) { return {j.source_vars(), j.target.vars, j.map}; }

inline DeformationSetup job_setup(const JobSpec& j) {
  auto e = job_divisor(j);
  auto b = certified(e, "E");
  return make_setup(std::move(e), std::move(b), job_map(j), j.params.vars.size(), j.extension.vars.size(),
                    j.source_weights());
}

/// Under --order lex the dimension is recomputed with a lex basis; both
/// counts are global quotient dimensions and have to coincide.
inline Dimension checked_dim(const NormalSpace& ns, const JobSpec& j) {
  if (j.options.order != "lex") return ns.dim;
  auto d = quotient_dimension(ns.presentation, MonomialOrder::lex(ns.presentation.nvars));
  if (d != ns.dim) throw InvariantError("quotient dimension depends on the monomial order");
  return d;
}

inline Json cmd_is_free(RunContext& c) {
  auto d = job_divisor(c.job);
  auto v = is_free(d);
  Json r;
  std::string route = v.graded ? "minimal-generators" : "saito-subset-search";
  r["verdict"] = claim(to_string(v.kind), route);
  r["generator_count"] = claim(v.generator_count, v.graded ? "minimal-generators" : "pruned-generators");
  r["graded"] = v.graded;
  if (v.basis) r["certificate"] = basis_json(*v.basis, d.vars);
  if (!v.reason.empty()) r["reason"] = v.reason;
  // A polynomial Saito certificate holds at every point; the other verdicts rest on the grading.
  c.local = v.graded || v.kind == FreenessVerdict::Kind::Free;
  return r;
}

inline Json cmd_derlog(RunContext& c) {
  auto d = job_divisor(c.job);
  Json gens = Json::array();
  auto fs = derlog(d);
  for (const auto& f : fs)
    gens.push_back(Json{{"field", element_json(f.field, d.vars)}, {"witness", format_poly(f.witness, d.vars)}});
  return Json{{"count", claim(fs.size(), "syzygy-module")}, {"generators", gens}};
}

inline Json cmd_saito_check(RunContext& c) {
  auto d = job_divisor(c.job);
  std::vector<FreeElement> cand;
  for (const auto& f : c.job.fields) cand.push_back(FreeElement(f));
  auto s = saito_check(d, cand);
  Json r;
  r["verdict"] = claim(s.basis ? "PASS" : "FAIL", "saito-criterion");
  if (s.basis) r["certificate"] = basis_json(*s.basis, d.vars);
  else r["reason"] = s.reason;
  return r;
}

/// Either Ω̌ of a free divisor on the ring or of the pullback along the map.
struct FormsSource {
  std::function<CheckedFormsModule(std::size_t)> build;
  std::size_t nforms = 0;
  std::vector<std::string> vars;
  bool free = false;
  Divisor d;
  LogBasis basis;
};

inline FormsSource forms_source(const JobSpec& j) {
  FormsSource f;
  f.d = job_divisor(j);
  if (j.target.empty()) {
    f.basis = certified(f.d, "divisor");
    f.free = true;
    f.nforms = f.d.nvars();
    f.vars = f.d.vars;
    f.build = [d = f.d, b = f.basis](std::size_t k) { return omega_free(d, b, k); };
  } else {
    f.basis = certified(f.d, "E");
    f.nforms = j.ring.vars.size();
    f.vars = j.source_vars();
    auto map = job_map(j);
    if (map.pull(f.d.h).is_zero()) throw PreconditionError("map: pulled-back equation is zero");
    f.build = [d = f.d, b = f.basis, map, n = f.nforms, w = j.source_weights()](std::size_t k) {
      return omega_pullback(d, b, map, n, k, w);
    };
  }
  return f;
}

inline std::vector<std::size_t> degrees(const JobSpec& j, std::size_t top) {
  if (j.options.k) {
    if (*j.options.k > top) throw PreconditionError("form degree k out of range");
    return {*j.options.k};
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k <= top; ++k) ks.push_back(k);
  return ks;
}

inline Json cmd_omega_check(RunContext& c) {
  auto f = forms_source(c.job);
  Json r;
  if (f.free) {
    bool gate = pairing_gate(f.d, f.basis);
    r["pairing_gate"] = claim(gate, "pairing-matrix");
    if (!gate) throw InvariantError("omega-check: pairing gate failed, log-form generators rejected");
  }
  Json entries = Json::array();
  for (auto k : degrees(c.job, f.nforms)) {
    auto m = f.build(k);
    Json e;
    e["k"] = k;
    e["rank"] = m.presentation.rank;
    e["form_basis"] = form_labels(f.vars, f.nforms, k);
    Json rels = Json::array();
    for (const auto& g : m.presentation.relations) rels.push_back(element_json(g, f.vars));
    e["relations"] = rels;
    if (f.free) {
      e["projective_dimension_one"] = claim(pd_check(m), "syzygy-module");
      if (k >= 1) {
        std::size_t n = f.d.nvars();
        auto kahler = groebner_basis(kahler_relations(f.d.h, k), divisor_order(f.d), m.presentation.rank, n);
        bool outside = false;
        for (const auto& g : m.presentation.relations) outside = outside || !kahler.contains(g);
        e["strict_inclusion"] = claim(outside, "kahler-membership");
      }
    }
    if (m.presentation.grading)
      e["hilbert"] = claim(table_json(graded_table(m, 0, c.job.options.degree_bound)), "hilbert-function");
    else
      c.local = false;
    entries.push_back(std::move(e));
  }
  r["degrees"] = std::move(entries);
  return r;
}

inline Json cmd_de_rham(RunContext& c) {
  const auto& j = c.job;
  auto f = forms_source(j);
  if (f.nforms != f.vars.size()) throw PreconditionError("de-rham-check: parameters are not supported");
  std::optional<Weights> w = f.free ? j.ring.weights : j.source_weights();
  if (!w && f.free) w = effective_weights(f.d);
  if (!w) throw PreconditionError("de-rham-check: needs weights");
  SliceComplex cx(complex_relations(f.nforms, f.build), *w, j.options.secondary_cap);
  auto rep = de_rham_check(cx, j.options.degree_bound);
  Json slices = Json::array();
  for (const auto& s : rep.slices)
    slices.push_back(Json{{"degree", s.degree},
                          {"dims", s.dims},
                          {"ranks", s.ranks},
                          {"cohomology", s.cohomology},
                          {"exact", s.exact}});
  c.local = !rep.filtered;
  return Json{{"exact", claim(rep.exact, "slice-linear-algebra")},
              {"weights", *w},
              {"filtered", rep.filtered},
              {"secondary_cap", rep.filtered ? Json(rep.secondary_cap) : Json(nullptr)},
              {"slices", slices}};
}

inline Json cmd_torsion(RunContext& c) {
  const auto& j = c.job;
  auto f = forms_source(j);
  if (f.nforms == 0) throw PreconditionError("torsion-length: no form variables");
  std::size_t k = j.options.k.value_or(f.nforms - 1);
  if (k > f.nforms) throw PreconditionError("form degree k out of range");
  auto m = f.build(k);
  auto t = torsion_length(m);
  Json r{{"k", k}, {"length", claim(t.length, "colon-chain")}, {"iterations", t.iterations}};
  auto w = j.source_weights();
  if (!f.free && k + 1 == f.nforms && m.positively_graded() && f.nforms == f.vars.size()) {
    auto ext = m.algebra();
    Weights head(w->begin(), w->begin() + static_cast<long>(f.nforms));
    auto cls = ext.contract(euler_field(head), ext.volume(), f.nforms);
    auto rep = classify(m, cls, t);
    r["euler_class"] = Json{{"form", element_json(cls, f.vars)},
                            {"nonzero", rep.nonzero},
                            {"torsion", rep.torsion},
                            {"route", "euler-contraction"}};
  }
  return r;
}

inline Json versality_json(const DeformationSetup& s) {
  auto v = versality_check(s);
  return Json{{"versal", v.versal}, {"miniversal", v.miniversal}, {"route", "infinitesimal-criterion"}};
}

inline Json cmd_kev(RunContext& c) {
  auto s = job_setup(c.job);
  auto ns = kev_normal_space(s);
  c.local = ns.local;
  auto seq = sequence_check(s.e, s.basis, germ(s), germ_weights(s));
  Json r;
  r["codim"] = claim(dim_json(checked_dim(ns, c.job)), "kev-normal-space");
  r["sequence"] = Json{{"pullback_free", seq.pullback_free},
                       {"kernel_is_derlog", seq.kernel_is_derlog},
                       {"cokernel_is_normal_space", seq.cokernel_is_normal_space},
                       {"exact", seq.exact()},
                       {"route", "sequence-membership"}};
  if (s.ds > 0) r["versality"] = versality_json(s);
  return r;
}

inline Json cmd_t1_log(RunContext& c) {
  auto s = job_setup(c.job);
  auto total = certify_total(s);
  auto t = t1_log_relative(s, total);
  auto kev = kev_normal_space(s);
  c.local = t.relative.local && t.fibre.local && kev.local;
  Json r;
  r["relative"] = claim(dim_json(checked_dim(t.relative, c.job)), "parameter-quotient");
  Json fibre;
  summarize_routes(fibre, Json::array({Json{{"name", "t1-fibre"}, {"value", dim_json(checked_dim(t.fibre, c.job))}},
                                       Json{{"name", "kev-normal-space"}, {"value", dim_json(checked_dim(kev, c.job))}}}));
  r["fibre"] = fibre;
  r["versality"] = versality_json(s);
  auto cm = cm_proxy(s, total, c.job.options.seed);
  r["cm_proxy"] = Json{{"krull", cm.krull},   {"forms", cm.forms},   {"final_dim", dim_json(cm.final_dim)},
                       {"passed", cm.passed}, {"seed", c.job.options.seed}, {"route", "generic-linear-sections"}};
  r["total_space_certificate"] = basis_json(total, s.map.source_vars);
  return r;
}

inline Json cmd_critical(RunContext& c) {
  auto s = job_setup(c.job);
  auto total = certify_total(s);
  auto gens = log_critical_ideal(s, total);
  std::vector<std::string> vars(s.map.source_vars.begin(),
                                s.map.source_vars.begin() + static_cast<long>(s.nbase() + s.ds));
  c.local = s.positively_graded();
  return Json{{"generators", claim(poly_list(gens, vars), "maximal-minors")}, {"count", gens.size()}};
}

/// Runs one route; precondition failures mark it not applicable.
inline Json try_route(const std::string& name, const std::function<Json()>& f) {
  try {
    Json r = f();
    Json out{{"name", name}};
    for (auto& [k, v] : r.items()) out[k] = v;
    return out;
  } catch (const PreconditionError& e) {
    return not_applicable(name, e.what());
  }
}

inline Json cmd_mu_e(RunContext& c) {
  const auto& j = c.job;
  auto s = job_setup(j);
  long bound = j.options.degree_bound;
  std::optional<LogBasis> total;
  std::string total_reason;
  if (s.nparams() > 0) {
    try {
      total = certify_total(s);
    } catch (const PreconditionError& e) {
      total_reason = e.what();
    }
  } else {
    total_reason = "no deformation parameters";
  }
  Json routes = Json::array();
  routes.push_back(try_route("de-rham", [&] {
    auto m = mu_e_derham(s, bound);
    Json sl = Json::array();
    for (const auto& [d, v] : m.slices) sl.push_back(Json::array({d, v}));
    return Json{{"value", m.value}, {"slices", sl}, {"top_degree", m.top_degree}, {"local", true}};
  }));
  routes.push_back(try_route("alternating-sum", [&] {
    if (!total) throw PreconditionError(total_reason);
    auto a = mu_e_alternating(s, *total);
    return Json{{"value", a.value}, {"terms", a.terms}, {"local", a.local}};
  }));
  routes.push_back(try_route("good-equation", [&] {
    auto g = mu_e_good_equation(s);
    auto n = s.map.source_vars;
    return Json{{"value", dim_json(checked_dim(g.space, j))},
                {"witness", element_json(g.witness, n)},
                {"local", g.space.local}};
  }));
  bool any = false;
  for (const auto& r : routes) {
    if (!r.contains("value")) continue;
    any = true;
    c.local = c.local && r["local"].get<bool>();
    // An infinite count is not a Milnor number.
    if (!r["value"].is_number()) c.local = false;
  }
  if (!any) throw PreconditionError("mu-e: no route applies");
  Json r;
  summarize_routes(r, std::move(routes));
  if (s.ds == 1) {
    r["count"] = try_route("count-identity", [&] {
      if (!total) throw PreconditionError(total_reason);
      auto cc = count_check(s, *total, bound);
      return Json{{"mu_fibre", cc.mu_fibre}, {"mu_total", cc.mu_total}, {"t1_log", dim_json(cc.t1)}, {"holds", cc.holds}};
    });
  }
  return r;
}

inline Json cmd_ae(RunContext& c) {
  const auto& j = c.job;
  InducingMap f{j.ring.vars, j.germ_target.vars, j.germ};
  Json routes = Json::array();
  auto direct = ae_normal_space_direct(f);
  Json jets = Json::array();
  for (std::size_t i = 0; i < direct.jets.size(); ++i) jets.push_back(Json::array({i + 1, direct.jets[i]}));
  routes.push_back(Json{{"name", "jet-direct"},
                        {"value", direct.value.is_finite() ? Json(*direct.value.value) : Json("INFINITE-OR-UNSTABLE")},
                        {"jets", jets}});
  if (!direct.value.is_finite()) c.local = false;
  if (j.divisor) {
    auto d = job_divisor(j);
    auto b = certified(d, "discriminant");
    std::optional<Weights> w;
    if (j.germ_target.positive()) w = j.germ_target.weights;
    DamonInput in{d, b, {j.germ_target.vars, j.target.vars, j.inclusion}, std::nullopt, w};
    if (!j.unfolding.empty()) in.unfolding = InducingMap{j.unfolding_ring.vars, j.target.vars, j.unfolding};
    routes.push_back(try_route("damon", [&] {
      auto r = ae_codim_damon(in);
      c.local = c.local && r.space.local;
      return Json{{"value", dim_json(checked_dim(r.space, j))},
                  {"unfolding_stable", in.unfolding ? Json(r.unfolding_stable) : Json(nullptr)},
                  {"discriminant_checked", in.unfolding ? Json(r.discriminant_checked) : Json(nullptr)}};
    }));
    routes.push_back(try_route("torsion", [&] {
      auto t = ae_torsion_route(in);
      return Json{{"value", t.length}, {"iterations", t.iterations}};
    }));
  } else {
    routes.push_back(not_applicable("damon", "no discriminant given"));
    routes.push_back(not_applicable("torsion", "no discriminant given"));
  }
  Json r;
  summarize_routes(r, std::move(routes));
  return r;
}

inline Json cmd_fitting(RunContext& c) {
  auto s = job_setup(c.job);
  auto total = certify_total(s);
  auto red = ke_discriminant_reducedness(s, total);
  c.local = red.fitting.local;
  return Json{{"reduced", claim(red.reduced, "fitting-ideal-equals-maximal-ideal")},
              {"fitting_ideal",
               Json{{"generators", poly_list(red.fitting.generators, c.job.params.vars)},
                    {"length", red.fitting.length},
                    {"route", "multiplication-matrices"}}},
              {"versality", versality_json(s)}};
}

inline Json dispatch(RunContext& c) {
  static const std::map<std::string, Json (*)(RunContext&)> table{
      {"is-free", cmd_is_free},       {"derlog", cmd_derlog},         {"saito-check", cmd_saito_check},
      {"omega-check", cmd_omega_check}, {"de-rham-check", cmd_de_rham}, {"torsion-length", cmd_torsion},
      {"kev-codim", cmd_kev},         {"t1-log", cmd_t1_log},         {"critical-ideal", cmd_critical},
      {"mu-e", cmd_mu_e},             {"ae-codim", cmd_ae},           {"fitting-reduced", cmd_fitting}};
  auto it = table.find(c.job.command);
  if (it == table.end()) throw PreconditionError("unknown command '" + c.job.command + "'");
  return it->second(c);
}

inline const char* error_kind(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::non_stabilization: return "non-stabilization";
    default: return "invariant";
  }
}

}  // namespace detail

inline Json options_json(const JobOptions& o) {
  return Json{{"degree_bound", o.degree_bound}, {"order", o.order}, {"seed", o.seed}};
}

/// The result record of a valid job. Operation errors propagate.
inline Json run(const JobSpec& job) {
  detail::RunContext c{job};
  Json result = detail::dispatch(c);
  Json r;
  r["schema"] = kResultSchema;
  r["command"] = job.command;
  r["input"] = format_job(job);
  r["options"] = options_json(job.options);
  r["status"] = "ok";
  r["certification"] = c.local ? "CERTIFIED" : "UNCERTIFIED-LOCAL";
  r["result"] = std::move(result);
  return r;
}

/// A record for a failed job; `job` is absent for parse errors.
inline Json error_record(const JobSpec* job, ErrorCode code, const std::string& message, int line = 0,
                         int column = 0) {
  Json r;
  r["schema"] = kResultSchema;
  r["command"] = job ? Json(job->command) : Json(nullptr);
  r["input"] = job ? Json(format_job(*job)) : Json(nullptr);
  if (job) r["options"] = options_json(job->options);
  r["status"] = "error";
  Json e{{"code", static_cast<int>(code)}, {"kind", detail::error_kind(code)}, {"message", message}};
  if (code == ErrorCode::parse) {
    e["line"] = line;
    e["column"] = column;
  }
  r["error"] = std::move(e);
  return r;
}

struct Outcome {
  Json record;
  int exit_code = 0;
};

/// Parses and runs one job, turning every failure into a record and exit code.
/// `adjust` may override options after parsing.
inline Outcome run_job_text(std::string_view text, const std::function<void(JobSpec&)>& adjust = {}) {
  JobSpec job;
  try {
    job = parse_job(text);
  } catch (const ParseError& e) {
    return {error_record(nullptr, ErrorCode::parse, e.message(), e.line(), e.column()), 2};
  }
  if (adjust) adjust(job);
  try {
    return {run(job), 0};
  } catch (const Error& e) {
    return {error_record(&job, e.code(), e.what()), static_cast<int>(e.code())};
  } catch (const std::exception& e) {
    return {error_record(&job, ErrorCode::invariant, e.what()), static_cast<int>(ErrorCode::invariant)};
  }
}

/// `path: value` lines for the leaves of a record.
inline std::string flatten(const Json& j, const std::string& prefix = "") {
  std::string out;
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) out += flatten(v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) out += flatten(j[i], prefix + "[" + std::to_string(i) + "]");
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find('\n') == std::string::npos) {
      out += prefix + ": " + s + "\n";
    } else {
      for (std::size_t a = 0, n = 0; a < s.size(); ++n) {
        auto b = s.find('\n', a);
        out += prefix + "[" + std::to_string(n) + "]: " + s.substr(a, b - a) + "\n";
        a = b == std::string::npos ? s.size() : b + 1;
      }
    }
  } else {
    out += prefix + ": " + j.dump() + "\n";
  }
  return out;
}

}  // namespace logforms

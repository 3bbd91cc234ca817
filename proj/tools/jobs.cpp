#include "jobs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqkit/fedosov/trace.hpp"
#include "dqkit/kahler/kahler_torus.hpp"
#include "dqkit/weyl/moyal.hpp"

namespace dqkit::cli {

namespace {

using io::InputError;
using T = TrigPoly;

constexpr std::uint64_t kDefaultSeed = 1;

struct Context {
  const json& job;
  const Overrides& o;
  std::uint64_t seed;
  Rng rng;

  Context(const json& j, const Overrides& ov)
      : job(j), o(ov), seed(ov.seed ? *ov.seed : j.value("seed", kDefaultSeed)), rng(seed) {}

  int get_int(const std::string& key, int fallback) const {
    if (!job.contains(key)) return fallback;
    return io::int_from(job[key], "/" + key);
  }
  int order(int fallback) const { return o.order ? *o.order : get_int("order", fallback); }
};

json decimal(double value, double tol) {
  return {{"value", value}, {"tolerance", tol}, {"passed", std::isfinite(value) && std::abs(value) <= tol}};
}

json exact(const Rational& r) { return to_string(r); }

json coefficients_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& q : p.univariate_coefficients()) out.push_back(to_string(q));
  return out;
}

json header(const std::string& sub, const Context& c) {
  return {{"schema", 1}, {"subcommand", sub}, {"seed", c.seed}};
}

// A connection from the job ("connection" object, "random", or absent = flat) on T^{2m}.
io::ConnectionSpec job_connection(Context& c, bool curved_default) {
  const int m = c.get_int("m", 1);
  if (m < 1 || m > 3) throw InputError("/m", "m must be 1, 2 or 3");
  const json* spec = c.job.contains("connection") ? &c.job["connection"] : nullptr;
  const bool random = spec ? (spec->is_string() && spec->get<std::string>() == "random") : curved_default;
  if (spec && !random) {
    if (spec->is_string()) {
      if (spec->get<std::string>() != "flat") throw InputError("/connection", "expected an object, \"flat\" or \"random\"");
    } else {
      return io::connection_from(*spec, "/connection");
    }
  }
  io::ConnectionSpec out{SymplecticStructure(m), SymTensor3(3, 2 * m, T(2 * m))};
  if (random) {
    // nonconstant momentum, so trace and closing checks have content
    for (;;) {
      out.gamma = random_symmetric3(c.rng, 2 * m, 1, 3, 1);
      if (!cahen_gutt_momentum(torus_connection(out.structure, out.gamma)).is_constant()) break;
    }
  }
  return out;
}

bool is_flat(const SymTensor3& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!g.at(i).is_zero()) return false;
  return true;
}

struct Pair {
  T f, g;
};

std::vector<Pair> job_pairs(Context& c, int dim, int default_count) {
  std::vector<Pair> out;
  if (c.job.contains("pairs")) {
    const json& p = c.job["pairs"];
    if (!p.is_array()) throw InputError("/pairs", "expected an array");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string w = "/pairs/" + std::to_string(i);
      out.push_back({io::trig_poly_from(io::member(p[i], "f", w), dim, w + "/f"),
                     io::trig_poly_from(io::member(p[i], "g", w), dim, w + "/g")});
      if (!out.back().f.is_real() || !out.back().g.is_real()) throw InputError(w, "functions must be real");
    }
    return out;
  }
  int count = default_count, freq = 1, modes = 2;
  if (c.job.contains("random_pairs")) {
    const json& r = c.job["random_pairs"];
    if (r.is_number_integer()) {
      count = r.get<int>();
    } else {
      count = io::int_from(io::member(r, "count", "/random_pairs"), "/random_pairs/count");
      if (r.contains("max_freq")) freq = io::int_from(r["max_freq"], "/random_pairs/max_freq");
      if (r.contains("modes")) modes = io::int_from(r["modes"], "/random_pairs/modes");
    }
  }
  if (count < 0 || freq < 1 || modes < 1) throw InputError("/random_pairs", "count, max_freq and modes must be positive");
  for (int i = 0; i < count; ++i) {
    T f = random_trig_poly(c.rng, dim, freq, modes);
    out.push_back({f, random_trig_poly(c.rng, dim, freq, modes)});
  }
  return out;
}

FedosovInput fedosov_input(const io::ConnectionSpec& conn, int D) {
  FedosovInput in;
  in.structure = conn.structure;
  in.gamma = conn.gamma;
  in.max_wdeg = D;
  return in;
}

int wdeg_for(const Context& c, int order) {
  int D = c.o.degree ? *c.o.degree : c.get_int("max_wdeg", 2 * order + 2);
  if (order < 0) throw InputError("/order", "order must be nonnegative");
  if (2 * order + 2 > D) throw InputError("/max_wdeg", "max_wdeg must be at least 2 * order + 2");
  return D;
}

JobResult star(Context& c) {
  auto conn = job_connection(c, false);
  const int N = c.order(3), D = wdeg_for(c, N), n = conn.structure.dim();
  const bool flat = is_flat(conn.gamma);
  if (!flat && N > 3) throw InputError("/order", "curved connections are compared through order 3 only");
  StarEvaluator se(fedosov_input(conn, D), N);
  const TorusConnection tc = torus_connection(conn.structure, conn.gamma);
  const std::string key = flat ? "matches_moyal" : "matches_truncated_order3";
  JobResult r{header("star", c)};
  r.report["order"] = N;
  r.report["max_wdeg"] = D;
  r.report["connection"] = io::to_json(conn.structure, conn.gamma);
  json pairs = json::array();
  for (const auto& p : job_pairs(c, n, 5)) {
    auto prod = se.star(p.f, p.g);
    auto ref = flat ? moyal_star_flat(conn.structure, p.f, p.g, N) : truncated_star3(tc, p.f, p.g);
    json coeffs = json::array();
    bool match = true;
    for (int k = 0; k <= N; ++k) {
      coeffs.push_back(io::to_json(prod.coefficient(k)));
      match = match && prod.coefficient(k) == ref.coefficient(k);
    }
    r.passed = r.passed && match;
    pairs.push_back({{"f", io::to_json(p.f)}, {"g", io::to_json(p.g)}, {"coefficients", coeffs}, {key, match}});
  }
  r.report["pairs"] = pairs;
  r.report[key] = r.passed;
  return r;
}

JobResult moment_check(Context& c) {
  JobResult r{header("moment-check", c)};
  json cases = json::array();
  auto record = [&](const SymplecticStructure& s, const SymTensor3& g, const SymTensor3& a, const T& f) {
    auto m = moment_map_identity_check(s, g, a, f);
    r.passed = r.passed && m.passed();
    cases.push_back({{"lhs", exact(m.lhs)}, {"rhs", exact(m.rhs)}, {"residual", exact(m.residual)}});
  };
  if (c.job.contains("A")) {
    auto conn = job_connection(c, false);
    const int n = conn.structure.dim();
    json a = c.job["A"];
    if (!a.is_object()) throw InputError("/A", "expected an object with \"gamma\"");
    a["m"] = conn.structure.m();
    auto dir = io::connection_from(a, "/A");
    record(conn.structure, conn.gamma, dir.gamma, io::trig_poly_from(io::member(c.job, "F", ""), n, "/F"));
  } else {
    const int m = c.get_int("m", 1), count = c.get_int("cases", 3);
    if (m < 1 || m > 2) throw InputError("/m", "random moment-map cases use m = 1 or 2");
    const int n = 2 * m;
    SymplecticStructure s(m);
    for (int i = 0; i < count; ++i) {
      auto g = random_symmetric3(c.rng, n, 1, 3, 1), a = random_symmetric3(c.rng, n, 1, m == 1 ? 2 : 3, m == 1 ? 2 : 1);
      record(s, g, a, random_trig_poly(c.rng, n, 1, m == 1 ? 3 : 2));
    }
  }
  r.report["cases"] = cases;
  r.report["residual"] = r.passed ? "0" : "nonzero";
  return r;
}

JobResult trace_check(Context& c) {
  auto conn = job_connection(c, true);
  const int N = c.order(3), D = wdeg_for(c, N);
  if (N > 3) throw InputError("/order", "the order-2 density is checked through nu^3");
  StarEvaluator se(fedosov_input(conn, D), N);
  auto rho = trace_density_order2(se);
  NuSeries<T> opposite(rho.coefficient(0), 2);
  opposite.add(2, -rho.coefficient(2));
  JobResult r{header("trace-check", c)};
  r.report["order"] = N;
  r.report["density_nu2"] = io::to_json(rho.coefficient(2));
  json pairs = json::array();
  bool opposite_fails = false;
  for (const auto& p : job_pairs(c, conn.structure.dim(), 5)) {
    json ok = json::array(), bad = json::array();
    for (const auto& v : commutator_trace(se, rho, p.f, p.g)) {
      ok.push_back(exact(v));
      r.passed = r.passed && sgn(v) == 0;
    }
    for (const auto& v : commutator_trace(se, opposite, p.f, p.g)) {
      bad.push_back(exact(v));
      opposite_fails = opposite_fails || sgn(v) != 0;
    }
    pairs.push_back({{"f", io::to_json(p.f)}, {"g", io::to_json(p.g)}, {"residuals", ok}, {"opposite_sign_residuals", bad}});
  }
  r.report["pairs"] = pairs;
  r.report["opposite_sign_fails"] = opposite_fails;
  return r;
}

JobResult close(Context& c) {
  auto conn = job_connection(c, true);
  const int N = c.order(3), D = wdeg_for(c, N);
  StarEvaluator se(fedosov_input(conn, D), N);
  ClosingEquivalence b(se.fedosov().connection());
  NuSeries<T> one(T::constant(conn.structure.dim(), Gaussian(1)), 2);
  JobResult r{header("close", c)};
  r.report["order"] = N;
  r.report["potential"] = io::to_json(b.potential());
  json pairs = json::array();
  for (const auto& p : job_pairs(c, conn.structure.dim(), 5)) {
    auto comm = b.conjugated_star(se, p.f, p.g) - b.conjugated_star(se, p.g, p.f);
    json closed = json::array(), open = json::array();
    for (int k = 0; k <= N; ++k) {
      T ck = comm.coefficient(k);
      Rational v = ck.is_zero() ? Rational(0) : volume_integral(ck, conn.structure);
      closed.push_back(exact(v));
      r.passed = r.passed && sgn(v) == 0;
    }
    for (const auto& v : commutator_trace(se, one, p.f, p.g)) open.push_back(exact(v));
    pairs.push_back({{"f", io::to_json(p.f)}, {"g", io::to_json(p.g)}, {"conjugated_residuals", closed},
                     {"unconjugated", open}});
  }
  r.report["pairs"] = pairs;
  return r;
}

JobResult kahler_check(Context& c) {
  const int m = c.get_int("m", 1), order = c.order(2);
  if (m < 1 || m > 3) throw InputError("/m", "m must be 1, 2 or 3");
  if (order < 0 || order > 4) throw InputError("/order", "epsilon order must be between 0 and 4");
  T phi = c.job.contains("phi") ? io::trig_poly_from(c.job["phi"], 2 * m, "/phi")
                                : random_trig_poly(c.rng, 2 * m, 1, c.get_int("modes", 2)).real_part();
  if (!phi.is_real()) throw InputError("/phi", "the potential must be real");
  KahlerJetTorus k(m, phi, order);
  auto check = lv_momentum_check(k);
  JobResult r{header("kahler-check", c)};
  r.passed = check.passed();
  json by_order = json::array();
  for (int e = 0; e <= order; ++e) by_order.push_back(io::to_json(check.residual[e]));
  r.report["m"] = m;
  r.report["order"] = order;
  r.report["phi"] = io::to_json(phi);
  r.report["residual_by_order"] = by_order;
  r.report["residual"] = r.passed ? "0" : "nonzero";
  return r;
}

JobResult futaki(Context& c) {
  std::vector<SphereProfile> profiles;
  if (c.job.contains("profile")) {
    profiles.push_back(io::profile_from(c.job["profile"], "/profile"));
  } else {
    const int count = c.get_int("count", 5), degree = c.o.degree ? *c.o.degree : c.get_int("degree", 2);
    if (count < 1 || degree < 0) throw InputError("/count", "count must be positive and degree nonnegative");
    for (int i = 0; i < count; ++i) profiles.push_back(random_sphere_profile(c.rng, degree));
  }
  constexpr double f_tol = 1e-8, fut_tol = 1e-6;
  JobResult r{header("futaki", c)};
  json out = json::array();
  for (const auto& p : profiles) {
    // m = 1: omega^m and omega^m / m! agree
    const double f = futaki_classical(p), fut = futaki_cg(p);
    json jf = decimal(f, f_tol), jfut = decimal(fut, fut_tol);
    r.passed = r.passed && jf["passed"].get<bool>() && jfut["passed"].get<bool>();
    out.push_back({{"profile", io::to_json(p)},
                   {"f", {{"omega_m", jf}, {"omega_m_over_m_factorial", jf}}},
                   {"fut", {{"omega_m", jfut}, {"omega_m_over_m_factorial", jfut}}},
                   {"momentum_l1", momentum_l1(p)},
                   {"momentum_coeffs", coefficients_json(sphere_momentum(p))}});
  }
  r.report["profiles"] = out;
  return r;
}

std::vector<int> int_list(const json& j, const std::string& where, std::vector<int> fallback) {
  if (j.is_null()) return fallback;
  if (!j.is_array() || j.empty()) throw InputError(where, "expected a nonempty integer array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(io::int_from(j[i], where + "/" + std::to_string(i)));
    if (out.back() < 1) throw InputError(where + "/" + std::to_string(i), "tensor powers must be positive");
  }
  return out;
}

JobResult bergman(Context& c) {
  const bool fs = !c.job.contains("profile") ||
                  (c.job["profile"].is_string() && c.job["profile"].get<std::string>() == "round");
  BundleMetricCP1 metric = fs ? BundleMetricCP1() : BundleMetricCP1(io::profile_from(c.job["profile"], "/profile"));
  const auto rho_k = int_list(c.job.value("rho_k_list", json()), "/rho_k_list", {1, 2, 4, 8, 16, 32});
  const auto tyz_k = int_list(c.job.value("tyz_k_list", json()), "/tyz_k_list", {16, 24, 32, 40, 48, 56, 64});
  const auto bt_k = int_list(c.job.value("k_list", json()), "/k_list", {8, 16, 32, 64});
  if (tyz_k.size() < 4) throw InputError("/tyz_k_list", "the expansion fit needs at least 4 tensor powers");
  if (bt_k.size() < 3) throw InputError("/k_list", "decay slopes need at least 3 tensor powers");
  std::vector<double> hs{-0.8, -0.4, 0.0, 0.4, 0.8};
  if (c.job.contains("samples")) {
    hs.clear();
    const json& s = c.job["samples"];
    if (!s.is_array()) throw InputError("/samples", "expected an array of h values");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_number() || !(std::abs(s[i].get<double>()) < 1))
        throw InputError("/samples/" + std::to_string(i), "h must be a number in (-1, 1)");
      hs.push_back(s[i].get<double>());
    }
  }
  ModeFunction F = ModeFunction::invariant(Polynomial::variable(1, 0));
  ModeFunction G = ModeFunction::mode(1, Polynomial::constant(1, Rational(1, 2))) +
                   ModeFunction::mode(-1, Polynomial::constant(1, Rational(1, 2)));
  if (c.job.contains("functions")) {
    const json& f = c.job["functions"];
    F = io::mode_function_from(io::member(f, "F", "/functions"), "/functions/F");
    G = io::mode_function_from(io::member(f, "G", "/functions"), "/functions/G");
  }

  JobResult r{header("bergman", c)};
  auto take = [&](json j) {
    r.passed = r.passed && j["passed"].get<bool>();
    return j;
  };
  json rho = json::array();
  for (int k : rho_k) {
    BergmanData b(metric, k);
    json samples = json::array();
    double dev = 0;
    for (double h : hs) {
      double v = b.bergman((1 + h) / 2);
      samples.push_back({{"h", h}, {"rho", v}});
      dev = std::max(dev, std::abs(v - (k + 1)));
    }
    json e{{"k", k},
           {"samples", samples},
           {"sum_rule", take(decimal(bergman_trace_integral(b, ModeFunction::constant(Rational(1))) - (k + 1), 1e-9))}};
    if (fs) e["constancy"] = take(decimal(dev, 1e-9));
    rho.push_back(e);
  }
  r.report["rho"] = rho;

  auto tyz = tyz_extract(metric, tyz_k, hs);
  json ts = json::array();
  for (const auto& s : tyz.samples)
    ts.push_back({{"h", s.h},
                  {"a0", s.a0},
                  {"a1", s.a1},
                  {"scalar_curvature", s.scalar_curvature},
                  {"a0_residual", take(decimal(s.a0_residual, 1e-3))},
                  {"a1_residual", take(decimal(s.a1_residual, 0.05 * std::abs(tyz.calibration * s.scalar_curvature)))}});
  r.report["tyz"] = {{"k_list", tyz_k}, {"calibration", tyz.calibration}, {"samples", ts}};

  auto bt = bt_asymptotic_checks(metric, F, G, bt_k);
  r.report["bt"] = {{"k_list", bt.ks},
                    {"product_defect", bt.product_defect},
                    {"commutator_defect", bt.commutator_defect},
                    {"product_slope", take(decimal(bt.product_slope + 1, 0.2))},
                    {"commutator_slope", take(decimal(bt.commutator_slope + 1, 0.3))},
                    {"trace_leading", bt.trace_leading},
                    {"integral", bt.integral},
                    {"trace_leading_residual", take(decimal(bt.trace_leading - bt.integral, 1e-6))}};

  // column-major data duplicated as row tables for plotting
  json tyz_rows = json::array(), bt_rows = json::array();
  for (const auto& s : tyz.samples)
    tyz_rows.push_back({s.h, s.a0, s.a1, 4 * M_PI * s.a1 / tyz.calibration, s.scalar_curvature});
  for (std::size_t i = 0; i < bt.ks.size(); ++i)
    bt_rows.push_back({bt.ks[i], bt.product_defect[i], bt.commutator_defect[i]});
  r.report["tables"] = {
      {"tyz", {{"columns", {"h", "a0", "a1", "calibrated_s", "scalar_curvature"}}, {"rows", tyz_rows}}},
      {"bt", {{"columns", {"k", "product_defect", "commutator_defect"}}, {"rows", bt_rows}}}};
  return r;
}

JobResult dfweight(Context& c) {
  auto data = io::hilbert_data_from(c.job, "");
  std::optional<VolumeForm> form;
  Rational f_value, volume;
  if (c.job.contains("futaki")) {
    const json& fj = c.job["futaki"];
    if (!fj.contains("normalization"))
      throw InputError("/futaki", "missing \"normalization\" (\"omega^m\" or \"omega^m/m!\") for the Futaki value");
    const std::string norm = fj["normalization"].is_string() ? fj["normalization"].get<std::string>() : "";
    if (norm == "omega^m")
      form = VolumeForm::OmegaPower;
    else if (norm == "omega^m/m!")
      form = VolumeForm::OmegaPowerFactorial;
    else
      throw InputError("/futaki/normalization", "expected \"omega^m\" or \"omega^m/m!\"");
    f_value = io::rational_from(io::member(fj, "f", "/futaki"), "/futaki/f");
    volume = io::rational_from(io::member(fj, "volume", "/futaki"), "/futaki/volume");
    if (sgn(volume) <= 0) throw InputError("/futaki/volume", "volume must be positive");
  }
  JobResult r{header("dfweight", c)};
  r.report["m"] = data.m;
  try {
    auto e = expand_F(data);
    auto inv = expand_F(invert_action(data));
    r.report["consistent"] = true;
    r.report["held_out"] = e.held_out;
    for (auto [k, v] : {std::pair{"a0", &e.a0}, {"a1", &e.a1}, {"b0", &e.b0}, {"b1", &e.b1}, {"F0", &e.F0},
                        {"F1", &e.F1}, {"F2", &e.F2}})
      r.report[k] = exact(*v);
    r.report["inverse_action"] = {{"F0", exact(inv.F0)}, {"F1", exact(inv.F1)}, {"F2", exact(inv.F2)}};
    bool anti = inv.F0 == -e.F0 && inv.F1 == -e.F1;
    r.report["inversion_antisymmetric"] = anti;
    r.passed = anti;
    if (form) {
      Rational res = futaki_consistency(e.F1, f_value, *form, data.m, volume);
      r.report["futaki_residual"] = exact(res);
      r.passed = r.passed && sgn(res) == 0;
    }
  } catch (const DfWeightError& err) {
    r.report["consistent"] = false;
    r.report["error"] = err.what();
    r.passed = false;
  }
  return r;
}

}  // namespace

JobResult run_job(const std::string& sub, const json& job, const Overrides& o) {
  if (!job.is_object()) throw InputError("/", "a job must be a JSON object");
  Context c(job, o);
  JobResult r;
  if (sub == "star")
    r = star(c);
  else if (sub == "moment-check")
    r = moment_check(c);
  else if (sub == "trace-check")
    r = trace_check(c);
  else if (sub == "close")
    r = close(c);
  else if (sub == "kahler-check")
    r = kahler_check(c);
  else if (sub == "futaki")
    r = futaki(c);
  else if (sub == "bergman")
    r = bergman(c);
  else if (sub == "dfweight")
    r = dfweight(c);
  else
    throw InputError("subcommand", "unknown subcommand " + sub);
  r.report["passed"] = r.passed;
  return r;
}

}  // namespace dqkit::cli

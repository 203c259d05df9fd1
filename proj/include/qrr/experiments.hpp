#pragma once

// Experiment orchestration and machine-readable reporting for the CLI:
// dataset ingestion/generation, cross-validation runs, fidelity and channel
// sweeps, bound reports.  Reports are schema-versioned JSON documents plus
// flat CSV side tables; identical config + seed produces identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qrr/bounds.hpp"
#include "qrr/constants.hpp"
#include "qrr/hamsim.hpp"
#include "qrr/io.hpp"
#include "qrr/pipeline.hpp"
#include "qrr/ridge.hpp"
#include "qrr/synth.hpp"

namespace qrr::exp {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "qrr-report/1";

struct ExperimentConfig {
  // dataset source: a CSV path, or the synthetic generator when empty
  std::string csv_path;
  std::string y_path;
  synth::GenSpec gen;

  int K = 0;                      // 0 -> bounds recommendation
  double alpha_min = 0.0;         // 0 -> default window
  double alpha_max = 0.0;
  int L = 5;
  double alpha_fit = 0.0;         // 0 -> geometric middle of the window
  int s = 8;
  double eps = 0.05;
  std::string mode = "exact";     // exact | noise
  std::uint64_t seed = 1;
  std::string out_path;
  std::size_t dim_budget = kDimBudget;

  // channel sweep knobs
  int channel_q = 2;
  int channel_n = 2;
  double channel_t = 1.0;
  double channel_eps = 0.05;
};

inline void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"csv_path", c.csv_path},
           {"y_path", c.y_path},
           {"gen",
            {{"n", c.gen.n},
             {"m", c.gen.m},
             {"spectrum", c.gen.spectrum},
             {"beta", c.gen.beta},
             {"noise_level", c.gen.noise_level},
             {"y_norm", c.gen.y_norm},
             {"seed", c.gen.seed},
             {"enforce_convention", c.gen.enforce_convention}}},
           {"K", c.K},
           {"alpha_min", c.alpha_min},
           {"alpha_max", c.alpha_max},
           {"L", c.L},
           {"alpha_fit", c.alpha_fit},
           {"s", c.s},
           {"eps", c.eps},
           {"mode", c.mode},
           {"seed", c.seed},
           // out_path is delivery metadata, deliberately not echoed: identical
           // experiments must produce identical report bytes
           {"dim_budget", c.dim_budget},
           {"channel_q", c.channel_q},
           {"channel_n", c.channel_n},
           {"channel_t", c.channel_t},
           {"channel_eps", c.channel_eps}};
}

inline void from_json(const json& j, ExperimentConfig& c) {
  c.csv_path = j.value("csv_path", std::string());
  c.y_path = j.value("y_path", std::string());
  if (j.contains("gen")) {
    const json& g = j.at("gen");
    c.gen.n = g.value("n", 4);
    c.gen.m = g.value("m", 3);
    c.gen.spectrum = g.value("spectrum", std::vector<double>());
    c.gen.beta = g.value("beta", std::vector<double>());
    c.gen.noise_level = g.value("noise_level", 0.0);
    c.gen.y_norm = g.value("y_norm", 1.0);
    c.gen.seed = g.value("seed", std::uint64_t{1});
    c.gen.enforce_convention = g.value("enforce_convention", true);
  }
  c.K = j.value("K", 0);
  c.alpha_min = j.value("alpha_min", 0.0);
  c.alpha_max = j.value("alpha_max", 0.0);
  c.L = j.value("L", 5);
  c.alpha_fit = j.value("alpha_fit", 0.0);
  c.s = j.value("s", 8);
  c.eps = j.value("eps", 0.05);
  c.mode = j.value("mode", std::string("exact"));
  c.seed = j.value("seed", std::uint64_t{1});
  c.out_path = j.value("out_path", std::string());
  c.dim_budget = j.value("dim_budget", kDimBudget);
  c.channel_q = j.value("channel_q", 2);
  c.channel_n = j.value("channel_n", 2);
  c.channel_t = j.value("channel_t", 1.0);
  c.channel_eps = j.value("channel_eps", 0.05);
}

inline ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error("config '" + path + "': " + e.what());
  }
  return j.get<ExperimentConfig>();
}

struct RunReport {
  json doc;
  // (suffix, csv body); emitted next to the report as <stem>.<suffix>.csv
  std::vector<std::pair<std::string, std::string>> tables;
};

namespace detail {

inline void check_finite(const json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw contract_error("report contains a non-finite value at " + where);
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) check_finite(*it, where + "/" + it.key());
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i)
      check_finite(j[i], where + "/" + std::to_string(i));
}

inline void atomic_write(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw input_error("cannot write '" + tmp + "'");
    out << body;
    if (!out) throw input_error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string stem_of(const std::string& path) {
  const std::filesystem::path p(path);
  return (p.parent_path() / p.stem()).string();
}

}  // namespace detail

/// Writes the JSON report and its CSV side tables (write-temp-then-rename).
inline void emit_report(const RunReport& report, const std::string& path) {
  detail::check_finite(report.doc, "");
  detail::atomic_write(path, report.doc.dump(2) + "\n");
  for (const auto& [suffix, body] : report.tables)
    detail::atomic_write(detail::stem_of(path) + "." + suffix + ".csv", body);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw input_error("fit_line: need >= 2 points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  LineFit f;
  const double denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0;
  const double mean_y = sy / n;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = f.slope * xs[i] + f.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

// ---------------------------------------------------------------------------
// resolution helpers
// ---------------------------------------------------------------------------

inline ridge::Dataset dataset_from_config(const ExperimentConfig& cfg) {
  if (!cfg.csv_path.empty()) return io::ingest_csv(cfg.csv_path, cfg.y_path);
  synth::GenSpec g = cfg.gen;
  if (g.spectrum.empty()) {
    // default planted spectrum: descending from N+M to (N+M)/4
    const double top = static_cast<double>(g.n + g.m);
    const int r = std::min(g.n, g.m);
    for (int j = 0; j < r; ++j)
      g.spectrum.push_back(top * (1.0 - 0.75 * static_cast<double>(j) / std::max(1, r - 1)));
  }
  return synth::generate(g);
}

inline int resolve_k(const ExperimentConfig& cfg, const ridge::Dataset& d) {
  if (cfg.K > 0) return cfg.K;
  return bounds::k_min_recommendation(d);
}

inline std::vector<double> resolve_grid(const ExperimentConfig& cfg, const ridge::Dataset& d) {
  double lo = cfg.alpha_min, hi = cfg.alpha_max;
  if (lo <= 0.0 || hi <= 0.0) {
    const auto range = ridge::default_alpha_range(d);
    lo = range.first;
    hi = range.second;
  }
  if (cfg.L == 1)
    std::cerr << "warning: single-point alpha grid; using alpha_min only\n";
  return ridge::alpha_grid(lo, hi, cfg.L);
}

inline double resolve_alpha_fit(const ExperimentConfig& cfg, const ridge::Dataset& d) {
  if (cfg.alpha_fit > 0.0) return cfg.alpha_fit;
  const auto range = ridge::default_alpha_range(d);
  return std::sqrt(range.first * range.second);
}

inline json counters_json(const OracleCounters& c) {
  return json{{"o_x", c.o_x}, {"o_y", c.o_y}, {"o_x_inv", c.o_x_inv},
              {"ham_steps", c.ham_steps}, {"total", c.total()}};
}

inline json bound_json(const bounds::BoundReport& r) {
  return json{{"name", r.name},
              {"analytic", r.analytic_value},
              {"empirical", r.empirical_value},
              {"satisfied", r.satisfied},
              {"margin", r.margin},
              {"applicable", r.applicable}};
}

inline json dataset_json(const ridge::Dataset& d) {
  return json{{"n", d.n()}, {"m", d.m()}, {"kappa", d.kappa},
              {"x_max", d.x_max}, {"y_max", d.y_max}, {"rank", d.rank}};
}

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

inline RunReport run_cv_experiment(const ExperimentConfig& cfg) {
  const ridge::Dataset d = dataset_from_config(cfg);
  const int k = resolve_k(cfg, d);
  const ridge::FoldPartition part = ridge::partition_folds(static_cast<int>(d.n()), k);
  const std::vector<double> grid = resolve_grid(cfg, d);

  alg::Alg2Config cfg2;
  cfg2.K = k;
  cfg2.alphas = grid;
  cfg2.s = cfg.s;
  cfg2.noise = cfg.mode == "noise";
  cfg2.eps = cfg.eps;
  cfg2.seed = cfg.seed;
  const alg::CvEstimate est = alg::select_alpha_quantum(d, part, cfg2);

  RunReport rep;
  rep.doc["schema"] = kReportSchema;
  rep.doc["command"] = "cv";
  rep.doc["config"] = cfg;
  rep.doc["resolved"] = json{{"K", k},
                             {"alpha_grid", grid},
                             {"mode", cfg.mode},
                             {"eps", cfg.eps},
                             {"seed", cfg.seed},
                             {"s", cfg.s},
                             {"fold_kappa", est.fold_kappa},
                             {"k_recommended", est.k_recommended},
                             {"k_below_recommendation", est.k_below_recommendation}};
  rep.doc["dataset"] = dataset_json(d);

  json rows = json::array();
  std::string csv =
      "alpha,c2,mode,p_w,p1,p2,s3_sign,e1_est,e2_est,s3_est,e_est,"
      "e1_exact,e2_exact,s3_exact,e_exact,reps_pw,reps_p1,reps_p2,reps_norm\n";
  for (const auto& r : est.rows) {
    rows.push_back(json{{"alpha", r.alpha},
                        {"c2", r.c2},
                        {"mode", cfg.mode},
                        {"p_w", r.p_w},
                        {"p1", r.p1},
                        {"p2", r.p2},
                        {"s3_sign", r.s3_sign},
                        {"sign_heuristic_agrees", r.sign_heuristic_agrees},
                        {"e1_est", r.e1_est},
                        {"e2_est", r.e2_est},
                        {"s3_est", r.s3_est},
                        {"e_est", r.e_est},
                        {"e1_exact", r.e1_exact},
                        {"e2_exact", r.e2_exact},
                        {"s3_exact", r.s3_exact},
                        {"e_exact", r.e_exact},
                        {"reps_pw", r.reps_pw},
                        {"reps_p1", r.reps_p1},
                        {"reps_p2", r.reps_p2},
                        {"reps_norm", r.reps_norm}});
    csv += io::format_double(r.alpha) + "," + io::format_double(r.c2) + "," + cfg.mode +
           "," + io::format_double(r.p_w) + "," + io::format_double(r.p1) + "," +
           io::format_double(r.p2) + "," + std::to_string(r.s3_sign) + "," +
           io::format_double(r.e1_est) + "," + io::format_double(r.e2_est) + "," +
           io::format_double(r.s3_est) + "," + io::format_double(r.e_est) + "," +
           io::format_double(r.e1_exact) + "," + io::format_double(r.e2_exact) + "," +
           io::format_double(r.s3_exact) + "," + io::format_double(r.e_exact) + "," +
           std::to_string(r.reps_pw) + "," + std::to_string(r.reps_p1) + "," +
           std::to_string(r.reps_p2) + "," + std::to_string(r.reps_norm) + "\n";
  }
  rep.doc["rows"] = rows;
  rep.doc["alpha_hat_quantum"] = est.alpha_hat_quantum;
  rep.doc["alpha_hat_classical"] = est.alpha_hat_classical;
  rep.doc["argmin_quantum"] = est.argmin_quantum;
  rep.doc["argmin_classical"] = est.argmin_classical;
  rep.doc["alpha_hat_agreement"] = est.argmin_quantum == est.argmin_classical;

  json bound_list = json::array();
  bound_list.push_back(bound_json(bounds::pw_lower_bound(d, part, grid.front(), 0.0)));
  {
    const auto& best = est.rows[est.argmin_quantum];
    const double pw_exact = alg::pw_closed_form(d, part, best.alpha, best.c2);
    bound_list.push_back(bound_json(bounds::pw_scale_report(d, part, pw_exact)));
  }
  bound_list.push_back(bound_json(bounds::rank_kappa_bound(d)));
  bool weyl_all = true;
  for (int l = 0; l < part.K; ++l)
    weyl_all = weyl_all && bounds::weyl_interval(d, part, l).report.satisfied;
  bound_list.push_back(json{{"name", "weyl_all_folds"}, {"satisfied", weyl_all}});
  rep.doc["bounds"] = bound_list;
  rep.doc["counters"] = counters_json(est.counters);
  rep.tables.emplace_back("rows", csv);
  return rep;
}

inline RunReport run_fit_experiment(const ExperimentConfig& cfg) {
  const ridge::Dataset d = dataset_from_config(cfg);
  alg::Alg1Config cfg1;
  cfg1.alpha = resolve_alpha_fit(cfg, d);
  cfg1.s = cfg.s;
  cfg1.noise = cfg.mode == "noise";
  cfg1.eps = cfg.eps;
  cfg1.seed = cfg.seed;
  const alg::Alg1Output out = alg::algorithm1_run(d, cfg1);
  const ridge::RidgeSolution classical = ridge::solve_ridge_svd(d, cfg1.alpha);

  RunReport rep;
  rep.doc["schema"] = kReportSchema;
  rep.doc["command"] = "fit";
  rep.doc["config"] = cfg;
  rep.doc["resolved"] = json{{"alpha", cfg1.alpha},
                             {"s", cfg.s},
                             {"c1", out.resolved.c1},
                             {"t0", out.resolved.t0},
                             {"eps_p", out.resolved.eps_p},
                             {"eps_norm", out.resolved.eps_norm},
                             {"alpha_in_window", out.resolved.alpha_in_window},
                             {"mode", cfg.mode},
                             {"seed", cfg.seed}};
  rep.doc["dataset"] = dataset_json(d);
  rep.doc["result"] = json{{"success_prob", out.success_prob},
                           {"p_prep", out.p_prep},
                           {"p_filter", out.p_filter},
                           {"p_flag", out.p_flag},
                           {"p_phase0", out.p_phase0},
                           {"p_vpart", out.p_vpart},
                           {"p_est", out.p_est},
                           {"w_norm_sq_est", out.w_norm_sq_est},
                           {"w_norm_sq_classical", classical.w.squaredNorm()},
                           {"fidelity_vs_classical", out.fidelity_vs_classical},
                           {"amplify_reps", qcore::amplitude_amplify_count(out.success_prob)},
                           {"estimate_reps", out.reps_p}};
  rep.doc["counters"] = counters_json(out.counters);
  return rep;
}

inline RunReport run_fidelity_sweep(const ExperimentConfig& cfg,
                                    const std::vector<int>& s_list) {
  if (s_list.empty()) throw input_error("run_fidelity_sweep: empty s list");
  const ridge::Dataset d = dataset_from_config(cfg);
  alg::Alg1Config cfg1;
  cfg1.alpha = resolve_alpha_fit(cfg, d);
  cfg1.noise = cfg.mode == "noise";
  cfg1.eps = cfg.eps;
  cfg1.seed = cfg.seed;

  // one scale time for the whole sweep (resolved at the coarsest s) so only
  // the register precision varies and s-bit-exact spectra stay exact at
  // every finer s
  const auto svd = numkit::svd(d.X.cast<numkit::Complex>());
  if (svd.rank == 0) throw degeneracy_error("run_fidelity_sweep: zero design matrix");
  const int s_min = *std::min_element(s_list.begin(), s_list.end());
  cfg1.t0 = alg::pe_scale_time(svd.singular_values(0) / static_cast<double>(d.dim_sum()),
                               s_min);

  RunReport rep;
  rep.doc["schema"] = kReportSchema;
  rep.doc["command"] = "sweep-fidelity";
  rep.doc["config"] = cfg;
  rep.doc["resolved"] = json{{"alpha", cfg1.alpha}, {"s_list", s_list}, {"t0", *cfg1.t0},
                             {"mode", cfg.mode}, {"seed", cfg.seed}};
  rep.doc["dataset"] = dataset_json(d);
  json rows = json::array();
  std::string csv = "s,fidelity,success_prob,ham_steps,o_x,o_y,total_oracle\n";
  for (int s : s_list) {
    cfg1.s = s;
    const alg::Alg1Output out = alg::algorithm1_run(d, cfg1);
    rows.push_back(json{{"s", s},
                        {"fidelity", out.fidelity_vs_classical},
                        {"success_prob", out.success_prob},
                        {"counters", counters_json(out.counters)}});
    csv += std::to_string(s) + "," + io::format_double(out.fidelity_vs_classical) + "," +
           io::format_double(out.success_prob) + "," + std::to_string(out.counters.ham_steps) +
           "," + std::to_string(out.counters.o_x) + "," + std::to_string(out.counters.o_y) +
           "," + std::to_string(out.counters.total()) + "\n";
  }
  rep.doc["rows"] = rows;
  rep.tables.emplace_back("rows", csv);
  return rep;
}

inline RunReport run_channel_sweep(const ExperimentConfig& cfg,
                                   const std::vector<double>& delta_t_list) {
  const std::size_t q_count = static_cast<std::size_t>(cfg.channel_q);
  const std::size_t n_dim = static_cast<std::size_t>(cfg.channel_n);
  if (q_count * n_dim * n_dim * n_dim > cfg.dim_budget)
    throw resource_error("run_channel_sweep: Q*N^3 exceeds dimension budget");

  Rng rng(cfg.seed);
  std::vector<numkit::CMatrix> a_list;
  double m_a = 0.0;
  for (std::size_t q = 0; q < q_count; ++q) {
    numkit::CMatrix a(n_dim, n_dim);
    for (std::size_t i = 0; i < n_dim; ++i)
      for (std::size_t j = 0; j < n_dim; ++j)
        a(i, j) = numkit::Complex(rng.symmetric(1.0), rng.symmetric(1.0));
    a = (a + a.adjoint()).eval() / 2.0;
    m_a = std::max(m_a, numkit::max_abs(a));
    a_list.push_back(std::move(a));
  }
  Rng state_rng(Rng::substream(cfg.seed, 11));
  const auto states = hamsim::default_channel_test_states(q_count, n_dim, state_rng);

  RunReport rep;
  rep.doc["schema"] = kReportSchema;
  rep.doc["command"] = "sweep-channel";
  rep.doc["config"] = cfg;
  rep.doc["resolved"] = json{{"Q", cfg.channel_q}, {"N", cfg.channel_n},
                             {"t", cfg.channel_t}, {"m_a", m_a},
                             {"delta_t_list", delta_t_list}, {"seed", cfg.seed},
                             {"step_safety", kStepSafety}};
  json rows = json::array();
  std::string csv = "delta_t,n,max_trace_distance\n";
  std::vector<double> log_dt, log_err;
  for (double dt : delta_t_list) {
    const std::int64_t n = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::llround(cfg.channel_t / dt)));
    const auto conf = hamsim::channel_config(cfg.channel_t, n);
    const auto err = hamsim::channel_error(a_list, conf, states);
    rows.push_back(json{{"delta_t", conf.delta_t}, {"n", n},
                        {"max_trace_distance", err.max_trace_distance}});
    csv += io::format_double(conf.delta_t) + "," + std::to_string(n) + "," +
           io::format_double(err.max_trace_distance) + "\n";
    if (err.max_trace_distance > 0.0) {
      log_dt.push_back(std::log(conf.delta_t));
      log_err.push_back(std::log(err.max_trace_distance));
    }
  }
  rep.doc["rows"] = rows;
  if (log_dt.size() >= 2) {
    const LineFit fit = fit_line(log_dt, log_err);
    rep.doc["loglog_slope"] = fit.slope;
    rep.doc["loglog_r_squared"] = fit.r_squared;
  }
  // step_count check at the configured epsilon
  {
    const std::int64_t n = hamsim::step_count(m_a, cfg.channel_t, cfg.channel_eps);
    const auto err =
        hamsim::channel_error(a_list, hamsim::channel_config(cfg.channel_t, n), states);
    rep.doc["step_count_check"] = json{{"epsilon", cfg.channel_eps},
                                       {"n", n},
                                       {"max_trace_distance", err.max_trace_distance},
                                       {"within_epsilon",
                                        err.max_trace_distance <= cfg.channel_eps}};
  }
  rep.tables.emplace_back("rows", csv);
  return rep;
}

inline RunReport run_bounds_report(const ExperimentConfig& cfg) {
  const ridge::Dataset d = dataset_from_config(cfg);
  const int k = resolve_k(cfg, d);
  const ridge::FoldPartition part = ridge::partition_folds(static_cast<int>(d.n()), k);
  const double alpha = resolve_alpha_fit(cfg, d);
  const double kp = bounds::fold_kappa(d, part);
  const double c2 = alg::resolve_c2(d, part, alpha, std::nullopt);

  RunReport rep;
  rep.doc["schema"] = kReportSchema;
  rep.doc["command"] = "bounds";
  rep.doc["config"] = cfg;
  rep.doc["resolved"] = json{{"K", k}, {"alpha", alpha}, {"fold_kappa", kp},
                             {"c2", c2}, {"seed", cfg.seed}};
  rep.doc["dataset"] = dataset_json(d);

  json list = json::array();
  const double dim_sum = static_cast<double>(d.dim_sum());
  list.push_back(json{{"name", "h_max"}, {"value", bounds::h_max(dim_sum, d.kappa, alpha)}});
  list.push_back(json{{"name", "g_max"}, {"value", bounds::g_max(dim_sum, d.kappa, alpha)}});
  list.push_back(json{{"name", "h_ratio_bound"}, {"value", bounds::h_ratio_bound(d.kappa)}});
  for (int l = 0; l < part.K; ++l)
    list.push_back(bound_json(bounds::weyl_interval(d, part, l).report));
  list.push_back(json{{"name", "k_min_recommendation"},
                      {"value", bounds::k_min_recommendation(d)}});
  list.push_back(bound_json(bounds::pw_lower_bound(d, part, alpha, c2)));
  list.push_back(bound_json(
      bounds::pw_scale_report(d, part, alg::pw_closed_form(d, part, alpha, c2))));
  const auto gf = bounds::p1_p2_goodfit_bounds(d, part, alpha);
  list.push_back(bound_json(gf.w_norm));
  list.push_back(bound_json(gf.p1));
  list.push_back(bound_json(gf.p2));
  list.push_back(bound_json(bounds::rank_kappa_bound(d)));
  rep.doc["bounds"] = list;

  std::string csv = "name,analytic,empirical,satisfied,applicable\n";
  for (const auto& b : list)
    if (b.contains("analytic"))
      csv += b["name"].get<std::string>() + "," + io::format_double(b["analytic"]) + "," +
             io::format_double(b["empirical"]) + "," +
             (b["satisfied"].get<bool>() ? "1" : "0") + "," +
             (b["applicable"].get<bool>() ? "1" : "0") + "\n";
  rep.tables.emplace_back("bounds", csv);
  return rep;
}

}  // namespace qrr::exp

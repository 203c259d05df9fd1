// qrr: desk-scale quantum ridge regression experiment runner.
//
// Subcommands: cv, fit, sweep-fidelity, sweep-channel, bounds, gen.
// Exit codes: 0 success, 2 input error, 3 contract/degeneracy error,
// 4 resource budget exceeded.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrr/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::string y_path;
  std::string mode;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "JSON experiment config");
  cmd->add_option("--out", args->out_path, "report output path");
  cmd->add_option("--data", args->csv_path, "CSV dataset (last column is y)");
  cmd->add_option("--y", args->y_path, "separate y file (one value per line)");
  cmd->add_option("--mode", args->mode, "exact|noise")
      ->check(CLI::IsMember({"exact", "noise"}));
  cmd->add_flag_callback("--exact", [args] { args->mode = "exact"; });
  auto* seed_opt = cmd->add_option("--seed", args->seed, "RNG seed");
  seed_opt->each([args](const std::string&) { args->seed_set = true; });
}

qrr::exp::ExperimentConfig resolve_config(const CommonArgs& args) {
  qrr::exp::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = qrr::exp::config_from_file(args.config_path);
  if (!args.csv_path.empty()) cfg.csv_path = args.csv_path;
  if (!args.y_path.empty()) cfg.y_path = args.y_path;
  if (!args.mode.empty()) cfg.mode = args.mode;
  if (args.seed_set) {
    cfg.seed = args.seed;
    cfg.gen.seed = args.seed;
  }
  if (!args.out_path.empty()) cfg.out_path = args.out_path;
  return cfg;
}

void deliver(const qrr::exp::RunReport& report, const std::string& out_path,
             double wall_seconds) {
  if (out_path.empty()) {
    std::cout << report.doc.dump(2) << "\n";
  } else {
    qrr::exp::emit_report(report, out_path);
    std::cout << "report written to " << out_path << "\n";
  }
  // timings stay off the deterministic report file
  std::cerr << "wall time: " << wall_seconds << " s\n";
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw qrr::input_error("cannot parse list entry '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale quantum ridge regression laboratory"};
  app.require_subcommand(1);

  CommonArgs cv_args, fit_args, fid_args, chan_args, bounds_args, gen_args;

  auto* cv = app.add_subcommand("cv", "quantum K-fold cross-validation over an alpha grid");
  add_common(cv, &cv_args);
  int cv_k = 0, cv_l = 0, cv_s = 0;
  double cv_amin = 0, cv_amax = 0, cv_eps = 0;
  cv->add_option("--k", cv_k, "fold count (0 = recommendation)");
  cv->add_option("--grid-size", cv_l, "alpha grid size L");
  cv->add_option("--alpha-min", cv_amin, "grid lower end");
  cv->add_option("--alpha-max", cv_amax, "grid upper end");
  cv->add_option("--s", cv_s, "phase-register bits");
  cv->add_option("--eps", cv_eps, "relative-error budget (noise mode)");

  auto* fit = app.add_subcommand("fit", "run algorithm 1 at a fixed alpha");
  add_common(fit, &fit_args);
  double fit_alpha = 0, fit_eps = 0;
  int fit_s = 0;
  fit->add_option("--alpha", fit_alpha, "regularization strength");
  fit->add_option("--s", fit_s, "phase-register bits");
  fit->add_option("--eps", fit_eps, "relative-error budget (noise mode)");

  auto* fid = app.add_subcommand("sweep-fidelity", "fidelity of |phi_w> vs phase bits s");
  add_common(fid, &fid_args);
  std::string fid_slist = "4,6,8,10";
  double fid_alpha = 0;
  fid->add_option("--s-list", fid_slist, "comma-separated s values");
  fid->add_option("--alpha", fid_alpha, "regularization strength");

  auto* chan = app.add_subcommand("sweep-channel", "parallel-simulation channel error vs dt");
  add_common(chan, &chan_args);
  std::string chan_dts = "0.2,0.1,0.05,0.025,0.0125";
  int chan_q = 0, chan_n = 0;
  double chan_t = 0, chan_eps = 0;
  chan->add_option("--delta-t-list", chan_dts, "comma-separated step sizes");
  chan->add_option("--q", chan_q, "number of conditioned Hamiltonians");
  chan->add_option("--n", chan_n, "Hamiltonian dimension");
  chan->add_option("--t", chan_t, "total evolution time");
  chan->add_option("--eps", chan_eps, "target error for the step_count check");

  auto* bnd = app.add_subcommand("bounds", "evaluate the analytic bound suite");
  add_common(bnd, &bounds_args);

  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
  add_common(gen, &gen_args);
  int gen_n = 0, gen_m = 0;
  std::string gen_spectrum, gen_beta;
  double gen_noise = -1.0;
  gen->add_option("--n", gen_n, "rows");
  gen->add_option("--m", gen_m, "features");
  gen->add_option("--spectrum", gen_spectrum, "comma-separated singular values");
  gen->add_option("--beta", gen_beta, "comma-separated singular-direction weights");
  gen->add_option("--noise", gen_noise, "relative noise level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    if (cv->parsed()) {
      auto cfg = resolve_config(cv_args);
      if (cv_k > 0) cfg.K = cv_k;
      if (cv_l > 0) cfg.L = cv_l;
      if (cv_amin > 0) cfg.alpha_min = cv_amin;
      if (cv_amax > 0) cfg.alpha_max = cv_amax;
      if (cv_s > 0) cfg.s = cv_s;
      if (cv_eps > 0) cfg.eps = cv_eps;
      deliver(qrr::exp::run_cv_experiment(cfg), cfg.out_path, elapsed());
    } else if (fit->parsed()) {
      auto cfg = resolve_config(fit_args);
      if (fit_alpha > 0) cfg.alpha_fit = fit_alpha;
      if (fit_s > 0) cfg.s = fit_s;
      if (fit_eps > 0) cfg.eps = fit_eps;
      deliver(qrr::exp::run_fit_experiment(cfg), cfg.out_path, elapsed());
    } else if (fid->parsed()) {
      auto cfg = resolve_config(fid_args);
      if (fid_alpha > 0) cfg.alpha_fit = fid_alpha;
      std::vector<int> s_list;
      for (double v : parse_double_list(fid_slist)) s_list.push_back(static_cast<int>(v));
      deliver(qrr::exp::run_fidelity_sweep(cfg, s_list), cfg.out_path, elapsed());
    } else if (chan->parsed()) {
      auto cfg = resolve_config(chan_args);
      if (chan_q > 0) cfg.channel_q = chan_q;
      if (chan_n > 0) cfg.channel_n = chan_n;
      if (chan_t > 0) cfg.channel_t = chan_t;
      if (chan_eps > 0) cfg.channel_eps = chan_eps;
      deliver(qrr::exp::run_channel_sweep(cfg, parse_double_list(chan_dts)), cfg.out_path,
              elapsed());
    } else if (bnd->parsed()) {
      auto cfg = resolve_config(bounds_args);
      deliver(qrr::exp::run_bounds_report(cfg), cfg.out_path, elapsed());
    } else if (gen->parsed()) {
      auto cfg = resolve_config(gen_args);
      if (gen_n > 0) cfg.gen.n = gen_n;
      if (gen_m > 0) cfg.gen.m = gen_m;
      if (!gen_spectrum.empty()) cfg.gen.spectrum = parse_double_list(gen_spectrum);
      if (!gen_beta.empty()) cfg.gen.beta = parse_double_list(gen_beta);
      if (gen_noise >= 0) cfg.gen.noise_level = gen_noise;
      if (cfg.out_path.empty()) throw qrr::input_error("gen requires --out <csv path>");
      const qrr::ridge::Dataset d = qrr::exp::dataset_from_config(cfg);
      qrr::io::export_csv(d, cfg.out_path);
      std::cout << "dataset written to " << cfg.out_path << " (N=" << d.n()
                << ", M=" << d.m() << ", kappa=" << d.kappa << ")\n";
      std::cerr << "wall time: " << elapsed() << " s\n";
    }
  } catch (const qrr::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qrr::contract_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 3;
  } catch (const qrr::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

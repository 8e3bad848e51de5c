#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tascap/config.hpp"
#include "tascap/errors.hpp"
#include "tascap/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitNumericalError = 2;
constexpr int kExitOutOfRegime = 3;

struct ParamFlags {
  std::optional<double> p_max, q, p_p, noise, mean_g, mean_h, mean_q;
  std::optional<double> p_max_db, q_db, p_p_db, noise_db, mean_g_db, mean_h_db,
      mean_q_db;

  void attach(CLI::App& app) {
    app.add_option("--p-max", p_max, "Maximum ST transmit power (linear)");
    app.add_option("--p-max-db", p_max_db, "Maximum ST transmit power (dB)");
    app.add_option("--q", q, "Peak interference constraint (linear)");
    app.add_option("--q-db", q_db, "Peak interference constraint (dB)");
    app.add_option("--p-p", p_p, "PU transmit power (linear)");
    app.add_option("--p-p-db", p_p_db, "PU transmit power (dB)");
    app.add_option("--noise", noise, "Noise power at the SR (linear)");
    app.add_option("--noise-db", noise_db, "Noise power at the SR (dB)");
    app.add_option("--mean-g", mean_g, "Mean ST->SR channel gain (linear)");
    app.add_option("--mean-g-db", mean_g_db, "Mean ST->SR channel gain (dB)");
    app.add_option("--mean-h", mean_h, "Mean ST->PR channel gain (linear)");
    app.add_option("--mean-h-db", mean_h_db, "Mean ST->PR channel gain (dB)");
    app.add_option("--mean-q", mean_q, "Mean PT->SR channel gain (linear)");
    app.add_option("--mean-q-db", mean_q_db, "Mean PT->SR channel gain (dB)");
  }

  tascap::SystemParams resolve() const {
    tascap::SystemParams p{1.0, 1.0, 1.0, 0.1, 1.0, 1.0, 1.0};
    const auto pick = [](double& slot, const std::optional<double>& lin,
                         const std::optional<double>& db, const char* name) {
      if (lin && db) {
        throw tascap::config_error(std::string("give --") + name +
                                   " either linear or in dB, not both");
      }
      if (lin) slot = *lin;
      if (db) slot = tascap::db_to_linear(*db);
    };
    pick(p.p_max, p_max, p_max_db, "p-max");
    pick(p.q_limit, q, q_db, "q");
    pick(p.p_p, p_p, p_p_db, "p-p");
    pick(p.noise, noise, noise_db, "noise");
    pick(p.mean_g, mean_g, mean_g_db, "mean-g");
    pick(p.mean_h, mean_h, mean_h_db, "mean-h");
    pick(p.mean_q, mean_q, mean_q_db, "mean-q");
    p.validate();
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum-sharing TAS link capacity: exact, extreme-value "
               "asymptotics, and Monte Carlo"};
  app.require_subcommand(1);

  // run
  std::string run_config_path, out_override;
  std::optional<std::uint64_t> seed_override, trials_override;
  std::optional<int> workers_override;
  CLI::App* run = app.add_subcommand("run", "Run a sweep experiment, CSV out");
  run->add_option("config", run_config_path, "Experiment config file")
      ->required();
  run->add_option("--out", out_override, "Output CSV path (overrides config)");
  run->add_option("--seed", seed_override, "RNG seed (overrides config)");
  run->add_option("--trials", trials_override, "Trials (overrides config)");
  run->add_option("--workers", workers_override, "Workers (overrides config)");

  // verify
  std::string verify_config_path;
  CLI::App* verify =
      app.add_subcommand("verify", "Check the Gumbel MDA tail conditions");
  verify->add_option("config", verify_config_path, "Config file")->required();

  // point
  ParamFlags flags;
  int point_n = 1;
  std::string method;
  std::optional<double> epsilon;
  std::uint64_t point_seed = 1, point_trials = 1000000;
  int point_workers = 1;
  CLI::App* point = app.add_subcommand("point", "Single capacity query");
  point->add_option("--n", point_n, "Number of ST antennas")->required();
  point
      ->add_option("--method", method,
                   "One of: exact, evt, iplr, tplr, tplr-low, mc")
      ->required();
  point->add_option("--epsilon", epsilon,
                    "Outage threshold; omit for mean capacity");
  point->add_option("--seed", point_seed, "RNG seed (mc only)");
  point->add_option("--trials", point_trials, "Trials (mc only)");
  point->add_option("--workers", point_workers, "Worker threads (mc only)");
  flags.attach(*point);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) {
      tascap::ExperimentConfig cfg = tascap::parse_config_file(run_config_path);
      if (!out_override.empty()) cfg.out_path = out_override;
      if (seed_override) cfg.seed = *seed_override;
      if (trials_override) cfg.trials = *trials_override;
      if (workers_override) cfg.workers = *workers_override;
      if (cfg.out_path.empty()) {
        tascap::run_experiment(cfg, std::cout, std::cerr);
      } else {
        std::ofstream out(cfg.out_path);
        if (!out) {
          throw tascap::config_error("cannot open output file: " + cfg.out_path);
        }
        tascap::run_experiment(cfg, out, std::cerr);
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      const tascap::ExperimentConfig cfg =
          tascap::parse_config_file(verify_config_path);
      return tascap::verify_report(cfg, std::cout) ? kExitOk
                                                   : kExitNumericalError;
    }
    // point
    const tascap::SystemParams params = flags.resolve();
    if (method == "mc" && point_trials < 10000 && !epsilon) {
      std::cerr << "warning: normal-approximation confidence intervals are "
                   "unreliable below 10000 trials\n";
    }
    const double nats = tascap::point_capacity(
        params, point_n, method, epsilon.has_value(),
        epsilon.value_or(0.1), point_trials, point_seed, point_workers);
    std::cout << tascap::format_csv_number(nats) << " nats/s/Hz ("
              << tascap::format_csv_number(nats / std::log(2.0))
              << " bits/s/Hz)\n";
    return kExitOk;
  } catch (const tascap::out_of_regime_error& e) {
    std::cerr << "out of regime: " << e.what() << '\n';
    return kExitOutOfRegime;
  } catch (const tascap::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const tascap::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

// hsodm: experiment runner.
//
//   hsodm hilbert --n 100 --shifts 1e-5,1e-7,1e-9 --samples 5 --seed 0 --out h.csv
//   hsodm krylov-table [--data a4a] --gammas 1e-3,1e-4,1e-5,1e-6 --samples 5 --seed 0 --out k.csv
//   hsodm minimize --problem logistic --algo adaptive --eps 1e-8 --seed 0 --out t.csv
//   hsodm run --config experiment.json
//
// Relative --data paths are looked up under $HSODM_DATA_DIR.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsodm/errors.hpp"
#include "hsodm/harness.hpp"

namespace {

struct KeyValues {
  std::ostringstream text;
  void add(const std::string& key, const std::string& value) {
    if (!value.empty()) text << key << " = " << value << '\n';
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous second-order descent experiments"};
  app.require_subcommand(1);

  std::string shifts = "1e-5,1e-7,1e-9", gammas = "1e-3,1e-4,1e-5,1e-6", seeds = "0", out, summary, data;
  std::string n = "100", samples = "5", tol = "1e-6", max_iter = "500", restart = "20", rows;
  std::string problem = "logistic", algo = "adaptive", eps = "1e-8", gamma = "1e-3", x0_scale = "10", beta;
  bool cold = false;
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed,--seeds", seeds, "Seed or comma-separated seed list")->capture_default_str();
    sub->add_option("--out", out, "Output CSV (stdout when omitted)");
  };
  auto sweep_opts = [&](CLI::App* sub) {
    sub->add_option("--samples", samples, "Right-hand sides per cell")->capture_default_str();
    sub->add_option("--tol", tol, "Residual target")->capture_default_str();
    sub->add_option("--max-iter", max_iter, "Krylov budget per solve")->capture_default_str();
    sub->add_option("--restart", restart, "Restart length for rGMRES")->capture_default_str();
  };

  auto* hil = app.add_subcommand("hilbert", "Shifted Hilbert systems");
  hil->add_option("--n", n, "Dimension")->capture_default_str();
  hil->add_option("--shifts", shifts, "Comma-separated shifts")->capture_default_str();
  sweep_opts(hil);
  common(hil);

  auto* kt = app.add_subcommand("krylov-table", "Krylov counts on regularized least-squares Newton systems");
  kt->add_option("--data", data, "LIBSVM file (synthetic one-hot stand-in when omitted)");
  kt->add_option("--gammas", gammas, "Comma-separated regularization values")->capture_default_str();
  kt->add_option("--rows", rows, "Rows of the synthetic stand-in");
  sweep_opts(kt);
  common(kt);

  auto* mn = app.add_subcommand("minimize", "Run a minimizer and write its trace");
  mn->add_option("--problem", problem, "Objective")
      ->check(CLI::IsMember({"logistic", "lsq", "balancing", "quartic"}))
      ->capture_default_str();
  mn->add_option("--data", data, "LIBSVM file (seeded synthetic data when omitted)");
  mn->add_option("--algo", algo, "Algorithm")
      ->check(CLI::IsMember({"adaptive", "homotopy", "inewton"}))
      ->capture_default_str();
  mn->add_option("--eps", eps, "Gradient tolerance")->capture_default_str();
  mn->add_option("--gamma", gamma, "L2 weight for logistic and lsq")->capture_default_str();
  mn->add_option("--x0-scale", x0_scale, "Std deviation of the random start")->capture_default_str();
  mn->add_option("--beta", beta, "Concordance constant for homotopy (estimated when omitted)");
  mn->add_flag("--cold", cold, "Disable eigenvector warm start (homotopy)");
  mn->add_option("--summary", summary, "Write a JSON run summary here");
  common(mn);

  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  run->add_option("--config", config_path, "key = value or JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output CSV, overrides the config's out");

  CLI11_PARSE(app, argc, argv);

  try {
    hsodm::ExperimentConfig config;
    if (*run) {
      std::ifstream in(config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      config = hsodm::parse_experiment_config(buf.str());
      if (!out.empty()) config.out = out;
    } else {
      KeyValues kv;
      if (*hil) {
        kv.add("experiment", "hilbert");
        kv.add("n", n);
        kv.add("shifts", shifts);
      } else if (*kt) {
        kv.add("experiment", "krylov-table");
        kv.add("data", data);
        kv.add("gammas", gammas);
        kv.add("rows", rows);
      } else {
        kv.add("experiment", "minimize");
        kv.add("problem", problem);
        kv.add("data", data);
        kv.add("algo", algo);
        kv.add("eps", eps);
        kv.add("gamma", gamma);
        kv.add("x0_scale", x0_scale);
        kv.add("beta", beta);
        if (cold) kv.add("warm_start", "false");
        kv.add("summary", summary);
      }
      if (*hil || *kt) {
        kv.add("samples", samples);
        kv.add("tol", tol);
        kv.add("max_iter", max_iter);
        kv.add("restart", restart);
      }
      kv.add("seeds", seeds);
      kv.add("out", out);
      config = hsodm::parse_experiment_config(kv.text.str());
    }
    return hsodm::run_experiment(config, std::cerr);
  } catch (const hsodm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

#pragma once
// Desk-scale experiment drivers behind the `hsodm` CLI.

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hsodm/adaptive.hpp"
#include "hsodm/homotopy.hpp"
#include "hsodm/variants.hpp"

namespace hsodm {

// One aggregate cell of a linear-system sweep.
struct KrylovCell {
  std::string method;  // newton-cg, newton-gmres, newton-rgmres, ghm-lanczos
  double param = 0.0;  // shift (hilbert) or gamma (krylov-table)
  int samples = 0;
  int converged = 0;
  double mean_iters = kNotApplicable;  // over converged samples
  int min_iters = 0;
  int max_iters = 0;
};

inline const std::vector<std::string> kLinearMethods = {"newton-cg", "newton-gmres", "newton-rgmres", "ghm-lanczos"};

struct LinearSweepConfig {
  std::vector<double> params;
  int samples = 5;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int max_iter = 500;
  int restart = 20;
};

// A + shift I with b uniform on [0,1]^n per sample.
std::vector<KrylovCell> run_hilbert(std::size_t n, const LinearSweepConfig& config);

// (1/N) X^T X + gamma I against b = (1/N) X^T (X beta - y), beta uniform.
std::vector<KrylovCell> run_krylov_table(const SparseDataset& data, const LinearSweepConfig& config);

// experiment,seed,method,param,samples,converged,mean_iters,min_iters,max_iters
// mean/min/max are over converged samples and empty when none converged.
void write_krylov_header(std::ostream& os);
void write_krylov_rows(std::ostream& os, const std::string& experiment, std::uint64_t seed,
                       const std::vector<KrylovCell>& cells);

struct MinimizeSpec {
  std::string problem = "logistic";  // logistic, lsq, balancing, quartic
  std::string data_path;             // empty: seeded synthetic data
  std::string algo = "adaptive";     // adaptive, homotopy, inewton
  double eps = 1e-8;
  std::uint64_t seed = 0;
  double gamma = 1e-3;
  double x0_scale = 10.0;            // x0 ~ N(0, x0_scale^2 I) for adaptive and inewton
  std::size_t rows = 200;
  std::size_t cols = 20;
  bool warm_start = true;
  std::optional<double> beta;        // homotopy; estimated when absent
};

ObjectivePtr make_problem(const MinimizeSpec& spec);
RunResult run_minimize(const MinimizeSpec& spec);

// Header plus every trace row of every run, in run order.
void write_trace_csv(std::ostream& os, const std::vector<const RunResult*>& runs);
// {"schema": "v1", "runs": [...]} with per-run totals.
std::string emit_summary(const std::vector<const RunResult*>& runs);

// Plain `key = value` lines (# comments) or a flat JSON object. Lists are
// comma separated or JSON arrays. Unknown keys are rejected.
//   experiment: hilbert | krylov-table | minimize
//   hilbert:      n, shifts, samples, tol, max_iter, restart
//   krylov-table: data, gammas, samples, tol, max_iter, restart, rows
//   minimize:     problem, data, algo, eps, gamma, x0_scale, rows, cols,
//                 warm_start, beta
//   all:          seeds (or seed), out, summary
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> values;
  std::vector<std::uint64_t> seeds{0};
  std::string out;
  std::string summary;  // JSON summary path (minimize only)

  std::string get(const std::string& key, const std::string& fallback) const;
};

ExperimentConfig parse_experiment_config(const std::string& text);
// Runs the experiment and writes its CSV to config.out (or stdout when
// empty). Returns 0 on success.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

// Relative dataset paths are resolved against $HSODM_DATA_DIR when set.
std::string resolve_data_path(const std::string& path);

std::vector<double> parse_double_list(const std::string& text);

// Stand-in for the a4a set when it is not on disk: one-hot rows over 13
// categorical groups, 122 columns.
SparseDataset default_krylov_dataset(std::uint64_t seed, std::size_t rows = 4781);

}  // namespace hsodm

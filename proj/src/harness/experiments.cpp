#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <ostream>
#include <random>

#include <json.hpp>

#include "hsodm/errors.hpp"
#include "hsodm/ghm.hpp"
#include "hsodm/harness.hpp"
#include "hsodm/krylov.hpp"

namespace hsodm {
namespace {

struct SampleOutcome {
  bool converged = false;
  int iters = 0;
};

// One linear system A x = -b by each method. Failures are outcomes, never
// exceptions, so a sweep always completes.
std::vector<SampleOutcome> solve_all_methods(const SymmetricOperator& a, const Vec& b, const LinearSweepConfig& cfg,
                                             std::uint64_t seed) {
  Vec rhs = scaled(b, -1.0);
  std::vector<SampleOutcome> out;
  auto linear = [&](auto&& solve) {
    try {
      const LinSolveResult r = solve();
      out.push_back({r.converged, r.iters});
    } catch (const Error&) {
      out.push_back({false, cfg.max_iter});
    }
  };
  linear([&] { return cg_solve(a, rhs, cfg.tol, cfg.max_iter); });
  linear([&] { return gmres_solve(a, rhs, cfg.tol, cfg.max_iter); });
  linear([&] { return gmres_solve(a, rhs, cfg.tol, cfg.max_iter, cfg.restart); });

  // [[A, b], [b^T, 0]]
  const SymmetricOperator f = build_ghm(GhmSpec{a, b, 0.0});
  LanczosOptions lo;
  lo.tol = cfg.tol;
  lo.max_iter = cfg.max_iter;
  lo.seed = seed;
  try {
    const EigResult e = lanczos_leftmost(f, lo);
    out.push_back({true, e.iters});
  } catch (const NonConvergence& e) {
    out.push_back({false, e.iters});
  }
  return out;
}

void fold(std::vector<KrylovCell>& cells, std::size_t first, const std::vector<SampleOutcome>& sample) {
  for (std::size_t m = 0; m < sample.size(); ++m) {
    KrylovCell& c = cells[first + m];
    ++c.samples;
    if (!sample[m].converged) continue;
    const int it = sample[m].iters;
    if (c.converged == 0) {
      c.min_iters = c.max_iters = it;
      c.mean_iters = 0.0;
    }
    c.min_iters = std::min(c.min_iters, it);
    c.max_iters = std::max(c.max_iters, it);
    c.mean_iters += (it - c.mean_iters) / (c.converged + 1);
    ++c.converged;
  }
}

std::vector<KrylovCell> sweep(const LinearSweepConfig& cfg, const std::function<SymmetricOperator(double)>& make_op,
                              const std::function<Vec(std::mt19937_64&)>& draw_b) {
  if (cfg.samples <= 0) throw InvalidInput("samples must be positive");
  if (cfg.params.empty()) throw InvalidInput("parameter list is empty");
  std::vector<KrylovCell> cells;
  for (double p : cfg.params)
    for (const auto& m : kLinearMethods) cells.push_back(KrylovCell{m, p});
  for (std::size_t pi = 0; pi < cfg.params.size(); ++pi) {
    const SymmetricOperator a = make_op(cfg.params[pi]);
    // same right-hand sides for every parameter value
    std::mt19937_64 rng(cfg.seed);
    for (int s = 0; s < cfg.samples; ++s) {
      const Vec b = draw_b(rng);
      fold(cells, pi * kLinearMethods.size(), solve_all_methods(a, b, cfg, cfg.seed + s));
    }
  }
  return cells;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<KrylovCell> run_hilbert(std::size_t n, const LinearSweepConfig& config) {
  if (n == 0) throw InvalidInput("hilbert: n must be positive");
  return sweep(
      config, [n](double shift) { return hilbert_operator(n, shift); },
      [n](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Vec b(n);
        for (double& x : b) x = u(rng);
        return b;
      });
}

std::vector<KrylovCell> run_krylov_table(const SparseDataset& data, const LinearSweepConfig& config) {
  data.validate();
  const double inv_n = 1.0 / static_cast<double>(data.rows);
  return sweep(
      config, [&data](double gamma) { return normal_equations_operator(data, gamma); },
      [&data, inv_n](std::mt19937_64& rng) {
        // b = (1/N) X^T (X beta - y), beta uniform on [0,1]^n
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Vec beta(data.cols), r(data.rows), b(data.cols);
        for (double& x : beta) x = u(rng);
        data.multiply(beta, r);
        for (std::size_t i = 0; i < data.rows; ++i) r[i] -= data.labels[i];
        data.multiply_transpose(r, b);
        kernels::scal(inv_n, b);
        return b;
      });
}

void write_krylov_header(std::ostream& os) {
  os << "experiment,seed,method,param,samples,converged,mean_iters,min_iters,max_iters\n";
}

void write_krylov_rows(std::ostream& os, const std::string& experiment, std::uint64_t seed,
                       const std::vector<KrylovCell>& cells) {
  for (const auto& c : cells) {
    os << experiment << ',' << seed << ',' << c.method << ',' << fmt(c.param) << ',' << c.samples << ',' << c.converged << ','
       << fmt(c.mean_iters) << ',';
    if (c.converged > 0) os << c.min_iters << ',' << c.max_iters;
    else os << ',';
    os << '\n';
  }
}

std::string resolve_data_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::path(path).is_absolute() || fs::exists(path)) return path;
  if (const char* dir = std::getenv("HSODM_DATA_DIR"); dir && *dir) return (fs::path(dir) / path).string();
  return path;
}

namespace {

SparseDataset load_dataset(const MinimizeSpec& spec) {
  if (!spec.data_path.empty()) return parse_libsvm_file(resolve_data_path(spec.data_path));
  return synthetic_dataset(SyntheticSpec{spec.seed, spec.cols, spec.rows}).data;
}

}  // namespace

ObjectivePtr make_problem(const MinimizeSpec& spec) {
  auto dataset = [&] { return load_dataset(spec); };
  if (spec.problem == "logistic") return logistic_l2_objective(dataset(), spec.gamma);
  if (spec.problem == "lsq") return least_squares_objective(dataset(), spec.gamma);
  if (spec.problem == "quartic") return quartic_objective();
  if (spec.problem == "balancing") {
    constexpr std::size_t n = 5;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> a(n * n);
    for (double& v : a) v = u(rng);
    return matrix_balancing_objective(std::move(a), n);
  }
  throw InvalidInput("unknown problem '" + spec.problem + "'");
}

RunResult run_minimize(const MinimizeSpec& spec) {
  const ObjectivePtr obj = make_problem(spec);
  const std::string run_id = spec.problem + "-" + spec.algo + "-" + std::to_string(spec.seed);

  Vec x0(obj->dim());
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, spec.x0_scale);
  for (double& v : x0) v = normal(rng);

  if (spec.algo == "adaptive") {
    AdaptiveConfig c;
    c.eps = spec.eps;
    c.seed = spec.seed;
    c.run_id = run_id;
    return adaptive_hsodm(*obj, x0, c);
  }
  if (spec.algo == "inewton") {
    InexactNewtonConfig c;
    c.eps = spec.eps;
    c.run_id = run_id;
    return inexact_newton(*obj, x0, c);
  }
  if (spec.algo == "homotopy") {
    if (obj->info().convexity != Convexity::Convex)
      throw InvalidInput("homotopy requires a convex problem, got '" + spec.problem + "'");
    HomotopyConfig c;
    c.eps = spec.eps;
    c.seed = spec.seed;
    c.warm_start = spec.warm_start;
    c.run_id = run_id;
    std::string note;
    if (spec.beta) {
      c.beta = *spec.beta;
    } else if (spec.problem == "logistic") {
      const auto est = concordance_beta_logistic(load_dataset(spec), spec.gamma);
      c.beta = est.beta;
      if (!est.threshold_ok) note = "gamma below the concordance threshold; beta is a heuristic";
    } else if (obj->info().beta) {
      c.beta = *obj->info().beta;
    }
    RunResult r = homotopy_hsodm(*obj, c);
    if (!note.empty()) r.message = r.message.empty() ? note : r.message + "; " + note;
    return r;
  }
  throw InvalidInput("unknown algo '" + spec.algo + "'");
}

void write_trace_csv(std::ostream& os, const std::vector<const RunResult*>& runs) {
  write_trace_header(os);
  for (const RunResult* r : runs)
    for (const auto& row : r->trace) write_trace_row(os, row);
}

std::string emit_summary(const std::vector<const RunResult*>& runs) {
  nlohmann::ordered_json out;
  out["schema"] = kTraceSchemaVersion;
  out["runs"] = nlohmann::ordered_json::array();
  for (const RunResult* r : runs) {
    nlohmann::ordered_json j;
    j["run_id"] = r->trace.empty() ? "" : r->trace.front().run_id;
    j["algo"] = r->trace.empty() ? "" : r->trace.front().algo;
    j["status"] = status_name(r->status);
    j["f"] = r->f;
    j["grad_norm"] = r->grad_norm;
    j["outer_iters"] = r->outer_iters;
    j["ghm_solves"] = r->ghm_solves;
    j["krylov_iters"] = r->krylov_iters;
    j["matvecs"] = r->matvecs;
    j["wall_ns"] = r->wall_ns;
    if (!r->message.empty()) j["message"] = r->message;
    out["runs"].push_back(std::move(j));
  }
  return out.dump(2);
}

}  // namespace hsodm

#pragma once
// Per-iteration telemetry shared by every minimizer, and the frozen CSV
// layout (schema v1).

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "hsodm/vec.hpp"

namespace hsodm {

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

struct TraceRecord {
  std::string run_id;
  std::string algo;
  int k = 0;
  int j = 0;
  double f = kNotApplicable;
  double grad_norm = kNotApplicable;
  double delta = kNotApplicable;
  double theta = kNotApplicable;
  double h = kNotApplicable;
  double mu = kNotApplicable;
  double rho = kNotApplicable;
  std::int64_t krylov_iters = 0;
  std::int64_t matvecs = 0;
  std::int64_t wall_ns = 0;
  std::string status;
};

enum class RunStatus { Success, Budget, Stagnation, Failure };
const char* status_name(RunStatus s);

struct RunResult {
  Vec x;
  RunStatus status = RunStatus::Failure;
  double f = 0.0;
  double grad_norm = 0.0;
  int outer_iters = 0;
  std::int64_t ghm_solves = 0;
  std::int64_t krylov_iters = 0;
  std::int64_t matvecs = 0;
  std::int64_t wall_ns = 0;
  std::string message;
  std::vector<TraceRecord> trace;
};

inline constexpr const char* kTraceSchemaVersion = "v1";
// run_id,algo,k,j,f,grad_norm,delta,theta,h,mu,rho,krylov_iters,matvecs,wall_ns,status
const std::vector<std::string>& trace_columns();
void write_trace_header(std::ostream& os);
void write_trace_row(std::ostream& os, const TraceRecord& r);
// Checks column count, ordering by (run_id, k, j) and numeric fields.
// Returns an empty string when valid, otherwise the first problem found.
std::string validate_trace_csv(const std::string& text);

}  // namespace hsodm

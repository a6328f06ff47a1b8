#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "hsodm/trace.hpp"

namespace hsodm {

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::Budget: return "budget";
    case RunStatus::Stagnation: return "stagnation";
    case RunStatus::Failure: return "failure";
  }
  return "?";
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = {"run_id", "algo",  "k",   "j",           "f",       "grad_norm",
                                                "delta",  "theta", "h",   "mu",          "rho",     "krylov_iters",
                                                "matvecs", "wall_ns", "status"};
  return cols;
}

void write_trace_header(std::ostream& os) {
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

namespace {

void put(std::ostream& os, double v) {
  os << ',';
  if (std::isnan(v)) return;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool is_number(const std::string& s, bool allow_empty) {
  if (s.empty()) return allow_empty;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

void write_trace_row(std::ostream& os, const TraceRecord& r) {
  os << r.run_id << ',' << r.algo << ',' << r.k << ',' << r.j;
  put(os, r.f);
  put(os, r.grad_norm);
  put(os, r.delta);
  put(os, r.theta);
  put(os, r.h);
  put(os, r.mu);
  put(os, r.rho);
  os << ',' << r.krylov_iters << ',' << r.matvecs << ',' << r.wall_ns << ',' << r.status << '\n';
}

std::string validate_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return "empty file";
  std::ostringstream header;
  write_trace_header(header);
  if (line + "\n" != header.str()) return "header mismatch";
  const std::size_t ncol = trace_columns().size();
  std::string prev_run;
  long prev_k = -1, prev_j = -1;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split(line);
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (f.size() != ncol) return where + "wrong column count";
    if (f[0].empty() || f[1].empty() || f[14].empty()) return where + "missing run_id, algo or status";
    for (std::size_t c : {2u, 3u, 11u, 12u, 13u})
      if (!is_number(f[c], false)) return where + "integer column '" + trace_columns()[c] + "' malformed";
    for (std::size_t c = 4; c <= 10; ++c)
      if (!is_number(f[c], true)) return where + "numeric column '" + trace_columns()[c] + "' malformed";
    const long k = std::stol(f[2]), j = std::stol(f[3]);
    if (f[0] == prev_run && (k < prev_k || (k == prev_k && j <= prev_j))) return where + "rows out of (k, j) order";
    prev_run = f[0];
    prev_k = k;
    prev_j = j;
  }
  return {};
}

}  // namespace hsodm

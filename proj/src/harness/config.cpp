#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hsodm/errors.hpp"
#include "hsodm/harness.hpp"

namespace hsodm {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"hilbert", {"n", "shifts", "samples", "tol", "max_iter", "restart"}},
      {"krylov-table", {"data", "gammas", "samples", "tol", "max_iter", "restart", "rows"}},
      {"minimize", {"problem", "data", "algo", "eps", "gamma", "x0_scale", "rows", "cols", "warm_start", "beta"}},
  };
  return keys;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw InvalidInput("config: unsupported JSON value " + v.dump());
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("config: '" + key + "' expects a number, got '" + text + "'");
  }
}

long long to_int(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidInput("config: '" + key + "' expects an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  throw InvalidInput("config: '" + key + "' expects true/false, got '" + text + "'");
}

LinearSweepConfig sweep_config(const ExperimentConfig& c, const std::string& list_key, const std::string& defaults) {
  LinearSweepConfig s;
  s.params = parse_double_list(c.get(list_key, defaults));
  s.samples = static_cast<int>(to_int("samples", c.get("samples", "5")));
  s.tol = to_double("tol", c.get("tol", "1e-6"));
  s.max_iter = static_cast<int>(to_int("max_iter", c.get("max_iter", "500")));
  s.restart = static_cast<int>(to_int("restart", c.get("restart", "20")));
  if (s.samples <= 0 || s.max_iter <= 0 || s.restart <= 0 || !(s.tol > 0.0))
    throw InvalidInput("config: samples, max_iter, restart and tol must be positive");
  return s;
}

}  // namespace

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InvalidInput("empty entry in list '" + text + "'");
    out.push_back(to_double("list", item));
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  std::map<std::string, std::string> raw;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput(std::string("config: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_array()) {
        std::string joined;
        for (const auto& v : it.value()) joined += (joined.empty() ? "" : ",") + json_scalar(v);
        raw[it.key()] = joined;
      } else {
        raw[it.key()] = json_scalar(it.value());
      }
    }
  } else {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      if (raw.count(key)) throw InvalidInput("config: duplicate key '" + key + "'");
      raw[key] = trim(line.substr(eq + 1));
    }
  }

  ExperimentConfig c;
  const auto take = [&raw](const std::string& key) {
    const auto it = raw.find(key);
    if (it == raw.end()) return std::string();
    std::string v = it->second;
    raw.erase(it);
    return v;
  };
  c.experiment = take("experiment");
  if (c.experiment.empty()) throw InvalidInput("config: 'experiment' is required");
  const auto allowed = allowed_keys().find(c.experiment);
  if (allowed == allowed_keys().end()) throw InvalidInput("config: unknown experiment '" + c.experiment + "'");
  c.out = take("out");
  c.summary = take("summary");

  const std::string seeds = take("seeds"), seed = take("seed");
  if (!seeds.empty() && !seed.empty()) throw InvalidInput("config: give either 'seed' or 'seeds'");
  if (!seeds.empty() || !seed.empty()) {
    c.seeds.clear();
    std::stringstream ss(seeds.empty() ? seed : seeds);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const long long v = to_int("seeds", trim(item));
      if (v < 0) throw InvalidInput("config: seeds must be nonnegative");
      c.seeds.push_back(static_cast<std::uint64_t>(v));
    }
    if (c.seeds.empty()) throw InvalidInput("config: empty seed list");
  }
  for (const auto& [k, v] : raw) {
    if (!allowed->second.count(k)) throw InvalidInput("config: unknown key '" + k + "' for " + c.experiment);
  }
  c.values = std::move(raw);

  // Type-check now so a bad value fails before any work runs.
  if (c.experiment == "hilbert") {
    sweep_config(c, "shifts", "1e-5,1e-7,1e-9");
    if (to_int("n", c.get("n", "100")) <= 0) throw InvalidInput("config: n must be positive");
  } else if (c.experiment == "krylov-table") {
    sweep_config(c, "gammas", "1e-3,1e-4,1e-5,1e-6");
    if (to_int("rows", c.get("rows", "4781")) <= 0) throw InvalidInput("config: rows must be positive");
  } else {
    to_double("eps", c.get("eps", "1e-8"));
    to_double("gamma", c.get("gamma", "1e-3"));
    to_double("x0_scale", c.get("x0_scale", "10"));
    to_int("rows", c.get("rows", "200"));
    to_int("cols", c.get("cols", "20"));
    to_bool("warm_start", c.get("warm_start", "true"));
    if (c.values.count("beta")) to_double("beta", c.get("beta", ""));
  }
  return c;
}

SparseDataset default_krylov_dataset(std::uint64_t seed, std::size_t rows) {
  static const std::vector<std::size_t> groups = {5, 8, 16, 16, 7, 14, 6, 5, 2, 3, 3, 3, 34};
  return synthetic_onehot_dataset(seed, rows, groups);
}

int run_experiment(const ExperimentConfig& c, std::ostream& log) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw InvalidInput("cannot open output '" + c.out + "'");
  }
  std::ostream& os = c.out.empty() ? std::cout : file;

  if (c.experiment == "hilbert" || c.experiment == "krylov-table") {
    const bool hilbert = c.experiment == "hilbert";
    LinearSweepConfig s = hilbert ? sweep_config(c, "shifts", "1e-5,1e-7,1e-9")
                                  : sweep_config(c, "gammas", "1e-3,1e-4,1e-5,1e-6");
    write_krylov_header(os);
    std::optional<SparseDataset> loaded;
    if (!hilbert && !c.get("data", "").empty()) loaded = parse_libsvm_file(resolve_data_path(c.get("data", "")));
    for (std::uint64_t seed : c.seeds) {
      s.seed = seed;
      std::vector<KrylovCell> cells;
      if (hilbert) {
        cells = run_hilbert(static_cast<std::size_t>(to_int("n", c.get("n", "100"))), s);
      } else if (loaded) {
        cells = run_krylov_table(*loaded, s);
      } else {
        const auto rows = static_cast<std::size_t>(to_int("rows", c.get("rows", "4781")));
        cells = run_krylov_table(default_krylov_dataset(seed, rows), s);
      }
      write_krylov_rows(os, c.experiment, seed, cells);
      for (const auto& cell : cells)
        if (cell.converged < cell.samples)
          log << c.experiment << ": " << cell.method << " at " << cell.param << " converged on " << cell.converged
              << "/" << cell.samples << " samples\n";
    }
    return 0;
  }

  std::vector<RunResult> results;
  for (std::uint64_t seed : c.seeds) {
    MinimizeSpec m;
    m.problem = c.get("problem", "logistic");
    m.data_path = c.get("data", "");
    m.algo = c.get("algo", "adaptive");
    m.eps = to_double("eps", c.get("eps", "1e-8"));
    m.gamma = to_double("gamma", c.get("gamma", "1e-3"));
    m.x0_scale = to_double("x0_scale", c.get("x0_scale", "10"));
    m.rows = static_cast<std::size_t>(to_int("rows", c.get("rows", "200")));
    m.cols = static_cast<std::size_t>(to_int("cols", c.get("cols", "20")));
    m.warm_start = to_bool("warm_start", c.get("warm_start", "true"));
    if (c.values.count("beta")) m.beta = to_double("beta", c.get("beta", ""));
    m.seed = seed;
    results.push_back(run_minimize(m));
    const RunResult& r = results.back();
    log << m.problem << "/" << m.algo << " seed " << seed << ": " << status_name(r.status) << " after "
        << r.outer_iters << " iterations, |g| = " << r.grad_norm << (r.message.empty() ? "" : " (" + r.message + ")")
        << "\n";
  }
  std::vector<const RunResult*> ptrs;
  for (const auto& r : results) ptrs.push_back(&r);
  write_trace_csv(os, ptrs);
  if (!c.summary.empty()) {
    std::ofstream js(c.summary);
    if (!js) throw InvalidInput("cannot open summary '" + c.summary + "'");
    js << emit_summary(ptrs) << '\n';
  }
  const bool all_ok = std::all_of(results.begin(), results.end(),
                                  [](const RunResult& r) { return r.status == RunStatus::Success; });
  return all_ok ? 0 : 3;
}

}  // namespace hsodm

#include <cmath>
#include <random>

#include "hsodm/dataio.hpp"
#include "hsodm/errors.hpp"

namespace hsodm {

SyntheticDataset synthetic_dataset(const SyntheticSpec& spec) {
  if (!(spec.density > 0.0 && spec.density <= 1.0)) throw InvalidInput("synthetic: density must lie in (0, 1]");
  if (spec.cols == 0) throw InvalidInput("synthetic: cols must be positive");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  SyntheticDataset out;
  out.planted.resize(spec.cols);
  for (double& w : out.planted) w = normal(rng);

  SparseDataset& d = out.data;
  d.rows = spec.rows;
  d.cols = spec.cols;
  const double scale = 1.0 / std::sqrt(spec.density * static_cast<double>(spec.cols));
  for (std::size_t i = 0; i < spec.rows; ++i) {
    double margin = 0.0;
    for (std::size_t j = 0; j < spec.cols; ++j) {
      if (spec.density < 1.0 && unif(rng) >= spec.density) continue;
      const double v = normal(rng) * scale;
      d.col_idx.push_back(static_cast<int>(j));
      d.values.push_back(v);
      margin += v * out.planted[j];
    }
    d.row_ptr.push_back(d.values.size());
    double label = margin >= 0.0 ? 1.0 : -1.0;
    if (unif(rng) < 0.05) label = -label;
    d.labels.push_back(label);
  }
  return out;
}

SparseDataset synthetic_onehot_dataset(std::uint64_t seed, std::size_t rows, std::span<const std::size_t> group_sizes) {
  if (group_sizes.empty()) throw InvalidInput("onehot: need at least one group");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SparseDataset d;
  d.rows = rows;
  for (std::size_t g : group_sizes) {
    if (g == 0) throw InvalidInput("onehot: empty group");
    d.cols += g;
  }
  // Zipf category frequencies (exponent 2), so each group has a tail of
  // columns with only a handful of ones, like real census attributes.
  std::vector<std::discrete_distribution<std::size_t>> pickers;
  for (std::size_t g : group_sizes) {
    std::vector<double> w(g);
    for (std::size_t c = 0; c < g; ++c) w[c] = 1.0 / static_cast<double>((c + 1) * (c + 1));
    pickers.emplace_back(w.begin(), w.end());
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t offset = 0;
    std::size_t prev = 0;
    double score = 0.0;
    for (std::size_t k = 0; k < group_sizes.size(); ++k) {
      const std::size_t g = group_sizes[k];
      std::size_t pick = pickers[k](rng);
      // odd groups mostly echo their predecessor (education vs. years of
      // schooling, relationship vs. marital status)
      if (k % 2 == 1 && unif(rng) < 0.9) pick = prev % g;
      d.col_idx.push_back(static_cast<int>(offset + pick));
      d.values.push_back(1.0);
      score += (pick % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(group_sizes.size());
      offset += g;
      prev = pick;
    }
    d.row_ptr.push_back(d.values.size());
    d.labels.push_back(score + 0.3 * (unif(rng) - 0.5) >= 0.0 ? 1.0 : -1.0);
  }
  return d;
}

}  // namespace hsodm

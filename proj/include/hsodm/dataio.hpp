#pragma once
// LIBSVM ingestion and seeded synthetic datasets.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsodm {

// Row-compressed sparse design matrix with one label per row.
struct SparseDataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<int> col_idx;
  std::vector<double> values;
  std::vector<double> labels;

  std::size_t nnz() const { return values.size(); }

  // Throws DataError if the CSR invariants do not hold.
  void validate() const;

  // y = X x
  void multiply(std::span<const double> x, std::span<double> y) const;
  // y = X^T u
  void multiply_transpose(std::span<const double> u, std::span<double> y) const;

  double row_dot(std::size_t i, std::span<const double> x) const;
  double row_norm_sq(std::size_t i) const;
  double frobenius_norm_sq() const;

  // Column slice [0, count) of every row.
  SparseDataset leading_columns(std::size_t count) const;
  std::vector<double> dense_row_major() const;
};

struct LibsvmOptions {
  std::optional<std::size_t> cols;  // overrides the max-index column count
};

SparseDataset parse_libsvm(std::istream& in, const LibsvmOptions& options = {});
SparseDataset parse_libsvm_file(const std::string& path, const LibsvmOptions& options = {});
std::string to_libsvm(const SparseDataset& data);

enum class LabelModel {
  PlantedLinear,  // sign(a^T w*) with 5% sign flips
};

struct SyntheticSpec {
  std::uint64_t seed = 0;
  std::size_t cols = 20;
  std::size_t rows = 200;
  double density = 1.0;
  LabelModel label_model = LabelModel::PlantedLinear;
};

struct SyntheticDataset {
  SparseDataset data;
  std::vector<double> planted;  // the planted weight vector
};

SyntheticDataset synthetic_dataset(const SyntheticSpec& spec);

// Binary one-hot rows over categorical groups (the layout of the adult/a*a
// LIBSVM sets). Each group contributes exactly one active column per row, so
// X^T X is singular and the regularized normal equations have condition
// number of order 1/gamma.
SparseDataset synthetic_onehot_dataset(std::uint64_t seed, std::size_t rows,
                                       std::span<const std::size_t> group_sizes);

}  // namespace hsodm

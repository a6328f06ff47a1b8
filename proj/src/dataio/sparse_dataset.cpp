#include <cmath>

#include "hsodm/dataio.hpp"
#include "hsodm/errors.hpp"
#include "hsodm/kernels.hpp"

namespace hsodm {

void SparseDataset::validate() const {
  if (row_ptr.size() != rows + 1 || row_ptr.front() != 0) throw DataError("csr: row_ptr has wrong shape");
  if (row_ptr.back() != values.size() || col_idx.size() != values.size())
    throw DataError("csr: row_ptr does not match the stored entries");
  if (labels.size() != rows) throw DataError("csr: one label per row required");
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1]) throw DataError("csr: row_ptr is not monotone");
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] < 0 || static_cast<std::size_t>(col_idx[k]) >= cols)
        throw DataError("csr: column index out of range in row " + std::to_string(i));
      if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
        throw DataError("csr: column indices not strictly increasing in row " + std::to_string(i));
    }
  }
}

void SparseDataset::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols || y.size() != rows) throw InvalidInput("csr multiply: dimension mismatch");
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t b = row_ptr[i];
    y[i] = k.sparse_dot(values.data() + b, col_idx.data() + b, row_ptr[i + 1] - b, x.data());
  }
}

void SparseDataset::multiply_transpose(std::span<const double> u, std::span<double> y) const {
  if (u.size() != rows || y.size() != cols) throw InvalidInput("csr multiply_transpose: dimension mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double ui = u[i];
    if (ui == 0.0) continue;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) y[col_idx[k]] += values[k] * ui;
  }
}

double SparseDataset::row_dot(std::size_t i, std::span<const double> x) const {
  const std::size_t b = row_ptr[i];
  return kernels::active().sparse_dot(values.data() + b, col_idx.data() + b, row_ptr[i + 1] - b, x.data());
}

double SparseDataset::row_norm_sq(std::size_t i) const {
  const std::size_t b = row_ptr[i];
  return kernels::active().sumsq(values.data() + b, row_ptr[i + 1] - b);
}

double SparseDataset::frobenius_norm_sq() const { return kernels::active().sumsq(values.data(), values.size()); }

SparseDataset SparseDataset::leading_columns(std::size_t count) const {
  SparseDataset out;
  out.rows = rows;
  out.cols = std::min(count, cols);
  out.labels = labels;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (static_cast<std::size_t>(col_idx[k]) < out.cols) {
        out.col_idx.push_back(col_idx[k]);
        out.values.push_back(values[k]);
      }
    }
    out.row_ptr.push_back(out.values.size());
  }
  return out;
}

std::vector<double> SparseDataset::dense_row_major() const {
  std::vector<double> out(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) out[i * cols + col_idx[k]] = values[k];
  return out;
}

}  // namespace hsodm

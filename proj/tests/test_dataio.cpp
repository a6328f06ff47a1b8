#include <gtest/gtest.h>

#include <sstream>

#include "hsodm/dataio.hpp"
#include "hsodm/errors.hpp"

using namespace hsodm;

namespace {

SparseDataset parse(const std::string& s, LibsvmOptions o = {}) {
  std::istringstream in(s);
  return parse_libsvm(in, o);
}

}  // namespace

TEST(Libsvm, SpecExample) {
  const auto d = parse("+1 1:0.5 3:2\n-1 2:1\n");
  EXPECT_EQ(d.rows, 2u);
  EXPECT_EQ(d.cols, 3u);
  EXPECT_EQ(d.dense_row_major(), (std::vector<double>{0.5, 0, 2, 0, 1, 0}));
  EXPECT_EQ(d.labels, (std::vector<double>{1, -1}));
}

TEST(Libsvm, EmptyInput) {
  const auto d = parse("");
  EXPECT_EQ(d.rows, 0u);
  EXPECT_EQ(d.cols, 0u);
}

TEST(Libsvm, CommentsCrlfAndZeroOneLabels) {
  const auto d = parse("# header\r\n1 2:3 # trailing\r\n0 1:1\r\n\r\n");
  EXPECT_EQ(d.rows, 2u);
  EXPECT_EQ(d.labels, (std::vector<double>{1, -1}));
}

TEST(Libsvm, Errors) {
  auto line_of = [](const std::string& s) {
    try {
      parse(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.line());
    }
    return -1L;
  };
  EXPECT_EQ(line_of("1 1:1\n1 2:x\n"), 2);
  EXPECT_EQ(line_of("1 0:1\n"), 1);
  EXPECT_EQ(line_of("1 3:1 2:1\n"), 1);
  EXPECT_EQ(line_of("1 2:1 2:1\n"), 1);
  EXPECT_EQ(line_of("abc 1:1\n"), 1);
  EXPECT_THROW(parse("1 5:1\n", {std::size_t{3}}), DataError);
  EXPECT_THROW(parse_libsvm_file("/nonexistent/file"), Error);
}

TEST(Libsvm, ColumnOverrideAndRoundTrip) {
  const auto d = parse("1 1:0.25 4:-3\n-1 2:1e-3\n", {std::size_t{6}});
  EXPECT_EQ(d.cols, 6u);
  const auto again = parse(to_libsvm(d), {std::size_t{6}});
  EXPECT_EQ(again.values, d.values);
  EXPECT_EQ(again.col_idx, d.col_idx);
  EXPECT_EQ(again.labels, d.labels);
}

TEST(Sparse, ValidateCatchesBrokenCsr) {
  SparseDataset d;
  d.rows = 1;
  d.cols = 2;
  d.row_ptr = {0, 2};
  d.col_idx = {1, 0};
  d.values = {1, 1};
  d.labels = {1};
  EXPECT_THROW(d.validate(), DataError);
}

TEST(Sparse, ProductsAndSlices) {
  const auto d = parse("1 1:1 2:2\n-1 2:3 3:4\n");
  std::vector<double> y(2), z(3);
  d.multiply(std::vector<double>{1, 1, 1}, y);
  EXPECT_EQ(y, (std::vector<double>{3, 7}));
  d.multiply_transpose(std::vector<double>{1, -1}, z);
  EXPECT_EQ(z, (std::vector<double>{1, -1, -4}));
  EXPECT_DOUBLE_EQ(d.frobenius_norm_sq(), 30.0);
  EXPECT_DOUBLE_EQ(d.row_norm_sq(1), 25.0);
  const auto s = d.leading_columns(2);
  EXPECT_EQ(s.cols, 2u);
  EXPECT_EQ(s.nnz(), 3u);
}

TEST(Synthetic, DeterministicAndDense) {
  const auto a = synthetic_dataset({42, 20, 200});
  const auto b = synthetic_dataset({42, 20, 200});
  EXPECT_EQ(to_libsvm(a.data), to_libsvm(b.data));
  EXPECT_EQ(a.planted, b.planted);
  const auto c = synthetic_dataset({1, 2, 3, 1.0});
  EXPECT_EQ(c.data.nnz(), 6u);
  EXPECT_NE(to_libsvm(synthetic_dataset({43, 20, 200}).data), to_libsvm(a.data));
}

TEST(Synthetic, OneHotLayout) {
  const std::vector<std::size_t> groups = {3, 4, 5};
  const auto d = synthetic_onehot_dataset(1, 100, groups);
  d.validate();
  EXPECT_EQ(d.cols, 12u);
  EXPECT_EQ(d.nnz(), 300u);
  for (std::size_t i = 0; i < d.rows; ++i) {
    EXPECT_LT(d.col_idx[d.row_ptr[i]], 3);
    EXPECT_GE(d.col_idx[d.row_ptr[i] + 1], 3);
  }
}

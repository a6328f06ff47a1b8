#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hsodm/dataio.hpp"
#include "hsodm/errors.hpp"

namespace hsodm {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

double parse_double(std::string_view tok, std::size_t line, const char* what) {
  // from_chars rejects a leading '+', LIBSVM labels often carry one
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty())
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  return v;
}

}  // namespace

SparseDataset parse_libsvm(std::istream& in, const LibsvmOptions& options) {
  SparseDataset out;
  std::size_t max_index = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) continue;

    out.labels.push_back(parse_double(tokens[0], line_no, "label"));
    long long prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto colon = tokens[t].find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "expected idx:val, got '" + std::string(tokens[t]) + "'");
      const std::string_view idx_tok = tokens[t].substr(0, colon);
      long long idx = 0;
      auto [p, ec] = std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), idx);
      if (ec != std::errc() || p != idx_tok.data() + idx_tok.size() || idx_tok.empty())
        throw ParseError(line_no, "malformed index '" + std::string(idx_tok) + "'");
      if (idx < 1) throw ParseError(line_no, "indices are 1-based");
      if (idx <= prev) throw ParseError(line_no, "indices must be strictly ascending");
      if (idx > (1LL << 31) - 1) throw ParseError(line_no, "index too large");
      prev = idx;
      const double val = parse_double(tokens[t].substr(colon + 1), line_no, "value");
      out.col_idx.push_back(static_cast<int>(idx - 1));
      out.values.push_back(val);
      max_index = std::max(max_index, static_cast<std::size_t>(idx));
    }
    out.row_ptr.push_back(out.values.size());
  }
  out.rows = out.labels.size();
  out.cols = max_index;
  if (options.cols) {
    if (*options.cols < max_index)
      throw DataError("libsvm: column override " + std::to_string(*options.cols) + " below max index " +
                      std::to_string(max_index));
    out.cols = *options.cols;
  }

  std::set<double> distinct(out.labels.begin(), out.labels.end());
  if (distinct == std::set<double>{0.0, 1.0})
    for (double& y : out.labels) y = y == 0.0 ? -1.0 : 1.0;
  return out;
}

SparseDataset parse_libsvm_file(const std::string& path, const LibsvmOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("libsvm: cannot open '" + path + "'");
  return parse_libsvm(in, options);
}

std::string to_libsvm(const SparseDataset& data) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < data.rows; ++i) {
    os << data.labels[i];
    for (std::size_t k = data.row_ptr[i]; k < data.row_ptr[i + 1]; ++k)
      os << ' ' << data.col_idx[k] + 1 << ':' << data.values[k];
    os << '\n';
  }
  return os.str();
}

}  // namespace hsodm

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsodm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Krylov solver did not reach its tolerance. Carries the best iterate seen.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_value, std::vector<double> best_vector,
                 double best_residual, int iters)
      : Error(what),
        best_value(best_value),
        best_vector(std::move(best_vector)),
        best_residual(best_residual),
        iters(iters) {}
  double best_value;
  std::vector<double> best_vector;
  double best_residual;
  int iters;
};

// CG detected p^T A p <= 0.
class Indefinite : public Error {
 public:
  Indefinite(const std::string& what, double curvature, int iter)
      : Error(what), curvature(curvature), iter(iter) {}
  double curvature;
  int iter;
};

// A GHM solve landed on (numerically) t = 0. Carries enough to perturb phi
// without another eigensolve.
class HardCase : public Error {
 public:
  HardCase(const std::string& what, double delta, double lambda1, std::vector<double> v, double t)
      : Error(what), delta(delta), lambda1(lambda1), v(std::move(v)), t(t) {}
  double delta;
  double lambda1;         // leftmost eigenvalue of the bordered matrix (= lambda_1(H) here)
  std::vector<double> v;  // n-block of the eigenvector; spans the leftmost eigenspace of H
  double t;
};

class DegenerateInterval : public Error {
 public:
  DegenerateInterval(const std::string& what, double delta_low, double delta_high)
      : Error(what), delta_low(delta_low), delta_high(delta_high) {}
  double delta_low;
  double delta_high;
};

class AlgorithmFailure : public Error {
 public:
  using Error::Error;
};

class ConvexityViolation : public Error {
 public:
  using Error::Error;
};

class ConcordanceMisconfigured : public Error {
 public:
  using Error::Error;
};

}  // namespace hsodm

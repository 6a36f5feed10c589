// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CRROOTS_ERRORS_HPP_
#define CRROOTS_ERRORS_HPP_

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace crroots {

// Numeric values are shared with the C API status codes and the CLI exit
// codes, so they must never be renumbered.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 2,
  kParse = 3,
  kEvaluation = 4,
  kExpansionNotConverged = 5,
  kMaxDepthExceeded = 6,
  kQrBreakdown = 7,
  kNonConvergence = 8,
  kBasisBreakdown = 9,
  kIo = 10,
  kDimension = 11,
  kGeometry = 12,
  kConditioning = 13,
  kDegenerateLeadingCoefficient = 14,
  kIsotropicVector = 15,
  kOracle = 16,
  kContour = 17,
  kInternal = 99,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

  const char* what() const noexcept override {
    return context_.empty() ? std::runtime_error::what() : context_.c_str();
  }
  // Prefixes the message, e.g. with the square a failure occurred in.
  void AddContext(const std::string& context) {
    context_ = context + ": " + what();
  }
  long square_id() const { return square_id_; }
  void set_square_id(long id) { square_id_ = id; }

 private:
  ErrorCode code_;
  std::string context_;
  long square_id_ = -1;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCode::kDimension, what) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what)
      : Error(ErrorCode::kGeometry, what) {}
};

class IsotropicVector : public Error {
 public:
  IsotropicVector(std::complex<double> x1, std::complex<double> x2);
  std::complex<double> x1() const { return x1_; }
  std::complex<double> x2() const { return x2_; }

 private:
  std::complex<double> x1_, x2_;
};

// The complex norm of the freshly orthogonalized vector vanished (to working
// precision) at step `step`, i.e. beta_{step} could not be formed.
class BasisBreakdown : public Error {
 public:
  explicit BasisBreakdown(int step);
  int step() const { return step_; }

 private:
  int step_;
};

class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& what)
      : Error(ErrorCode::kConditioning, what) {}
};

class DegenerateLeadingCoefficient : public Error {
 public:
  DegenerateLeadingCoefficient()
      : Error(ErrorCode::kDegenerateLeadingCoefficient,
              "leading expansion coefficient is zero") {}
};

class QrBreakdown : public Error {
 public:
  QrBreakdown(int window_start, int position);
  int window_start() const { return window_start_; }
  int position() const { return position_; }

 private:
  int window_start_;
  int position_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(int index, int iterations);
  int index() const { return index_; }

 private:
  int index_;
};

class EvaluationError : public Error {
 public:
  // node < 0 means "not at a boundary node".
  EvaluationError(std::complex<double> z, long node = -1);
  std::complex<double> z() const { return z_; }
  long node() const { return node_; }

 private:
  std::complex<double> z_;
  long node_;
};

class ExpansionNotConverged : public Error {
 public:
  ExpansionNotConverged(int n_max, double error);
  int n_max() const { return n_max_; }
  double error() const { return error_; }

 private:
  int n_max_;
  double error_;
};

class MaxDepthExceeded : public Error {
 public:
  MaxDepthExceeded(int max_depth, std::vector<std::size_t> squares);
  const std::vector<std::size_t>& squares() const { return squares_; }

 private:
  std::vector<std::size_t> squares_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message,
             std::vector<std::string> expected = {});
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class OracleError : public Error {
 public:
  explicit OracleError(const std::string& what)
      : Error(ErrorCode::kOracle, what) {}
};

class ContourError : public Error {
 public:
  explicit ContourError(const std::string& what)
      : Error(ErrorCode::kContour, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

}  // namespace crroots

#endif  // CRROOTS_ERRORS_HPP_

// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/errors.hpp"

#include <sstream>
#include <utility>

namespace crroots {

namespace {

std::string FormatComplex(std::complex<double> z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEvaluation: return "EvaluationError";
    case ErrorCode::kExpansionNotConverged: return "ExpansionNotConverged";
    case ErrorCode::kMaxDepthExceeded: return "MaxDepthExceeded";
    case ErrorCode::kQrBreakdown: return "QrBreakdown";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kBasisBreakdown: return "BasisBreakdown";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kDimension: return "DimensionError";
    case ErrorCode::kGeometry: return "GeometryError";
    case ErrorCode::kConditioning: return "ConditioningError";
    case ErrorCode::kDegenerateLeadingCoefficient:
      return "DegenerateLeadingCoefficient";
    case ErrorCode::kIsotropicVector: return "IsotropicVector";
    case ErrorCode::kOracle: return "OracleError";
    case ErrorCode::kContour: return "ContourError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

IsotropicVector::IsotropicVector(std::complex<double> x1,
                                 std::complex<double> x2)
    : Error(ErrorCode::kIsotropicVector,
            "cannot build a complex orthogonal rotation for isotropic vector (" +
                FormatComplex(x1) + ", " + FormatComplex(x2) + ")"),
      x1_(x1),
      x2_(x2) {}

BasisBreakdown::BasisBreakdown(int step)
    : Error(ErrorCode::kBasisBreakdown,
            "complex orthogonalization broke down: complex norm of q_" +
                std::to_string(step) + " vanished"),
      step_(step) {}

QrBreakdown::QrBreakdown(int window_start, int position)
    : Error(ErrorCode::kQrBreakdown,
            "isotropic rotation in structured QR (window starting at " +
                std::to_string(window_start) + ", plane " +
                std::to_string(position) + ")"),
      window_start_(window_start),
      position_(position) {}

NonConvergence::NonConvergence(int index, int iterations)
    : Error(ErrorCode::kNonConvergence,
            "structured QR did not deflate eigenvalue " +
                std::to_string(index) + " within " +
                std::to_string(iterations) + " iterations"),
      index_(index) {}

EvaluationError::EvaluationError(std::complex<double> z, long node)
    : Error(ErrorCode::kEvaluation,
            "non-finite function value at z = " + FormatComplex(z) +
                (node >= 0 ? " (boundary node " + std::to_string(node) + ")"
                           : std::string())),
      z_(z),
      node_(node) {}

ExpansionNotConverged::ExpansionNotConverged(int n_max, double error)
    : Error(ErrorCode::kExpansionNotConverged,
            [&] {
              std::ostringstream os;
              os << "expansion did not converge up to order " << n_max
                 << " (estimated error " << error
                 << "); use the adaptive mode instead";
              return os.str();
            }()),
      n_max_(n_max),
      error_(error) {}

MaxDepthExceeded::MaxDepthExceeded(int max_depth,
                                   std::vector<std::size_t> squares)
    : Error(ErrorCode::kMaxDepthExceeded,
            [&] {
              std::ostringstream os;
              os << "subdivision exceeded depth " << max_depth << " on "
                 << squares.size() << " square(s); first ids:";
              for (std::size_t i = 0; i < squares.size() && i < 8; ++i)
                os << ' ' << squares[i];
              return os.str();
            }()),
      squares_(std::move(squares)) {}

ParseError::ParseError(std::size_t offset, const std::string& message,
                       std::vector<std::string> expected)
    : Error(ErrorCode::kParse,
            [&] {
              std::ostringstream os;
              os << "parse error at offset " << offset << ": " << message;
              if (!expected.empty()) {
                os << " (expected one of:";
                for (const auto& e : expected) os << ' ' << e;
                os << ')';
              }
              return os.str();
            }()),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace crroots

// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/SVD>
#include <json.hpp>

#include "crroots/errors.hpp"

namespace crroots {

namespace {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
constexpr double kReorthTolerance = 1e-13;

Complex Bilinear(const Complex* u, const Complex* v, const CVector& w,
                 Eigen::Index m) {
  Complex sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < m; ++i) sum += w[i] * u[i] * v[i];
  return sum;
}

// Projects v against columns 0..j of q; returns the largest coefficient.
double Reorthogonalize(const CMatrix& q, int j, const CVector& w, CVector& v) {
  const Eigen::Index m = v.size();
  double largest = 0.0;
  for (int i = 0; i <= j; ++i) {
    const Complex coef = Bilinear(v.data(), q.col(i).data(), w, m);
    largest = std::max(largest, std::abs(coef));
    v -= coef * q.col(i);
  }
  return largest;
}

double WeightedScale(const CVector& v, const CVector& w) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::abs(w[i]) * std::norm(v[i]);
  return std::sqrt(s);
}

}  // namespace

RVector RandomWeights(Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  RVector w(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::uint64_t r = gen();
    w[i] = (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
  }
  return w;
}

std::uint64_t DeriveSeed(std::uint64_t seed, int attempt) {
  return seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL;
}

CVector RecurrenceBasis::Evaluate(Complex z, int up_to) const {
  if (up_to < 0 || up_to > order())
    throw InvalidArgument("basis evaluation order " + std::to_string(up_to) +
                          " outside [0, " + std::to_string(order()) + "]");
  CVector p(up_to + 1);
  p[0] = P0();
  for (int j = 0; j < up_to; ++j) {
    Complex next = (z - alpha[j]) * p[j];
    if (j > 0) next -= beta[j - 1] * p[j - 1];
    p[j + 1] = next / beta[j];
  }
  return p;
}

OrthogonalizationResult OrthogonalizeNodes(const CVector& z,
                                           const BilinearWeights& weights,
                                           int n) {
  const Eigen::Index m = z.size();
  if (n < 0) throw InvalidArgument("basis order must be >= 0");
  if (weights.size() != m)
    throw DimensionError("orthogonalization: " + std::to_string(m) +
                         " nodes but " + std::to_string(weights.size()) +
                         " weights");
  if (m < n + 1)
    throw InvalidArgument("orthogonalization needs at least n+1 nodes");
  const CVector& w = weights.values();

  OrthogonalizationResult out;
  out.alpha.resize(n);
  out.beta.resize(n);
  out.q.resize(m, n + 1);

  CVector v = CVector::Ones(m);
  Complex b0 = std::sqrt(Bilinear(v.data(), v.data(), w, m));
  if (std::abs(b0) <= std::sqrt(kMachineEps) * WeightedScale(v, w))
    throw BasisBreakdown(0);
  out.q.col(0) = v / b0;

  for (int j = 0; j < n; ++j) {
    v = z.cwiseProduct(out.q.col(j));
    const Complex a = Bilinear(out.q.col(j).data(), v.data(), w, m);
    out.alpha[j] = a;
    v -= a * out.q.col(j);
    if (j > 0) v -= out.beta[j - 1] * out.q.col(j - 1);

    Reorthogonalize(out.q, j, w, v);
    Complex b = std::sqrt(Bilinear(v.data(), v.data(), w, m));
    double scale = WeightedScale(v, w);
    if (std::abs(b) <= std::sqrt(kMachineEps) * scale)
      throw BasisBreakdown(j + 1);
    CVector trial = v;
    if (Reorthogonalize(out.q, j, w, trial) > kReorthTolerance * std::abs(b)) {
      v = trial;
      b = std::sqrt(Bilinear(v.data(), v.data(), w, m));
      scale = WeightedScale(v, w);
      if (std::abs(b) <= std::sqrt(kMachineEps) * scale)
        throw BasisBreakdown(j + 1);
    }
    out.beta[j] = b;
    out.q.col(j + 1) = v / b;
  }
  return out;
}

RecurrenceBasis OrthogonalizeWithWeights(const BoundaryDiscretization& boundary,
                                         int n, const BilinearWeights& w) {
  OrthogonalizationResult r = OrthogonalizeNodes(boundary.z, w, n);
  RecurrenceBasis basis;
  basis.alpha = std::move(r.alpha);
  basis.beta = std::move(r.beta);
  basis.node_values = std::move(r.q);
  basis.boundary = boundary;
  basis.bilinear_weights = w.values();
  return basis;
}

RecurrenceBasis Orthogonalize(const BoundaryDiscretization& boundary, int n,
                              std::uint64_t seed) {
  RecurrenceBasis basis = OrthogonalizeWithWeights(
      boundary, n, BilinearWeights::FromReal(RandomWeights(boundary.size(), seed)));
  basis.seed = seed;
  return basis;
}

RecurrenceBasis OrthogonalizeWithRetry(const BoundaryDiscretization& boundary,
                                       int n, std::uint64_t seed,
                                       int attempts) {
  if (attempts < 1) throw InvalidArgument("need at least one attempt");
  for (int k = 0;; ++k) {
    try {
      return Orthogonalize(boundary, n, DeriveSeed(seed, k));
    } catch (const BasisBreakdown&) {
      if (k + 1 >= attempts) throw;
    }
  }
}

double OrthonormalityResidual(const RecurrenceBasis& basis) {
  const CMatrix& q = basis.node_values;
  const CVector& w = basis.bilinear_weights;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    for (Eigen::Index j = i; j < q.cols(); ++j) {
      Complex g = Bilinear(q.col(i).data(), q.col(j).data(), w, q.rows());
      if (i == j) g -= 1.0;
      worst = std::max(worst, std::abs(g));
    }
  }
  return worst;
}

double RecurrenceResidual(const RecurrenceBasis& basis) {
  const CMatrix& q = basis.node_values;
  const CVector& z = basis.boundary.z;
  const int n = basis.order();
  double worst = 0.0;
  double scale = 0.0;
  for (int j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      const Complex t0 = z[i] * q(i, j);
      const Complex t1 = basis.alpha[j] * q(i, j);
      const Complex t2 = basis.beta[j] * q(i, j + 1);
      const Complex t3 = j > 0 ? basis.beta[j - 1] * q(i, j - 1) : Complex{};
      worst = std::max(worst, std::abs(t0 - t1 - t2 - t3));
      scale = std::max(scale, std::abs(t0) + std::abs(t1) + std::abs(t2) +
                                  std::abs(t3));
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

BasisMatrix::BasisMatrix(const CMatrix& values, const RVector& w_quad) {
  const Eigen::Index m = values.rows();
  const Eigen::Index cols = values.cols();
  if (w_quad.size() != m)
    throw DimensionError("basis matrix: weights/node count mismatch");
  if (m < cols) throw InvalidArgument("basis matrix needs m >= n+1");
  g_.resize(m, cols);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(w_quad[i] >= 0.0))
      throw InvalidArgument("quadrature weights must be non-negative");
    g_.row(i) = std::sqrt(w_quad[i]) * values.row(i);
  }

  CMatrix a = g_;
  reflectors_ = CMatrix::Zero(m, cols);
  r_ = CMatrix::Zero(cols, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    auto x = a.col(k).tail(m - k);
    const double xnorm = x.norm();
    Complex alpha_k{0.0, 0.0};
    if (xnorm > 0.0) {
      const Complex x0 = x[0];
      const Complex phase = x0 == Complex{} ? Complex{1.0} : x0 / std::abs(x0);
      alpha_k = -phase * xnorm;
      CVector v = x;
      v[0] -= alpha_k;
      const double vnorm = v.norm();
      if (vnorm > 0.0) {
        v /= vnorm;
        reflectors_.col(k).tail(m - k) = v;
        auto block = a.block(k, k, m - k, cols - k);
        block -= 2.0 * v * (v.adjoint() * block);
      }
    }
    r_.row(k).tail(cols - k) = a.row(k).tail(cols - k);
    r_(k, k) = alpha_k;
  }
}

BasisMatrix::BasisMatrix(CMatrix g, CMatrix reflectors, CMatrix r)
    : g_(std::move(g)), reflectors_(std::move(reflectors)), r_(std::move(r)) {
  if (reflectors_.rows() != g_.rows() || reflectors_.cols() != g_.cols() ||
      r_.rows() != g_.cols() || r_.cols() != g_.cols())
    throw DimensionError("stored factorization does not match G");
}

CVector BasisMatrix::Solve(const CVector& g, int n) const {
  if (n < 0) n = order();
  if (n > order())
    throw InvalidArgument("expansion order " + std::to_string(n) +
                          " exceeds basis order " + std::to_string(order()));
  if (g.size() != rows())
    throw DimensionError("right-hand side has " + std::to_string(g.size()) +
                         " entries, basis matrix has " +
                         std::to_string(rows()) + " rows");
  const Eigen::Index k = n + 1;
  const double rmax = r_.diagonal().head(k).cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(std::abs(r_(i, i)) > kUnitRoundoff * k * rmax))
      throw ConditioningError("basis matrix is numerically rank deficient at column " +
                              std::to_string(i));
  }
  CVector y = g;
  for (Eigen::Index j = 0; j < k; ++j) {
    auto v = reflectors_.col(j);
    y -= 2.0 * v * (v.adjoint() * y);
  }
  return r_.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(y.head(k));
}

double BasisMatrix::RecompositionResidual() const {
  const Eigen::Index m = rows();
  const Eigen::Index cols = g_.cols();
  CMatrix qr = CMatrix::Zero(m, cols);
  qr.topRows(cols) = r_.triangularView<Eigen::Upper>();
  for (Eigen::Index j = cols - 1; j >= 0; --j) {
    auto v = reflectors_.col(j);
    qr -= 2.0 * v * (v.adjoint() * qr);
  }
  return (qr - g_).norm() / g_.norm();
}

double ConditionNumber(const BasisMatrix& bm, int n) {
  if (n < 0) n = bm.order();
  if (n > bm.order()) throw InvalidArgument("order exceeds basis order");
  Eigen::JacobiSVD<CMatrix> svd(bm.G().leftCols(n + 1));
  const auto& s = svd.singularValues();
  const double smax = s[0];
  const double smin = s[s.size() - 1];
  if (!(smin >= kUnitRoundoff * smax))
    return std::numeric_limits<double>::infinity();
  return smax / smin;
}

std::shared_ptr<const PrecomputedBasis> PrecomputeSquareBasis(
    int order, int nodes_per_edge, std::uint64_t seed) {
  BoundaryDiscretization boundary = BoundaryNodes(
      BoundaryShape::CanonicalSquare(), nodes_per_edge, Spacing::kGauss);
  auto pb = std::make_shared<PrecomputedBasis>();
  pb->basis = OrthogonalizeWithRetry(boundary, order, seed);
  pb->matrix = BasisMatrix(pb->basis);
  return pb;
}

// ---------------------------------------------------------------------------
// Cache file

namespace {

constexpr const char* kMagic = "CRBASIS v1";

void PutDouble(std::ostream& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  unsigned char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<unsigned char>(bits >> (8 * b));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

double GetDouble(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw IoError("basis cache truncated");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

void PutComplex(std::ostream& out, const Complex* data, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) {
    PutDouble(out, data[i].real());
    PutDouble(out, data[i].imag());
  }
}

void GetComplex(std::istream& in, Complex* data, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) {
    const double re = GetDouble(in);
    data[i] = Complex(re, GetDouble(in));
  }
}

nlohmann::json Section(const char* name, const char* type, Eigen::Index rows,
                       Eigen::Index cols) {
  return {{"name", name}, {"type", type}, {"rows", rows}, {"cols", cols}};
}

}  // namespace

void WriteBasisCache(const PrecomputedBasis& pb, std::ostream& out) {
  const RecurrenceBasis& b = pb.basis;
  const BoundaryDiscretization& bd = b.boundary;
  const Eigen::Index m = b.nodes();
  const Eigen::Index n = b.order();

  nlohmann::json shape;
  shape["name"] = bd.shape.name;
  if (bd.shape.kind == BoundaryShape::Kind::kCircle) {
    shape["kind"] = "circle";
    shape["center"] = {bd.shape.center.real(), bd.shape.center.imag()};
    shape["radius"] = bd.shape.radius;
  } else {
    shape["kind"] = "polygon";
    nlohmann::json verts = nlohmann::json::array();
    for (const Complex& v : bd.shape.vertices) verts.push_back({v.real(), v.imag()});
    shape["vertices"] = verts;
  }
  shape["approximate"] = bd.shape.approximate;

  nlohmann::json header;
  header["shape"] = shape;
  header["spacing"] = SpacingName(bd.spacing);
  header["nodes_per_edge"] = bd.nodes_per_edge;
  header["seed"] = b.seed;
  header["m"] = m;
  header["n"] = n;
  header["endianness"] = "little";
  header["sections"] = {
      Section("nodes", "complex128", m, 1),
      Section("quadrature_weights", "float64", m, 1),
      Section("bilinear_weights", "complex128", m, 1),
      Section("alpha", "complex128", n, 1),
      Section("beta", "complex128", n, 1),
      Section("node_values", "complex128", m, n + 1),
      Section("qr_reflectors", "complex128", m, n + 1),
      Section("qr_r", "complex128", n + 1, n + 1),
  };

  out << kMagic << '\n' << header.dump() << '\n';
  PutComplex(out, bd.z.data(), m);
  for (Eigen::Index i = 0; i < m; ++i) PutDouble(out, bd.w_quad[i]);
  PutComplex(out, b.bilinear_weights.data(), m);
  PutComplex(out, b.alpha.data(), n);
  PutComplex(out, b.beta.data(), n);
  PutComplex(out, b.node_values.data(), b.node_values.size());
  PutComplex(out, pb.matrix.reflectors().data(), pb.matrix.reflectors().size());
  PutComplex(out, pb.matrix.R().data(), pb.matrix.R().size());
  if (!out) throw IoError("failed writing basis cache");
}

void SaveBasisCache(const PrecomputedBasis& pb, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteBasisCache(pb, out);
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::shared_ptr<const PrecomputedBasis> ReadBasisCache(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic)) throw IoError("empty basis cache");
  if (magic != kMagic)
    throw IoError("not a basis cache (expected '" + std::string(kMagic) +
                  "', found '" + magic.substr(0, 32) + "')");
  std::string line;
  if (!std::getline(in, line)) throw IoError("basis cache header missing");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed basis cache header: ") + e.what());
  }

  auto pb = std::make_shared<PrecomputedBasis>();
  RecurrenceBasis& b = pb->basis;
  try {
    const Eigen::Index m = header.at("m").get<Eigen::Index>();
    const Eigen::Index n = header.at("n").get<Eigen::Index>();
    if (m < 1 || n < 0 || m < n + 1) throw IoError("invalid basis cache sizes");
    const auto& shape = header.at("shape");
    if (shape.at("kind") == "circle") {
      const auto& c = shape.at("center");
      b.boundary.shape = BoundaryShape::Circle(
          Complex(c.at(0).get<double>(), c.at(1).get<double>()),
          shape.at("radius").get<double>());
    } else {
      std::vector<Complex> verts;
      for (const auto& v : shape.at("vertices"))
        verts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      b.boundary.shape = BoundaryShape::Polygon(std::move(verts));
    }
    b.boundary.shape.name = shape.at("name").get<std::string>();
    b.boundary.shape.approximate = shape.value("approximate", false);
    b.boundary.spacing = ParseSpacing(header.at("spacing").get<std::string>());
    b.boundary.nodes_per_edge = header.at("nodes_per_edge").get<int>();
    b.seed = header.at("seed").get<std::uint64_t>();

    b.boundary.z.resize(m);
    b.boundary.w_quad.resize(m);
    b.bilinear_weights.resize(m);
    b.alpha.resize(n);
    b.beta.resize(n);
    b.node_values.resize(m, n + 1);
    CMatrix reflectors(m, n + 1);
    CMatrix r(n + 1, n + 1);

    GetComplex(in, b.boundary.z.data(), m);
    for (Eigen::Index i = 0; i < m; ++i) b.boundary.w_quad[i] = GetDouble(in);
    GetComplex(in, b.bilinear_weights.data(), m);
    GetComplex(in, b.alpha.data(), n);
    GetComplex(in, b.beta.data(), n);
    GetComplex(in, b.node_values.data(), b.node_values.size());
    GetComplex(in, reflectors.data(), reflectors.size());
    GetComplex(in, r.data(), r.size());
    if (in.peek() != std::char_traits<char>::eof())
      throw IoError("trailing bytes after basis cache payload");

    CMatrix g = b.node_values;
    for (Eigen::Index i = 0; i < m; ++i)
      g.row(i) *= std::sqrt(b.boundary.w_quad[i]);
    pb->matrix = BasisMatrix(std::move(g), std::move(reflectors), std::move(r));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed basis cache header: ") + e.what());
  }
  return pb;
}

std::shared_ptr<const PrecomputedBasis> LoadBasisCache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadBasisCache(in);
}

}  // namespace crroots

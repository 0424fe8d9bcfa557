#include "ncball/mattuple.hpp"

#include <cmath>
#include <limits>

#include "ncball/errors.hpp"
#include "ncball/freepoly.hpp"

namespace ncball {

MatrixTuple::MatrixTuple(std::vector<CMatrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InvalidArgument("matrix tuple needs d >= 1");
  const Index n = matrices_.front().rows();
  if (n < 1) throw InvalidArgument("matrix tuple needs n >= 1");
  for (const auto& m : matrices_)
    if (m.rows() != n || m.cols() != n)
      throw InvalidArgument("all coordinates of a tuple must be " + std::to_string(n) + "x" +
                            std::to_string(n));
}

MatrixTuple MatrixTuple::zero(std::size_t d, Index n) {
  return MatrixTuple(std::vector<CMatrix>(d, CMatrix::Zero(n, n)));
}

MatrixTuple MatrixTuple::scalar(std::span<const cplx> point) {
  std::vector<CMatrix> ms;
  for (cplx c : point) ms.push_back(CMatrix::Constant(1, 1, c));
  return MatrixTuple(std::move(ms));
}

MatrixTuple MatrixTuple::operator*(cplx c) const {
  std::vector<CMatrix> out;
  for (const auto& m : matrices_) out.push_back(c * m);
  return MatrixTuple(std::move(out));
}

namespace {

void require_same_shape(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.d() != y.d() || x.n() != y.n())
    throw DimensionMismatch("tuples of shape (d=" + std::to_string(x.d()) +
                            ", n=" + std::to_string(x.n()) + ") and (d=" + std::to_string(y.d()) +
                            ", n=" + std::to_string(y.n()) + ")");
}

}  // namespace

MatrixTuple MatrixTuple::operator+(const MatrixTuple& rhs) const {
  require_same_shape(*this, rhs);
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < d(); ++j) out.push_back(matrices_[j] + rhs.matrices_[j]);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::operator-(const MatrixTuple& rhs) const { return *this + rhs * cplx(-1.0); }

bool MatrixTuple::operator==(const MatrixTuple& rhs) const {
  if (d() != rhs.d() || n() != rhs.n()) return false;
  for (std::size_t j = 0; j < d(); ++j)
    if (matrices_[j] != rhs.matrices_[j]) return false;
  return true;
}

double max_distance(const MatrixTuple& x, const MatrixTuple& y) {
  require_same_shape(x, y);
  double out = 0.0;
  for (std::size_t j = 0; j < x.d(); ++j) out = std::max(out, linalg::op_norm(x[j] - y[j]));
  return out;
}

CMatrix row_gram(const MatrixTuple& x) {
  CMatrix g = CMatrix::Zero(x.n(), x.n());
  for (const auto& m : x.matrices()) g.noalias() += m * m.adjoint();
  return g;
}

double row_norm(const MatrixTuple& x) {
  return std::sqrt(std::max(0.0, linalg::hermitian_max_eigenvalue(row_gram(x))));
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.d() != y.d())
    throw DimensionMismatch("direct sum of tuples with d=" + std::to_string(x.d()) + " and d=" +
                            std::to_string(y.d()));
  const Index n = x.n(), m = y.n();
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < x.d(); ++j) {
    CMatrix b = CMatrix::Zero(n + m, n + m);
    b.topLeftCorner(n, n) = x[j];
    b.bottomRightCorner(m, m) = y[j];
    out.push_back(std::move(b));
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple direct_sum_power(const MatrixTuple& x, std::size_t m) {
  if (m == 0) throw InvalidArgument("direct sum power needs m >= 1");
  const Index n = x.n();
  const Index size = n * static_cast<Index>(m);
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < x.d(); ++j) {
    CMatrix b = CMatrix::Zero(size, size);
    for (std::size_t c = 0; c < m; ++c) b.block(c * n, c * n, n, n) = x[j];
    out.push_back(std::move(b));
  }
  return MatrixTuple(std::move(out));
}

Conjugation conjugate_checked(const MatrixTuple& x, const CMatrix& s, const Config& cfg) {
  if (s.rows() != x.n() || s.cols() != x.n())
    throw DimensionMismatch("similarity must be " + std::to_string(x.n()) + "x" +
                            std::to_string(x.n()));
  const double cond = linalg::condition_number(s);
  if (!std::isfinite(cond) || cond * std::numeric_limits<double>::epsilon() >= 1.0)
    throw SingularMatrix("similarity is numerically singular (condition number " +
                         std::to_string(cond) + ")");
  Eigen::PartialPivLU<CMatrix> lu(s);
  std::vector<CMatrix> out;
  for (const auto& m : x.matrices()) out.push_back(lu.solve(m * s));
  return Conjugation{MatrixTuple(std::move(out)), cond, cond > cfg.cond_cap};
}

MatrixTuple conjugate(const MatrixTuple& x, const CMatrix& s, const Config& cfg) {
  return conjugate_checked(x, s, cfg).tuple;
}

MatrixTuple amplification(const MatrixTuple& x, std::size_t k, const Config& cfg) {
  if (k == 0) throw InvalidArgument("amplification order must be >= 1");
  double count = std::pow(static_cast<double>(x.d()), static_cast<double>(k));
  if (count > static_cast<double>(cfg.amplification_cap))
    throw CapExceeded("amplification would have " + std::to_string(count) +
                      " coordinates (cap " + std::to_string(cfg.amplification_cap) + ")");
  if (k == 1) return x;
  // Products are built level by level: X^{w g} = X^w X_g, which follows
  // canonical order because the last letter varies fastest.
  std::vector<CMatrix> level(x.matrices().begin(), x.matrices().end());
  for (std::size_t len = 2; len <= k; ++len) {
    std::vector<CMatrix> next;
    next.reserve(level.size() * x.d());
    for (const auto& prefix : level)
      for (const auto& g : x.matrices()) next.push_back(prefix * g);
    level = std::move(next);
  }
  return MatrixTuple(std::move(level));
}

CPMatrix cp_matrix(const MatrixTuple& x) {
  const Index n = x.n();
  CMatrix mat = CMatrix::Zero(n * n, n * n);
  for (const auto& m : x.matrices()) mat += linalg::kron(m, m.conjugate());
  return CPMatrix{n, std::move(mat)};
}

CMatrix apply_cp(const MatrixTuple& x, const CMatrix& t) {
  CMatrix out = CMatrix::Zero(x.n(), x.n());
  for (const auto& m : x.matrices()) out.noalias() += m * t * m.adjoint();
  return out;
}

bool is_coisometry(const MatrixTuple& x, double tol) {
  const CMatrix defect = row_gram(x) - CMatrix::Identity(x.n(), x.n());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(defect, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff() <= tol;
}

MatrixTuple linear_change(const CMatrix& a, const MatrixTuple& x) {
  if (a.cols() != static_cast<Index>(x.d()))
    throw DimensionMismatch("coordinate map has " + std::to_string(a.cols()) +
                            " columns but tuple has d=" + std::to_string(x.d()));
  std::vector<CMatrix> out;
  for (Index i = 0; i < a.rows(); ++i) {
    CMatrix acc = CMatrix::Zero(x.n(), x.n());
    for (std::size_t j = 0; j < x.d(); ++j) acc += a(i, static_cast<Index>(j)) * x[j];
    out.push_back(std::move(acc));
  }
  return MatrixTuple(std::move(out));
}

}  // namespace ncball

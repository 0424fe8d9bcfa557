#include "ncball/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ncball::linalg {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector vec_rows(const CMatrix& t) {
  CVector v(t.size());
  for (Index i = 0; i < t.rows(); ++i)
    for (Index j = 0; j < t.cols(); ++j) v(i * t.cols() + j) = t(i, j);
  return v;
}

CMatrix unvec_rows(const CVector& v, Index rows, Index cols) {
  CMatrix t(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) t(i, j) = v(i * cols + j);
  return t;
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  if (std::min(m.rows(), m.cols()) <= 16) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_max_eigenvalue(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

double hermitian_min_eigenvalue(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CVector eigenvalues(const CMatrix& m) {
  if (m.size() == 0) return CVector();
  Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues();
}

double spectral_radius(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

double condition_number(const CMatrix& s) {
  if (s.size() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(s);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

CMatrix psd_sqrt(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix column_space(const CMatrix& cols, double rel_tol) {
  if (cols.size() == 0) return CMatrix(cols.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return CMatrix(cols.rows(), 0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

CMatrix null_space(const CMatrix& k, double rel_tol, double scale) {
  const Index n = k.cols();
  if (k.rows() == 0) return CMatrix::Identity(n, n);
  // Pad short matrices so the thin V is square.
  CMatrix padded = k;
  if (k.rows() < n) {
    padded = CMatrix::Zero(n, n);
    padded.topRows(k.rows()) = k;
  }
  Eigen::BDCSVD<CMatrix> svd(padded, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double threshold = rel_tol * std::max(sv.size() ? sv(0) : 0.0, scale);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

CMatrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0));
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ncball::linalg

#include "steerdet/matcore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "steerdet/error.hpp"

namespace steerdet {

ValidationError::ValidationError(const std::string& invariant, double residual)
    : Error(invariant + " (residual " + std::to_string(residual) + ")"),
      invariant_(invariant),
      residual_(residual) {}

namespace {

void require_cap(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be >= 1");
  if (rows > kMaxDim || cols > kMaxDim) {
    throw DimensionError("matrix dimension " + std::to_string(std::max(rows, cols)) +
                         " exceeds cap of " + std::to_string(kMaxDim));
  }
}

void require_bipartite(const CMatrix& m, const BipartiteDims& dims) {
  check_dims(dims);
  if (!m.square() || m.rows() != dims.total()) {
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " but dims are " + std::to_string(dims.a) + "x" + std::to_string(dims.b));
  }
}

}  // namespace

void check_dims(const BipartiteDims& dims) {
  if (dims.a == 0 || dims.b == 0) throw DimensionError("subsystem dimensions must be >= 1");
  if (dims.total() > kMaxDim) {
    throw DimensionError("total dimension " + std::to_string(dims.total()) + " exceeds cap of " +
                         std::to_string(kMaxDim));
  }
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require_cap(rows, cols);
  data_.assign(rows * cols, cplx{0.0, 0.0});
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  require_cap(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(const std::vector<cplx>& d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::projector(const std::vector<cplx>& v) {
  CMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

CMatrix CMatrix::conj() const {
  CMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

cplx CMatrix::trace() const {
  if (!square()) throw DimensionError("trace of non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("shape mismatch in matrix product");
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace pauli {
CMatrix I() { return CMatrix::identity(2); }
CMatrix X() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix Y() { return CMatrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
CMatrix Z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch in diff");
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

double hermiticity_residual(const CMatrix& m) {
  if (!m.square()) throw DimensionError("hermiticity of non-square matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < q; ++c) out(i * p + r, j * q + c) = a(i, j) * b(r, c);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const BipartiteDims& dims, Subsystem traced) {
  require_bipartite(m, dims);
  const std::size_t da = dims.a, db = dims.b;
  if (traced == Subsystem::B) {
    CMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  CMatrix out(db, db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l)
      for (std::size_t i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

CMatrix partial_transpose(const CMatrix& m, const BipartiteDims& dims, Subsystem which) {
  require_bipartite(m, dims);
  const std::size_t da = dims.a, db = dims.b;
  CMatrix out(m.rows(), m.cols());
  // <i k| m |j l>  ->  <j k| . |i l> (A)  or  <i l| . |j k> (B)
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          const cplx v = m(i * db + k, j * db + l);
          if (which == Subsystem::A)
            out(j * db + k, i * db + l) = v;
          else
            out(i * db + l, j * db + k) = v;
        }
  return out;
}

namespace {

Eigen::MatrixXcd symmetrized(const CMatrix& m) {
  if (!m.square()) throw DimensionError("eigenvalues of non-square matrix");
  const double res = hermiticity_residual(m);
  if (res > kHermitianTol) throw ValidationError("matrix is not Hermitian", res);
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  return (e + e.adjoint()) * 0.5;
}

}  // namespace

std::vector<double> herm_eigvals(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

HermEigen herm_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(symmetrized(m), Eigen::ComputeEigenvectors);
  // Eigen already returns ascending eigenvalues.
  HermEigen out;
  const auto n = solver.eigenvalues().size();
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values.push_back(solver.eigenvalues()(k));
    const auto col = solver.eigenvectors().col(k);
    out.vectors.emplace_back(col.data(), col.data() + col.size());
  }
  return out;
}

}  // namespace steerdet

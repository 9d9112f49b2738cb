#pragma once

// Dense complex matrices for small bipartite systems (total dimension <= 16).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace steerdet {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDim = 16;
inline constexpr double kHermitianTol = 1e-10;

enum class Subsystem { A, B };

/// Tensor-factor bookkeeping for a d_A x d_B system.
struct BipartiteDims {
  std::size_t a = 2;
  std::size_t b = 2;

  std::size_t total() const noexcept { return a * b; }
  std::size_t of(Subsystem s) const noexcept { return s == Subsystem::A ? a : b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Checks d_A, d_B >= 1 and d_A*d_B <= kMaxDim; throws DimensionError.
void check_dims(const BipartiteDims& dims);

class CMatrix {
 public:
  CMatrix(std::size_t rows, std::size_t cols);
  /// Row-major nested initializer: CMatrix{{1, 0}, {0, 1}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diag(const std::vector<cplx>& d);
  /// |v><v| for a column vector v.
  static CMatrix projector(const std::vector<cplx>& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<cplx>& data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  cplx trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
}  // namespace pauli

/// Largest elementwise |a - b|; throws DimensionError on shape mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
/// Largest elementwise |m - m^dagger|.
double hermiticity_residual(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out `traced`; returns the reduced matrix on the other factor.
CMatrix partial_trace(const CMatrix& m, const BipartiteDims& dims, Subsystem traced);

/// Transposes the indices of the `which` tensor factor.
CMatrix partial_transpose(const CMatrix& m, const BipartiteDims& dims, Subsystem which);

/// Ascending eigenvalues of a Hermitian matrix. Inputs within kHermitianTol of
/// Hermitian are symmetrized first; anything further off throws ValidationError.
std::vector<double> herm_eigvals(const CMatrix& m);

struct HermEigen {
  std::vector<double> values;         // ascending
  std::vector<std::vector<cplx>> vectors;  // vectors[k] pairs with values[k]
};

HermEigen herm_eig(const CMatrix& m);

}  // namespace steerdet

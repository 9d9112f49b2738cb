#pragma once

// Shared fixtures for the unit tests. Helpers here build matrices by hand so
// they stay independent of the code under test.

#include <cmath>
#include <complex>
#include <vector>

#include "steerdet/matcore.hpp"
#include "steerdet/states.hpp"

namespace testsupport {

using steerdet::CMatrix;
using steerdet::cplx;

inline CMatrix from_real(const std::vector<std::vector<double>>& rows) {
  CMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// |a><b| style outer product of two explicit vectors.
inline CMatrix outer(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// Singlet (|01> - |10>)/sqrt2 written out entry by entry.
inline CMatrix singlet_by_hand() {
  return from_real({{0, 0, 0, 0}, {0, 0.5, -0.5, 0}, {0, -0.5, 0.5, 0}, {0, 0, 0, 0}});
}

inline CMatrix maximally_mixed(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / static_cast<double>(n);
  return m;
}

// Werner state p |psi-><psi-| + (1-p) I/4, by hand.
inline CMatrix werner_by_hand(double p) {
  CMatrix m = maximally_mixed(4);
  const CMatrix s = singlet_by_hand();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = p * s(i, j) + (1.0 - p) * m(i, j);
  return m;
}

// Closed-form Werner PT spectrum: {(1+p)/4 x3, (1-3p)/4}.
inline double werner_pt_min(double p) { return (1.0 - 3.0 * p) / 4.0; }

}  // namespace testsupport

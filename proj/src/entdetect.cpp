#include "steerdet/entdetect.hpp"

#include <algorithm>
#include <cmath>

#include "steerdet/error.hpp"

namespace steerdet {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.dims() != BipartiteDims{2, 2}) throw DimensionError(std::string(what) + " needs a 2x2 state");
}

double negativity_of(const std::vector<double>& eig) {
  double n = 0.0;
  for (double e : eig)
    if (e < 0.0) n -= e;
  return n;
}

}  // namespace

std::string_view method_name(EntanglementMethod m) { return m == EntanglementMethod::ppt ? "ppt" : "spa"; }

EntanglementReport ppt_report(const DensityMatrix& rho) {
  const auto eig = herm_eigvals(partial_transpose(rho.mat(), rho.dims(), Subsystem::B));
  EntanglementReport r;
  r.min_pt_eig = eig.front();
  r.negativity = negativity_of(eig);
  r.entangled = r.min_pt_eig < -kVerdictTol;
  r.method = EntanglementMethod::ppt;
  return r;
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const CMatrix yy = kron(pauli::Y(), pauli::Y());
  const CMatrix flipped = yy * rho.mat().conj() * yy;
  // rho * flipped is similar to the Hermitian sqrt(rho) flipped sqrt(rho), so
  // its eigenvalues are real and non-negative. Compute them from that form.
  const HermEigen e = herm_eig(rho.mat());
  CMatrix sqrt_rho(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double s = std::sqrt(std::max(e.values[k], 0.0));
    if (s == 0.0) continue;
    sqrt_rho += s * CMatrix::projector(e.vectors[k]);
  }
  CMatrix r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint());
  auto eig = herm_eigvals(r);
  std::vector<double> lam;
  for (double v : eig) lam.push_back(std::sqrt(std::max(v, 0.0)));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

DensityMatrix spa_map(const DensityMatrix& tau) {
  require_two_qubits(tau, "spa_map");
  const CMatrix pt = partial_transpose(tau.mat(), tau.dims(), Subsystem::B);
  return DensityMatrix::validate(kSpaShift * CMatrix::identity(4) + kSpaScale * pt, tau.dims());
}

EntanglementReport spa_report(const DensityMatrix& tau) {
  const DensityMatrix lambda = spa_map(tau);
  const auto eig = herm_eigvals(lambda.mat());
  EntanglementReport r;
  r.method = EntanglementMethod::spa;
  r.spa_min_eig = eig.front();
  // Undo the affine shift to report the partial-transpose spectrum as well.
  std::vector<double> pt_eig;
  for (double v : eig) pt_eig.push_back((v - kSpaShift) / kSpaScale);
  r.min_pt_eig = pt_eig.front();
  r.negativity = negativity_of(pt_eig);
  r.entangled = eig.front() < kSpaShift - kSpaScale * kVerdictTol;
  return r;
}

}  // namespace steerdet

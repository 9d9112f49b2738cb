#pragma once

#include <optional>
#include <string_view>

#include "steerdet/states.hpp"

namespace steerdet {

/// Eigenvalues inside (-kVerdictTol, kVerdictTol) count as zero: no detection.
inline constexpr double kVerdictTol = 1e-10;

/// Shift and scale of the structural physical approximation to partial transposition:
/// Lambda(tau) = (2/9) I + (1/9) PT(tau) on two qubits.
inline constexpr double kSpaShift = 2.0 / 9.0;
inline constexpr double kSpaScale = 1.0 / 9.0;

enum class EntanglementMethod { ppt, spa };

std::string_view method_name(EntanglementMethod m);

struct EntanglementReport {
  bool entangled = false;
  double min_pt_eig = 0.0;  // smallest eigenvalue of the partial transpose on B
  double negativity = 0.0;  // sum of |negative PT eigenvalues|
  EntanglementMethod method = EntanglementMethod::ppt;
  std::optional<double> spa_min_eig;  // smallest eigenvalue of Lambda(tau), spa only
};

/// Peres-Horodecki test. Exact for 2x2 and 2x3; for larger systems a
/// negative eigenvalue certifies entanglement and `false` means "not detected".
EntanglementReport ppt_report(const DensityMatrix& rho);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

DensityMatrix spa_map(const DensityMatrix& tau);

/// Entangled iff the smallest eigenvalue of spa_map(tau) is below 2/9.
EntanglementReport spa_report(const DensityMatrix& tau);

}  // namespace steerdet

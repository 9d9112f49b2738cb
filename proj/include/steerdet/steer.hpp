#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include "steerdet/entdetect.hpp"
#include "steerdet/states.hpp"

namespace steerdet {

/// Largest admissible mixing weight, 1/sqrt(3).
inline const double kMaxMu = 1.0 / std::sqrt(3.0);
inline constexpr double kMuSlack = 1e-12;

/// BtoA: Bob steers Alice (Bob must be a qubit). AtoB: Alice steers Bob.
enum class Direction { BtoA, AtoB };

std::string_view direction_name(Direction d);

struct SteeringMapParams {
  double mu = kMaxMu;
  Direction direction = Direction::BtoA;
};

/// BtoA: mu rho + (1-mu) rho_A x I/2.  AtoB: mu rho + (1-mu) I/2 x rho_B.
/// The noise is always added on the untrusted (steering) qubit, so the trusted
/// side's marginal is unchanged.
DensityMatrix steering_map(const DensityMatrix& rho, const SteeringMapParams& params);

enum class Verdict { detected, not_detected, not_applicable };

std::string_view verdict_name(Verdict v);

struct DirectionReport {
  Verdict verdict = Verdict::not_applicable;
  std::optional<double> witness_min_eig;  // PT minimum eigenvalue of the mixed state
};

struct SteeringReport {
  DirectionReport b_to_a;
  DirectionReport a_to_b;
  double mu_used = 0.0;
  std::optional<double> ls2_value;  // two-qubit inputs only
  std::optional<double> ls3_value;

  const DirectionReport& get(Direction d) const { return d == Direction::BtoA ? b_to_a : a_to_b; }
};

/// Runs the PPT test on each applicable steering map. Non-detection is
/// inconclusive; it never certifies unsteerability.
SteeringReport thm1_verdict(const DensityMatrix& rho, double mu = kMaxMu);

/// Verdict for a single direction; not_applicable when the steering side is not a qubit.
DirectionReport thm1_direction(const DensityMatrix& rho, Direction d, double mu = kMaxMu);

/// Maximal value of the n-settings linear steering inequality (n = 2 or 3) in
/// correlation-only form: sqrt of the sum of the n largest eigenvalues of T^T T.
/// Values above 1 + kVerdictTol mean the inequality is violated.
double ls_value(const DensityMatrix& rho, int n_settings);

/// Unnormalized state of the other party after `effect` clicks on `measured`:
/// Tr_measured[(effect x I) rho] (or I x effect). Trace is the click probability.
CMatrix conditional_state(const DensityMatrix& rho, const CMatrix& effect, Subsystem measured);

/// Checks 0 <= effect <= I within kStateTol; throws ValidationError otherwise.
void check_povm_element(const CMatrix& effect);

/// Computes Bob's conditional state of the BtoA steering map two ways: directly,
/// and from the Pauli decomposition built out of joint probabilities on rho.
/// Returns the largest elementwise difference.
double eq18_consistency(const DensityMatrix& rho, const CMatrix& effect, double mu);

}  // namespace steerdet

#include "steerdet/steer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steerdet/error.hpp"

namespace steerdet {

std::string_view direction_name(Direction d) { return d == Direction::BtoA ? "BtoA" : "AtoB"; }

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::detected: return "detected";
    case Verdict::not_detected: return "not_detected";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "?";
}

namespace {

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu <= kMaxMu + kMuSlack)) {
    throw DomainError("mu = " + std::to_string(mu) + " outside [0, 1/sqrt(3)]");
  }
}

// The steering party must be a qubit: Bob for BtoA, Alice for AtoB.
bool applicable(const BipartiteDims& dims, Direction d) { return (d == Direction::BtoA ? dims.b : dims.a) == 2; }

}  // namespace

DensityMatrix steering_map(const DensityMatrix& rho, const SteeringMapParams& params) {
  check_mu(params.mu);
  const auto& dims = rho.dims();
  if (!applicable(dims, params.direction)) {
    throw DimensionError(std::string(direction_name(params.direction)) + " steering map needs a qubit on the " +
                         (params.direction == Direction::BtoA ? "B" : "A") + " side");
  }
  const CMatrix half_i = CMatrix::identity(2) * 0.5;
  const CMatrix noise = params.direction == Direction::BtoA ? kron(rho.marginal(Subsystem::A), half_i)
                                                            : kron(half_i, rho.marginal(Subsystem::B));
  return DensityMatrix::validate(params.mu * rho.mat() + (1.0 - params.mu) * noise, dims);
}

DirectionReport thm1_direction(const DensityMatrix& rho, Direction d, double mu) {
  check_mu(mu);
  DirectionReport r;
  if (!applicable(rho.dims(), d)) return r;
  const EntanglementReport e = ppt_report(steering_map(rho, {mu, d}));
  r.verdict = e.entangled ? Verdict::detected : Verdict::not_detected;
  r.witness_min_eig = e.min_pt_eig;
  return r;
}

SteeringReport thm1_verdict(const DensityMatrix& rho, double mu) {
  check_mu(mu);
  if (!applicable(rho.dims(), Direction::BtoA) && !applicable(rho.dims(), Direction::AtoB)) {
    throw DimensionError("steering test needs at least one qubit subsystem");
  }
  SteeringReport r;
  r.mu_used = mu;
  r.b_to_a = thm1_direction(rho, Direction::BtoA, mu);
  r.a_to_b = thm1_direction(rho, Direction::AtoB, mu);
  if (rho.dims() == BipartiteDims{2, 2}) {
    r.ls2_value = ls_value(rho, 2);
    r.ls3_value = ls_value(rho, 3);
  }
  return r;
}

double ls_value(const DensityMatrix& rho, int n_settings) {
  if (n_settings != 2 && n_settings != 3) throw DomainError("linear steering inequality needs 2 or 3 settings");
  const CorrelationMatrix t = correlation_matrix(rho);
  CMatrix tt(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
      tt(i, j) = s;
    }
  const auto eig = herm_eigvals(tt);  // ascending
  double sum = 0.0;
  for (int k = 0; k < n_settings; ++k) sum += eig[2 - k];
  return std::sqrt(std::max(sum, 0.0));
}

void check_povm_element(const CMatrix& effect) {
  if (!effect.square()) throw DimensionError("POVM element must be square");
  const double herm = hermiticity_residual(effect);
  if (herm > kStateTol) throw ValidationError("POVM element not Hermitian", herm);
  const auto eig = herm_eigvals(effect);
  if (eig.front() < -kStateTol) throw ValidationError("POVM element not positive", eig.front());
  if (eig.back() > 1.0 + kStateTol) throw ValidationError("POVM element exceeds identity", eig.back() - 1.0);
}

CMatrix conditional_state(const DensityMatrix& rho, const CMatrix& effect, Subsystem measured) {
  const auto& dims = rho.dims();
  if (effect.rows() != dims.of(measured)) {
    throw DimensionError("effect dimension " + std::to_string(effect.rows()) + " does not match subsystem dimension " +
                         std::to_string(dims.of(measured)));
  }
  check_povm_element(effect);
  const CMatrix lifted =
      measured == Subsystem::A ? kron(effect, CMatrix::identity(dims.b)) : kron(CMatrix::identity(dims.a), effect);
  return partial_trace(lifted * rho.mat(), dims, measured);
}

double eq18_consistency(const DensityMatrix& rho, const CMatrix& effect, double mu) {
  if (rho.dims() != BipartiteDims{2, 2}) throw DimensionError("conditional-state identity needs a 2x2 state");
  check_mu(mu);
  check_povm_element(effect);

  const CMatrix direct = conditional_state(steering_map(rho, {mu, Direction::BtoA}), effect, Subsystem::A);

  // Joint probabilities on rho itself: P(a) and P(a, + | k) for Bob measuring sigma_k.
  auto joint = [&](const CMatrix& bob_effect) { return (kron(effect, bob_effect) * rho.mat()).trace().real(); };
  const CMatrix id = pauli::I();
  const double p_a = joint(id);
  const CMatrix sigmas[3] = {pauli::X(), pauli::Y(), pauli::Z()};

  CMatrix decomposed = (p_a / 2.0) * id;
  for (const auto& s : sigmas) {
    const CMatrix plus = 0.5 * (id + s);
    decomposed += (mu * (joint(plus) - p_a / 2.0)) * s;
  }
  return max_abs_diff(direct, decomposed);
}

}  // namespace steerdet

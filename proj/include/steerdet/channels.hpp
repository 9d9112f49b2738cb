#pragma once

#include <vector>

#include "steerdet/matcore.hpp"
#include "steerdet/states.hpp"

namespace steerdet {

inline constexpr double kCompletenessTol = 1e-10;

/// Finite Kraus representation of a CPTP map from in_dim to out_dim.
/// Operators are out_dim x in_dim; completeness sum K^dagger K = I is
/// checked on construction.
class KrausChannel {
 public:
  KrausChannel(std::vector<CMatrix> ops, std::size_t in_dim, std::size_t out_dim);

  const std::vector<CMatrix>& ops() const noexcept { return ops_; }
  std::size_t in_dim() const noexcept { return in_dim_; }
  std::size_t out_dim() const noexcept { return out_dim_; }

  /// max |sum K^dagger K - I| entry.
  double completeness_residual() const;

 private:
  std::vector<CMatrix> ops_;
  std::size_t in_dim_;
  std::size_t out_dim_;
};

KrausChannel identity_channel(std::size_t dim);

/// K0 = sqrt(1+3p)/2 I, K_{1,2,3} = sqrt(1-p)/2 sigma_{x,y,z}. Output is
/// p rho + (1-p) I/2; p = 1 is the identity channel.
KrausChannel depolarizing(double p);

/// E0 = |0><0| + sqrt(1-p)|1><1|, E1 = sqrt(p)|0><1|.
KrausChannel amplitude_damping(double p);

/// Qubit -> qutrit loss: rho -> (1-mu) embed(rho) + mu |v><v|, with the
/// vacuum |v> as the third basis vector.
KrausChannel lossy(double mu);

/// Applies the channel to one tensor factor. The result is re-validated and
/// a failure throws ValidationError rather than being renormalized.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho, Subsystem target);

}  // namespace steerdet

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "steerdet/matcore.hpp"

namespace steerdet {

inline constexpr double kStateTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix with its bipartite split.
/// Only obtainable through validate(), so holding one means the invariants held.
class DensityMatrix {
 public:
  /// Throws DimensionError or ValidationError naming the violated invariant.
  static DensityMatrix validate(const CMatrix& m, const BipartiteDims& dims);

  const CMatrix& mat() const noexcept { return mat_; }
  const BipartiteDims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return mat_.rows(); }

  /// Reduced state on the kept subsystem.
  CMatrix marginal(Subsystem kept) const;

 private:
  DensityMatrix(CMatrix m, BipartiteDims d) : mat_(std::move(m)), dims_(d) {}

  CMatrix mat_;
  BipartiteDims dims_;
};

enum class Family { werner, munro, werner_derivative, nmems, msms, one_way, amp_damp_bell, lossy_werner };

std::string_view family_name(Family f);
/// Throws InputError for unknown names.
Family family_from_name(std::string_view name);
std::vector<Family> all_families();

struct ParamRange {
  std::string name;
  double lo;
  double hi;
};

/// Parameters of a family with their admissible closed intervals, in declaration order.
std::vector<ParamRange> family_params(Family f);

struct FamilySpec {
  Family family = Family::werner;
  std::map<std::string, double> params;
};

/// Builds the family state. Throws DomainError on missing, unknown or out-of-range params.
DensityMatrix make_family(const FamilySpec& spec);

// Direct constructors; each validates its arguments like make_family.
DensityMatrix werner(double p);
DensityMatrix munro(double concurrence);
DensityMatrix werner_derivative(double alpha, double theta);
DensityMatrix nmems(double p);
DensityMatrix msms(double tau);
DensityMatrix one_way(double alpha);
DensityMatrix amp_damp_bell(double p);
DensityMatrix lossy_werner(double p, double mu);

/// Singlet (|01> - |10>)/sqrt(2) projector.
CMatrix singlet_projector();
/// (|00> + |11>)/sqrt(2) projector.
CMatrix phi_plus_projector();

/// T_ij = Tr[rho (sigma_i x sigma_j)], i, j in {x, y, z}.
using CorrelationMatrix = std::array<std::array<double, 3>, 3>;

CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// Deterministic Gaussian source: std::mt19937_64 feeding Box-Muller.
/// The sequence depends only on the seed.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed);
  /// Standard normal deviate.
  double next();
  /// Uniform deviate on [0, 1) from the top 53 bits of one engine draw.
  double uniform();

 private:

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// G G^dagger / Tr(G G^dagger) with G a square complex Ginibre matrix.
DensityMatrix random_density(std::uint64_t seed, std::size_t d_a, std::size_t d_b);

/// Haar-random 2x2 unitary (from a Ginibre QR step), used for local-rotation tests.
CMatrix random_unitary2(std::uint64_t seed);

}  // namespace steerdet

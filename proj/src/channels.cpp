#include "steerdet/channels.hpp"

#include <cmath>
#include <string>

#include "steerdet/error.hpp"

namespace steerdet {

namespace {

void check_unit(const char* what, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " = " + std::to_string(v) + " outside [0, 1]");
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> ops, std::size_t in_dim, std::size_t out_dim)
    : ops_(std::move(ops)), in_dim_(in_dim), out_dim_(out_dim) {
  if (ops_.empty()) throw DimensionError("channel needs at least one Kraus operator");
  for (const auto& k : ops_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_) {
      throw DimensionError("Kraus operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                           ", expected " + std::to_string(out_dim_) + "x" + std::to_string(in_dim_));
    }
  }
  const double res = completeness_residual();
  if (res > kCompletenessTol) throw ValidationError("Kraus completeness", res);
}

double KrausChannel::completeness_residual() const {
  CMatrix sum(in_dim_, in_dim_);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return max_abs_diff(sum, CMatrix::identity(in_dim_));
}

KrausChannel identity_channel(std::size_t dim) { return KrausChannel({CMatrix::identity(dim)}, dim, dim); }

KrausChannel depolarizing(double p) {
  check_unit("depolarizing p", p);
  const double k0 = std::sqrt(1.0 + 3.0 * p) / 2.0;
  const double k = std::sqrt(1.0 - p) / 2.0;
  return KrausChannel({k0 * pauli::I(), k * pauli::X(), k * pauli::Y(), k * pauli::Z()}, 2, 2);
}

KrausChannel amplitude_damping(double p) {
  check_unit("amplitude damping p", p);
  CMatrix e0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}};
  CMatrix e1{{0.0, std::sqrt(p)}, {0.0, 0.0}};
  return KrausChannel({e0, e1}, 2, 2);
}

KrausChannel lossy(double mu) {
  check_unit("loss mu", mu);
  CMatrix keep(3, 2);
  keep(0, 0) = keep(1, 1) = std::sqrt(1.0 - mu);
  CMatrix lose0(3, 2);
  lose0(2, 0) = std::sqrt(mu);
  CMatrix lose1(3, 2);
  lose1(2, 1) = std::sqrt(mu);
  return KrausChannel({keep, lose0, lose1}, 2, 3);
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho, Subsystem target) {
  const BipartiteDims in = rho.dims();
  if (in.of(target) != ch.in_dim()) {
    throw DimensionError("channel input dimension " + std::to_string(ch.in_dim()) + " does not match subsystem dimension " +
                         std::to_string(in.of(target)));
  }
  BipartiteDims out = in;
  (target == Subsystem::A ? out.a : out.b) = ch.out_dim();
  check_dims(out);

  CMatrix result(out.total(), out.total());
  for (const auto& k : ch.ops()) {
    const CMatrix full = target == Subsystem::A ? kron(k, CMatrix::identity(in.b)) : kron(CMatrix::identity(in.a), k);
    result += full * rho.mat() * full.adjoint();
  }
  return DensityMatrix::validate(result, out);
}

}  // namespace steerdet

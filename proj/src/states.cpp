#include "steerdet/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "steerdet/channels.hpp"
#include "steerdet/error.hpp"

namespace steerdet {

DensityMatrix DensityMatrix::validate(const CMatrix& m, const BipartiteDims& dims) {
  check_dims(dims);
  if (!m.square() || m.rows() != dims.total()) {
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected " + std::to_string(dims.total()) + "x" + std::to_string(dims.total()));
  }
  const double herm = hermiticity_residual(m);
  if (herm > kStateTol) throw ValidationError("non-Hermitian", herm);

  CMatrix sym = 0.5 * (m + m.adjoint());
  const double trace_err = std::abs(sym.trace() - 1.0);
  if (trace_err > kStateTol) throw ValidationError("trace != 1", trace_err);

  const double min_eig = herm_eigvals(sym).front();
  if (min_eig < -kStateTol) throw ValidationError("negative eigenvalue", min_eig);

  return DensityMatrix(std::move(sym), dims);
}

CMatrix DensityMatrix::marginal(Subsystem kept) const {
  return partial_trace(mat_, dims_, kept == Subsystem::A ? Subsystem::B : Subsystem::A);
}

// ---------------------------------------------------------------------------
// Families

namespace {

constexpr double kPi = std::numbers::pi;

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::vector<ParamRange> params;
};

const std::vector<FamilyInfo>& registry() {
  static const std::vector<FamilyInfo> table = {
      {Family::werner, "werner", {{"p", 0.0, 1.0}}},
      {Family::munro, "munro", {{"C", 0.0, 1.0}}},
      {Family::werner_derivative, "werner_derivative", {{"alpha", 0.0, 1.0}, {"theta", 0.0, kPi / 4.0}}},
      {Family::nmems, "nmems", {{"p", 0.0, 1.0}}},
      {Family::msms, "msms", {{"tau", -1.0, 1.0}}},
      {Family::one_way, "one_way", {{"alpha", 0.0, 1.0}}},
      {Family::amp_damp_bell, "amp_damp_bell", {{"p", 0.0, 1.0}}},
      {Family::lossy_werner, "lossy_werner", {{"p", 0.0, 1.0}, {"mu", 0.0, 1.0}}},
  };
  return table;
}

const FamilyInfo& info(Family f) {
  for (const auto& fi : registry())
    if (fi.family == f) return fi;
  throw Error("unregistered family");
}

void check_range(std::string_view family, const ParamRange& r, double v) {
  if (!(v >= r.lo && v <= r.hi)) {
    throw DomainError(std::string(family) + ": parameter " + r.name + " = " + std::to_string(v) +
                      " outside [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

void check_params(Family f, std::initializer_list<double> values) {
  const auto& fi = info(f);
  auto it = values.begin();
  for (const auto& r : fi.params) check_range(fi.name, r, *it++);
}

CMatrix maximally_mixed(std::size_t n) { return CMatrix::identity(n) * (1.0 / static_cast<double>(n)); }

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }

Family family_from_name(std::string_view name) {
  for (const auto& fi : registry())
    if (fi.name == name) return fi.family;
  throw InputError("unknown family '" + std::string(name) + "'");
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const auto& fi : registry()) out.push_back(fi.family);
  return out;
}

std::vector<ParamRange> family_params(Family f) { return info(f).params; }

CMatrix singlet_projector() {
  const double s = 1.0 / std::sqrt(2.0);
  return CMatrix::projector({0.0, s, -s, 0.0});
}

CMatrix phi_plus_projector() {
  const double s = 1.0 / std::sqrt(2.0);
  return CMatrix::projector({s, 0.0, 0.0, s});
}

DensityMatrix werner(double p) {
  check_params(Family::werner, {p});
  return DensityMatrix::validate(p * singlet_projector() + (1.0 - p) * maximally_mixed(4), {2, 2});
}

DensityMatrix munro(double c) {
  check_params(Family::munro, {c});
  const double h = c < 2.0 / 3.0 ? 1.0 / 3.0 : c / 2.0;
  CMatrix m(4, 4);
  m(0, 0) = h;
  m(1, 1) = 1.0 - 2.0 * h;
  m(3, 3) = h;
  m(0, 3) = m(3, 0) = c / 2.0;
  return DensityMatrix::validate(m, {2, 2});
}

DensityMatrix werner_derivative(double alpha, double theta) {
  check_params(Family::werner_derivative, {alpha, theta});
  const CMatrix psi = CMatrix::projector({std::cos(theta), 0.0, 0.0, std::sin(theta)});
  return DensityMatrix::validate(alpha * psi + (1.0 - alpha) * maximally_mixed(4), {2, 2});
}

DensityMatrix nmems(double p) {
  check_params(Family::nmems, {p});
  CMatrix m(4, 4);
  m(0, 0) = (p + 2.0) / 6.0;
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = (1.0 - p) / 3.0;
  m(3, 3) = p / 2.0;
  return DensityMatrix::validate(m, {2, 2});
}

DensityMatrix msms(double tau) {
  check_params(Family::msms, {tau});
  CMatrix m(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = (1.0 - tau) / 4.0;
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = (1.0 + tau) / 4.0;
  return DensityMatrix::validate(m, {2, 2});
}

DensityMatrix one_way(double alpha) {
  check_params(Family::one_way, {alpha});
  const CMatrix zero = CMatrix::diag({1.0, 0.0});
  const CMatrix one = CMatrix::diag({0.0, 1.0});
  const CMatrix half_i = maximally_mixed(2);
  const CMatrix noise = 2.0 * kron(zero, half_i) + 3.0 * kron(half_i, one);
  return DensityMatrix::validate(alpha * singlet_projector() + ((1.0 - alpha) / 5.0) * noise, {2, 2});
}

DensityMatrix amp_damp_bell(double p) {
  check_params(Family::amp_damp_bell, {p});
  const KrausChannel ch = amplitude_damping(p);
  const DensityMatrix bell = DensityMatrix::validate(phi_plus_projector(), {2, 2});
  return apply(ch, apply(ch, bell, Subsystem::A), Subsystem::B);
}

DensityMatrix lossy_werner(double p, double mu) {
  check_params(Family::lossy_werner, {p, mu});
  // Bob's qubit occupies |0>,|1> of the qutrit; vacuum |v> is index 2.
  const CMatrix w = werner(p).mat();
  CMatrix m(6, 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(i * 3 + k, j * 3 + l) = (1.0 - mu) * w(i * 2 + k, j * 2 + l);
  m(2, 2) += mu / 2.0;
  m(5, 5) += mu / 2.0;
  return DensityMatrix::validate(m, {2, 3});
}

DensityMatrix make_family(const FamilySpec& spec) {
  const auto& fi = info(spec.family);
  for (const auto& [key, value] : spec.params) {
    const bool known = std::any_of(fi.params.begin(), fi.params.end(), [&](const ParamRange& r) { return r.name == key; });
    if (!known) throw DomainError(std::string(fi.name) + ": unknown parameter '" + key + "'");
  }
  auto get = [&](std::size_t idx) {
    const auto& name = fi.params[idx].name;
    const auto it = spec.params.find(name);
    if (it == spec.params.end()) throw DomainError(std::string(fi.name) + ": missing parameter '" + name + "'");
    return it->second;
  };
  switch (spec.family) {
    case Family::werner: return werner(get(0));
    case Family::munro: return munro(get(0));
    case Family::werner_derivative: return werner_derivative(get(0), get(1));
    case Family::nmems: return nmems(get(0));
    case Family::msms: return msms(get(0));
    case Family::one_way: return one_way(get(0));
    case Family::amp_damp_bell: return amp_damp_bell(get(0));
    case Family::lossy_werner: return lossy_werner(get(0), get(1));
  }
  throw Error("unhandled family");
}

// ---------------------------------------------------------------------------

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) throw DimensionError("correlation matrix needs a 2x2 state");
  const CMatrix paulis[3] = {pauli::X(), pauli::Y(), pauli::Z()};
  CorrelationMatrix t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const cplx v = (rho.mat() * kron(paulis[i], paulis[j])).trace();
      if (std::abs(v.imag()) > kStateTol) throw ValidationError("complex Pauli expectation", std::abs(v.imag()));
      t[i][j] = v.real();
    }
  return t;
}

// ---------------------------------------------------------------------------
// Random states

NormalSource::NormalSource(std::uint64_t seed) : engine_(seed) {}

double NormalSource::uniform() {
  // 53 high bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

DensityMatrix random_density(std::uint64_t seed, std::size_t d_a, std::size_t d_b) {
  const BipartiteDims dims{d_a, d_b};
  check_dims(dims);
  const std::size_t n = dims.total();
  NormalSource src(seed);
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = src.next();
      const double im = src.next();
      g(i, j) = cplx(re, im);
    }
  CMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix::validate(rho, dims);
}

CMatrix random_unitary2(std::uint64_t seed) {
  NormalSource src(seed);
  cplx g[2][2];
  for (auto& row : g)
    for (auto& z : row) {
      const double re = src.next();
      z = cplx(re, src.next());
    }
  // Gram-Schmidt on the columns.
  cplx c0[2] = {g[0][0], g[1][0]};
  cplx c1[2] = {g[0][1], g[1][1]};
  const double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
  c0[0] /= n0;
  c0[1] /= n0;
  const cplx proj = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
  c1[0] -= proj * c0[0];
  c1[1] -= proj * c0[1];
  const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
  c1[0] /= n1;
  c1[1] /= n1;
  return CMatrix{{c0[0], c1[0]}, {c0[1], c1[1]}};
}

}  // namespace steerdet

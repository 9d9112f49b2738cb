#include <doctest.h>

#include <cmath>

#include "steerdet/channels.hpp"
#include "steerdet/error.hpp"
#include "steerdet/states.hpp"
#include "support.hpp"

using namespace steerdet;
using testsupport::max_diff;

namespace {

// p rho + (1-p) (Tr_B rho) x I/2, assembled entrywise.
CMatrix depolarized_b_by_hand(const CMatrix& rho, double p) {
  CMatrix ra(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) ra(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  CMatrix out(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t c = 0; c < 2; ++c)
          out(2 * i + b, 2 * j + c) = p * rho(2 * i + b, 2 * j + c) + (b == c ? (1 - p) * 0.5 * ra(i, j) : 0.0);
  return out;
}

}  // namespace

TEST_CASE("depolarizing completeness and p = 1") {
  for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) CHECK(depolarizing(p).completeness_residual() <= 1e-12);
  const KrausChannel id = depolarizing(1.0);
  CHECK(max_diff(id.ops()[0], CMatrix::identity(2)) <= 1e-15);
  for (int k = 1; k < 4; ++k) CHECK(max_diff(id.ops()[k], CMatrix(2, 2)) == 0.0);
  CHECK_THROWS_AS(depolarizing(-0.1), DomainError);
  CHECK_THROWS_AS(depolarizing(1.1), DomainError);
}

TEST_CASE("depolarizing p = 0 leaves rho_A x I/2") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_density(seed, 2, 2);
    const DensityMatrix out = apply(depolarizing(0.0), rho, Subsystem::B);
    const CMatrix expected = kron(rho.marginal(Subsystem::A), testsupport::maximally_mixed(2));
    CHECK(max_diff(out.mat(), expected) <= 1e-12);
  }
}

TEST_CASE("depolarizing on werner(0.9) at p = 0.4") {
  const DensityMatrix rho = werner(0.9);
  const DensityMatrix out = apply(depolarizing(0.4), rho, Subsystem::B);
  CHECK(max_diff(out.mat(), depolarized_b_by_hand(rho.mat(), 0.4)) <= 1e-12);
}

TEST_CASE("depolarizing identity on an 11 x 10 grid") {
  for (int k = 0; k <= 10; ++k) {
    const double p = k / 10.0;
    for (std::uint64_t seed = 500; seed < 510; ++seed) {
      const DensityMatrix rho = random_density(seed, 2, 2);
      CHECK(max_diff(apply(depolarizing(p), rho, Subsystem::B).mat(), depolarized_b_by_hand(rho.mat(), p)) <= 1e-11);
    }
  }
}

TEST_CASE("depolarizing on A mirrors the B identity") {
  const DensityMatrix rho = random_density(77, 2, 2);
  const double p = 0.35;
  const CMatrix expected = rho.mat() * cplx(p) + kron(testsupport::maximally_mixed(2), rho.marginal(Subsystem::B)) * cplx(1 - p);
  CHECK(max_diff(apply(depolarizing(p), rho, Subsystem::A).mat(), expected) <= 1e-12);
}

TEST_CASE("depolarizing composes multiplicatively") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_density(seed + 40, 2, 2);
    const double p = 0.3 + 0.02 * static_cast<double>(seed), q = 0.8 - 0.01 * static_cast<double>(seed);
    const DensityMatrix twice = apply(depolarizing(q), apply(depolarizing(p), rho, Subsystem::B), Subsystem::B);
    const DensityMatrix once = apply(depolarizing(p * q), rho, Subsystem::B);
    CHECK(max_diff(twice.mat(), once.mat()) <= 1e-12);
  }
}

TEST_CASE("amplitude damping") {
  CHECK(amplitude_damping(0.37).completeness_residual() <= 1e-12);
  const DensityMatrix phi = DensityMatrix::validate(phi_plus_projector(), {2, 2});
  CHECK(max_diff(apply(amplitude_damping(0.0), phi, Subsystem::A).mat(), phi.mat()) <= 1e-15);

  const auto both = [&](double p) {
    return apply(amplitude_damping(p), apply(amplitude_damping(p), phi, Subsystem::A), Subsystem::B);
  };
  CHECK(max_diff(both(1.0).mat(), CMatrix::diag({1, 0, 0, 0})) <= 1e-15);

  // Kraus sum by hand at p = 1/2.
  const DensityMatrix half = both(0.5);
  const CMatrix& m = half.mat();
  CHECK(m(0, 0).real() == doctest::Approx(0.625));
  CHECK(m(1, 1).real() == doctest::Approx(0.125));
  CHECK(m(2, 2).real() == doctest::Approx(0.125));
  CHECK(m(3, 3).real() == doctest::Approx(0.125));
  CHECK(m(0, 3).real() == doctest::Approx(0.25));
  CHECK(m(3, 0).real() == doctest::Approx(0.25));
  CHECK(std::abs(m(1, 2)) <= 1e-15);
}

TEST_CASE("lossy channel") {
  for (double mu : {0.0, 0.3, 1.0}) {
    const KrausChannel ch = lossy(mu);
    CHECK(ch.in_dim() == 2);
    CHECK(ch.out_dim() == 3);
    CHECK(ch.completeness_residual() <= 1e-12);
  }
  const DensityMatrix rho = random_density(13, 2, 2);
  const DensityMatrix embedded = apply(lossy(0.0), rho, Subsystem::B);
  REQUIRE(embedded.dims() == BipartiteDims{2, 3});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t c = 0; c < 2; ++c) CHECK(embedded.mat()(3 * i + b, 3 * j + c) == rho.mat()(2 * i + b, 2 * j + c));

  const CMatrix vac = apply(lossy(1.0), rho, Subsystem::B).marginal(Subsystem::B);
  CHECK(max_diff(vac, CMatrix::diag({0, 0, 1})) <= 1e-15);
}

TEST_CASE("lossy(0.3) on Bob of werner matches the convex mixture") {
  const double mu = 0.3;
  for (double p : {0.0, 0.5, 1.0}) {
    const CMatrix w = testsupport::werner_by_hand(p);
    CMatrix expected(6, 6);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t c = 0; c < 2; ++c) expected(3 * i + b, 3 * j + c) = (1 - mu) * w(2 * i + b, 2 * j + c);
        if (i == j) expected(3 * i + 2, 3 * j + 2) = mu * 0.5;
      }
    const DensityMatrix out = apply(lossy(mu), werner(p), Subsystem::B);
    CHECK(max_diff(out.mat(), expected) <= 1e-12);
    CHECK(max_diff(out.mat(), lossy_werner(p, mu).mat()) <= 1e-12);
  }
}

TEST_CASE("identity channel and trace preservation") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_density(seed, 2, 2);
    CHECK(max_diff(apply(identity_channel(2), rho, Subsystem::A).mat(), rho.mat()) <= 1e-15);
    CHECK_NOTHROW(apply(amplitude_damping(0.3), rho, Subsystem::B));
    CHECK_NOTHROW(apply(lossy(0.6), rho, Subsystem::B));
  }
}

TEST_CASE("channel construction errors") {
  CHECK_THROWS_AS(KrausChannel({CMatrix::identity(2) * cplx(0.5)}, 2, 2), ValidationError);
  CHECK_THROWS_AS(KrausChannel({CMatrix::identity(3)}, 2, 2), DimensionError);
  CHECK_THROWS_AS(apply(identity_channel(3), random_density(1, 2, 2), Subsystem::B), DimensionError);
  CHECK_THROWS_AS(amplitude_damping(2.0), DomainError);
  CHECK_THROWS_AS(lossy(-0.5), DomainError);
}

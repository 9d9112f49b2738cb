#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "steerdet/error.hpp"
#include "steerdet/sweep.hpp"

using namespace steerdet;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

ThresholdResult threshold(Family f, const std::string& param, DetectorKind k, double lo, double hi,
                          std::map<std::string, double> fixed = {}, double tol = 1e-6) {
  return find_threshold(FamilySpec{f, std::move(fixed)}, param, Detector{k, kMaxMu}, lo, hi, tol);
}

}  // namespace

TEST_CASE("werner thm1 threshold") {
  const ThresholdResult r = threshold(Family::werner, "p", DetectorKind::thm1, 0.0, 1.0);
  CHECK(std::abs(r.boundary - kInvSqrt3) <= 1e-5);
  CHECK(r.hi - r.lo <= 2e-6);
  CHECK(r.side == DetectionSide::above);
  CHECK(r.param_name == "p");
  CHECK(r.detector == "thm1");
  CHECK(r.iterations > 0);
  CHECK(r.iterations <= kMaxBisectionIterations);
}

TEST_CASE("munro thm1 threshold") {
  const ThresholdResult r = threshold(Family::munro, "C", DetectorKind::thm1, 0.0, 1.0);
  CHECK(std::abs(r.boundary - 0.531) <= 1e-3);
}

TEST_CASE("nmems detects below its threshold") {
  const ThresholdResult r = threshold(Family::nmems, "p", DetectorKind::thm1, 0.0, 1.0);
  CHECK(std::abs(r.boundary - 0.073) <= 1e-3);
  CHECK(r.side == DetectionSide::below);
}

TEST_CASE("one fixed parameter, one free") {
  const ThresholdResult r = threshold(Family::lossy_werner, "p", DetectorKind::thm1_ab, 0.0, 1.0, {{"mu", 0.3}});
  CHECK(std::abs(r.boundary - kInvSqrt3) <= 1e-4);
}

TEST_CASE("search errors") {
  // ls2 never fires on nmems.
  CHECK_THROWS_AS(threshold(Family::nmems, "p", DetectorKind::ls2, 0.0, 1.0), SearchError);
  // thm1 flips twice across the full msms range; equal endpoints are reported first.
  CHECK_THROWS_AS(threshold(Family::msms, "tau", DetectorKind::thm1, -1.0, 1.0), SearchError);
  try {
    threshold(Family::werner, "p", DetectorKind::thm1, 0.0, 0.5);
    FAIL("expected a sign-change error");
  } catch (const SearchError& e) {
    CHECK(std::string(e.what()).find("no sign change") != std::string::npos);
  }
  CHECK_THROWS_AS(threshold(Family::werner, "p", DetectorKind::thm1, 0.6, 0.2), SearchError);
  CHECK_THROWS_AS(threshold(Family::werner, "p", DetectorKind::thm1, 0.0, std::nan("")), SearchError);
  CHECK_THROWS_AS(threshold(Family::werner, "q", DetectorKind::thm1, 0.0, 1.0), InputError);
}

TEST_CASE("halving tol moves the boundary by at most tol") {
  for (double tol : {1e-3, 1e-4, 1e-5}) {
    const double a = threshold(Family::munro, "C", DetectorKind::thm1, 0.0, 1.0, {}, tol).boundary;
    const double b = threshold(Family::munro, "C", DetectorKind::thm1, 0.0, 1.0, {}, tol / 2).boundary;
    CHECK(std::abs(a - b) <= tol);
  }
}

TEST_CASE("detector names") {
  for (auto k : {DetectorKind::thm1, DetectorKind::thm1_ba, DetectorKind::thm1_ab, DetectorKind::ls2, DetectorKind::ls3,
                 DetectorKind::ppt, DetectorKind::spa})
    CHECK(detector_from_name(detector_name(k)) == k);
  CHECK_THROWS_AS(detector_from_name("chsh"), InputError);
}

TEST_CASE("pre-scan table") {
  const auto rows = prescan_table(FamilySpec{Family::werner, {}}, "p", 0.0, 1.0);
  REQUIRE(rows.size() == static_cast<std::size_t>(kPrescanPoints));
  CHECK(rows.front().param == 0.0);
  CHECK(rows.back().param == 1.0);
  CHECK_FALSE(rows.front().thm1_ba);
  CHECK(rows.back().thm1_ba);
  CHECK(rows.back().ls2);
  CHECK(rows[60].thm1_ab);   // p = 0.60
  CHECK_FALSE(rows[57].thm1_ab);  // p = 0.57
}

TEST_CASE("region corners and the alpha = 0.55 row") {
  const Axis alpha{"alpha", 0.0, 1.0, 21};
  const Axis theta{"theta", 0.0, std::numbers::pi / 4, 11};
  const RegionGrid g = region_scan(alpha, theta, kMaxMu, 1);
  REQUIRE(g.cells.size() == 21u * 11u);
  const RegionCell& corner = g.at(20, 10);
  CHECK(corner.alpha == 1.0);
  CHECK(corner.theta == doctest::Approx(std::numbers::pi / 4));
  CHECK(corner.thm1_ba);
  CHECK(corner.thm1_ab);
  CHECK(corner.ls2);
  CHECK(corner.ls3);
  // Cell order: theta fastest.
  CHECK(g.cells[1].theta > g.cells[0].theta);
  CHECK(g.cells[1].alpha == g.cells[0].alpha);
  for (const auto& c : g.cells) {
    if (c.ls2) CHECK(c.ls3);
    if (c.ls3) CHECK((c.thm1_ba && c.thm1_ab));
  }
  const RegionGrid row = region_scan(Axis{"alpha", 0.55, 0.55, 1}, Axis{"theta", 0.0, std::numbers::pi / 4, 101});
  for (const auto& c : row.cells) {
    CHECK_FALSE(c.thm1_ba);
    CHECK_FALSE(c.thm1_ab);
  }
}

TEST_CASE("region scan does not depend on thread count") {
  const Axis alpha{"alpha", 0.0, 1.0, 31};
  const Axis theta{"theta", 0.0, std::numbers::pi / 4, 17};
  const RegionGrid one = region_scan(alpha, theta, kMaxMu, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const RegionGrid many = region_scan(alpha, theta, kMaxMu, t);
    REQUIRE(many.cells.size() == one.cells.size());
    for (std::size_t i = 0; i < one.cells.size(); ++i) {
      CHECK(many.cells[i].alpha == one.cells[i].alpha);
      CHECK(many.cells[i].theta == one.cells[i].theta);
      CHECK(many.cells[i].thm1_ba == one.cells[i].thm1_ba);
      CHECK(many.cells[i].thm1_ab == one.cells[i].thm1_ab);
      CHECK(many.cells[i].ls2 == one.cells[i].ls2);
      CHECK(many.cells[i].ls3 == one.cells[i].ls3);
    }
  }
}

TEST_CASE("region axis validation") {
  CHECK_THROWS_AS(region_scan(Axis{"alpha", 0.0, 1.2, 5}, Axis{"theta", 0.0, 0.5, 5}), DomainError);
  CHECK_THROWS_AS(region_scan(Axis{"alpha", 0.0, 1.0, 0}, Axis{"theta", 0.0, 0.5, 5}), DomainError);
  CHECK_THROWS_AS(region_scan(Axis{"alpha", 0.0, 1.0, 5}, Axis{"theta", 0.0, 1.0, 5}), DomainError);
}

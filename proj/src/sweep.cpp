#include "steerdet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "steerdet/entdetect.hpp"
#include "steerdet/error.hpp"

namespace steerdet {

namespace {

struct DetectorEntry {
  DetectorKind kind;
  std::string_view name;
};

constexpr DetectorEntry kDetectors[] = {
    {DetectorKind::thm1, "thm1"}, {DetectorKind::thm1_ba, "thm1_ba"}, {DetectorKind::thm1_ab, "thm1_ab"},
    {DetectorKind::ls2, "ls2"},   {DetectorKind::ls3, "ls3"},         {DetectorKind::ppt, "ppt"},
    {DetectorKind::spa, "spa"},
};

bool is_detected(const DensityMatrix& rho, Direction d, double mu) {
  return thm1_direction(rho, d, mu).verdict == Verdict::detected;
}

bool ls_detected(const DensityMatrix& rho, int n) {
  if (rho.dims() != BipartiteDims{2, 2}) return false;
  return ls_value(rho, n) > 1.0 + kVerdictTol;
}

DensityMatrix with_param(FamilySpec spec, const std::string& name, double v) {
  spec.params[name] = v;
  return make_family(spec);
}

void check_free_param(const FamilySpec& base, const std::string& free_param) {
  const auto params = family_params(base.family);
  const bool known = std::any_of(params.begin(), params.end(), [&](const ParamRange& r) { return r.name == free_param; });
  if (!known) {
    throw InputError("family " + std::string(family_name(base.family)) + " has no parameter '" + free_param + "'");
  }
}

}  // namespace

bool Detector::operator()(const DensityMatrix& rho) const {
  switch (kind) {
    case DetectorKind::thm1: {
      const SteeringReport r = thm1_verdict(rho, mu);
      // Every applicable direction must detect.
      for (const auto* d : {&r.b_to_a, &r.a_to_b})
        if (d->verdict == Verdict::not_detected) return false;
      return true;
    }
    case DetectorKind::thm1_ba: return is_detected(rho, Direction::BtoA, mu);
    case DetectorKind::thm1_ab: return is_detected(rho, Direction::AtoB, mu);
    case DetectorKind::ls2: return ls_detected(rho, 2);
    case DetectorKind::ls3: return ls_detected(rho, 3);
    case DetectorKind::ppt: return ppt_report(rho).entangled;
    case DetectorKind::spa: return spa_report(rho).entangled;
  }
  return false;
}

std::string_view detector_name(DetectorKind k) {
  for (const auto& e : kDetectors)
    if (e.kind == k) return e.name;
  return "?";
}

DetectorKind detector_from_name(std::string_view name) {
  for (const auto& e : kDetectors)
    if (e.name == name) return e.kind;
  throw InputError("unknown detector '" + std::string(name) + "'");
}

std::string_view side_name(DetectionSide s) { return s == DetectionSide::above ? "above" : "below"; }

std::vector<ScanRow> prescan_table(const FamilySpec& base, const std::string& free_param, double lo, double hi,
                                   double mu, int points) {
  check_free_param(base, free_param);
  if (points < 2) throw DomainError("pre-scan needs at least 2 points");
  std::vector<ScanRow> rows;
  rows.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
    const DensityMatrix rho = with_param(base, free_param, x);
    rows.push_back({x, is_detected(rho, Direction::BtoA, mu), is_detected(rho, Direction::AtoB, mu), ls_detected(rho, 2),
                    ls_detected(rho, 3)});
  }
  return rows;
}

ThresholdResult find_threshold(const FamilySpec& base, const std::string& free_param, const Detector& detector,
                               double lo, double hi, double tol) {
  check_free_param(base, free_param);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(tol)) throw SearchError("non-finite parameter");
  if (!(lo < hi)) throw SearchError("empty bracket: lo must be below hi");
  if (!(tol > 0.0)) throw SearchError("tolerance must be positive");

  auto verdict = [&](double x) { return detector(with_param(base, free_param, x)); };

  // Linear pre-scan: the detector must flip exactly once on [lo, hi].
  std::vector<double> xs(kPrescanPoints);
  std::vector<bool> vs(kPrescanPoints);
  for (int i = 0; i < kPrescanPoints; ++i) {
    xs[i] = i + 1 == kPrescanPoints ? hi : lo + (hi - lo) * i / (kPrescanPoints - 1);
    vs[i] = verdict(xs[i]);
  }
  if (vs.front() == vs.back()) {
    throw SearchError("no sign change: detector " + std::string(detector_name(detector.kind)) + " is " +
                      (vs.front() ? "true" : "false") + " at both ends of [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  int flips = 0;
  int cell = 0;
  for (int i = 0; i + 1 < kPrescanPoints; ++i) {
    if (vs[i] != vs[i + 1]) {
      ++flips;
      cell = i;
    }
  }
  if (flips != 1) throw SearchError("non-monotone detector: " + std::to_string(flips) + " flips in pre-scan");

  const bool low_verdict = vs.front();
  double a = xs[cell];
  double b = xs[cell + 1];
  int iterations = 0;
  while (b - a > 2.0 * tol) {
    if (++iterations > kMaxBisectionIterations) throw SearchError("bisection iteration cap exceeded");
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // bracket at floating-point resolution
    (verdict(mid) == low_verdict ? a : b) = mid;
  }

  ThresholdResult r;
  r.param_name = free_param;
  r.boundary = 0.5 * (a + b);
  r.lo = a;
  r.hi = b;
  r.detector = std::string(detector_name(detector.kind));
  r.side = low_verdict ? DetectionSide::below : DetectionSide::above;
  r.iterations = iterations;
  return r;
}

double Axis::value(int i) const {
  if (steps == 1) return min;
  if (i + 1 == steps) return max;
  return min + (max - min) * i / (steps - 1);
}

RegionGrid region_scan(const Axis& alpha, const Axis& theta, double mu, unsigned threads) {
  const double theta_max = std::numbers::pi / 4.0;
  for (const auto* ax : {&alpha, &theta}) {
    if (ax->steps < 1) throw DomainError("axis '" + ax->name + "' needs at least one step");
    if (ax->steps > 1 && !(ax->max > ax->min)) throw DomainError("axis '" + ax->name + "' must be increasing");
  }
  if (!(alpha.min >= 0.0 && alpha.max <= 1.0)) throw DomainError("alpha axis outside [0, 1]");
  if (!(theta.min >= 0.0 && theta.max <= theta_max)) throw DomainError("theta axis outside [0, pi/4]");

  RegionGrid grid{alpha, theta, {}};
  const std::size_t n = static_cast<std::size_t>(alpha.steps) * theta.steps;
  grid.cells.resize(n);

  auto eval = [&](std::size_t idx) {
    const int ia = static_cast<int>(idx / theta.steps);
    const int it = static_cast<int>(idx % theta.steps);
    RegionCell c;
    c.alpha = alpha.value(ia);
    c.theta = theta.value(it);
    const DensityMatrix rho = werner_derivative(c.alpha, c.theta);
    c.thm1_ba = is_detected(rho, Direction::BtoA, mu);
    c.thm1_ab = is_detected(rho, Direction::AtoB, mu);
    c.ls2 = ls_detected(rho, 2);
    c.ls3 = ls_detected(rho, 3);
    grid.cells[idx] = c;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) eval(i);
    return grid;
  }
  // Each worker owns a fixed stride of cells, so the result is order-independent.
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += threads) eval(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return grid;
}

}  // namespace steerdet

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "steerdet/states.hpp"
#include "steerdet/steer.hpp"

namespace steerdet {

enum class DetectorKind {
  thm1,     // detected in every applicable direction
  thm1_ba,
  thm1_ab,
  ls2,
  ls3,
  ppt,      // entanglement of the state itself
  spa,
};

struct Detector {
  DetectorKind kind = DetectorKind::thm1;
  double mu = kMaxMu;

  bool operator()(const DensityMatrix& rho) const;
};

std::string_view detector_name(DetectorKind k);
/// Throws InputError for unknown names.
DetectorKind detector_from_name(std::string_view name);

enum class DetectionSide { above, below };

std::string_view side_name(DetectionSide s);

struct ThresholdResult {
  std::string param_name;
  double boundary = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  std::string detector;
  DetectionSide side = DetectionSide::above;
  int iterations = 0;
};

inline constexpr int kPrescanPoints = 101;
inline constexpr int kMaxBisectionIterations = 200;

/// One row of the linear pre-scan, with every detector evaluated.
struct ScanRow {
  double param = 0.0;
  bool thm1_ba = false;
  bool thm1_ab = false;
  bool ls2 = false;
  bool ls3 = false;
};

/// Evenly spaced evaluation of `free_param` over [lo, hi]. Fixed parameters come from `base`.
std::vector<ScanRow> prescan_table(const FamilySpec& base, const std::string& free_param, double lo, double hi,
                                   double mu = kMaxMu, int points = kPrescanPoints);

/// Locates the single point on [lo, hi] where `detector` flips along `free_param`.
/// A 101-point pre-scan must show exactly one flip; the flip cell is then bisected
/// until hi - lo <= 2 tol.
/// Throws SearchError on "no sign change", "non-monotone detector" or the iteration cap.
ThresholdResult find_threshold(const FamilySpec& base, const std::string& free_param, const Detector& detector,
                               double lo, double hi, double tol = 1e-6);

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int steps = 201;

  double value(int i) const;
};

struct RegionCell {
  double alpha = 0.0;
  double theta = 0.0;
  bool thm1_ba = false;
  bool thm1_ab = false;
  bool ls2 = false;
  bool ls3 = false;
};

/// Werner-derivative verdict map; cells are ordered alpha-major, theta fastest.
struct RegionGrid {
  Axis alpha;
  Axis theta;
  std::vector<RegionCell> cells;

  const RegionCell& at(int i_alpha, int i_theta) const { return cells[i_alpha * theta.steps + i_theta]; }
};

/// Evaluates the four steering detectors on every (alpha, theta) point.
/// `threads` = 0 uses the hardware concurrency. Output does not depend on it.
RegionGrid region_scan(const Axis& alpha, const Axis& theta, double mu = kMaxMu, unsigned threads = 0);

}  // namespace steerdet

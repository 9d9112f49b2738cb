#include "steerdet/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "steerdet/channels.hpp"
#include "steerdet/entdetect.hpp"
#include "steerdet/error.hpp"
#include "steerdet/states.hpp"
#include "steerdet/steer.hpp"
#include "steerdet/sweep.hpp"

namespace steerdet {

namespace {

// Published values the search must land on.
constexpr double kMunroThm1 = 0.531;
constexpr double kMunroLs2 = 0.707;
constexpr double kMunroLs3 = 0.667;
constexpr double kNmemsThm1 = 0.073;
constexpr double kMsmsThm1 = 0.366;
constexpr double kOneWayAB = 0.566;
constexpr double kOneWayBA = 0.577;
constexpr double kOneWayLs2 = 0.707;
constexpr double kOneWayLs3 = 0.577;
constexpr double kAmpDampThm1 = 0.411;
constexpr double kAmpDampLs2 = 0.293;
constexpr double kAmpDampLs3 = 0.397;

constexpr double kTolExact = 1e-5;
constexpr double kTolThreeDecimals = 1e-3;
constexpr double kTolLossy = 1e-4;
constexpr double kSearchTol = 1e-7;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

class Collector {
 public:
  explicit Collector(const SelftestOptions& o) : opts_(o) {}

  double tol(double nominal) const { return opts_.threshold_tol.value_or(nominal); }

  void threshold(const std::string& id, const std::string& what, const FamilySpec& base, const std::string& param,
                 DetectorKind det, double lo, double hi, double expected, double nominal_tol,
                 std::optional<DetectionSide> side = std::nullopt) {
    CheckResult r;
    r.id = id;
    r.description = what;
    r.expected = expected;
    r.tolerance = tol(nominal_tol);
    try {
      const ThresholdResult t = find_threshold(base, param, Detector{det, kMaxMu}, lo, hi, kSearchTol);
      r.measured = t.boundary;
      r.pass = std::abs(t.boundary - expected) <= *r.tolerance;
      r.detail = "detection " + std::string(side_name(t.side));
      if (side && *side != t.side) {
        r.pass = false;
        r.detail += " (expected " + std::string(side_name(*side)) + ")";
      }
    } catch (const Error& e) {
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  void boolean(const std::string& id, const std::string& what, const std::function<std::string()>& body) {
    CheckResult r;
    r.id = id;
    r.description = what;
    try {
      r.detail = body();  // empty string means success
      r.pass = r.detail.empty();
    } catch (const Error& e) {
      r.detail = std::string("error: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  void bound(const std::string& id, const std::string& what, const std::function<double()>& body, double limit) {
    CheckResult r;
    r.id = id;
    r.description = what;
    r.tolerance = limit;
    try {
      r.measured = body();
      r.pass = *r.measured <= limit;
    } catch (const Error& e) {
      r.detail = std::string("error: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const SelftestOptions& opts_;
  std::vector<CheckResult> results_;
};

FamilySpec spec(Family f, std::map<std::string, double> params = {}) { return FamilySpec{f, std::move(params)}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Random POVM element: a random PSD matrix scaled so its top eigenvalue is u in [0, 1].
CMatrix random_effect(NormalSource& src, std::size_t d) {
  CMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = src.next();
      g(i, j) = cplx(re, src.next());
    }
  CMatrix e = g * g.adjoint();
  e = 0.5 * (e + e.adjoint());
  const double top = herm_eigvals(e).back();
  return e * (src.uniform() / top);
}

// --- individual criteria -----------------------------------------------------

void werner_thresholds(Collector& c) {
  const auto w = spec(Family::werner);
  c.threshold("1a", "werner thm1 B->A boundary = 1/sqrt3", w, "p", DetectorKind::thm1_ba, 0.0, 1.0, kInvSqrt3, kTolExact,
              DetectionSide::above);
  c.threshold("1b", "werner thm1 A->B boundary = 1/sqrt3", w, "p", DetectorKind::thm1_ab, 0.0, 1.0, kInvSqrt3, kTolExact,
              DetectionSide::above);
  c.threshold("1c", "werner ls2 boundary = 1/sqrt2", w, "p", DetectorKind::ls2, 0.0, 1.0, kInvSqrt2, kTolExact,
              DetectionSide::above);
  c.threshold("1d", "werner ls3 boundary = 1/sqrt3", w, "p", DetectorKind::ls3, 0.0, 1.0, kInvSqrt3, kTolExact,
              DetectionSide::above);
}

void werner_gap(Collector& c) {
  c.boolean("2", "werner p in {0.52, 0.57}: entangled but thm1 silent", [] {
    for (double p : {0.52, 0.57}) {
      const DensityMatrix rho = werner(p);
      const SteeringReport s = thm1_verdict(rho);
      if (s.b_to_a.verdict != Verdict::not_detected || s.a_to_b.verdict != Verdict::not_detected)
        return "thm1 fired at p=" + fmt(p);
      if (!ppt_report(rho).entangled) return "werner not entangled at p=" + fmt(p);
    }
    return std::string();
  });
}

void munro_thresholds(Collector& c) {
  const auto m = spec(Family::munro);
  c.threshold("3a", "munro thm1 boundary 0.531", m, "C", DetectorKind::thm1, 0.0, 1.0, kMunroThm1, kTolThreeDecimals,
              DetectionSide::above);
  c.threshold("3b", "munro ls2 boundary 0.707", m, "C", DetectorKind::ls2, 0.0, 1.0, kMunroLs2, kTolThreeDecimals,
              DetectionSide::above);
  c.threshold("3c", "munro ls3 boundary 0.667", m, "C", DetectorKind::ls3, 0.0, 1.0, kMunroLs3, kTolThreeDecimals,
              DetectionSide::above);
}

void nmems_thresholds(Collector& c) {
  c.threshold("4a", "nmems thm1 detects below 0.073", spec(Family::nmems), "p", DetectorKind::thm1, 0.0, 1.0, kNmemsThm1,
              kTolThreeDecimals, DetectionSide::below);
  c.boolean("4b", "nmems ls2 and ls3 detect nowhere on [0,1]", [] {
    const Detector ls2{DetectorKind::ls2}, ls3{DetectorKind::ls3};
    for (int i = 0; i <= 1000; ++i) {
      const double p = i / 1000.0;
      const DensityMatrix rho = nmems(p);
      if (ls2(rho) || ls3(rho)) return "linear inequality violated at p=" + fmt(p);
    }
    return std::string();
  });
}

void msms_checks(Collector& c) {
  const auto m = spec(Family::msms);
  c.threshold("5a", "msms thm1 boundary +0.366", m, "tau", DetectorKind::thm1, 0.0, 1.0, kMsmsThm1, kTolThreeDecimals,
              DetectionSide::above);
  c.threshold("5b", "msms thm1 boundary -0.366", m, "tau", DetectorKind::thm1, -1.0, 0.0, -kMsmsThm1, kTolThreeDecimals,
              DetectionSide::below);
  c.boolean("5c", "msms ls2/ls3 match sqrt(1+tau^2), sqrt(1+2tau^2) and exceed 1 except at tau=0", [] {
    for (int i = 0; i <= 100; ++i) {
      const double tau = -1.0 + 2.0 * i / 100.0;
      const DensityMatrix rho = msms(tau);
      const double l2 = ls_value(rho, 2), l3 = ls_value(rho, 3);
      // Correlation matrix of the two-Bell mixture is diag(1, tau, -tau).
      const double o2 = std::sqrt(1.0 + tau * tau), o3 = std::sqrt(1.0 + 2.0 * tau * tau);
      if (std::abs(l2 - o2) > 1e-12 || std::abs(l3 - o3) > 1e-12) return "closed form mismatch at tau=" + fmt(tau);
      if (i == 50) {
        if (std::abs(l2 - 1.0) > 1e-12 || std::abs(l3 - 1.0) > 1e-12) return std::string("tau=0 value is not 1");
      } else if (!(l2 > 1.0 + kVerdictTol && l3 > 1.0 + kVerdictTol)) {
        return "no violation at tau=" + fmt(tau);
      }
    }
    return std::string();
  });
}

void one_way_thresholds(Collector& c) {
  const auto o = spec(Family::one_way);
  c.threshold("6a", "one-way thm1 A->B boundary 0.566", o, "alpha", DetectorKind::thm1_ab, 0.0, 1.0, kOneWayAB,
              kTolThreeDecimals, DetectionSide::above);
  c.threshold("6b", "one-way thm1 B->A boundary 0.577", o, "alpha", DetectorKind::thm1_ba, 0.0, 1.0, kOneWayBA,
              kTolThreeDecimals, DetectionSide::above);
  c.threshold("6c", "one-way ls2 boundary 0.707", o, "alpha", DetectorKind::ls2, 0.0, 1.0, kOneWayLs2, kTolThreeDecimals,
              DetectionSide::above);
  c.threshold("6d", "one-way ls3 boundary 0.577", o, "alpha", DetectorKind::ls3, 0.0, 1.0, kOneWayLs3, kTolThreeDecimals,
              DetectionSide::above);
}

void amp_damp_thresholds(Collector& c) {
  const auto a = spec(Family::amp_damp_bell);
  c.threshold("7a", "amplitude damping thm1 detects below 0.411", a, "p", DetectorKind::thm1, 0.0, 1.0, kAmpDampThm1,
              kTolThreeDecimals, DetectionSide::below);
  c.threshold("7b", "amplitude damping ls2 detects below 0.293", a, "p", DetectorKind::ls2, 0.0, 1.0, kAmpDampLs2,
              kTolThreeDecimals, DetectionSide::below);
  c.threshold("7c", "amplitude damping ls3 detects below 0.397", a, "p", DetectorKind::ls3, 0.0, 1.0, kAmpDampLs3,
              kTolThreeDecimals, DetectionSide::below);
}

void lossy_thresholds(Collector& c) {
  const char* ids[] = {"8a", "8b", "8c", "8d"};
  const double mus[] = {0.0, 0.3, 0.7, 0.99};
  for (int k = 0; k < 4; ++k) {
    c.threshold(ids[k], "lossy werner (qubit-qutrit) thm1 A->B boundary = 1/sqrt3 at mu=" + fmt(mus[k]),
                spec(Family::lossy_werner, {{"mu", mus[k]}}), "p", DetectorKind::thm1_ab, 0.0, 1.0, kInvSqrt3, kTolLossy,
                DetectionSide::above);
  }
  c.boolean("8e", "lossy werner B->A is not applicable", [] {
    const SteeringReport s = thm1_verdict(lossy_werner(0.9, 0.3));
    if (s.b_to_a.verdict != Verdict::not_applicable) return std::string("B->A verdict was produced");
    if (s.a_to_b.verdict != Verdict::detected) return std::string("A->B not detected at p=0.9");
    return std::string();
  });
}

void region_checks(Collector& c, unsigned threads) {
  const Axis alpha{"alpha", 0.0, 1.0, 201};
  const Axis theta{"theta", 0.0, std::numbers::pi / 4.0, 201};
  RegionGrid grid;
  try {
    grid = region_scan(alpha, theta, kMaxMu, threads);
  } catch (const Error& e) {
    c.boolean("9", "werner-derivative region scan", [&] { return std::string("error: ") + e.what(); });
    return;
  }
  c.boolean("9a", "region scan nesting ls2 => ls3 => thm1 (both directions)", [&] {
    for (const auto& cell : grid.cells) {
      if ((cell.ls2 && !cell.ls3) || (cell.ls3 && !(cell.thm1_ba && cell.thm1_ab)))
        return "nesting broken at alpha=" + fmt(cell.alpha) + " theta=" + fmt(cell.theta);
    }
    return std::string();
  });
  c.boolean("9b", "alpha=0.55 row: thm1 never detects", [&] {
    const int row = 110;  // alpha = 0.55
    if (std::abs(alpha.value(row) - 0.55) > 1e-12) return std::string("grid row is not alpha=0.55");
    for (int j = 0; j < theta.steps; ++j) {
      const auto& cell = grid.at(row, j);
      if (cell.thm1_ba || cell.thm1_ab) return "thm1 detected at theta=" + fmt(cell.theta);
    }
    return std::string();
  });
  c.boolean("9c", "entanglement boundary alpha = 1/(1 + 2 sin 2theta) within grid step", [&] {
    const double step = 1.0 / (alpha.steps - 1);
    for (int j = 0; j < theta.steps; ++j) {
      const double th = theta.value(j);
      const double predicted = 1.0 / (1.0 + 2.0 * std::sin(2.0 * th));
      int first = -1;
      for (int i = 0; i < alpha.steps; ++i) {
        const bool ent = ppt_report(werner_derivative(alpha.value(i), th)).entangled;
        if (ent && first < 0) first = i;
        if (!ent && first >= 0) return "entanglement not monotone in alpha at theta=" + fmt(th);
      }
      if (predicted >= 1.0 - 1e-12) {
        if (first >= 0) return "entangled cell where none predicted at theta=" + fmt(th);
        continue;
      }
      if (first < 0) return "no entangled cell at theta=" + fmt(th);
      if (std::abs(alpha.value(first) - predicted) > step + 1e-12)
        return "boundary off by more than a step at theta=" + fmt(th);
    }
    return std::string();
  });
}

void proof_identity(Collector& c, std::uint64_t seed) {
  c.bound(
      "10", "conditional-state identity residual over 100 random (state, effect, mu)",
      [seed] {
        NormalSource src(seed ^ 0x5eedf00dULL);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
          const DensityMatrix rho = random_density(seed * 1000 + k, 2, 2);
          const CMatrix effect = random_effect(src, 2);
          const double mu = kMaxMu * src.uniform();
          worst = std::max(worst, eq18_consistency(rho, effect, mu));
        }
        return worst;
      },
      1e-10);
}

void channel_realization(Collector& c, std::uint64_t seed) {
  c.bound(
      "11", "depolarizing channel on B equals p rho + (1-p) rho_A x I/2 (11 p x 10 states)",
      [seed] {
        double worst = 0.0;
        for (int s = 0; s < 10; ++s) {
          const DensityMatrix rho = random_density(seed * 1000 + 500 + s, 2, 2);
          const CMatrix mixed = kron(partial_trace(rho.mat(), rho.dims(), Subsystem::B), CMatrix::identity(2) * 0.5);
          for (int i = 0; i <= 10; ++i) {
            const double p = i / 10.0;
            const DensityMatrix out = apply(depolarizing(p), rho, Subsystem::B);
            worst = std::max(worst, max_abs_diff(out.mat(), p * rho.mat() + (1.0 - p) * mixed));
          }
        }
        return worst;
      },
      1e-11);
}

void spa_equivalence(Collector& c, std::uint64_t seed) {
  c.boolean("12", "SPA verdict equals PPT verdict on 200 random states; spectra shifted by 2/9", [seed] {
    int entangled = 0;
    for (int k = 0; k < 200; ++k) {
      const DensityMatrix rho = random_density(seed * 1000 + 2000 + k, 2, 2);
      const EntanglementReport ppt = ppt_report(rho);
      const EntanglementReport spa = spa_report(rho);
      if (ppt.entangled != spa.entangled) return "verdicts differ for state " + std::to_string(k);
      const double expected = kSpaShift + kSpaScale * ppt.min_pt_eig;
      if (std::abs(*spa.spa_min_eig - expected) > 1e-11) return "spectral shift off for state " + std::to_string(k);
      entangled += ppt.entangled;
    }
    if (entangled == 0 || entangled == 200) return std::string("sample did not contain both verdicts");
    return std::string();
  });
}

std::string property_suite(std::uint64_t seed) {
  NormalSource src(seed);
  std::uint64_t next_seed = seed * 7919 + 17;

  // Monotonicity in mu over 20 random entangled states.
  int found = 0;
  for (int attempt = 0; found < 20 && attempt < 2000; ++attempt) {
    const DensityMatrix rho = random_density(next_seed++, 2, 2);
    if (!ppt_report(rho).entangled) continue;
    ++found;
    for (Direction d : {Direction::BtoA, Direction::AtoB}) {
      bool seen = false;
      for (int i = 0; i <= 20; ++i) {
        const double mu = kMaxMu * i / 20.0;
        const bool det = thm1_direction(rho, d, mu).verdict == Verdict::detected;
        if (seen && !det) return "monotonicity in mu broken (seed " + std::to_string(seed) + ")";
        seen = seen || det;
      }
    }
  }
  if (found < 20) return std::string("could not draw 20 entangled states");

  // Random states: detection implies entanglement, ls3 >= ls2, local-unitary invariance.
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = random_density(next_seed++, 2, 2);
    const SteeringReport s = thm1_verdict(rho);
    const bool detected = s.b_to_a.verdict == Verdict::detected || s.a_to_b.verdict == Verdict::detected;
    if (detected && !ppt_report(rho).entangled) return std::string("thm1 detected a separable random state");
    if (*s.ls3_value < *s.ls2_value - 1e-12) return std::string("ls3 < ls2 on random state");
    if (k < 10) {
      const CMatrix ua = random_unitary2(next_seed++);
      const CMatrix ub = random_unitary2(next_seed++);
      const CMatrix u = kron(ua, ub);
      const DensityMatrix rotated = DensityMatrix::validate(u * rho.mat() * u.adjoint(), rho.dims());
      for (int n : {2, 3})
        if (std::abs(ls_value(rotated, n) - ls_value(rho, n)) > 1e-10)
          return "ls" + std::to_string(n) + " not invariant under local unitaries";
    }
  }

  // Family outputs: 100 uniform in-range points each validate, and detection implies entanglement.
  for (Family f : all_families()) {
    const auto ranges = family_params(f);
    for (int k = 0; k < 100; ++k) {
      FamilySpec fs{f, {}};
      for (const auto& r : ranges) fs.params[r.name] = r.lo + (r.hi - r.lo) * src.uniform();
      const DensityMatrix rho = make_family(fs);  // throws on invalid output
      const SteeringReport s = thm1_verdict(rho);
      const bool detected = s.b_to_a.verdict == Verdict::detected || s.a_to_b.verdict == Verdict::detected;
      if (detected && !ppt_report(rho).entangled)
        return "thm1 detected a separable " + std::string(family_name(f)) + " state";
      if (s.ls2_value && *s.ls3_value < *s.ls2_value - 1e-12) return std::string("ls3 < ls2 on family state");
    }
  }
  return {};
}

void property_suites(Collector& c, std::uint64_t seed) {
  std::vector<std::uint64_t> seeds = kPropertySeeds;
  if (std::find(seeds.begin(), seeds.end(), seed) == seeds.end()) seeds.push_back(seed);
  char id = 'a';
  for (auto s : seeds) {
    c.boolean(std::string("13") + id++, "property suite at seed " + std::to_string(s), [s] { return property_suite(s); });
  }
}

}  // namespace

std::vector<CheckResult> run_acceptance(const SelftestOptions& opts) {
  Collector c(opts);
  werner_thresholds(c);
  werner_gap(c);
  munro_thresholds(c);
  nmems_thresholds(c);
  msms_checks(c);
  one_way_thresholds(c);
  amp_damp_thresholds(c);
  lossy_thresholds(c);
  region_checks(c, opts.threads);
  proof_identity(c, opts.seed);
  channel_realization(c, opts.seed);
  spa_equivalence(c, opts.seed);
  property_suites(c, opts.seed);
  return c.take();
}

bool print_results(const std::vector<CheckResult>& results, std::ostream& out) {
  int failed = 0;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.description;
    if (r.measured) out << "  measured=" << fmt(*r.measured);
    if (r.expected) out << " expected=" << fmt(*r.expected) << " |delta|=" << fmt(*r.delta());
    if (r.tolerance) out << " tol=" << fmt(*r.tolerance);
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
    failed += !r.pass;
  }
  out << (failed ? "FAILED: " : "OK: ") << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0;
}

}  // namespace steerdet

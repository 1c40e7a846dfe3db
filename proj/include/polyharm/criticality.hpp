#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "polyharm/energy.hpp"
#include "polyharm/parallel.hpp"
#include "polyharm/roots.hpp"

// Constant-profile criticality for the flat-ball-to-sphere family, decided
// in weak form: along alpha_s = a + s v the residual of the Euler-Lagrange
// equation is c(a) rho^(n-1-2r), so pairing with any bump of nonzero moment
// detects exactly the zeros of c(a). Three bumps guard the detection; the
// explicit criticality polynomials and the closed-form angle pattern serve
// as independent cross-checks.

namespace polyharm {

inline constexpr double kHalfPi = 1.5707963267948966;

// ---------------------------------------------------------------------------
// Sobolev membership of the constant-profile spherical class.

struct SobolevReport {
  struct Constraint {
    int k;                  // iteration index of the rough Laplacian
    std::string integrand;  // "grad" or "laplacian"
    int exponent;           // power of rho in the reduced integral
    bool pass;              // exponent > -1
  };
  int r = 0;
  int n = 0;
  std::vector<Constraint> constraints;
  bool member = false;
};

inline SobolevReport sobolev_check(int r, int n) {
  if (r < 1 || n < 2) throw domain_error("sobolev_check: require r >= 1 and n >= 2");
  SobolevReport rep;
  rep.r = r;
  rep.n = n;
  rep.member = true;
  auto add = [&](int k, bool gradient) {
    const int exponent = gradient ? n - 4 * k - 3 : n - 4 * k - 1;
    const bool pass = exponent > -1;
    rep.constraints.push_back({k, gradient ? "grad" : "laplacian", exponent, pass});
    rep.member = rep.member && pass;
  };
  if (r % 2 == 0) {
    for (int k = 1; k <= r / 2; ++k) {
      add(k - 1, true);
      add(k, false);
    }
  } else {
    for (int k = 0; k <= (r - 1) / 2; ++k) {
      add(k, false);
      add(k, true);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak-form first variation. The d/ds slot of the density is integrated on
// its own: convergence measured against the full perturbation triple would
// be dominated by the energy slot, which grows much faster with r than the
// variation does near a root.

inline double first_variation(double a, const Bump& v, const ModelPair& mp,
                              const EnergySpec& spec, const QuadOptions& qopt = {}) {
  if (!v.admissible_for_order(spec.r))
    throw admissibility_error("first_variation: bump is not admissible for order " +
                              std::to_string(spec.r));
  const ProfileFamily family(a, v);
  return integrate_unit<double>(
             [&](double rho) { return lagrangian<Perturbation2>(rho, family, mp, spec).v1; },
             qopt)
      .value;
}

// ---------------------------------------------------------------------------
// Closed-form references.

struct ConjectureAngle {
  int r = 0;
  int n = 0;                    // 2r + 1
  double arccos_argument = 0.0;
  double a = 0.0;
};

// Closed-form pattern a_r = 1/2 arccos((sqrt((r^2-1)(2r-1)) - r^2 - r + 1)/r^2)
// at n = 2r + 1.
inline ConjectureAngle conjecture_angle(int r) {
  if (r < 2) throw domain_error("conjecture_angle: require r >= 2");
  const double rr = static_cast<double>(r);
  const double arg = (std::sqrt((rr * rr - 1.0) * (2.0 * rr - 1.0)) - rr * rr - rr + 1.0) /
                     (rr * rr);
  if (!(arg > -1.0 && arg < 1.0))
    throw domain_error("conjecture_angle: arccos argument outside (-1, 1)");
  return {r, 2 * r + 1, arg, 0.5 * std::acos(arg)};
}

struct ClosedFormReference {
  double a = 0.0;
  std::string theorem;
};

inline std::optional<ClosedFormReference> closed_form_angle_reference(int r, int n) {
  if (r == 2 && n == 5) return ClosedFormReference{3.141592653589793 / 3.0, "Thm1.2(i)"};
  if (r == 2 && n == 6) return ClosedFormReference{0.5 * std::acos(-0.8), "Thm1.2(ii)"};
  if (r == 3 && n == 7)
    return ClosedFormReference{0.5 * std::acos((2.0 * std::sqrt(10.0) - 11.0) / 9.0),
                               "Thm1.4(i)"};
  if (r == 4 && n == 9)
    return ClosedFormReference{0.5 * std::acos((std::sqrt(105.0) - 19.0) / 16.0), "Thm1.4(ii)"};
  if (r == 5 && n == 11)
    return ClosedFormReference{0.5 * std::acos((6.0 * std::sqrt(6.0) - 29.0) / 25.0),
                               "Thm1.4(iii)"};
  if (n == 2 * r + 1) return ClosedFormReference{conjecture_angle(r).a, "Rem3.3"};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Explicit criticality polynomials in x = cos^2 a.

struct PaperPolynomial {
  int r = 0;
  int n = 0;
  // Descending coefficients. For r = 3 the quadratic itself; for r = 5 the
  // cubic factor, with the linear factor (n-1) x + 2n - 8 listed separately.
  std::vector<double> coefficients;
  std::vector<double> linear_factor;
  std::vector<double> roots_in_01;  // x roots strictly inside (0,1)
  std::vector<double> angles;       // 1/2 arccos(2x - 1)
};

inline PaperPolynomial paper_polynomial(int r, int n) {
  if (r != 3 && r != 5) throw domain_error("paper_polynomial: defined for r in {3, 5}");
  PaperPolynomial out;
  out.r = r;
  out.n = n;
  const double m = static_cast<double>(n);
  std::vector<double> roots;
  if (r == 3) {
    out.coefficients = {3.0 * (m - 1.0) * (m - 1.0), 2.0 * (m - 1.0) * (3.0 * m - 19.0),
                        2.0 * (m - 4.0) * (3.0 * m - 23.0)};
    roots = real_roots_quadratic(out.coefficients[0], out.coefficients[1], out.coefficients[2]);
  } else {
    out.linear_factor = {m - 1.0, 2.0 * m - 8.0};
    out.coefficients = {5.0 * (m - 1.0) * (m - 1.0) * (m - 1.0),
                        2.0 * (m - 1.0) * (m - 1.0) * (17.0 * m - 138.0),
                        4.0 * (m - 1.0) * (27.0 * m * m - 475.0 * m + 1984.0),
                        24.0 * (m - 6.0) * (m - 8.0) * (7.0 * m - 79.0)};
    roots = real_roots_cubic(out.coefficients[0], out.coefficients[1], out.coefficients[2],
                             out.coefficients[3]);
    if (out.linear_factor[0] != 0.0) roots.push_back(-out.linear_factor[1] / out.linear_factor[0]);
  }
  for (double x : roots) {
    if (x > 0.0 && x < 1.0) {
      out.roots_in_01.push_back(x);
      out.angles.push_back(0.5 * std::acos(2.0 * x - 1.0));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Root scan over the angle.

struct ClosedFormMatch {
  double reference = 0.0;
  double deviation = 0.0;
  std::string theorem;
};

struct CriticalAngleRecord {
  int r = 0;
  Variant variant = Variant::standard;
  int n = 0;
  double a = 0.0;
  double cos_2a = 0.0;
  std::vector<double> residuals;  // |F_v| at the root, one per scan bump
  double variation_scale = 1.0;   // max |F_v| over the scan grid
  bool sobolev_ok = true;
  std::optional<ClosedFormMatch> closed_form;
  std::string theorem;
};

struct DimensionEntry {
  int n = 0;
  bool sobolev_ok = false;
  std::vector<CriticalAngleRecord> roots;
};

struct ScanOptions {
  int grid = 512;
  double xtol = 1e-12;        // Brent tolerance on the angle
  double residual_tol = 1e-8; // |F_v| gate at reported roots
  double match_tol = 1e-9;    // cross-bump agreement and deduplication
  QuadOptions quad{};
};

inline std::vector<Bump> scan_bumps(int r) {
  return {Bump(0, r), Bump(0, r + 1), Bump(1, r)};
}

inline DimensionEntry find_critical_angles(int r, Variant variant, int n, ScanOptions opts = {}) {
  const EnergySpec spec{r, variant};
  validate(spec);
  DimensionEntry entry;
  entry.n = n;
  entry.sobolev_ok = sobolev_check(r, n).member;
  if (!entry.sobolev_ok) return entry;
  // Deep recursions at r = 8 lose enough bits that node sums get the
  // compensated treatment.
  if (r >= 8) opts.quad.compensated = true;

  const auto mp = ModelPair::ball_to_sphere(n);
  const auto bumps = scan_bumps(r);
  auto fv = [&](const Bump& b, double a) { return first_variation(a, b, mp, spec, opts.quad); };

  const double lo = 1e-4;
  const double hi = kHalfPi - 1e-4;
  const int grid = opts.grid;
  std::vector<double> values(static_cast<size_t>(grid));
  std::vector<double> points(static_cast<size_t>(grid));
  for (int i = 0; i < grid; ++i)
    points[static_cast<size_t>(i)] = lo + (hi - lo) * i / static_cast<double>(grid - 1);
  parallel_for(0, grid,
               [&](int i) { values[static_cast<size_t>(i)] = fv(bumps[0], points[static_cast<size_t>(i)]); });

  std::vector<double> found;
  for (int i = 0; i + 1 < grid; ++i) {
    const double fa = values[static_cast<size_t>(i)], fb = values[static_cast<size_t>(i + 1)];
    if (fa == 0.0) {
      found.push_back(points[static_cast<size_t>(i)]);
      continue;
    }
    if ((fa > 0.0) == (fb > 0.0)) continue;
    // Re-scan the bracketing cell at 4x resolution so nearby zeros cannot
    // be conflated, then refine each sub-bracket.
    const double x0 = points[static_cast<size_t>(i)], x1 = points[static_cast<size_t>(i + 1)];
    double prev_x = x0, prev_f = fa;
    for (int sub = 1; sub <= 4; ++sub) {
      const double x = x0 + (x1 - x0) * sub / 4.0;
      const double f = (sub == 4) ? fb : fv(bumps[0], x);
      if (prev_f == 0.0) {
        found.push_back(prev_x);
      } else if ((prev_f > 0.0) != (f > 0.0)) {
        found.push_back(brent_root([&](double t) { return fv(bumps[0], t); }, prev_x, x, prev_f,
                                   f, opts.xtol));
      }
      prev_x = x;
      prev_f = f;
    }
  }

  // Deduplicate.
  std::sort(found.begin(), found.end());
  std::vector<double> unique_roots;
  for (double a : found)
    if (unique_roots.empty() || a - unique_roots.back() > opts.match_tol) unique_roots.push_back(a);

  // |F| grows by orders of magnitude with r; residuals are gated against
  // the grid scale so the tolerance means the same thing at every order.
  double variation_scale = 1.0;
  for (double v : values) variation_scale = std::max(variation_scale, std::fabs(v));

  for (double root : unique_roots) {
    CriticalAngleRecord rec;
    rec.r = r;
    rec.variant = variant;
    rec.n = n;
    rec.a = root;
    rec.variation_scale = variation_scale;
    rec.sobolev_ok = true;
    bool keep = true;
    // The root must be confirmed independently by every scan bump.
    for (const Bump& b : bumps) {
      double confirmed = root;
      if (&b != &bumps[0]) {
        const double width = (hi - lo) / static_cast<double>(grid - 1);
        double xa = std::max(lo, root - width), xb = std::min(hi, root + width);
        double fa = fv(b, xa), fb2 = fv(b, xb);
        if ((fa > 0.0) == (fb2 > 0.0)) {
          keep = false;  // not a shared zero
          break;
        }
        confirmed = brent_root([&](double t) { return fv(b, t); }, xa, xb, fa, fb2, opts.xtol);
        if (std::fabs(confirmed - root) > opts.match_tol) {
          keep = false;
          break;
        }
      }
      const double residual = std::fabs(fv(b, confirmed));
      if (residual > opts.residual_tol * variation_scale) {
        keep = false;
        break;
      }
      rec.residuals.push_back(residual);
    }
    if (!keep) continue;
    rec.cos_2a = std::cos(2.0 * root);
    if (const auto ref = closed_form_angle_reference(r, n)) {
      rec.closed_form = ClosedFormMatch{ref->a, std::fabs(root - ref->a), ref->theorem};
      rec.theorem = ref->theorem;
    } else {
      rec.theorem = (r == 2) ? "Thm1.2" : (r <= 5 ? "Thm1.4" : "Rem3.3");
    }
    entry.roots.push_back(rec);
  }
  return entry;
}

// Scan of find_critical_angles over a dimension range, parallel over n.
inline std::vector<DimensionEntry> dimension_scan(int r, Variant variant, int n_lo, int n_hi,
                                                  const ScanOptions& opts = {}) {
  if (n_lo < 2 || n_hi > 40 || n_lo > n_hi)
    throw domain_error("dimension_scan: dimension range must lie within [2, 40]");
  std::vector<DimensionEntry> entries(static_cast<size_t>(n_hi - n_lo + 1));
  // Scans are independent per dimension; each one also parallelizes its own
  // grid pass. Both levels share the POLYHARM_THREADS cap.
  parallel_for(0, n_hi - n_lo + 1, [&](int i) {
    entries[static_cast<size_t>(i)] = find_critical_angles(r, variant, n_lo + i, opts);
  });
  return entries;
}

}  // namespace polyharm

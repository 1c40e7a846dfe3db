#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polyharm/errors.hpp"
#include "polyharm/jet.hpp"
#include "polyharm/profile.hpp"
#include "polyharm/quadrature.hpp"
#include "polyharm/warp.hpp"

// Reduced r-energy machinery for rotationally symmetric maps between warped
// products f^2(rho) g_S + d rho^2  ->  h^2(alpha) g_S + d alpha^2.
//
// The scalar tension is
//     tau = alpha'' + (n-1) (f'/f) alpha' - (n-1) h(alpha) h'(alpha) / f^2,
// and the higher-order quantities follow the recursion
//     T_2      = tau,
//     T_{2k}   = T_{2k-2}'' + (n-1)(f'/f) T_{2k-2}' - (n-1)(h'^2/f^2) T_{2k-2},
//     T_{2k+1} = [ T_{2k}'^2 + (n-1)(h'^2/f^2) T_{2k}^2 ]^(1/2),
// with the reduced Lagrangian L_r = 1/2 T_r^2 f^(n-1).
//
// Normalization: every energy reported by this library is the bare integral
// over (0,1) of the Lagrangian, i.e. per unit volume of the sphere factor.
// No Vol(S^(n-1)) prefactor is ever applied; the cross-dimension consistency
// of the stability suite pins this convention down.
//
// The Eells-Sampson variants coincide with the standard functionals for
// r = 2, 3 and add curvature correction terms for r = 4, 5 (every correction
// carries a factor alpha', so both families agree on constant profiles).

namespace polyharm {

enum class Variant { standard, eells_sampson };

inline std::string to_string(Variant v) {
  return v == Variant::standard ? "std" : "es";
}

struct EnergySpec {
  int r = 2;
  Variant variant = Variant::standard;
};

inline void validate(const EnergySpec& spec) {
  if (spec.r < 2) throw domain_error("EnergySpec: r must be >= 2");
  if (spec.variant == Variant::eells_sampson && spec.r > 5)
    throw unsupported_error("EnergySpec: the Eells-Sampson variant is defined for r in {2,3,4,5}");
}

// Every Lagrangian of order r consumes profile derivatives through order r.
inline int required_profile_order(const EnergySpec& spec) {
  validate(spec);
  return spec.r;
}

// tau as a jet of order alpha.order() - 2.
template <class R>
Jet<R> tension_from_jets(int n, const Jet<R>& alpha, const Jet<R>& fjet, const WarpFn& h) {
  if (alpha.order() < 2) throw arity_error("tension: profile jet must have order >= 2");
  if (fjet.order() < alpha.order() - 1)
    throw arity_error("tension: domain warp jet has insufficient order");
  if (scalar_value(fjet[0]) <= 0.0)
    throw singularity_error("tension: domain warp vanishes at the base point");
  const int M = alpha.order() - 2;
  const auto f = fjet.truncated(M);
  const auto fdot = fjet.derivative().truncated(M);
  const auto aM = alpha.truncated(M);
  const auto adot = alpha.derivative().truncated(M);
  const auto addot = alpha.derivative().derivative().truncated(M);
  const auto hv = h.compose(0, aM);
  const auto hp = h.compose(1, aM);
  return addot + static_cast<double>(n - 1) * ((fdot / f) * adot) -
         static_cast<double>(n - 1) * ((hv * hp) / (f * f));
}

template <class R, class Profile>
Jet<R> tension_jet(double rho0, const Profile& prof, const ModelPair& mp, int out_order) {
  const int K = out_order + 2;
  return tension_from_jets(mp.n, prof.template jet<R>(rho0, K), mp.f.template jet<R>(rho0, K),
                           mp.h);
}

template <class Profile>
double tension(double rho0, const Profile& prof, const ModelPair& mp) {
  return tension_jet<double>(rho0, prof, mp, 0)[0];
}

namespace detail {

// T_2, T_4, ..., T_{2*floor(r/2)}, each two jet orders lower than its
// predecessor. alpha must have order >= r.
template <class R>
std::vector<Jet<R>> even_t_jets(int n, const Jet<R>& alpha, const Jet<R>& fjet, const WarpFn& h,
                                int r) {
  if (alpha.order() < r) throw arity_error("t_stack: profile jet must have order >= r");
  const int M2 = alpha.order() - 2;  // order of T_2
  const auto f = fjet.truncated(M2);
  const auto fdot = fjet.derivative().truncated(M2);
  const auto hp = h.compose(1, alpha.truncated(M2));
  const auto fd_over_f = fdot / f;
  const auto hp2_over_f2 = (hp * hp) / (f * f);

  std::vector<Jet<R>> evens;
  evens.push_back(tension_from_jets(n, alpha, fjet, h));
  for (int k = 2; 2 * k <= r; ++k) {
    const auto& prev = evens.back();
    const int M = prev.order() - 2;
    if (M < 0) throw arity_error("t_stack: profile jet order too low for requested r");
    evens.push_back(prev.derivative().derivative().truncated(M) +
                    static_cast<double>(n - 1) * (fd_over_f.truncated(M) *
                                                  prev.derivative().truncated(M)) -
                    static_cast<double>(n - 1) * (hp2_over_f2.truncated(M) * prev.truncated(M)));
  }
  return evens;
}

// Square root of the odd-T argument, guarded against the argument rounding
// to a small negative number (it is a sum of squares).
template <class R>
R sqrt_clamped(const R& x) {
  using std::sqrt;
  const double v = scalar_value(x);
  if (v <= 0.0) {
    if (v >= -1e-15) return R(0.0);
    throw domain_error("t_stack: odd-T argument is negative beyond rounding");
  }
  return sqrt(x);
}

}  // namespace detail

// The full recursion state at one base point: tau and the even T's as jets,
// the odd T's as scalars.
template <class R>
struct TStack {
  std::vector<Jet<R>> evens;  // T_2, T_4, ...
  std::vector<R> odds;        // T_3, T_5, ...
  const Jet<R>& tau() const { return evens.front(); }
};

template <class R, class Profile>
TStack<R> t_stack(double rho0, const Profile& prof, const ModelPair& mp, int r) {
  if (r < 2) throw domain_error("t_stack: r must be >= 2");
  const int K = r;
  const auto alpha = prof.template jet<R>(rho0, K);
  const auto fjet = mp.f.template jet<R>(rho0, K);
  TStack<R> out;
  out.evens = detail::even_t_jets(mp.n, alpha, fjet, mp.h, r);
  const auto f0 = fjet[0];
  const auto hp0 = mp.h.compose(1, alpha.truncated(0))[0];
  const R c = static_cast<double>(mp.n - 1) * (hp0 * hp0) / (f0 * f0);
  for (const auto& even : out.evens) {
    if (even.order() < 1) break;
    const R td = even[1];
    const R t0 = even[0];
    out.odds.push_back(detail::sqrt_clamped(td * td + c * (t0 * t0)));
  }
  return out;
}

// Reduced Lagrangian density at one base point, in the requested ring.
template <class R, class Profile>
R lagrangian(double rho0, const Profile& prof, const ModelPair& mp, const EnergySpec& spec) {
  using std::pow;
  validate(spec);
  const int r = spec.r;
  const int K = required_profile_order(spec);
  const int n = mp.n;
  const auto alpha = prof.template jet<R>(rho0, K);
  const auto fjet = mp.f.template jet<R>(rho0, K);
  const auto evens = detail::even_t_jets(n, alpha, fjet, mp.h, r);

  const R f0 = fjet[0];
  const R hp0 = mp.h.compose(1, alpha.truncated(0))[0];
  const R fpow = pow(f0, static_cast<double>(n - 1));

  R tr_sq(0.0);
  if (r % 2 == 0) {
    const R t = evens.back()[0];
    tr_sq = t * t;
  } else {
    const auto& te = evens.back();  // order >= 1
    const R td = te[1];
    const R t0 = te[0];
    tr_sq = td * td + static_cast<double>(n - 1) * (hp0 * hp0) / (f0 * f0) * (t0 * t0);
  }
  R L = 0.5 * tr_sq * fpow;

  if (spec.variant == Variant::eells_sampson && r >= 4) {
    const R adot0 = alpha[1];
    const R tau0 = evens.front()[0];
    const R hpp0 = mp.h.compose(2, alpha.truncated(0))[0];
    if (r == 4) {
      // 1/2 (n-1) alpha'^2 tau^2 h''^2 / f^2 * f^(n-1)
      L += 0.5 * static_cast<double>(n - 1) * (adot0 * adot0) * (tau0 * tau0) * (hpp0 * hpp0) /
           (f0 * f0) * fpow;
    } else {  // r == 5
      const R h0 = mp.h.compose(0, alpha.truncated(0))[0];
      const R fd0 = fjet[1];
      // d/drho ( alpha' tau h''(alpha)/h(alpha) ), expanded through jets.
      const auto a1 = alpha.truncated(2);
      const auto tau1 = tension_from_jets(n, alpha.truncated(3), fjet.truncated(3), mp.h);
      const auto hratio =
          mp.h.compose(2, alpha.truncated(1)) / mp.h.compose(0, alpha.truncated(1));
      const auto g = a1.derivative() * tau1 * hratio;
      const R dterm = g[1];
      const R bracket = h0 * dterm + (adot0 * adot0) * tau0 * hp0 * hpp0 / h0 +
                        static_cast<double>(n - 3) * adot0 * tau0 * hpp0 * fd0 / f0;
      const R t4 = evens[1][0];
      const R cross = (adot0 * adot0) * tau0 *
                      (static_cast<double>(n - 1) * tau0 * (hp0 * hp0) * (hpp0 * hpp0) /
                           (f0 * f0) -
                       2.0 * t4 * (hpp0 * hpp0));
      L += 0.5 * static_cast<double>(n - 1) / (f0 * f0) * (bracket * bracket + cross) * fpow;
    }
  }
  return L;
}

// Energy of the profile over (0,1): the integral of the Lagrangian, per
// unit volume of the sphere factor. In the Perturbation2 ring the value
// slot is the energy and the next slots carry the first and second
// s-variations of the family.
template <class R, class Profile>
QuadResult<R> energy(const Profile& prof, const ModelPair& mp, const EnergySpec& spec,
                     const QuadOptions& opt = {}) {
  validate(spec);
  return integrate_unit<R>(
      [&](double rho) { return lagrangian<R>(rho, prof, mp, spec); }, opt);
}

// Witness of the Eells-Sampson equivalence criterion for the given profile:
// the maximum of |alpha' T_{2(k+1)} h''(alpha)/h(alpha)| over the samples
// and k = 0..r-4. Zero iff the criterion d^2 Delta^k tau = 0 holds on the
// samples; constant profiles give exactly zero.
template <class Profile>
double es_equivalence_witness(const Profile& prof, const ModelPair& mp, int r,
                              const std::vector<double>& samples) {
  if (r < 4) throw domain_error("es_equivalence_witness: requires r >= 4");
  const int K = std::max(2, 2 * (r - 3));
  double worst = 0.0;
  for (double rho0 : samples) {
    const auto alpha = prof.template jet<double>(rho0, K);
    const auto fjet = mp.f.template jet<double>(rho0, K);
    const auto evens = detail::even_t_jets(mp.n, alpha, fjet, mp.h, 2 * (r - 3));
    const double adot = alpha[1];
    const double hv = mp.h.compose(0, alpha.truncated(0))[0];
    const double hpp = mp.h.compose(2, alpha.truncated(0))[0];
    for (int k = 0; k + 4 <= r; ++k) {
      const double t = evens[static_cast<size_t>(k)][0];
      worst = std::max(worst, std::fabs(adot * t * hpp / hv));
    }
  }
  return worst;
}

inline std::vector<double> default_witness_samples() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

}  // namespace polyharm

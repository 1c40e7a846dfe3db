#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "polyharm/errors.hpp"
#include "polyharm/jet.hpp"

// Radial profile families alpha_s(rho) = a + s v(rho).
//
// The base angle is constant and the family is affine in the variation
// parameter s, which is all the stability analysis needs: in the
// Perturbation2 ring the first-derivative slot of every jet coefficient
// carries v^(i)(rho0) and the second-derivative slot is zero.
//
// Bump grammar: v(rho) = amplitude * rho^m (1-rho)^k with m >= 0, k >= 1.
// Such a bump is admissible as a variation of functional order r exactly
// when v and its derivatives through order r-1 vanish at rho = 1, i.e.
// k >= r.

namespace polyharm {

struct Bump {
  int m = 0;               // power of rho
  int k = 1;               // power of (1 - rho)
  double amplitude = 1.0;

  Bump() = default;
  Bump(int rho_power, int one_minus_rho_power, double amp = 1.0)
      : m(rho_power), k(one_minus_rho_power), amplitude(amp) {
    if (m < 0 || k < 1) throw domain_error("Bump: require m >= 0 and k >= 1");
  }

  bool admissible_for_order(int r) const { return k >= r; }

  // i-th derivative of v at rho0 (Leibniz on the two power factors).
  double deriv(int i, double rho0) const {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) {
      double left;  // (rho^m)^(j)
      if (j > m) {
        left = 0.0;
      } else {
        left = 1.0;
        for (int t = 0; t < j; ++t) left *= static_cast<double>(m - t);
        left *= std::pow(rho0, m - j);
      }
      const int l = i - j;
      double right;  // ((1-rho)^k)^(l)
      if (l > k) {
        right = 0.0;
      } else {
        right = (l % 2 == 0) ? 1.0 : -1.0;
        for (int t = 0; t < l; ++t) right *= static_cast<double>(k - t);
        right *= std::pow(1.0 - rho0, k - l);
      }
      acc += detail::kBinom[i][j] * left * right;
    }
    return acc * amplitude;
  }

  // "(1-rho)^3" or "rho^2*(1-rho)^4" (optionally prefixed "bump:").
  static Bump parse(std::string_view text);
  std::string to_string() const;
};

namespace detail {
// How a profile coefficient (base part, bump part) enters a given ring:
// plain double evaluates the family at s = 0, Perturbation2 carries the
// bump in the d/ds slot.
template <class R>
struct ProfileCoeff;

template <>
struct ProfileCoeff<double> {
  static double make(double base_part, double /*bump_part*/) { return base_part; }
};

template <>
struct ProfileCoeff<Perturbation2> {
  static Perturbation2 make(double base_part, double bump_part) {
    return {base_part, bump_part, 0.0};
  }
};
}  // namespace detail

class ProfileFamily {
 public:
  // Base angle strictly inside (0, pi/2); a = pi/2 is the equator map and
  // excluded from the proper-solution search.
  explicit ProfileFamily(double base_angle, std::optional<Bump> bump = std::nullopt)
      : base_(base_angle), bump_(bump) {
    if (!(base_ > 0.0 && base_ < 1.5707963267948966))
      throw domain_error("ProfileFamily: base angle must lie strictly inside (0, pi/2)");
  }

  double base() const { return base_; }
  const std::optional<Bump>& bump() const { return bump_; }

  void require_admissible(int r) const {
    if (!bump_) throw admissibility_error("ProfileFamily: variation requires a bump");
    if (!bump_->admissible_for_order(r))
      throw admissibility_error(
          "ProfileFamily: bump (1-rho)^" + std::to_string(bump_->k) +
          " does not vanish to order " + std::to_string(r - 1) + " at rho = 1");
  }

  template <class R>
  Jet<R> jet(double rho0, int order) const {
    Jet<R> out(order);
    for (int i = 0; i <= order; ++i) {
      const double base_part = (i == 0) ? base_ : 0.0;
      const double bump_part = bump_ ? bump_->deriv(i, rho0) : 0.0;
      out[i] = detail::ProfileCoeff<R>::make(base_part, bump_part);
    }
    return out;
  }

  // The family frozen at a parameter value: alpha(rho) = a + s v(rho),
  // exposed over any ring with no perturbation content.
  class Frozen {
   public:
    Frozen(double base, std::optional<Bump> bump, double s)
        : base_(base), bump_(bump), s_(s) {}
    template <class R>
    Jet<R> jet(double rho0, int order) const {
      Jet<R> out(order);
      for (int i = 0; i <= order; ++i) {
        const double base_part = (i == 0) ? base_ : 0.0;
        const double bump_part = bump_ ? bump_->deriv(i, rho0) : 0.0;
        out[i] = R(base_part + s_ * bump_part);
      }
      return out;
    }

   private:
    double base_;
    std::optional<Bump> bump_;
    double s_;
  };

  Frozen at(double s) const { return Frozen(base_, bump_, s); }

 private:
  double base_;
  std::optional<Bump> bump_;
};

// A fixed constant profile with no gate on the angle (used for harmonic
// reference maps such as the equator).
struct ConstantProfile {
  double angle = 0.0;
  template <class R>
  Jet<R> jet(double /*rho0*/, int order) const {
    return Jet<R>::constant(order, R(angle));
  }
};

// The identity profile alpha(rho) = rho (the harmonic identity map when the
// domain and target warps agree).
struct IdentityProfile {
  template <class R>
  Jet<R> jet(double rho0, int order) const {
    return Jet<R>::variable(order, R(rho0));
  }
};

inline Bump Bump::parse(std::string_view text) {
  constexpr std::string_view prefix = "bump:";
  if (text.substr(0, prefix.size()) == prefix) text.remove_prefix(prefix.size());
  int m = 0, k = 0;
  double amp = 1.0;
  std::string s(text);
  size_t pos = 0;
  // optional leading "C*"
  {
    const size_t star = s.find('*');
    if (star != std::string::npos && s.find('(') > star && s.find("rho") > star) {
      amp = std::stod(s.substr(0, star));
      pos = star + 1;
    }
  }
  auto read_power = [&](std::string_view token) -> int {
    if (s.compare(pos, token.size(), token) != 0) return -1;
    pos += token.size();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      size_t used = 0;
      const int p = std::stoi(s.substr(pos), &used);
      pos += used;
      return p;
    }
    return 1;
  };
  const int mp = read_power("rho");
  if (mp >= 0) {
    m = mp;
    if (pos < s.size() && s[pos] == '*') ++pos;
  }
  const int kp = read_power("(1-rho)");
  if (kp >= 0) k = kp;
  if (pos != s.size() || k < 1)
    throw domain_error("Bump::parse: expected [C*][rho^m*](1-rho)^k, got '" + s + "'");
  return Bump(m, k, amp);
}

inline std::string Bump::to_string() const {
  std::string out;
  if (amplitude != 1.0) out += std::to_string(amplitude) + "*";
  if (m > 0) out += "rho^" + std::to_string(m) + "*";
  out += "(1-rho)^" + std::to_string(k);
  return out;
}

}  // namespace polyharm

#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "polyharm/errors.hpp"
#include "polyharm/jet.hpp"

// Warping functions of rotationally symmetric metrics f^2(rho) g_S + d rho^2.
//
// Four kinds are supported: the identity rho (flat ball), sin (round
// sphere), sinh (hyperbolic space), and odd power series
// rho + b3 rho^3 + b5 rho^5 + ... which satisfy the model conditions at the
// pole (value 0, first derivative 1, even derivatives 0) by construction.

namespace polyharm {

class WarpFn {
 public:
  enum class Kind { identity, sine, hyperbolic_sine, series };

  WarpFn() = default;

  static WarpFn identity() { return WarpFn(Kind::identity, {}); }
  static WarpFn sine() { return WarpFn(Kind::sine, {}); }
  static WarpFn hyperbolic_sine() { return WarpFn(Kind::hyperbolic_sine, {}); }
  // odd_coeffs = {b3, b5, ...}.
  static WarpFn series(std::vector<double> odd_coeffs) {
    return WarpFn(Kind::series, std::move(odd_coeffs));
  }

  Kind kind() const { return kind_; }
  const std::vector<double>& odd_coeffs() const { return odd_; }

  // "identity" | "sin" | "sinh" | "series:b3=...,b5=..."
  static WarpFn parse(std::string_view text);
  std::string to_string() const;

  // Derivatives of the warp at rho0 through the given order, as a jet in
  // rho over the requested ring. rho0 must lie in the kind's natural open
  // interval of definition.
  template <class R>
  Jet<R> jet(double rho0, int order) const {
    check_point(rho0);
    Jet<R> out(order);
    switch (kind_) {
      case Kind::identity: {
        out = Jet<R>::variable(order, R(rho0));
        break;
      }
      case Kind::sine: {
        const double s = std::sin(rho0), c = std::cos(rho0);
        const double cycle[4] = {s, c, -s, -c};
        for (int i = 0; i <= order; ++i) out[i] = R(cycle[i % 4]);
        break;
      }
      case Kind::hyperbolic_sine: {
        const double s = std::sinh(rho0), c = std::cosh(rho0);
        for (int i = 0; i <= order; ++i) out[i] = R(i % 2 == 0 ? s : c);
        break;
      }
      case Kind::series: {
        for (int i = 0; i <= order; ++i) out[i] = R(series_deriv(i, rho0));
        break;
      }
    }
    return out;
  }

  // Composition w^(deriv) (alpha(rho)) as a jet in rho, for a jet-valued
  // angle alpha. Used for target warps, where the argument is the profile.
  template <class R>
  Jet<R> compose(int deriv, const Jet<R>& alpha) const {
    switch (kind_) {
      case Kind::identity: {
        if (deriv == 0) return alpha;
        if (deriv == 1) return Jet<R>::constant(alpha.order(), R(1.0));
        return Jet<R>(alpha.order());
      }
      case Kind::sine: {
        auto [s, c] = sin_cos(alpha);
        switch (deriv % 4) {
          case 0: return s;
          case 1: return c;
          case 2: return -s;
          default: return -c;
        }
      }
      case Kind::hyperbolic_sine: {
        auto [s, c] = sinh_cosh(alpha);
        return deriv % 2 == 0 ? s : c;
      }
      case Kind::series: {
        // Horner evaluation of the deriv-times differentiated polynomial.
        std::vector<double> c = dense_coeffs();
        for (int d = 0; d < deriv; ++d) {
          for (size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
          if (!c.empty()) c.pop_back();
        }
        Jet<R> acc(alpha.order());
        for (size_t i = c.size(); i-- > 0;) {
          acc = acc * alpha;
          acc[0] += R(c[i]);
        }
        return acc;
      }
    }
    throw domain_error("WarpFn: unknown kind");
  }

  double operator()(double rho) const { return scalar_value(jet<double>(rho, 0)[0]); }

  // Derivatives at the pole rho = 0 (the boundary of the open interval of
  // definition), where every supported kind satisfies the model conditions
  // f(0) = 0, f'(0) = 1, even derivatives zero.
  Jet<double> pole_jet(int order) const {
    Jet<double> out(order);
    switch (kind_) {
      case Kind::identity:
        if (order >= 1) out[1] = 1.0;
        break;
      case Kind::sine:
        for (int i = 1; i <= order; i += 2) out[i] = (i % 4 == 1) ? 1.0 : -1.0;
        break;
      case Kind::hyperbolic_sine:
        for (int i = 1; i <= order; i += 2) out[i] = 1.0;
        break;
      case Kind::series: {
        const auto c = dense_coeffs();
        double factorial = 1.0;
        for (int i = 0; i <= order; ++i) {
          if (i > 0) factorial *= static_cast<double>(i);
          if (i < static_cast<int>(c.size())) out[i] = c[static_cast<size_t>(i)] * factorial;
        }
        break;
      }
    }
    return out;
  }

 private:
  WarpFn(Kind kind, std::vector<double> odd) : kind_(kind), odd_(std::move(odd)) {}

  void check_point(double rho0) const {
    const bool ok = (kind_ == Kind::sine) ? (rho0 > 0.0 && rho0 < 3.141592653589793)
                                          : (rho0 > 0.0);
    if (!ok) throw domain_error("WarpFn: point outside the open interval of definition");
  }

  // Ascending dense coefficients: rho + b3 rho^3 + ...
  std::vector<double> dense_coeffs() const {
    std::vector<double> c(2 + 2 * odd_.size(), 0.0);
    c[1] = 1.0;
    for (size_t j = 0; j < odd_.size(); ++j) c[3 + 2 * j] = odd_[j];
    return c;
  }

  double series_deriv(int k, double rho0) const {
    std::vector<double> c = dense_coeffs();
    for (int d = 0; d < k; ++d) {
      for (size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
      if (!c.empty()) c.pop_back();
    }
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * rho0 + c[i];
    return acc;
  }

  Kind kind_ = Kind::identity;
  std::vector<double> odd_;
};

inline WarpFn WarpFn::parse(std::string_view text) {
  if (text == "identity" || text == "rho") return identity();
  if (text == "sin" || text == "sine") return sine();
  if (text == "sinh") return hyperbolic_sine();
  constexpr std::string_view prefix = "series:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::vector<double> odd;
    std::string rest(text.substr(prefix.size()));
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      const std::string item = rest.substr(pos, comma - pos);
      const size_t eq = item.find('=');
      if (eq == std::string::npos || item.empty() || item[0] != 'b')
        throw domain_error("WarpFn::parse: expected bK=value entries");
      const int index = std::stoi(item.substr(1, eq - 1));
      if (index < 3 || index % 2 == 0)
        throw domain_error("WarpFn::parse: series indices must be odd and >= 3");
      const size_t slot = static_cast<size_t>((index - 3) / 2);
      if (odd.size() <= slot) odd.resize(slot + 1, 0.0);
      odd[slot] = std::stod(item.substr(eq + 1));
      pos = comma + 1;
    }
    return series(std::move(odd));
  }
  throw domain_error("WarpFn::parse: unknown warp '" + std::string(text) + "'");
}

inline std::string WarpFn::to_string() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::sine: return "sin";
    case Kind::hyperbolic_sine: return "sinh";
    case Kind::series: {
      std::string out = "series:";
      for (size_t j = 0; j < odd_.size(); ++j) {
        if (j) out += ',';
        out += "b" + std::to_string(3 + 2 * j) + "=" + std::to_string(odd_[j]);
      }
      return out;
    }
  }
  return "?";
}

// Domain/target pair of a rotationally symmetric map (w, rho) -> (w, alpha(rho)).
struct ModelPair {
  int n = 5;       // dimension, >= 2
  WarpFn f;        // domain warp on (0, 1]
  WarpFn h;        // target warp on (0, pi)

  ModelPair(int dim, WarpFn domain, WarpFn target)
      : n(dim), f(std::move(domain)), h(std::move(target)) {
    if (n < 2) throw domain_error("ModelPair: dimension must be >= 2");
  }

  // The flat-ball-to-sphere family.
  static ModelPair ball_to_sphere(int dim) {
    return ModelPair(dim, WarpFn::identity(), WarpFn::sine());
  }
};

}  // namespace polyharm

#pragma once

#include <cmath>
#include <stdexcept>

#include "alohacorr/network.hpp"
#include "alohacorr/pathloss.hpp"
#include "alohacorr/quadrature.hpp"

namespace alohacorr {

// ---------------------------------------------------------------------------
// Interference moments and correlation across distinct slots
// ---------------------------------------------------------------------------

// E[I] = p * lambda * integral of g (Campbell).
inline double mean_interference(const NetworkConfig& cfg) {
    if (cfg.p == 0.0) return 0.0;
    return cfg.p * cfg.lambda * integral_g(cfg.pathloss);
}

// Var[I] = p * lambda * E[h^2] * integral of g^2.
inline double interference_variance(const NetworkConfig& cfg) {
    if (cfg.p == 0.0) return 0.0;
    return cfg.p * cfg.lambda * cfg.fading.second_moment() * integral_g_squared(cfg.pathloss);
}

// Correlation coefficient of I_k(u) and I_l(v), k != l, at
// separation = ||u - v||:
//   zeta = p * cross_integral(separation) / (E[h^2] * integral of g^2).
inline double spatial_temporal_correlation(const NetworkConfig& cfg, double separation,
                                           QuadratureOptions opts = {}) {
    const double denominator = cfg.fading.second_moment() * integral_g_squared(cfg.pathloss);
    return cfg.p * cross_integral(cfg.pathloss, separation, opts) / denominator;
}

// Same-location limit of the above: zeta_t = p / E[h^2], independent of the
// path loss model.
inline double temporal_correlation(const NetworkConfig& cfg) {
    return cfg.p / cfg.fading.second_moment();
}

// epsilon -> 0 limit of zeta(u, v) for u != v. The separation-0 value is the
// ALOHA temporal coefficient and is deliberately not reachable through this
// limit; use temporal_correlation for it.
inline double singular_limit_correlation(double separation) {
    if (!(separation >= 0.0)) {
        throw std::domain_error("separation must be >= 0");
    }
    if (separation == 0.0) {
        throw std::invalid_argument(
            "separation 0 is the temporal coefficient; use temporal_correlation");
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Rayleigh link success probabilities
// ---------------------------------------------------------------------------

namespace detail {

inline void require_rayleigh(const NetworkConfig& cfg) {
    if (!cfg.fading.is_rayleigh()) {
        throw std::invalid_argument("link success probabilities assume Rayleigh fading");
    }
}

// integral over the plane of a*g/(1 + a*g). Bounded integrand, defined for
// epsilon >= 0. In polar form with g = 1/(eps + r^alpha) this is
// 2*pi * int r * a / (eps + a + r^alpha) dr.
inline double exceedance_integral(const PathLossModel& model, double a,
                                  QuadratureOptions opts = {}) {
    auto integrand = [&model, a](double r) {
        return r * a / (model.epsilon + a + std::pow(r, model.alpha));
    };
    return 2.0 * M_PI * integrate_radial(integrand, opts).value;
}

// integral over the plane of (a*g/(1 + a*g))^2.
inline double exceedance_integral_squared(const PathLossModel& model, double a,
                                          QuadratureOptions opts = {}) {
    auto integrand = [&model, a](double r) {
        const double w = a / (model.epsilon + a + std::pow(r, model.alpha));
        return r * w * w;
    };
    return 2.0 * M_PI * integrate_radial(integrand, opts).value;
}

}  // namespace detail

// P(A_l) = exp(-lambda * p * integral of a*g/(1 + a*g)).
inline double success_probability(const NetworkConfig& net, const LinkConfig& link,
                                  QuadratureOptions opts = {}) {
    detail::require_rayleigh(net);
    if (net.p == 0.0) return 1.0;
    const double a = link.threshold_scale(net.pathloss);
    return std::exp(-net.lambda * net.p * detail::exceedance_integral(net.pathloss, a, opts));
}

// P(A_k, A_l), k != l
//   = exp(-lambda * (2p * integral of w - p^2 * integral of w^2)),
// with w = a*g/(1 + a*g). Shares the exponent integrals with
// success_probability and conditional_ratio, so the identity
// joint = success^2 * ratio holds to rounding.
inline double joint_success_probability(const NetworkConfig& net, const LinkConfig& link,
                                        QuadratureOptions opts = {}) {
    detail::require_rayleigh(net);
    if (net.p == 0.0) return 1.0;
    const double a = link.threshold_scale(net.pathloss);
    const double linear = detail::exceedance_integral(net.pathloss, a, opts);
    const double squared = detail::exceedance_integral_squared(net.pathloss, a, opts);
    return std::exp(-net.lambda * (2.0 * net.p * linear - net.p * net.p * squared));
}

// P(A_k | A_l) / P(A_l) = exp(lambda * p^2 * integral of w^2) > 1 for p > 0.
inline double conditional_ratio(const NetworkConfig& net, const LinkConfig& link,
                                QuadratureOptions opts = {}) {
    detail::require_rayleigh(net);
    if (net.p == 0.0) return 1.0;
    const double a = link.threshold_scale(net.pathloss);
    return std::exp(net.lambda * net.p * net.p *
                    detail::exceedance_integral_squared(net.pathloss, a, opts));
}

}  // namespace alohacorr

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "alohacorr/errors.hpp"
#include "alohacorr/quadrature.hpp"

namespace alohacorr {

// Radial power attenuation 1/(epsilon + r^alpha). epsilon = 0 selects the
// singular law r^(-alpha); every plane integral over that model diverges at
// the origin, so the moment helpers refuse it instead of returning inf.
struct PathLossModel {
    double alpha;
    double epsilon;

    PathLossModel(double alpha_, double epsilon_) : alpha(alpha_), epsilon(epsilon_) {
        if (!(alpha > 2.0)) {
            throw std::invalid_argument("path loss exponent must exceed 2, got " +
                                        std::to_string(alpha_));
        }
        if (!(epsilon >= 0.0)) {
            throw std::invalid_argument("path loss softening constant must be >= 0, got " +
                                        std::to_string(epsilon_));
        }
    }

    bool singular() const { return epsilon == 0.0; }
};

inline double evaluate(const PathLossModel& model, double distance) {
    if (!(distance >= 0.0)) {
        throw std::domain_error("path loss distance must be >= 0");
    }
    if (model.singular() && distance == 0.0) {
        throw std::domain_error("singular path loss has infinite gain at distance 0");
    }
    return 1.0 / (model.epsilon + std::pow(distance, model.alpha));
}

namespace detail {

inline void require_integrable(const PathLossModel& model, const char* what) {
    if (model.singular()) {
        throw divergence_error(std::string(what) +
                               " diverges for the singular path loss (epsilon = 0)");
    }
}

inline double cosecant_2pi_over(double alpha) {
    return 1.0 / std::sin(2.0 * M_PI / alpha);
}

}  // namespace detail

// integral of g over the plane: (2*pi^2/alpha) * csc(2*pi/alpha) * eps^(2/alpha - 1).
inline double integral_g(const PathLossModel& model) {
    detail::require_integrable(model, "integral of g");
    const double a = model.alpha;
    return 2.0 * M_PI * M_PI / a * detail::cosecant_2pi_over(a) *
           std::pow(model.epsilon, 2.0 / a - 1.0);
}

// integral of g^2 over the plane:
// 2*pi^2*(alpha-2)/alpha^2 * csc(2*pi/alpha) * eps^(2/alpha - 2).
inline double integral_g_squared(const PathLossModel& model) {
    detail::require_integrable(model, "integral of g^2");
    const double a = model.alpha;
    return 2.0 * M_PI * M_PI * (a - 2.0) / (a * a) * detail::cosecant_2pi_over(a) *
           std::pow(model.epsilon, 2.0 / a - 2.0);
}

// integral of g(x) * g(x - d*e1) over the plane, polar coordinates around
// the first shift point. Rotation invariance makes the direction of the
// offset irrelevant. Coincides with integral_g_squared at d = 0.
inline double cross_integral(const PathLossModel& model, double separation,
                             QuadratureOptions opts = {}) {
    detail::require_integrable(model, "cross integral of g");
    if (!(separation >= 0.0)) {
        throw std::domain_error("separation must be >= 0");
    }
    const double d = separation;
    auto integrand = [&model, d](double r, double theta) {
        const double shifted = std::sqrt(r * r + d * d - 2.0 * r * d * std::cos(theta));
        return r * evaluate(model, r) * evaluate(model, shifted);
    };
    return integrate_polar(integrand, opts).value;
}

}  // namespace alohacorr

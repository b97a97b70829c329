#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "alohacorr/errors.hpp"

namespace alohacorr {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_evaluations = 1'000'000;
};

// Convergence failed within the evaluation budget. Carries the best
// estimate reached so callers can report partial results.
class nonconvergence_error : public std::runtime_error {
public:
    nonconvergence_error(const std::string& what, QuadratureResult best)
        : std::runtime_error(what + " (best estimate " + std::to_string(best.value) +
                             ", achieved abs error " + std::to_string(best.abs_error_estimate) + ")"),
          best_estimate(best) {}

    QuadratureResult best_estimate;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
// Odd-index nodes are the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss-Kronrod 7-15 application on [a, b]. The error estimate is the
// plain |K15 - G7| difference, which overestimates the Kronrod error and
// drives bisection toward the hard panels.
template <class F>
Panel evaluate_panel(F&& f, double a, double b, std::size_t& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
        const double offset = half * kKronrodNodes[i];
        const double fsum = f(center - offset) + f(center + offset);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    const double fc = f(center);
    kronrod += kKronrodWeights[7] * fc;
    gauss += kGaussWeights[3] * fc;
    evaluations += 15;

    Panel p{a, b, kronrod * half, std::abs(kronrod - gauss) * half};
    if (!std::isfinite(p.value)) {
        throw std::domain_error("integrand produced a non-finite value on [" +
                                std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return p;
}

}  // namespace detail

// Adaptive integration of f over the finite interval [a, b]: globally
// adaptive bisection, always splitting the panel with the largest error.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, QuadratureOptions opts = {}) {
    std::size_t evaluations = 0;
    std::priority_queue<detail::Panel> panels;
    panels.push(detail::evaluate_panel(f, a, b, evaluations));

    double total_value = panels.top().value;
    double total_error = panels.top().error;
    if (evaluations > opts.max_evaluations) {
        throw nonconvergence_error("quadrature budget exhausted",
                                   {total_value, total_error, evaluations});
    }
    auto converged = [&] {
        return total_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value));
    };

    while (!converged()) {
        if (evaluations + 30 > opts.max_evaluations || panels.top().error == 0.0) {
            throw nonconvergence_error("quadrature budget exhausted",
                                       {total_value, total_error, evaluations});
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw nonconvergence_error("panel width underflow",
                                       {total_value, total_error, evaluations});
        }
        const auto left = detail::evaluate_panel(f, worst.a, mid, evaluations);
        const auto right = detail::evaluate_panel(f, mid, worst.b, evaluations);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    return {total_value, total_error, evaluations};
}

// Integral of f over (0, inf), compactified with r = exp(s/(1-s)) - 1. Any
// algebraically decaying tail r^(-1-delta) then vanishes at the endpoint, so
// the mapped integrand stays bounded for every integrable radial kernel.
// (The plain r = t/(1-t) map leaves a (1-t)^(2/alpha-1)-type endpoint
// singularity whose bisection depth collides with double resolution near
// alpha = 2.5.)
template <class F>
QuadratureResult integrate_radial(F&& f, QuadratureOptions opts = {}) {
    auto mapped = [&f](double s) {
        const double one_minus = 1.0 - s;
        const double u = s / one_minus;
        // r beyond exp(700) carries less mass than any representable
        // tolerance for an integrable tail
        if (u > 700.0) return 0.0;
        const double r = std::expm1(u);
        return f(r) * (r + 1.0) / (one_minus * one_minus);
    };
    return integrate_interval(mapped, 0.0, 1.0, opts);
}

// Integral of f(r, theta) over (0, inf) x [0, 2*pi). f carries the polar
// Jacobian itself. Nested adaptive rules: the angular integral is evaluated
// at each radial node with a tightened tolerance; evaluation counts are
// pooled against the shared budget.
template <class F>
QuadratureResult integrate_polar(F&& f, QuadratureOptions opts = {}) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    std::size_t inner_evaluations = 0;

    QuadratureOptions inner_opts;
    inner_opts.abs_tol = 0.01 * opts.abs_tol;
    inner_opts.rel_tol = 0.1 * opts.rel_tol;
    inner_opts.max_evaluations = opts.max_evaluations;

    auto angular = [&](double r) {
        auto slice = [&f, r](double theta) { return f(r, theta); };
        QuadratureOptions o = inner_opts;
        if (inner_evaluations >= o.max_evaluations) {
            throw nonconvergence_error("quadrature budget exhausted",
                                       {0.0, std::numeric_limits<double>::infinity(),
                                        inner_evaluations});
        }
        o.max_evaluations -= inner_evaluations;
        auto res = integrate_interval(slice, 0.0, two_pi, o);
        inner_evaluations += res.evaluations;
        return res.value;
    };

    QuadratureOptions outer_opts = opts;
    try {
        auto outer = integrate_radial(angular, outer_opts);
        // The outer count tallies angular-integral calls, each of which
        // already accumulated its own f evaluations.
        outer.evaluations = inner_evaluations;
        if (outer.evaluations > opts.max_evaluations) {
            throw nonconvergence_error("quadrature budget exhausted", outer);
        }
        return outer;
    } catch (nonconvergence_error& err) {
        err.best_estimate.evaluations = inner_evaluations;
        throw;
    }
}

}  // namespace alohacorr

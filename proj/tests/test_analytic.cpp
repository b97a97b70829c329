#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "alohacorr/analytic.hpp"

using namespace alohacorr;

namespace {

constexpr double kPi = 3.14159265358979323846;

NetworkConfig make_net(double lambda, double p, double alpha, double eps, FadingModel fading) {
    return NetworkConfig(lambda, p, PathLossModel(alpha, eps), fading);
}

// csc closed form of the singular conditional ratio:
// exp(2 lambda a^(2/alpha) p^2 pi^2 (alpha-2)/alpha^2 csc(2 pi/alpha))
double singular_ratio_closed_form(double lambda, double p, double alpha, double a) {
    return std::exp(2.0 * lambda * std::pow(a, 2.0 / alpha) * p * p * kPi * kPi *
                    (alpha - 2.0) / (alpha * alpha) / std::sin(2.0 * kPi / alpha));
}

// csc closed form of the singular success probability:
// exp(-lambda p a^(2/alpha) (2 pi^2/alpha) csc(2 pi/alpha))
double singular_success_closed_form(double lambda, double p, double alpha, double a) {
    return std::exp(-lambda * p * std::pow(a, 2.0 / alpha) * (2.0 * kPi * kPi / alpha) /
                    std::sin(2.0 * kPi / alpha));
}

}  // namespace

TEST_CASE("fading second moments") {
    CHECK(FadingModel::rayleigh().second_moment() == Catch::Approx(2.0));
    CHECK(FadingModel::nakagami(2.0).second_moment() == Catch::Approx(1.5));
    CHECK(FadingModel::nakagami(0.5).second_moment() == Catch::Approx(3.0));
    CHECK(FadingModel::none().second_moment() == Catch::Approx(1.0));
    CHECK_THROWS_AS(FadingModel::nakagami(0.25), std::invalid_argument);
}

TEST_CASE("mean interference") {
    CHECK(mean_interference(make_net(1.0, 0.5, 4.0, 1.0, FadingModel::rayleigh())) ==
          Catch::Approx(kPi * kPi / 4.0).epsilon(1e-12));
    CHECK(mean_interference(make_net(1.0, 0.0, 4.0, 1.0, FadingModel::rayleigh())) == 0.0);
    // linear in lambda
    CHECK(mean_interference(make_net(2.0, 0.5, 4.0, 1.0, FadingModel::rayleigh())) ==
          Catch::Approx(kPi * kPi / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(mean_interference(make_net(1.0, 0.5, 4.0, 0.0, FadingModel::rayleigh())),
                    divergence_error);
}

TEST_CASE("interference variance") {
    CHECK(interference_variance(make_net(1.0, 0.5, 4.0, 1.0, FadingModel::rayleigh())) ==
          Catch::Approx(kPi * kPi / 4.0).epsilon(1e-12));
    CHECK(interference_variance(make_net(1.0, 0.5, 4.0, 1.0, FadingModel::none())) ==
          Catch::Approx(kPi * kPi / 8.0).epsilon(1e-12));
    CHECK(interference_variance(make_net(1.0, 0.0, 4.0, 1.0, FadingModel::none())) == 0.0);
}

TEST_CASE("interference variance matches the Nakagami csc closed form") {
    for (double alpha : {2.5, 3.0, 4.0, 6.0}) {
        for (double eps : {0.01, 0.1, 1.0}) {
            for (double m : {0.5, 1.0, 3.0}) {
                const auto net = make_net(1.3, 0.4, alpha, eps, FadingModel::nakagami(m));
                const double closed = 2.0 * kPi * kPi * (alpha - 2.0) * net.p * net.lambda /
                                      (std::pow(eps, 2.0 - 2.0 / alpha) * alpha * alpha *
                                       std::sin(2.0 * kPi / alpha)) *
                                      (m + 1.0) / m;
                INFO("alpha=" << alpha << " eps=" << eps << " m=" << m);
                CHECK(interference_variance(net) == Catch::Approx(closed).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("temporal correlation") {
    CHECK(temporal_correlation(make_net(1.0, 0.5, 4.0, 1.0, FadingModel::rayleigh())) ==
          Catch::Approx(0.25));
    CHECK(temporal_correlation(make_net(1.0, 0.3, 4.0, 1.0, FadingModel::nakagami(2.0))) ==
          Catch::Approx(0.2));
    CHECK(temporal_correlation(make_net(1.0, 0.7, 4.0, 1.0, FadingModel::none())) ==
          Catch::Approx(0.7));
    CHECK(temporal_correlation(make_net(1.0, 0.0, 4.0, 1.0, FadingModel::rayleigh())) == 0.0);
    // path loss independent: same value under the singular model
    CHECK(temporal_correlation(make_net(1.0, 0.5, 4.0, 0.0, FadingModel::rayleigh())) ==
          Catch::Approx(0.25));
}

TEST_CASE("spatial correlation at zero separation reduces to the temporal value") {
    const auto rayleigh = make_net(1.0, 0.5, 4.0, 1.0, FadingModel::rayleigh());
    CHECK(spatial_temporal_correlation(rayleigh, 0.0) == Catch::Approx(0.25).epsilon(1e-6));
    const auto none = make_net(1.0, 0.7, 4.0, 1.0, FadingModel::none());
    CHECK(spatial_temporal_correlation(none, 0.0) == Catch::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("spatial correlation at separation 1 against the frozen oracle") {
    // p * C1 / (E[h^2] * pi^2/4) with C1 from the cross-integral oracle
    const double c1 = 1.6482890770869502;
    const auto net = make_net(1.0, 1.0, 4.0, 1.0, FadingModel::rayleigh());
    const double expected = c1 / (2.0 * kPi * kPi / 4.0);
    const double zeta = spatial_temporal_correlation(net, 1.0);
    CHECK(zeta == Catch::Approx(expected).epsilon(1e-6));
    CHECK(zeta > 0.0);
    CHECK(zeta < 0.5);
}

TEST_CASE("spatial correlation never exceeds the temporal coefficient") {
    const auto net = make_net(1.0, 0.8, 4.0, 1.0, FadingModel::rayleigh());
    const double zt = temporal_correlation(net);
    double previous = zt;
    for (double d : {0.25, 0.5, 1.0, 2.0}) {
        const double zeta = spatial_temporal_correlation(net, d);
        CHECK(zeta > 0.0);
        CHECK(zeta < previous);
        previous = zeta;
    }
    CHECK(spatial_temporal_correlation(net, 0.0) == Catch::Approx(zt).epsilon(1e-6));
}

TEST_CASE("singular limit correlation") {
    CHECK(singular_limit_correlation(1.0) == 0.0);
    CHECK(singular_limit_correlation(0.01) == 0.0);
    CHECK_THROWS_AS(singular_limit_correlation(0.0), std::invalid_argument);
    CHECK_THROWS_AS(singular_limit_correlation(-1.0), std::domain_error);

    // the scaling identity behind the limit: zeta(d, eps) = zeta(d eps^(-1/alpha), 1),
    // decreasing toward 0 as eps -> 0
    const double d = 0.5;
    double previous = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-4}) {
        const auto net = make_net(1.0, 1.0, 4.0, eps, FadingModel::none());
        const auto reference = make_net(1.0, 1.0, 4.0, 1.0, FadingModel::none());
        const double zeta = spatial_temporal_correlation(net, d);
        const double rescaled =
            spatial_temporal_correlation(reference, d * std::pow(eps, -0.25));
        CHECK(zeta == Catch::Approx(rescaled).epsilon(1e-5));
        CHECK(zeta < previous);
        previous = zeta;
    }
    CHECK(previous < 0.02);
}

TEST_CASE("success probability on the Fig. 2 configuration") {
    const auto net = make_net(1.0, 0.5, 4.0, 0.0, FadingModel::rayleigh());
    const LinkConfig link(0.5, 1.0);
    CHECK(link.threshold_scale(net.pathloss) == Catch::Approx(0.0625).epsilon(1e-12));
    CHECK(success_probability(net, link) ==
          Catch::Approx(std::exp(-kPi * kPi / 16.0)).epsilon(1e-8));
    // frozen decimal from the oracle
    CHECK(success_probability(net, link) == Catch::Approx(0.53964148581629718).margin(1e-6));

    const auto off = make_net(1.0, 0.0, 4.0, 0.0, FadingModel::rayleigh());
    CHECK(success_probability(off, link) == 1.0);

    // theta -> 0 sends the exponent to zero
    CHECK(success_probability(net, LinkConfig(0.5, 1e-12)) == Catch::Approx(1.0).margin(1e-5));
}

TEST_CASE("joint success probability and conditional ratio") {
    const auto net = make_net(1.0, 0.5, 4.0, 0.0, FadingModel::rayleigh());
    const LinkConfig link(0.5, 1.0);
    const double joint = joint_success_probability(net, link);
    const double ratio = conditional_ratio(net, link);
    CHECK(joint == Catch::Approx(std::exp(-7.0 * kPi * kPi / 64.0)).epsilon(1e-8));
    CHECK(joint == Catch::Approx(0.33976944940332576).margin(1e-6));
    CHECK(ratio == Catch::Approx(std::exp(kPi * kPi / 64.0)).epsilon(1e-8));
    CHECK(ratio == Catch::Approx(1.1667388726640767).margin(1e-6));
    CHECK(ratio > 1.0);

    const auto off = make_net(1.0, 0.0, 4.0, 0.0, FadingModel::rayleigh());
    CHECK(joint_success_probability(off, link) == 1.0);
    CHECK(conditional_ratio(off, link) == 1.0);
}

TEST_CASE("joint equals success squared times ratio as a shared-integral identity") {
    for (double eps : {0.0, 0.5}) {
        for (double p : {0.3, 0.9}) {
            const auto net = make_net(1.2, p, 4.0, eps, FadingModel::rayleigh());
            const LinkConfig link(0.6, 1.5);
            const double joint = joint_success_probability(net, link);
            const double product =
                success_probability(net, link) * success_probability(net, link) *
                conditional_ratio(net, link);
            INFO("eps=" << eps << " p=" << p);
            CHECK(std::abs(joint - product) <= 1e-12 * joint);
        }
    }
}

TEST_CASE("singular closed forms agree with quadrature over the acceptance grid") {
    for (double alpha : {2.5, 3.0, 4.0, 6.0}) {
        for (double a : {0.01, 0.0625, 1.0}) {
            for (double p : {0.1, 0.5, 1.0}) {
                for (double lambda : {0.5, 1.0, 2.0}) {
                    const PathLossModel singular(alpha, 0.0);
                    const double dist = std::pow(a, 1.0 / alpha);  // theta = 1
                    const auto net = make_net(lambda, p, alpha, 0.0, FadingModel::rayleigh());
                    const LinkConfig link(dist, 1.0);
                    INFO("alpha=" << alpha << " a=" << a << " p=" << p << " lambda=" << lambda);
                    CHECK(conditional_ratio(net, link) ==
                          Catch::Approx(singular_ratio_closed_form(lambda, p, alpha, a))
                              .epsilon(1e-6));
                    CHECK(success_probability(net, link) ==
                          Catch::Approx(singular_success_closed_form(lambda, p, alpha, a))
                              .epsilon(1e-6));
                }
            }
        }
    }
}

TEST_CASE("probabilities stay in the unit interval") {
    for (double eps : {0.0, 1.0}) {
        for (double theta : {0.1, 1.0, 10.0}) {
            const auto net = make_net(1.0, 0.7, 3.0, eps, FadingModel::rayleigh());
            const LinkConfig link(0.5, theta);
            const double success = success_probability(net, link);
            const double joint = joint_success_probability(net, link);
            CHECK(success >= 0.0);
            CHECK(success <= 1.0);
            CHECK(joint >= 0.0);
            CHECK(joint <= 1.0);
            CHECK(joint >= success * success);
        }
    }
}

TEST_CASE("conditional ratio increases in theta, lambda and p") {
    const LinkConfig base_link(0.5, 1.0);

    double previous = 0.0;
    for (double theta : {0.5, 1.0, 2.0}) {
        const auto net = make_net(1.0, 0.5, 4.0, 0.0, FadingModel::rayleigh());
        const double r = conditional_ratio(net, LinkConfig(0.5, theta));
        CHECK(r > previous);
        previous = r;
    }
    previous = 0.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
        const auto net = make_net(lambda, 0.5, 4.0, 0.0, FadingModel::rayleigh());
        const double r = conditional_ratio(net, base_link);
        CHECK(r > previous);
        previous = r;
    }
    previous = 0.0;
    for (double p : {0.25, 0.5, 1.0}) {
        const auto net = make_net(1.0, p, 4.0, 0.0, FadingModel::rayleigh());
        const double r = conditional_ratio(net, base_link);
        CHECK(r > previous);
        previous = r;
    }
}

TEST_CASE("link success requires Rayleigh fading") {
    const auto net = make_net(1.0, 0.5, 4.0, 0.0, FadingModel::nakagami(2.0));
    CHECK_THROWS_AS(success_probability(net, LinkConfig(0.5, 1.0)), std::invalid_argument);
    // Nakagami(1) is Rayleigh and is accepted
    const auto unit = make_net(1.0, 0.5, 4.0, 0.0, FadingModel::nakagami(1.0));
    CHECK(success_probability(unit, LinkConfig(0.5, 1.0)) ==
          Catch::Approx(std::exp(-kPi * kPi / 16.0)).epsilon(1e-8));
}

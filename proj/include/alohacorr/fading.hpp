#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace alohacorr {

// Unit-mean power fading. Nakagami-m power is Gamma(shape m, mean 1);
// Rayleigh is the m = 1 special case (unit-mean exponential) and None is
// the m -> infinity limit (constant 1).
class FadingModel {
public:
    enum class Kind { Nakagami, Rayleigh, None };

    static FadingModel nakagami(double m) { return FadingModel(Kind::Nakagami, m); }
    static FadingModel rayleigh() { return FadingModel(Kind::Rayleigh, 1.0); }
    static FadingModel none() { return FadingModel(Kind::None, std::numeric_limits<double>::infinity()); }

    Kind kind() const { return kind_; }
    double shape() const { return m_; }

    double mean_power() const { return 1.0; }

    double second_moment() const {
        switch (kind_) {
            case Kind::None: return 1.0;
            default: return (m_ + 1.0) / m_;
        }
    }

    // Rayleigh and Nakagami(1) are the same distribution.
    bool is_rayleigh() const {
        return kind_ == Kind::Rayleigh || (kind_ == Kind::Nakagami && m_ == 1.0);
    }

    template <class Stream>
    double sample(Stream& stream) const {
        if (kind_ == Kind::None) return 1.0;
        return stream.next_gamma(m_) / m_;  // Gamma(m, 1/m): unit mean
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Rayleigh: return "rayleigh";
            case Kind::None: return "none";
            default: return "nakagami(m=" + std::to_string(m_) + ")";
        }
    }

private:
    FadingModel(Kind kind, double m) : kind_(kind), m_(m) {
        if (kind == Kind::Nakagami && !(m >= 0.5)) {
            throw std::invalid_argument("Nakagami shape must be >= 0.5, got " + std::to_string(m));
        }
    }

    Kind kind_;
    double m_;
};

}  // namespace alohacorr

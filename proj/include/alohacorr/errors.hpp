#pragma once

#include <stdexcept>
#include <string>

namespace alohacorr {

// A requested moment integral does not exist for the given model
// (e.g. any moment of the singular path loss).
class divergence_error : public std::domain_error {
public:
    explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

// Invalid run configuration (window overflow, missing link, ...).
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// Too few replications or degenerate data for the requested statistic.
class statistical_error : public std::runtime_error {
public:
    explicit statistical_error(const std::string& what) : std::runtime_error(what) {}
};

// A correlation was requested between variables with a zero-variance marginal.
class undefined_correlation_error : public statistical_error {
public:
    explicit undefined_correlation_error(const std::string& what) : statistical_error(what) {}
};

}  // namespace alohacorr

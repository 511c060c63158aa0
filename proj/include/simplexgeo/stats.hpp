#pragma once

// Comparison primitives: two-sample Kolmogorov-Smirnov and z-scores.

#include <cstdint>
#include <optional>
#include <span>

namespace simplexgeo {

struct KsResult {
    double statistic = 0.0;  // sup |F_a - F_b|
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

/// Exact D over the merged sort; ties are stepped over jointly before the gap
/// is measured. p-value from the asymptotic Kolmogorov law at
/// (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D with ne = n1 n2 / (n1 + n2).
/// Throws DomainError for fewer than 5 values on a side or NaN input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

// A point value with its standard error; exact values carry stderr 0.
struct Measurement {
    double value = 0.0;
    double std_error = 0.0;

    static Measurement exact(double value) { return {value, 0.0}; }
};

/// (lhs - rhs) / sqrt(se_lhs^2 + se_rhs^2). Two exact sides give 0 when they
/// agree to relative 1e-12 and a signed infinity otherwise.
double z_compare(const Measurement& lhs, const Measurement& rhs);

}  // namespace simplexgeo

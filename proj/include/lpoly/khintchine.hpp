#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lpoly/evaluate.hpp"
#include "lpoly/family.hpp"

namespace lpoly {

/// Exact moments of a Littlewood polynomial p under uniform ±1 inputs.
struct MomentReport {
    /// w
    std::size_t w = 0;
    /// δ, the degree bound
    std::size_t delta = 0;
    std::size_t num_vars = 0;

    // Exact integer sums over the 2^n points; each moment is sum / 2^n.
    std::uint64_t points = 0;
    unsigned __int128 sum_abs = 0;
    unsigned __int128 sum_sq = 0;
    unsigned __int128 sum_4 = 0;
    /// Points with |p| > sqrt(E p^2) / 2, i.e. 4 p^2 > E p^2.
    std::uint64_t pz_count = 0;

    double e_abs = 0;
    double e_sq = 0;
    double e_4 = 0;
    /// 3^{-δ} sqrt(w)
    double lower_bound = 0;
    /// 9^δ (E p^2)^2
    double bonami_bound = 0;
    double pz_prob = 0;
    /// (9/16) 9^{-δ}
    double pz_bound = 0;
    /// (1/32) 9^{1-δ} sqrt(w), the weaker route; reported only.
    double pz_mean_bound = 0;

    /// E p^2 = w, as integers.
    bool parseval_exact() const { return sum_sq == static_cast<unsigned __int128>(w) * points; }
    bool berger_holds() const { return e_abs >= lower_bound; }
    /// E p^4 <= 9^δ w^2, as integers.
    bool bonami_holds() const;
    /// pz_count / 2^n >= (9/16) 9^{-δ}, as integers.
    bool pz_holds() const;
    bool all_hold() const { return parseval_exact() && berger_holds() && bonami_holds() && pz_holds(); }
};

MomentReport moments(const LittlewoodPoly& poly, const ExhaustiveOptions& options = {});

/// p = prod_{i<=δ} (1 + x_i) - prod_{i<=δ} (1 + y_i) without its constant:
/// variables x_1..x_δ are 1..δ, y_1..y_δ are δ+1..2δ.
LittlewoodPoly converse_polynomial(std::size_t delta);

struct ConverseReport {
    std::size_t delta = 0;
    LittlewoodPoly poly;
    MomentReport moments;
    /// |values| ⊆ {0, ±2^δ}
    bool value_set_ok = false;
    /// Pr(p = ±2^δ) = 2^{-δ}(1 - 2^{-δ}) each, checked as exact counts.
    bool tail_probability_ok = false;
    /// E|p| = 2 - 2^{1-δ}, checked as an exact integer identity.
    bool mean_abs_ok = false;
    /// E|p| <= 2^{(1-δ)/2} sqrt(w)
    bool upper_ok = false;
    double zero_probability = 0;
    bool monomial_count_ok = false;
};

/// Requires 1 <= δ <= 10.
ConverseReport converse_example(std::size_t delta, const ExhaustiveOptions& options = {});

struct GapRow {
    std::size_t delta = 0;
    std::size_t instances = 0;
    double min_ratio = 0;
    double mean_ratio = 0;
    /// E|p| / sqrt(w) of the converse polynomial.
    double converse_ratio = 0;
    double lower_base = 0;
    double upper_base = 0;
    /// Every random instance had ratio >= 3^{-δ}.
    bool lower_respected = true;
    /// converse_ratio <= 2^{(1-δ)/2}
    bool converse_below_upper = true;
};

/// For each δ = 1..delta_max, `instances` random polynomials of degree δ on
/// at most 12 variables. Requires delta_max <= 6.
std::vector<GapRow> khintchine_gap_scan(std::size_t delta_max, std::size_t instances, std::uint64_t seed,
                                        const ExhaustiveOptions& options = {});

/// Berger's scalar inequality x >= (3^{3/2} / (2a)) (x^2 - x^4 / a^2), x, a > 0.
bool berger_inequality(double x, double a);

}  // namespace lpoly

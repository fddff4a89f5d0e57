#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpoly/evaluate.hpp"
#include "lpoly/family.hpp"

namespace lpoly {

struct WitnessConfig {
    std::uint64_t seed = 0;
    std::size_t split_attempts = 64;
    std::size_t y_trials = 256;
    std::size_t grid_size = 4096;
    /// 1-flip hill climbing after rounding; the unpolished value is kept too.
    bool polish = true;
};

struct SplitReport {
    VariableSplit split;
    /// m_i = |{a in U : a ∩ X = {i}}|, zero outside X.
    std::vector<std::size_t> m;
    /// sum sqrt(m_i)
    double score = 0;
    /// sum sqrt(u_i) / (2^{5/2} (d-1)^{3/2})
    double target = 0;
    std::size_t attempts = 0;
    bool target_met = false;
};

/// m_i and score for a given X (target and attempts left for the caller).
SplitReport score_split(const MonomialFamily& family, VariableSplit split);

/// Best of `attempts` random splits with inclusion probability 1/(2(d-1)).
/// Ties keep the lowest attempt index. Throws for d < 2.
SplitReport sample_split(const MonomialFamily& family, std::uint64_t seed, std::size_t attempts);

/// h_{i*}(y) = sum over monomials a with a ∩ X = {i} of h_a y^{a \ {i}}.
/// Throws when i is not in X.
std::int64_t hi_star(const LittlewoodPoly& poly, const VariableSplit& split, std::size_t i, const Assignment& y);

struct YSelection {
    Assignment y;
    /// sum over i in X of |h_{i*}(y)|
    std::int64_t sum_abs_hi = 0;
    /// 3^{1-d} sum sqrt(m_i)
    double target = 0;
    bool target_met = false;
};

/// Best of `trials` uniform y (X-coordinates left at +1).
YSelection select_y(const LittlewoodPoly& poly, const SplitReport& split, std::size_t trials, std::uint64_t seed);

/// x_i = sign(h_{i*}(y)) on X with sign(0) = +1; Y-coordinates left at +1.
Assignment align_x(const LittlewoodPoly& poly, const SplitReport& split, const Assignment& y);

/// Maximizes |f| on [-1, 1] for f(z) = sum_s coeffs[s] z^s.
struct BernsteinSweep {
    std::vector<double> coefficients;
    std::vector<double> z_grid;
    std::vector<double> f_values;
    double z_star = 1;
    /// f(z_star), signed.
    double f_at_star = 0;
    /// |f(z_star)|
    double f_star = 0;
    /// f'(0)
    double h1 = 0;
    /// |f'(0)| / degree
    double guarantee = 0;
    std::size_t degree = 0;
};

double eval_univariate(std::span<const double> coeffs, double z);

/// Uniform grid on [-1, 1] (endpoints included) followed by golden-section
/// refinement around the best grid point to 1e-9. `degree` defaults to
/// coeffs.size() - 1. Requires grid_size >= 2 * degree + 1.
BernsteinSweep sweep_polynomial(std::span<const double> coeffs, std::size_t grid_size, std::size_t degree = 0);

/// f(z) = sum_s z^s h_s(x, y) built from degree_split; the cross-check
/// f(z) = multilinear_eval(z x on X, y on Y) runs at 10 seeded z values and
/// throws std::logic_error on disagreement beyond 1e-9 (1 + u).
BernsteinSweep bernstein_sweep(const LittlewoodPoly& poly, const SplitReport& split, const Assignment& x,
                               const Assignment& y, std::size_t grid_size, std::uint64_t seed = 0);

struct RoundingResult {
    /// x * x' on X, y on Y.
    Assignment point;
    std::int64_t value = 0;
    /// sigma = sign(f(z_star)), +1 for zero.
    int sigma = 1;
    /// Conditional expectations after each fixed coordinate, starting at f(z_star).
    std::vector<double> trajectory;
    /// Smallest sigma * (E_j - E_{j-1}); >= -1e-9 when every step was monotone.
    double min_step = 0;
    bool monotone = true;
};

/// Derandomized flips: coordinates of X are fixed in ascending order, each to
/// the branch that does not decrease sigma times the conditional expectation.
RoundingResult round_flips(const LittlewoodPoly& poly, const SplitReport& split, const Assignment& x,
                           const Assignment& y, double z_star, double f_at_star);

struct WitnessReport {
    std::size_t d = 0;
    double sum_sqrt_ui = 0;
    SplitReport split;
    YSelection y_selection;
    double khintchine_target = 0;
    Assignment x_aligned;
    BernsteinSweep sweep;
    RoundingResult rounding;
    /// |h| after rounding, before polishing.
    std::int64_t pipeline_value = 0;
    Assignment final_point;
    std::int64_t final_value = 0;
    bool polished = false;
    /// The closed-form lower expression; u for d = 1.
    double guaranteed = 0;
    bool guarantee_met = false;
    /// split, y and Bernstein stages all reached their targets.
    bool stage_targets_met = false;
    WitnessConfig config;
};

WitnessReport find_witness(const LittlewoodPoly& poly, const WitnessConfig& config = {});

}  // namespace lpoly

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpoly/evaluate.hpp"
#include "lpoly/family.hpp"

namespace lpoly {

bool is_prime(std::uint64_t p);

/// Complete graph on GF(p) with sign +1 on Paley edges (difference a nonzero
/// square) and -1 on non-edges. Vertex v is variable v + 1 in LPOLY terms.
struct PaleyInstance {
    std::uint64_t p = 0;
    LittlewoodPoly poly;
    /// p^{3/2}
    double bound = 0;
};

/// Requires p prime, p = 1 mod 4, p <= 10^6.
PaleyInstance paley(std::uint64_t p);
/// Quadratic residues mod p as a lookup table (index 0 is false).
std::vector<bool> quadratic_residues(std::uint64_t p);

struct PaleyReport {
    std::uint64_t p = 0;
    std::int64_t sup_norm = 0;
    bool exact = false;
    double bound = 0;
    /// sqrt(u)
    double floor = 0;
    bool pass = false;
};

/// Exact when p <= options.limit_n; otherwise a sampled lower estimate
/// (`exact` false, pass judged on the estimate).
PaleyReport paley_bound_check(std::uint64_t p, const ExhaustiveOptions& options = {}, std::size_t sampled_trials = 100000,
                              std::uint64_t seed = 0);

/// Monomials of a d x d determinant: variable (r, c) has 0-based index
/// d*r + c, one monomial per permutation.
struct DeterminantFamily {
    std::size_t d = 0;
    MonomialFamily family;
    /// d^{d/2}
    double hadamard_bound = 0;
};

/// 1 <= d <= 8.
DeterminantFamily determinant_family(std::size_t d);
/// The determinant itself: sign of each monomial is the permutation parity.
LittlewoodPoly determinant_polynomial(std::size_t d);

/// Fraction-free (Bareiss) determinant of a row-major integer matrix.
std::int64_t integer_determinant(std::span<const std::int64_t> matrix, std::size_t d);

struct DetMaxResult {
    std::size_t d = 0;
    std::int64_t value = 0;
    bool exact = false;
    /// Row-major ±1 entries of a maximizer.
    std::vector<int> argmax;
    std::uint64_t matrices = 0;
};

/// Max |det| over ±1 matrices: exhaustive for d <= 4, for 5 <= d <= 6 the
/// best of `trials` random matrices each hill-climbed by single entry flips.
DetMaxResult det_max(std::size_t d, unsigned workers = 1, std::size_t trials = 2000, std::uint64_t seed = 0);

struct DeterminantComparison {
    std::size_t d = 0;
    std::int64_t det_max = 0;
    /// sqrt(2 (d^2 + 1) d!)
    double random_bound = 0;
    /// sqrt(d!)
    double floor = 0;
    double hadamard_bound = 0;
    std::vector<std::int64_t> random_sup_norms;
    std::int64_t best_random = 0;
    bool floor_respected = true;
};

/// Exact sup norms of `trials` random-sign polynomials on the determinant
/// family, next to the determinant itself. Requires d <= 4.
DeterminantComparison determinant_vs_random(std::size_t d, std::uint64_t seed, std::size_t trials = 16,
                                            const ExhaustiveOptions& options = {});

}  // namespace lpoly

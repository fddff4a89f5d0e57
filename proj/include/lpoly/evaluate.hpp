#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpoly/family.hpp"

namespace lpoly {

/// A point of [-1, 1]^n, the domain of the multilinear extension.
class FractionalPoint {
public:
    FractionalPoint() = default;
    /// Coordinates within 1e-12 of [-1, 1] are clamped; anything further throws.
    explicit FractionalPoint(std::vector<double> coords);
    /// The vertex matching a ±1 assignment.
    static FractionalPoint from_assignment(const Assignment& x);

    std::size_t size() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

struct SupNormResult {
    std::int64_t value = 0;
    Assignment argmax;
    std::uint64_t evaluations = 0;
    bool exact = false;
};

/// Limits and parallelism for enumerations over {±1}^n.
struct ExhaustiveOptions {
    std::size_t limit_n = 28;
    unsigned workers = 1;
    /// Fix one coordinate when every monomial degree has the same parity,
    /// since then |h(-x)| = |h(x)|. Ignored otherwise.
    bool parity_symmetry = false;
};

/// Splits the variables into X and its complement Y.
struct VariableSplit {
    std::vector<bool> in_x;

    std::size_t size() const noexcept { return in_x.size(); }
    bool contains(std::size_t i) const { return in_x[i]; }
    std::vector<std::uint32_t> members() const;
};

std::int64_t evaluate(const LittlewoodPoly& poly, const Assignment& x);
double multilinear_eval(const LittlewoodPoly& poly, const FractionalPoint& p);

/// Exact max |h| over all 2^n points via Gray-code enumeration. The argmax is
/// the first maximizer in Gray order, independent of the worker count.
SupNormResult sup_norm_exact(const LittlewoodPoly& poly, const ExhaustiveOptions& options = {});
/// Lower estimate: best of `trials` uniform points, then 1-flip hill climbing.
SupNormResult sup_norm_sampled(const LittlewoodPoly& poly, std::size_t trials, std::uint64_t seed);

/// Hill climbing by single-coordinate flips that strictly increase |h|; the
/// largest gain is taken each round, ties to the lowest index.
SupNormResult local_search(const LittlewoodPoly& poly, Assignment start);

/// Exact histogram of h over {±1}^n. Values are integers in [-u, u].
struct ValueDistribution {
    std::int64_t offset = 0;            // u
    std::vector<std::uint64_t> counts;  // counts[v + offset]
    std::uint64_t points = 0;

    std::uint64_t count(std::int64_t v) const;
    std::int64_t min_value() const;
    std::int64_t max_value() const;
};
ValueDistribution value_distribution(const LittlewoodPoly& poly, const ExhaustiveOptions& options = {});

/// Normalized alpha-mean of |h| over the hypercube, alpha >= 1.
double eval_norm(const LittlewoodPoly& poly, double alpha, const ExhaustiveOptions& options = {});
/// Same, from a precomputed distribution.
double eval_norm(const ValueDistribution& dist, double alpha);
/// (sum |h_S|^alpha)^{1/alpha}; alpha may be +infinity.
double coeff_norm(const LittlewoodPoly& poly, double alpha);

/// h_s(x, y) for s = 0..d: the monomials meeting X in exactly s variables,
/// evaluated with x on X and y on Y. Only the X-coordinates of `x` and the
/// Y-coordinates of `y` are read.
std::vector<std::int64_t> degree_split(const LittlewoodPoly& poly, const VariableSplit& split,
                                       const Assignment& x, const Assignment& y);

/// Merges x on X with y on Y into one full assignment.
Assignment combine(const VariableSplit& split, const Assignment& x, const Assignment& y);

}  // namespace lpoly

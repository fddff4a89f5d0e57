#pragma once

// Independent reference implementations used only by tests. None of these
// share code paths with the library's enumerators.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "lpoly/family.hpp"
#include "lpoly/rng.hpp"

namespace oracle {

/// h(x) by expanding every monomial from index lists, x_i = -1 when bit i of `bits` is set.
inline std::int64_t naive_eval(const lpoly::LittlewoodPoly& poly, std::uint64_t bits) {
    std::int64_t total = 0;
    for (std::size_t m = 0; m < poly.size(); ++m) {
        int term = poly.sign(m);
        for (auto i : poly.family()[m])
            if ((bits >> i) & 1) term = -term;
        total += term;
    }
    return total;
}

inline std::int64_t naive_eval(const lpoly::LittlewoodPoly& poly, const std::vector<int>& x) {
    std::int64_t total = 0;
    for (std::size_t m = 0; m < poly.size(); ++m) {
        int term = poly.sign(m);
        for (auto i : poly.family()[m]) term *= x[i];
        total += term;
    }
    return total;
}

/// max |h| by full re-evaluation at each of the 2^n points in binary order.
inline std::int64_t brute_sup_norm(const lpoly::LittlewoodPoly& poly) {
    std::int64_t best = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << poly.num_vars()); ++bits)
        best = std::max(best, std::abs(naive_eval(poly, bits)));
    return best;
}

/// Laplace expansion along the first row.
inline std::int64_t cofactor_det(const std::vector<std::int64_t>& a, std::size_t d) {
    if (d == 1) return a[0];
    std::int64_t total = 0;
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<std::int64_t> minor;
        for (std::size_t r = 1; r < d; ++r)
            for (std::size_t cc = 0; cc < d; ++cc)
                if (cc != c) minor.push_back(a[r * d + cc]);
        const std::int64_t sub = cofactor_det(minor, d - 1);
        total += (c % 2 == 0 ? 1 : -1) * a[c] * sub;
    }
    return total;
}

inline lpoly::LittlewoodPoly random_poly(lpoly::Rng& rng, std::size_t max_n, std::size_t max_degree,
                                         std::size_t max_size, std::size_t min_n = 1) {
    lpoly::RandomFamilyParams params;
    const std::size_t lo = std::max(min_n, std::size_t{1});
    params.num_vars = lo + static_cast<std::size_t>(rng.below(max_n - lo + 1));
    params.max_degree = 1 + static_cast<std::size_t>(rng.below(std::min(max_degree, params.num_vars)));
    params.target_size = 1 + static_cast<std::size_t>(rng.below(max_size));
    return lpoly::random_signs(lpoly::random_family(params, rng), rng);
}

}  // namespace oracle

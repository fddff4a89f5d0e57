#include "lpoly/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lpoly/errors.hpp"
#include "lpoly/gray_walk.hpp"

namespace lpoly {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::vector<bool> quadratic_residues(std::uint64_t p) {
    std::vector<bool> residue(p, false);
    for (std::uint64_t a = 1; a <= (p - 1) / 2; ++a) residue[a * a % p] = true;
    return residue;
}

PaleyInstance paley(std::uint64_t p) {
    if (p > 1000000) throw std::invalid_argument("paley: p above 10^6");
    if (!is_prime(p)) throw std::invalid_argument("paley: " + std::to_string(p) + " is not prime");
    if (p % 4 != 1) throw std::invalid_argument("paley: " + std::to_string(p) + " is not 1 mod 4");
    const auto residue = quadratic_residues(p);

    std::vector<Monomial> monomials;
    std::vector<int> signs;
    monomials.reserve(p * (p - 1) / 2);
    for (std::uint32_t i = 0; i < p; ++i) {
        for (std::uint32_t j = i + 1; j < p; ++j) {
            monomials.push_back({i, j});
            signs.push_back(residue[(j - i) % p] ? 1 : -1);
        }
    }
    // Pairs generated in lexicographic order are already canonical.
    return {p, LittlewoodPoly(MonomialFamily(p, std::move(monomials)), std::move(signs)),
            std::pow(static_cast<double>(p), 1.5)};
}

PaleyReport paley_bound_check(std::uint64_t p, const ExhaustiveOptions& options, std::size_t sampled_trials,
                              std::uint64_t seed) {
    const auto instance = paley(p);
    PaleyReport report;
    report.p = p;
    report.bound = instance.bound;
    report.floor = std::sqrt(static_cast<double>(instance.poly.size()));
    ExhaustiveOptions ex = options;
    ex.parity_symmetry = true;
    const auto sup = p <= options.limit_n ? sup_norm_exact(instance.poly, ex)
                                          : sup_norm_sampled(instance.poly, sampled_trials, seed);
    report.sup_norm = sup.value;
    report.exact = sup.exact;
    report.pass = static_cast<double>(sup.value) <= report.bound &&
                  (!sup.exact || static_cast<double>(sup.value) >= report.floor);
    return report;
}

namespace {

std::uint64_t factorial(std::size_t d) {
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= d; ++k) f *= k;
    return f;
}

int permutation_parity(const std::vector<std::uint32_t>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

}  // namespace

DeterminantFamily determinant_family(std::size_t d) {
    if (d < 1 || d > 8) throw std::invalid_argument("determinant_family: d must be in [1, 8]");
    std::vector<std::uint32_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0U);
    std::vector<Monomial> monomials;
    do {
        Monomial s(d);
        for (std::size_t r = 0; r < d; ++r) s[r] = static_cast<std::uint32_t>(d * r + perm[r]);
        monomials.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {d, MonomialFamily(d * d, std::move(monomials)), std::pow(static_cast<double>(d), static_cast<double>(d) / 2)};
}

LittlewoodPoly determinant_polynomial(std::size_t d) {
    auto fam = determinant_family(d);
    std::vector<int> signs;
    signs.reserve(fam.family.size());
    for (const auto& s : fam.family.monomials()) {
        std::vector<std::uint32_t> perm(d);
        for (std::size_t r = 0; r < d; ++r) perm[r] = static_cast<std::uint32_t>(s[r] - d * r);
        signs.push_back(permutation_parity(perm));
    }
    return {std::move(fam.family), std::move(signs)};
}

std::int64_t integer_determinant(std::span<const std::int64_t> matrix, std::size_t d) {
    if (matrix.size() != d * d) throw std::invalid_argument("integer_determinant: size mismatch");
    if (d == 0) return 1;
    std::vector<std::int64_t> a(matrix.begin(), matrix.end());
    std::int64_t sign = 1;
    std::int64_t prev = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (a[k * d + k] == 0) {
            std::size_t swap = k + 1;
            while (swap < d && a[swap * d + k] == 0) ++swap;
            if (swap == d) return 0;
            for (std::size_t c = 0; c < d; ++c) std::swap(a[k * d + c], a[swap * d + c]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i)
            for (std::size_t j = k + 1; j < d; ++j)
                a[i * d + j] = (a[i * d + j] * a[k * d + k] - a[i * d + k] * a[k * d + j]) / prev;
        prev = a[k * d + k];
    }
    return sign * a[(d - 1) * d + (d - 1)];
}

namespace {

std::int64_t det_of_bits(std::uint64_t bits, std::size_t d, std::vector<std::int64_t>& scratch) {
    for (std::size_t e = 0; e < d * d; ++e) scratch[e] = ((bits >> e) & 1) ? -1 : 1;
    return integer_determinant(scratch, d);
}

std::vector<int> bits_to_entries(std::uint64_t bits, std::size_t d) {
    std::vector<int> out(d * d);
    for (std::size_t e = 0; e < d * d; ++e) out[e] = ((bits >> e) & 1) ? -1 : 1;
    return out;
}

}  // namespace

DetMaxResult det_max(std::size_t d, unsigned workers, std::size_t trials, std::uint64_t seed) {
    if (d < 1 || d > 6) throw std::invalid_argument("det_max: d must be in [1, 6]");
    DetMaxResult result;
    result.d = d;
    const std::size_t cells = d * d;

    if (d <= 4) {
        struct Best {
            std::int64_t value = -1;
            std::uint64_t bits = 0;
        };
        const std::uint64_t total = std::uint64_t{1} << cells;
        auto partial = detail::run_chunks<Best>(total, workers, [&](std::size_t, std::uint64_t b, std::uint64_t e) {
            Best best;
            std::vector<std::int64_t> scratch(cells);
            for (std::uint64_t bits = b; bits < e; ++bits) {
                const std::int64_t v = std::abs(det_of_bits(bits, d, scratch));
                if (v > best.value) best = {v, bits};
            }
            return best;
        });
        Best best;
        for (const auto& c : partial)
            if (c.value > best.value) best = c;
        result.value = best.value;
        result.argmax = bits_to_entries(best.bits, d);
        result.exact = true;
        result.matrices = total;
        return result;
    }

    std::vector<std::int64_t> scratch(cells);
    result.value = -1;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::derive(seed, 0xde7, t);
        std::uint64_t bits = rng.next() & ((std::uint64_t{1} << cells) - 1);
        std::int64_t value = std::abs(det_of_bits(bits, d, scratch));
        ++result.matrices;
        for (bool improved = true; improved;) {
            improved = false;
            for (std::size_t e = 0; e < cells; ++e) {
                const std::uint64_t cand = bits ^ (std::uint64_t{1} << e);
                const std::int64_t v = std::abs(det_of_bits(cand, d, scratch));
                ++result.matrices;
                if (v > value) {
                    value = v;
                    bits = cand;
                    improved = true;
                }
            }
        }
        if (value > result.value) {
            result.value = value;
            result.argmax = bits_to_entries(bits, d);
        }
    }
    result.exact = false;
    return result;
}

DeterminantComparison determinant_vs_random(std::size_t d, std::uint64_t seed, std::size_t trials,
                                            const ExhaustiveOptions& options) {
    if (d < 1 || d > 4) throw std::invalid_argument("determinant_vs_random: d must be in [1, 4]");
    DeterminantComparison cmp;
    cmp.d = d;
    cmp.det_max = det_max(d, options.workers).value;
    const double dfact = static_cast<double>(factorial(d));
    cmp.random_bound = std::sqrt(2.0 * static_cast<double>(d * d + 1) * dfact);
    cmp.floor = std::sqrt(dfact);
    cmp.hadamard_bound = std::pow(static_cast<double>(d), static_cast<double>(d) / 2);

    const auto fam = determinant_family(d);
    cmp.best_random = INT64_MAX;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::derive(seed, 0xde8, t);
        const auto poly = random_signs(fam.family, rng);
        const auto sup = sup_norm_exact(poly, options).value;
        cmp.random_sup_norms.push_back(sup);
        cmp.best_random = std::min(cmp.best_random, sup);
        // Integer sup norm vs sqrt(d!): compare squares exactly.
        if (static_cast<std::uint64_t>(sup * sup) < factorial(d)) cmp.floor_respected = false;
    }
    if (trials == 0) cmp.best_random = 0;
    return cmp;
}

}  // namespace lpoly

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpoly/rng.hpp"

namespace lpoly {

/// Variable indices of one multilinear monomial, 0-based and strictly increasing.
/// The LPOLY text format is 1-based; conversion happens only in parse/serialize.
using Monomial = std::vector<std::uint32_t>;

/// Canonical order: by degree, then lexicographic on indices.
bool canonical_less(const Monomial& a, const Monomial& b);

/// The hypergraph U of monomials over n variables, held in canonical order.
class MonomialFamily {
public:
    MonomialFamily() = default;

    /// Sorts into canonical order. Throws std::invalid_argument for an empty
    /// monomial, an out-of-range or repeated index, or a duplicate monomial.
    MonomialFamily(std::size_t num_vars, std::vector<Monomial> monomials);

    std::size_t num_vars() const noexcept { return n_; }
    /// u
    std::size_t size() const noexcept { return monomials_.size(); }
    /// d, the maximum monomial degree (0 for an empty family).
    std::size_t degree() const noexcept { return degree_; }

    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
    const Monomial& operator[](std::size_t m) const { return monomials_[m]; }

    /// u_i for every variable.
    const std::vector<std::size_t>& degree_profile() const noexcept { return profile_; }
    /// Ids of the monomials containing each variable, ascending.
    const std::vector<std::vector<std::uint32_t>>& incidence() const noexcept { return incidence_; }
    /// Bit masks of the monomials; empty unless n <= 64.
    const std::vector<std::uint64_t>& masks() const noexcept { return masks_; }

    /// True when every variable occurs in at least one monomial.
    bool covers_all_variables() const;
    /// Sum over monomials of |S|, equal to the sum of the u_i.
    std::size_t total_incidence() const;

    friend bool operator==(const MonomialFamily& a, const MonomialFamily& b) {
        return a.n_ == b.n_ && a.monomials_ == b.monomials_;
    }

private:
    std::size_t n_ = 0;
    std::size_t degree_ = 0;
    std::vector<Monomial> monomials_;
    std::vector<std::size_t> profile_;
    std::vector<std::vector<std::uint32_t>> incidence_;
    std::vector<std::uint64_t> masks_;
};

/// A family together with one ±1 coefficient per monomial.
class LittlewoodPoly {
public:
    LittlewoodPoly() = default;
    /// `signs` aligned with family.monomials(); every entry must be +1 or -1.
    LittlewoodPoly(MonomialFamily family, std::vector<int> signs);
    /// All coefficients +1.
    explicit LittlewoodPoly(MonomialFamily family);

    /// Builds from unordered (monomial, sign) terms; sorts into canonical order.
    static LittlewoodPoly from_terms(std::size_t num_vars, std::vector<std::pair<Monomial, int>> terms);

    const MonomialFamily& family() const noexcept { return family_; }
    const std::vector<int>& signs() const noexcept { return signs_; }
    int sign(std::size_t m) const { return signs_[m]; }

    std::size_t num_vars() const noexcept { return family_.num_vars(); }
    std::size_t size() const noexcept { return family_.size(); }
    std::size_t degree() const noexcept { return family_.degree(); }

    LittlewoodPoly with_signs(std::vector<int> signs) const { return {family_, std::move(signs)}; }

    friend bool operator==(const LittlewoodPoly& a, const LittlewoodPoly& b) {
        return a.family_ == b.family_ && a.signs_ == b.signs_;
    }

private:
    MonomialFamily family_;
    std::vector<int> signs_;
};

/// A point of {±1}^n, one bit per coordinate (bit set means -1).
class Assignment {
public:
    Assignment() = default;
    /// All coordinates +1.
    explicit Assignment(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static Assignment from_signs(std::span<const int> signs);
    /// Low n bits of `bits`, bit i set meaning x_i = -1. Requires n <= 64.
    static Assignment from_bits(std::size_t n, std::uint64_t bits);

    std::size_t size() const noexcept { return n_; }

    int operator[](std::size_t i) const { return ((words_[i >> 6] >> (i & 63)) & 1U) ? -1 : 1; }
    void set(std::size_t i, int value) {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (value < 0) words_[i >> 6] |= bit;
        else words_[i >> 6] &= ~bit;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    /// Packed words; bit i of the first word is coordinate i.
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    /// Low word; meaningful as the full point only when n <= 64.
    std::uint64_t low_bits() const noexcept { return words_.empty() ? 0 : words_[0]; }

    std::vector<int> to_signs() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Closed-form values of the bound expressions for a family.
struct BoundSummary {
    std::size_t n = 0;
    std::size_t u = 0;
    std::size_t d = 0;
    double sqrt_u = 0;
    double sum_sqrt_ui = 0;
    double lb_main = 0;
    double ub_chaining = 0;
    double ub_simple = 0;
    double lb = 0;
    double ub = 0;
};

/// 1 / (3^{d-1} 2^{5/2} (d-1)^{3/2} d) for d >= 2. Throws for d < 2.
double lower_bound_constant(std::size_t d);
/// Multiplier of sum sqrt(u_i) in the chaining upper bound.
inline constexpr double kChainingConstant = 3.34;

BoundSummary bound_summary(const MonomialFamily& family);

/// Parses an LPOLY document. Throws ParseError with the offending line.
LittlewoodPoly parse_family(std::string_view text);
/// Canonical LPOLY rendering, every sign explicit, LF line endings.
std::string serialize(const LittlewoodPoly& poly);

struct RandomFamilyParams {
    std::size_t num_vars = 8;
    std::size_t max_degree = 2;
    /// Approximate number of monomials; variables left uncovered get one extra monomial each.
    std::size_t target_size = 16;
    bool homogeneous = false;
};

/// Random family covering every variable, containing at least one monomial of
/// degree max_degree (requires num_vars >= max_degree >= 1).
MonomialFamily random_family(const RandomFamilyParams& params, Rng& rng);
/// Uniform random signs on a family.
LittlewoodPoly random_signs(const MonomialFamily& family, Rng& rng);

}  // namespace lpoly

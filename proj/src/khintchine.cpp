#include "lpoly/khintchine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpoly {

namespace {

using u128 = unsigned __int128;

u128 pow_u128(u128 base, std::size_t e) {
    u128 r = 1;
    while (e--) r *= base;
    return r;
}

double ratio(u128 num, std::uint64_t den) { return static_cast<double>(num) / static_cast<double>(den); }

}  // namespace

bool MomentReport::bonami_holds() const {
    // sum_4 / 2^n <= 9^δ w^2
    return sum_4 <= pow_u128(9, delta) * static_cast<u128>(w) * w * points;
}

bool MomentReport::pz_holds() const {
    // pz_count / 2^n >= 9 / (16 * 9^δ)
    return static_cast<u128>(pz_count) * 16 * pow_u128(9, delta) >= static_cast<u128>(9) * points;
}

MomentReport moments(const LittlewoodPoly& poly, const ExhaustiveOptions& options) {
    const auto dist = value_distribution(poly, options);
    MomentReport r;
    r.w = poly.size();
    r.delta = poly.degree();
    r.num_vars = poly.num_vars();
    r.points = dist.points;
    for (std::size_t k = 0; k < dist.counts.size(); ++k) {
        const std::uint64_t c = dist.counts[k];
        if (c == 0) continue;
        const auto v = static_cast<u128>(std::abs(static_cast<std::int64_t>(k) - dist.offset));
        r.sum_abs += v * c;
        r.sum_sq += v * v * c;
        r.sum_4 += v * v * v * v * c;
        if (4 * v * v > static_cast<u128>(r.w)) r.pz_count += c;
    }
    r.e_abs = ratio(r.sum_abs, r.points);
    r.e_sq = ratio(r.sum_sq, r.points);
    r.e_4 = ratio(r.sum_4, r.points);
    const double delta = static_cast<double>(r.delta);
    const double w = static_cast<double>(r.w);
    r.lower_bound = std::pow(3.0, -delta) * std::sqrt(w);
    r.bonami_bound = std::pow(9.0, delta) * r.e_sq * r.e_sq;
    r.pz_prob = static_cast<double>(r.pz_count) / static_cast<double>(r.points);
    r.pz_bound = 9.0 / 16.0 * std::pow(9.0, -delta);
    r.pz_mean_bound = std::pow(9.0, 1 - delta) / 32.0 * std::sqrt(w);
    return r;
}

LittlewoodPoly converse_polynomial(std::size_t delta) {
    if (delta < 1 || delta > 31) throw std::invalid_argument("converse_polynomial: delta out of range");
    std::vector<std::pair<Monomial, int>> terms;
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << delta); ++subset) {
        Monomial xs, ys;
        for (std::uint32_t i = 0; i < delta; ++i) {
            if ((subset >> i) & 1) {
                xs.push_back(i);
                ys.push_back(static_cast<std::uint32_t>(delta + i));
            }
        }
        terms.emplace_back(std::move(xs), 1);
        terms.emplace_back(std::move(ys), -1);
    }
    return LittlewoodPoly::from_terms(2 * delta, std::move(terms));
}

ConverseReport converse_example(std::size_t delta, const ExhaustiveOptions& options) {
    if (delta < 1 || delta > 10) throw std::invalid_argument("converse_example: delta must be in [1, 10]");
    ConverseReport r;
    r.delta = delta;
    r.poly = converse_polynomial(delta);
    r.monomial_count_ok = r.poly.size() == (std::size_t{1} << (delta + 1)) - 2;

    const auto dist = value_distribution(r.poly, options);
    r.moments = moments(r.poly, options);
    const auto top = static_cast<std::int64_t>(1) << delta;

    std::uint64_t other = 0;
    for (std::size_t k = 0; k < dist.counts.size(); ++k) {
        const auto v = static_cast<std::int64_t>(k) - dist.offset;
        if (v != 0 && v != top && v != -top) other += dist.counts[k];
    }
    r.value_set_ok = other == 0;

    // Over 2^{2δ} points, Pr = 2^{-δ}(1 - 2^{-δ}) means exactly 2^δ - 1 points.
    const std::uint64_t tail = (std::uint64_t{1} << delta) - 1;
    r.tail_probability_ok = dist.count(top) == tail && dist.count(-top) == tail;
    // E|p| = 2 - 2^{1-δ}  <=>  sum |p| = 2^{2δ+1} - 2^{δ+1}.
    r.mean_abs_ok = r.moments.sum_abs == (u128{1} << (2 * delta + 1)) - (u128{1} << (delta + 1));
    r.upper_ok = r.moments.e_abs <= std::pow(2.0, (1.0 - static_cast<double>(delta)) / 2) *
                                        std::sqrt(static_cast<double>(r.poly.size())) + 1e-12;
    r.zero_probability = static_cast<double>(dist.count(0)) / static_cast<double>(dist.points);
    return r;
}

std::vector<GapRow> khintchine_gap_scan(std::size_t delta_max, std::size_t instances, std::uint64_t seed,
                                        const ExhaustiveOptions& options) {
    if (delta_max < 1 || delta_max > 6) throw std::invalid_argument("khintchine_gap_scan: delta_max must be in [1, 6]");
    std::vector<GapRow> rows;
    for (std::size_t delta = 1; delta <= delta_max; ++delta) {
        GapRow row;
        row.delta = delta;
        row.instances = instances;
        row.lower_base = std::pow(3.0, -static_cast<double>(delta));
        row.upper_base = std::pow(2.0, (1.0 - static_cast<double>(delta)) / 2);
        row.min_ratio = instances ? 1e300 : 0;
        double total = 0;
        for (std::size_t t = 0; t < instances; ++t) {
            Rng rng = Rng::derive(seed, 0x6a9 + delta, t);
            RandomFamilyParams params;
            params.max_degree = delta;
            params.num_vars = delta + static_cast<std::size_t>(rng.below(12 - delta + 1));
            params.target_size = 1 + static_cast<std::size_t>(rng.below(40));
            const auto poly = random_signs(random_family(params, rng), rng);
            const auto m = moments(poly, options);
            const double ratio_t = m.e_abs / std::sqrt(static_cast<double>(m.w));
            row.min_ratio = std::min(row.min_ratio, ratio_t);
            total += ratio_t;
            if (!m.berger_holds()) row.lower_respected = false;
        }
        row.mean_ratio = instances ? total / static_cast<double>(instances) : 0;
        const auto conv = converse_example(delta, options);
        row.converse_ratio = conv.moments.e_abs / std::sqrt(static_cast<double>(conv.moments.w));
        row.converse_below_upper = row.converse_ratio <= row.upper_base + 1e-12;
        rows.push_back(row);
    }
    return rows;
}

bool berger_inequality(double x, double a) {
    const double rhs = std::pow(3.0, 1.5) / (2 * a) * (x * x - x * x * x * x / (a * a));
    return x >= rhs - 1e-12 * std::max(1.0, x);
}

}  // namespace lpoly

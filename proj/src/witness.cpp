#include "lpoly/witness.hpp"

#include <cmath>
#include <stdexcept>

namespace lpoly {

namespace {

constexpr std::uint64_t kSplitStream = 0x5b11;
constexpr std::uint64_t kYStream = 0x5b12;
constexpr std::uint64_t kCrossCheckStream = 0x5b13;

double sum_sqrt(const std::vector<std::size_t>& values) {
    double s = 0;
    for (auto v : values) s += std::sqrt(static_cast<double>(v));
    return s;
}

// Monomials a with a ∩ X = {i}, grouped by i.
std::vector<std::vector<std::uint32_t>> singleton_meets(const MonomialFamily& family, const VariableSplit& split) {
    std::vector<std::vector<std::uint32_t>> groups(family.num_vars());
    for (std::uint32_t m = 0; m < family.size(); ++m) {
        std::size_t hits = 0;
        std::uint32_t which = 0;
        for (auto i : family[m]) {
            if (split.contains(i)) {
                ++hits;
                which = i;
            }
        }
        if (hits == 1) groups[which].push_back(m);
    }
    return groups;
}

std::int64_t group_value(const LittlewoodPoly& poly, const std::vector<std::uint32_t>& group, std::size_t i,
                         const Assignment& y) {
    std::int64_t value = 0;
    for (auto m : group) {
        int term = poly.sign(m);
        for (auto j : poly.family()[m])
            if (j != i) term *= y[j];
        value += term;
    }
    return value;
}

}  // namespace

SplitReport score_split(const MonomialFamily& family, VariableSplit split) {
    if (split.size() != family.num_vars()) throw std::invalid_argument("split does not cover every variable");
    SplitReport report;
    const auto groups = singleton_meets(family, split);
    report.m.resize(family.num_vars());
    for (std::size_t i = 0; i < groups.size(); ++i) report.m[i] = groups[i].size();
    report.score = sum_sqrt(report.m);
    report.split = std::move(split);
    return report;
}

SplitReport sample_split(const MonomialFamily& family, std::uint64_t seed, std::size_t attempts) {
    const std::size_t d = family.degree();
    if (d < 2) throw std::invalid_argument("sample_split needs degree >= 2");
    if (attempts < 1) throw std::invalid_argument("sample_split needs attempts >= 1");
    const double inclusion = 1.0 / (2.0 * static_cast<double>(d - 1));

    SplitReport best;
    best.score = -1;
    for (std::size_t a = 0; a < attempts; ++a) {
        Rng rng = Rng::derive(seed, kSplitStream, a);
        VariableSplit split{std::vector<bool>(family.num_vars())};
        for (std::size_t i = 0; i < family.num_vars(); ++i) split.in_x[i] = rng.bernoulli(inclusion);
        auto report = score_split(family, std::move(split));
        if (report.score > best.score) best = std::move(report);
    }
    best.attempts = attempts;
    best.target = sum_sqrt(family.degree_profile()) /
                  (std::pow(2.0, 2.5) * std::pow(static_cast<double>(d - 1), 1.5));
    best.target_met = best.score >= best.target;
    return best;
}

std::int64_t hi_star(const LittlewoodPoly& poly, const VariableSplit& split, std::size_t i, const Assignment& y) {
    if (i >= split.size() || !split.contains(i)) throw std::invalid_argument("hi_star: variable is not in X");
    std::int64_t value = 0;
    for (auto m : poly.family().incidence()[i]) {
        const auto& s = poly.family()[m];
        int term = poly.sign(m);
        bool single = true;
        for (auto j : s) {
            if (j == i) continue;
            if (split.contains(j)) {
                single = false;
                break;
            }
            term *= y[j];
        }
        if (single) value += term;
    }
    return value;
}

YSelection select_y(const LittlewoodPoly& poly, const SplitReport& split, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("select_y needs trials >= 1");
    const std::size_t n = poly.num_vars();
    const auto groups = singleton_meets(poly.family(), split.split);
    const auto members = split.split.members();

    YSelection best;
    best.sum_abs_hi = -1;
    Rng rng = Rng::derive(seed, kYStream);
    Assignment y(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t j = 0; j < n; ++j) y.set(j, split.split.contains(j) ? 1 : rng.sign());
        std::int64_t total = 0;
        for (auto i : members) total += std::abs(group_value(poly, groups[i], i, y));
        if (total > best.sum_abs_hi) {
            best.sum_abs_hi = total;
            best.y = y;
        }
    }
    best.target = std::pow(3.0, 1.0 - static_cast<double>(poly.degree())) * split.score;
    best.target_met = static_cast<double>(best.sum_abs_hi) >= best.target;
    return best;
}

Assignment align_x(const LittlewoodPoly& poly, const SplitReport& split, const Assignment& y) {
    Assignment x(poly.num_vars());
    for (auto i : split.split.members()) x.set(i, hi_star(poly, split.split, i, y) < 0 ? -1 : 1);
    return x;
}

double eval_univariate(std::span<const double> coeffs, double z) {
    double value = 0;
    for (std::size_t s = coeffs.size(); s-- > 0;) value = value * z + coeffs[s];
    return value;
}

BernsteinSweep sweep_polynomial(std::span<const double> coeffs, std::size_t grid_size, std::size_t degree) {
    if (coeffs.empty()) throw std::invalid_argument("sweep_polynomial needs at least one coefficient");
    BernsteinSweep sweep;
    sweep.degree = degree == 0 ? coeffs.size() - 1 : degree;
    if (grid_size < 2 * sweep.degree + 1 || grid_size < 2) throw std::invalid_argument("grid_size must be at least 2d + 1");
    sweep.coefficients.assign(coeffs.begin(), coeffs.end());
    sweep.h1 = coeffs.size() > 1 ? coeffs[1] : 0.0;
    sweep.guarantee = sweep.degree == 0 ? 0.0 : std::abs(sweep.h1) / static_cast<double>(sweep.degree);

    const double step = 2.0 / static_cast<double>(grid_size - 1);
    sweep.z_grid.resize(grid_size);
    sweep.f_values.resize(grid_size);
    std::size_t best = 0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double z = j + 1 == grid_size ? 1.0 : -1.0 + step * static_cast<double>(j);
        sweep.z_grid[j] = z;
        sweep.f_values[j] = eval_univariate(coeffs, z);
        if (std::abs(sweep.f_values[j]) > std::abs(sweep.f_values[best])) best = j;
    }
    sweep.z_star = sweep.z_grid[best];
    sweep.f_at_star = sweep.f_values[best];

    // Golden-section search for max |f| on the neighbouring grid cells.
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    auto g = [&](double z) { return std::abs(eval_univariate(coeffs, z)); };
    double a = std::max(-1.0, sweep.z_star - step);
    double b = std::min(1.0, sweep.z_star + step);
    double c = b - inv_phi * (b - a);
    double e = a + inv_phi * (b - a);
    double gc = g(c), ge = g(e);
    while (b - a > 1e-9) {
        if (gc >= ge) {
            b = e;
            e = c;
            ge = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = e;
            gc = ge;
            e = a + inv_phi * (b - a);
            ge = g(e);
        }
    }
    const double z_refined = (a + b) / 2;
    const double f_refined = eval_univariate(coeffs, z_refined);
    if (std::abs(f_refined) > std::abs(sweep.f_at_star)) {
        sweep.z_star = z_refined;
        sweep.f_at_star = f_refined;
    }
    sweep.f_star = std::abs(sweep.f_at_star);
    return sweep;
}

BernsteinSweep bernstein_sweep(const LittlewoodPoly& poly, const SplitReport& split, const Assignment& x,
                               const Assignment& y, std::size_t grid_size, std::uint64_t seed) {
    const auto h = degree_split(poly, split.split, x, y);
    std::vector<double> coeffs(h.begin(), h.end());
    auto sweep = sweep_polynomial(coeffs, grid_size, poly.degree());

    Rng rng = Rng::derive(seed, kCrossCheckStream);
    const std::size_t n = poly.num_vars();
    for (int probe = 0; probe < 10; ++probe) {
        const double z = rng.uniform(-1.0, 1.0);
        std::vector<double> coords(n);
        for (std::size_t i = 0; i < n; ++i) coords[i] = split.split.contains(i) ? z * x[i] : y[i];
        const double direct = multilinear_eval(poly, FractionalPoint(std::move(coords)));
        if (std::abs(direct - eval_univariate(coeffs, z)) > 1e-9 * (1 + static_cast<double>(poly.size())))
            throw std::logic_error("f(z) disagrees with the multilinear extension");
    }
    return sweep;
}

RoundingResult round_flips(const LittlewoodPoly& poly, const SplitReport& split, const Assignment& x,
                           const Assignment& y, double z_star, double f_at_star) {
    if (!(z_star >= -1 && z_star <= 1)) throw std::invalid_argument("z_star outside [-1, 1]");
    const std::size_t n = poly.num_vars();
    const auto& family = poly.family();

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = split.split.contains(i) ? z_star * x[i] : y[i];

    RoundingResult result;
    result.sigma = f_at_star < 0 ? -1 : 1;
    const double sigma = result.sigma;
    double expectation = multilinear_eval(poly, FractionalPoint(p));
    result.trajectory.push_back(expectation);
    result.min_step = 0;

    result.point = combine(split.split, x, y);
    for (auto i : split.split.members()) {
        // The extension is affine in p_i: E = A + p_i * B.
        double slope = 0;
        for (auto m : family.incidence()[i]) {
            double term = poly.sign(m);
            for (auto j : family[m])
                if (j != i) term *= p[j];
            slope += term;
        }
        const double rest = expectation - p[i] * slope;
        const double keep = rest + x[i] * slope;
        const double flip = rest - x[i] * slope;
        // Only branches with positive probability are eligible; z = +-1 forces the choice.
        int flip_sign = sigma * flip > sigma * keep ? -1 : 1;
        if (z_star == 1) flip_sign = 1;
        if (z_star == -1) flip_sign = -1;
        const double next = flip_sign > 0 ? keep : flip;
        const double step = sigma * (next - expectation);
        result.min_step = std::min(result.min_step, step);
        p[i] = x[i] * flip_sign;
        result.point.set(i, x[i] * flip_sign);
        expectation = next;
        result.trajectory.push_back(expectation);
    }
    result.monotone = result.min_step >= -1e-9 * (1 + static_cast<double>(poly.size()));
    result.value = evaluate(poly, result.point);
    return result;
}

WitnessReport find_witness(const LittlewoodPoly& poly, const WitnessConfig& config) {
    WitnessReport report;
    report.config = config;
    report.d = poly.degree();
    for (auto ui : poly.family().degree_profile()) report.sum_sqrt_ui += std::sqrt(static_cast<double>(ui));
    const std::size_t n = poly.num_vars();

    if (report.d <= 1) {
        // Each variable is its own monomial; x_i = h_i satisfies all of them.
        Assignment x(n);
        for (std::size_t m = 0; m < poly.size(); ++m) x.set(poly.family()[m][0], poly.sign(m));
        report.final_point = x;
        report.final_value = std::abs(evaluate(poly, x));
        report.pipeline_value = report.final_value;
        report.x_aligned = x;
        report.guaranteed = static_cast<double>(poly.size());
        report.guarantee_met = report.final_value >= static_cast<std::int64_t>(poly.size());
        report.stage_targets_met = true;
        return report;
    }

    report.split = sample_split(poly.family(), config.seed, config.split_attempts);
    report.y_selection = select_y(poly, report.split, config.y_trials, config.seed);
    report.khintchine_target = report.y_selection.target;
    report.x_aligned = align_x(poly, report.split, report.y_selection.y);
    report.sweep = bernstein_sweep(poly, report.split, report.x_aligned, report.y_selection.y, config.grid_size, config.seed);
    report.rounding = round_flips(poly, report.split, report.x_aligned, report.y_selection.y, report.sweep.z_star,
                                  report.sweep.f_at_star);
    report.pipeline_value = std::abs(report.rounding.value);

    report.final_point = report.rounding.point;
    report.final_value = report.pipeline_value;
    if (config.polish) {
        auto polished = local_search(poly, report.rounding.point);
        report.polished = polished.value > report.pipeline_value;
        report.final_point = std::move(polished.argmax);
        report.final_value = polished.value;
    }

    report.guaranteed = lower_bound_constant(report.d) * report.sum_sqrt_ui;
    report.guarantee_met = static_cast<double>(report.final_value) >= report.guaranteed;
    report.stage_targets_met = report.split.target_met && report.y_selection.target_met &&
                               report.sweep.f_star >= report.sweep.guarantee - 1e-6;
    return report;
}

}  // namespace lpoly

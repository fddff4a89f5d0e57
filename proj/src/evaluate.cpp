#include "lpoly/evaluate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpoly/errors.hpp"
#include "lpoly/gray_walk.hpp"

namespace lpoly {

FractionalPoint::FractionalPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    constexpr double kTol = 1e-12;
    for (auto& c : coords_) {
        if (!(c >= -1 - kTol && c <= 1 + kTol)) throw std::invalid_argument("fractional coordinate outside [-1, 1]");
        c = std::clamp(c, -1.0, 1.0);
    }
}

FractionalPoint FractionalPoint::from_assignment(const Assignment& x) {
    std::vector<double> coords(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) coords[i] = x[i];
    return FractionalPoint(std::move(coords));
}

std::vector<std::uint32_t> VariableSplit::members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < in_x.size(); ++i)
        if (in_x[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

std::int64_t evaluate(const LittlewoodPoly& poly, const Assignment& x) {
    if (x.size() != poly.num_vars()) throw std::invalid_argument("assignment dimension does not match polynomial");
    const auto& family = poly.family();
    std::int64_t value = 0;
    if (!family.masks().empty()) {
        const std::uint64_t bits = x.low_bits();
        for (std::size_t m = 0; m < poly.size(); ++m)
            value += (std::popcount(family.masks()[m] & bits) & 1) ? -poly.sign(m) : poly.sign(m);
        return value;
    }
    for (std::size_t m = 0; m < poly.size(); ++m) {
        int term = poly.sign(m);
        for (auto i : family[m]) term *= x[i];
        value += term;
    }
    return value;
}

double multilinear_eval(const LittlewoodPoly& poly, const FractionalPoint& p) {
    if (p.size() != poly.num_vars()) throw std::invalid_argument("point dimension does not match polynomial");
    double value = 0;
    for (std::size_t m = 0; m < poly.size(); ++m) {
        double term = poly.sign(m);
        for (auto i : poly.family()[m]) term *= p[i];
        value += term;
    }
    return value;
}

namespace {

void check_limit(const LittlewoodPoly& poly, const ExhaustiveOptions& options) {
    const std::size_t limit = std::min<std::size_t>(options.limit_n, 63);
    if (poly.num_vars() > limit) throw LimitExceeded(poly.num_vars(), limit);
}

bool uniform_parity(const MonomialFamily& family) {
    const auto& ms = family.monomials();
    if (ms.empty()) return true;
    const std::size_t parity = ms.front().size() & 1;
    for (const auto& s : ms)
        if ((s.size() & 1) != parity) return false;
    return true;
}

std::uint64_t enumeration_size(const LittlewoodPoly& poly, const ExhaustiveOptions& options) {
    std::size_t dims = poly.num_vars();
    if (options.parity_symmetry && dims > 0 && uniform_parity(poly.family())) --dims;
    return std::uint64_t{1} << dims;
}

struct ChunkBest {
    std::int64_t abs_value = -1;
    std::uint64_t index = 0;
    std::uint64_t bits = 0;
};

}  // namespace

SupNormResult sup_norm_exact(const LittlewoodPoly& poly, const ExhaustiveOptions& options) {
    check_limit(poly, options);
    const std::uint64_t total = enumeration_size(poly, options);
    auto partial = detail::run_chunks<ChunkBest>(total, options.workers, [&](std::size_t, std::uint64_t b, std::uint64_t e) {
        ChunkBest best;
        detail::walk_gray_range(poly, b, e, [&](std::uint64_t t, std::uint64_t bits, std::int64_t value) {
            const std::int64_t a = value < 0 ? -value : value;
            if (a > best.abs_value) best = {a, t, bits};
        });
        return best;
    });
    // Chunks are in index order, so a strict comparison keeps the first maximizer.
    ChunkBest best;
    for (const auto& c : partial)
        if (c.abs_value > best.abs_value) best = c;
    return {best.abs_value, Assignment::from_bits(poly.num_vars(), best.bits), total, true};
}

SupNormResult local_search(const LittlewoodPoly& poly, Assignment start) {
    const auto& family = poly.family();
    const std::size_t u = poly.size();
    std::vector<int> current(u);
    std::int64_t value = 0;
    for (std::size_t m = 0; m < u; ++m) {
        int term = poly.sign(m);
        for (auto i : family[m]) term *= start[i];
        current[m] = term;
        value += term;
    }
    std::uint64_t evaluations = 1;
    for (;;) {
        std::int64_t best_abs = value < 0 ? -value : value;
        std::size_t best_var = SIZE_MAX;
        std::int64_t best_value = value;
        for (std::size_t i = 0; i < poly.num_vars(); ++i) {
            std::int64_t sum = 0;
            for (auto m : family.incidence()[i]) sum += current[m];
            const std::int64_t flipped = value - 2 * sum;
            ++evaluations;
            const std::int64_t a = flipped < 0 ? -flipped : flipped;
            if (a > best_abs) {
                best_abs = a;
                best_var = i;
                best_value = flipped;
            }
        }
        if (best_var == SIZE_MAX) break;
        start.flip(best_var);
        for (auto m : family.incidence()[best_var]) current[m] = -current[m];
        value = best_value;
    }
    return {value < 0 ? -value : value, std::move(start), evaluations, false};
}

SupNormResult sup_norm_sampled(const LittlewoodPoly& poly, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("sup_norm_sampled needs trials >= 1");
    const std::size_t n = poly.num_vars();
    Rng rng = Rng::derive(seed, 0x5a3b1e);
    Assignment best(n);
    std::int64_t best_abs = -1;
    Assignment x(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < n; ++i) x.set(i, rng.sign());
        const std::int64_t v = evaluate(poly, x);
        const std::int64_t a = v < 0 ? -v : v;
        if (a > best_abs) {
            best_abs = a;
            best = x;
        }
    }
    auto climbed = local_search(poly, best);
    climbed.evaluations += trials;
    return climbed;
}

std::uint64_t ValueDistribution::count(std::int64_t v) const {
    const std::int64_t k = v + offset;
    if (k < 0 || k >= static_cast<std::int64_t>(counts.size())) return 0;
    return counts[static_cast<std::size_t>(k)];
}

std::int64_t ValueDistribution::min_value() const {
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (counts[k]) return static_cast<std::int64_t>(k) - offset;
    return 0;
}

std::int64_t ValueDistribution::max_value() const {
    for (std::size_t k = counts.size(); k-- > 0;)
        if (counts[k]) return static_cast<std::int64_t>(k) - offset;
    return 0;
}

ValueDistribution value_distribution(const LittlewoodPoly& poly, const ExhaustiveOptions& options) {
    check_limit(poly, options);
    const auto u = static_cast<std::int64_t>(poly.size());
    const std::uint64_t total = std::uint64_t{1} << poly.num_vars();
    using Counts = std::vector<std::uint64_t>;
    auto partial = detail::run_chunks<Counts>(total, options.workers, [&](std::size_t, std::uint64_t b, std::uint64_t e) {
        Counts counts(static_cast<std::size_t>(2 * u + 1), 0);
        detail::walk_gray_range(poly, b, e, [&](std::uint64_t, std::uint64_t, std::int64_t value) {
            ++counts[static_cast<std::size_t>(value + u)];
        });
        return counts;
    });
    ValueDistribution dist{u, Counts(static_cast<std::size_t>(2 * u + 1), 0), total};
    for (const auto& c : partial)
        for (std::size_t k = 0; k < c.size(); ++k) dist.counts[k] += c[k];
    return dist;
}

double eval_norm(const ValueDistribution& dist, double alpha) {
    if (!(alpha >= 1)) throw std::invalid_argument("eval_norm needs alpha >= 1");
    const double points = static_cast<double>(dist.points);
    if (alpha == 2 || alpha == 4) {
        // Even powers: exact integer sum, one rounding at the end.
        unsigned __int128 sum = 0;
        for (std::size_t k = 0; k < dist.counts.size(); ++k) {
            const auto v = static_cast<unsigned __int128>(std::abs(static_cast<std::int64_t>(k) - dist.offset));
            sum += (alpha == 2 ? v * v : v * v * v * v) * dist.counts[k];
        }
        return std::pow(static_cast<double>(sum) / points, 1.0 / alpha);
    }
    // Kahan summation of cnt * |v|^alpha.
    double sum = 0, carry = 0;
    for (std::size_t k = 0; k < dist.counts.size(); ++k) {
        if (dist.counts[k] == 0) continue;
        const double v = std::abs(static_cast<double>(static_cast<std::int64_t>(k) - dist.offset));
        const double term = static_cast<double>(dist.counts[k]) * std::pow(v, alpha) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    return std::pow(sum / points, 1.0 / alpha);
}

double eval_norm(const LittlewoodPoly& poly, double alpha, const ExhaustiveOptions& options) {
    if (!(alpha >= 1)) throw std::invalid_argument("eval_norm needs alpha >= 1");
    return eval_norm(value_distribution(poly, options), alpha);
}

double coeff_norm(const LittlewoodPoly& poly, double alpha) {
    if (!(alpha >= 1)) throw std::invalid_argument("coeff_norm needs alpha >= 1");
    if (poly.size() == 0) return 0;
    if (std::isinf(alpha)) return 1;
    return std::pow(static_cast<double>(poly.size()), 1.0 / alpha);
}

std::vector<std::int64_t> degree_split(const LittlewoodPoly& poly, const VariableSplit& split,
                                       const Assignment& x, const Assignment& y) {
    const std::size_t n = poly.num_vars();
    if (split.size() != n || x.size() != n || y.size() != n)
        throw std::invalid_argument("split and assignments must cover every variable");
    std::vector<std::int64_t> h(poly.degree() + 1, 0);
    for (std::size_t m = 0; m < poly.size(); ++m) {
        std::size_t s = 0;
        int term = poly.sign(m);
        for (auto i : poly.family()[m]) {
            if (split.contains(i)) {
                ++s;
                term *= x[i];
            } else {
                term *= y[i];
            }
        }
        h[s] += term;
    }
    return h;
}

Assignment combine(const VariableSplit& split, const Assignment& x, const Assignment& y) {
    if (split.size() != x.size() || split.size() != y.size())
        throw std::invalid_argument("split and assignments must cover every variable");
    Assignment out(split.size());
    for (std::size_t i = 0; i < split.size(); ++i) out.set(i, split.contains(i) ? x[i] : y[i]);
    return out;
}

}  // namespace lpoly

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lpoly/chaining.hpp"
#include "lpoly/constructions.hpp"
#include "lpoly/khintchine.hpp"
#include "lpoly/witness.hpp"
#include "support/oracles.hpp"

using namespace lpoly;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> run;
};

// Collects violations; keeps the first few messages.
class Tally {
public:
    void fail(const std::string& msg) {
        if (failures_++ < 3) first_.push_back(msg);
    }
    std::size_t failures() const { return failures_; }
    Outcome outcome(const std::string& summary) const {
        Outcome o;
        o.pass = failures_ == 0;
        o.detail = summary;
        if (!o.pass) {
            o.detail += "; " + std::to_string(failures_) + " violations";
            for (const auto& m : first_) o.detail += "; " + m;
        }
        return o;
    }

private:
    std::size_t failures_ = 0;
    std::vector<std::string> first_;
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
    return buffer;
}

double sum_sqrt(const MonomialFamily& f) {
    double s = 0;
    for (auto u : f.degree_profile()) s += std::sqrt(static_cast<double>(u));
    return s;
}

LittlewoodPoly random_instance(Rng& rng, std::size_t min_n, std::size_t max_n, std::size_t min_d, std::size_t max_d,
                               std::size_t max_size) {
    RandomFamilyParams params;
    params.num_vars = min_n + rng.below(max_n - min_n + 1);
    params.max_degree = std::min(min_d + rng.below(max_d - min_d + 1), params.num_vars);
    params.target_size = 1 + rng.below(max_size);
    return random_signs(random_family(params, rng), rng);
}

Outcome parseval() {
    Rng rng(101);
    Tally tally;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        const auto p = random_instance(rng, 1, 14, 1, 5, 300);
        if (p.size() > 300) {
            --t;
            continue;
        }
        const double err = std::abs(eval_norm(p, 2) - std::sqrt(static_cast<double>(p.size())));
        worst = std::max(worst, err);
        if (err > 1e-9) tally.fail("instance " + std::to_string(t) + fmt(" error %.3g", err));
    }
    return tally.outcome(fmt("200 families, max |L2 - sqrt(u)| = %.3g", worst));
}

Outcome chaining_bound() {
    Rng rng(202);
    Tally tally;
    double worst_ratio = 0;
    std::size_t sampled_blocks = 0, resamples = 0;
    for (int t = 0; t < 100; ++t) {
        const auto p = random_instance(rng, 2, 24, 1, 4, 700);
        const auto& f = p.family();
        if (f.total_incidence() > 2000) {
            --t;
            continue;
        }
        SynthesisOptions opts;
        opts.seed = static_cast<std::uint64_t>(t);
        try {
            const auto cert = synthesize(f, opts);
            if (!cert.achieved) {
                tally.fail("no exact sup norm");
                continue;
            }
            const double limit = 3.34 * sum_sqrt(f);
            worst_ratio = std::max(worst_ratio, static_cast<double>(*cert.achieved) / limit);
            if (static_cast<double>(*cert.achieved) > limit)
                tally.fail("instance " + std::to_string(t) + fmt(" sup %.0f > %.3f", static_cast<double>(*cert.achieved), limit));
            for (const auto& b : cert.blocks) {
                sampled_blocks += b.mode == BlockMode::sampled;
                resamples += b.resamples;
            }
        } catch (const BudgetExhausted& e) {
            tally.fail("instance " + std::to_string(t) + ": " + e.what());
        }
    }
    std::ostringstream os;
    os << "100 syntheses, max sup / (3.34 sum sqrt u_i) = " << fmt("%.3f", worst_ratio) << ", " << resamples
       << " resamples, " << sampled_blocks << " sampled blocks";
    return tally.outcome(os.str());
}

// Criteria 3 and 4 share the same 500 witness runs.
struct WitnessSuite {
    Tally lower;
    Tally rounding;
    double min_margin = 1e300;
    std::size_t stage_met = 0;
    bool ran = false;
} witness_suite;

void run_witness_suite() {
    if (witness_suite.ran) return;
    witness_suite.ran = true;
    Rng rng(303);
    for (int t = 0; t < 500; ++t) {
        const auto p = random_instance(rng, 2, 18, 2, 4, 120);
        WitnessConfig config;
        config.seed = static_cast<std::uint64_t>(t);
        const auto r = find_witness(p, config);
        const auto sup = sup_norm_exact(p).value;
        const double floor = std::max(r.guaranteed, 1.0);
        const std::string id = "instance " + std::to_string(t);
        if (static_cast<double>(r.final_value) < floor)
            witness_suite.lower.fail(id + fmt(" value %.0f < %.4f", static_cast<double>(r.final_value), floor));
        if (r.final_value > sup) witness_suite.lower.fail(id + " exceeds exact sup norm");
        if (r.final_value != std::abs(evaluate(p, r.final_point))) witness_suite.lower.fail(id + " value mismatch");
        witness_suite.min_margin = std::min(witness_suite.min_margin, static_cast<double>(r.final_value) / floor);
        witness_suite.stage_met += r.stage_targets_met;

        if (r.d >= 2) {
            // |h(rounded)| >= |f(z*)|: the rounded value is an integer and sigma * value >= sigma * f(z*).
            const double tol = 1e-9 * (1 + static_cast<double>(p.size()));
            if (static_cast<double>(r.rounding.sigma * r.rounding.value) < r.rounding.sigma * r.sweep.f_at_star - tol)
                witness_suite.rounding.fail(id + " rounding lost value");
            if (static_cast<double>(r.pipeline_value) < r.sweep.f_star - tol) witness_suite.rounding.fail(id + " |h| < f_star");
            if (!r.rounding.monotone) witness_suite.rounding.fail(id + fmt(" step %.3g", r.rounding.min_step));
        }
    }
}

Outcome witness_bound() {
    run_witness_suite();
    return witness_suite.lower.outcome(fmt("500 runs, min final / max(guarantee, 1) = %.2f, stage targets met in %.0f runs",
                                           witness_suite.min_margin, static_cast<double>(witness_suite.stage_met)));
}

Outcome rounding_dominance() {
    run_witness_suite();
    return witness_suite.rounding.outcome("500 runs, every rounding step monotone and |h(final)| >= |f(z*)|");
}

Outcome khintchine_prop() {
    Rng rng(404);
    Tally tally;
    double min_ratio = 1e300;
    for (int t = 0; t < 1000; ++t) {
        const auto p = random_instance(rng, 1, 12, 1, 4, 80);
        const auto m = moments(p);
        const std::string id = "instance " + std::to_string(t);
        if (!m.parseval_exact()) tally.fail(id + " E p^2 != w");
        if (!m.berger_holds()) tally.fail(id + " E|p| < 3^-d sqrt(w)");
        if (!m.bonami_holds()) tally.fail(id + " E p^4 > 9^d w^2");
        if (!m.pz_holds()) tally.fail(id + " PZ probability too small");
        min_ratio = std::min(min_ratio, m.e_abs / m.lower_bound);
    }
    return tally.outcome(fmt("1000 polynomials, min E|p| / (3^-d sqrt w) = %.2f", min_ratio));
}

Outcome converse() {
    Tally tally;
    for (std::size_t delta = 1; delta <= 8; ++delta) {
        const auto r = converse_example(delta);
        const std::string id = "delta " + std::to_string(delta);
        if (!r.monomial_count_ok) tally.fail(id + " monomial count");
        if (!r.value_set_ok) tally.fail(id + " value set");
        if (!r.tail_probability_ok) tally.fail(id + " tail probability");
        if (!r.mean_abs_ok) tally.fail(id + " E|p|");
        if (!r.upper_ok) tally.fail(id + " upper bound");
    }
    return tally.outcome("delta = 1..8: 2^(d+1) - 2 monomials, values {0, +-2^d}, exact tails and E|p| = 2 - 2^(1-d)");
}

Outcome paley_bound() {
    Tally tally;
    std::ostringstream os;
    for (std::uint64_t p : {5, 13, 17}) {
        const auto r = paley_bound_check(p);
        const double floor = std::sqrt(static_cast<double>(p * (p - 1) / 2));
        const double sup = static_cast<double>(r.sup_norm);
        os << "p=" << p << " sup=" << r.sup_norm << fmt(" in [%.2f, %.2f]", floor, r.bound) << ' ';
        if (!r.exact) tally.fail("p=" + std::to_string(p) + " not exact");
        if (sup > r.bound || sup < floor) tally.fail("p=" + std::to_string(p) + " out of range");
    }
    return tally.outcome(os.str());
}

Outcome determinant() {
    Tally tally;
    const auto d2 = det_max(2).value;
    const auto d3 = det_max(3).value;
    const auto d4 = det_max(4).value;
    if (d2 != 2) tally.fail("det_max(2) = " + std::to_string(d2));
    if (d4 != 16) tally.fail("det_max(4) = " + std::to_string(d4));
    std::int64_t brute = 0;
    for (std::uint64_t bits = 0; bits < 512; ++bits) {
        std::vector<std::int64_t> a(9);
        for (int k = 0; k < 9; ++k) a[k] = (bits >> k) & 1 ? -1 : 1;
        brute = std::max(brute, std::abs(oracle::cofactor_det(a, 3)));
    }
    if (d3 != brute) tally.fail("det_max(3) = " + std::to_string(d3) + " vs cofactor " + std::to_string(brute));
    const auto cmp = determinant_vs_random(3, 505, 50);
    std::int64_t lowest = INT64_MAX;
    for (auto v : cmp.random_sup_norms) {
        lowest = std::min(lowest, v);
        if (static_cast<double>(v) < std::sqrt(6.0)) tally.fail("random d=3 sup norm " + std::to_string(v));
    }
    std::ostringstream os;
    os << "det_max 2/3/4 = " << d2 << '/' << d3 << '/' << d4 << " (cofactor d=3: " << brute
       << "), 50 random d=3 sign patterns, min sup norm " << lowest << " >= sqrt(6)";
    return tally.outcome(os.str());
}

Outcome oracle_equivalence() {
    Rng rng(606);
    Tally tally;
    for (int t = 0; t < 200; ++t) {
        const auto p = random_instance(rng, 1, 12, 1, 5, 80);
        const auto naive = oracle::brute_sup_norm(p);
        const auto one = sup_norm_exact(p, {28, 1});
        const auto two = sup_norm_exact(p, {28, 2});
        const auto eight = sup_norm_exact(p, {28, 8});
        const std::string id = "instance " + std::to_string(t);
        if (one.value != naive) tally.fail(id + " Gray value differs from naive");
        if (two.value != one.value || eight.value != one.value || !(two.argmax == one.argmax) ||
            !(eight.argmax == one.argmax))
            tally.fail(id + " worker counts disagree");
    }
    return tally.outcome("200 instances, Gray = naive, workers 1/2/8 identical value and argmax");
}

// T_d in the power basis.
std::vector<double> chebyshev(std::size_t d) {
    std::vector<double> prev{1}, cur{0, 1};
    if (d == 0) return prev;
    for (std::size_t k = 1; k < d; ++k) {
        std::vector<double> next(cur.size() + 1, 0);
        for (std::size_t s = 0; s < cur.size(); ++s) next[s + 1] += 2 * cur[s];
        for (std::size_t s = 0; s < prev.size(); ++s) next[s] -= prev[s];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Outcome bernstein() {
    Rng rng(707);
    Tally tally;
    for (int t = 0; t < 200; ++t) {
        std::vector<double> f(2 + rng.below(8));
        for (auto& c : f) c = rng.uniform(-10, 10);
        const auto s = sweep_polynomial(f, 4096);
        if (s.f_star < s.guarantee - 1e-6) tally.fail("random " + std::to_string(t));
    }
    std::ostringstream os;
    os << "200 random degree <= 8 pass; T_d f_star vs |f'(0)|/d:";
    for (std::size_t d = 1; d <= 6; ++d) {
        const auto s = sweep_polynomial(chebyshev(d), 4096);
        os << fmt(" d=%.0f %.6f/%.6f", static_cast<double>(d), s.f_star, s.guarantee);
        if (std::abs(s.f_star - s.guarantee) > 1e-6)
            tally.fail("T_" + std::to_string(d) + " not an equality case (f'(0) = " + fmt("%g", s.h1) + ")");
    }
    return tally.outcome(os.str());
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Parseval identity", 30, parseval},
        {2, "Chaining upper bound", 300, chaining_bound},
        {3, "Witness lower bound", 600, witness_bound},
        {4, "Rounding dominance", 0, rounding_dominance},
        {5, "Khintchine proposition", 120, khintchine_prop},
        {6, "Converse example", 0, converse},
        {7, "Paley bound", 60, paley_bound},
        {8, "Determinant", 0, determinant},
        {9, "Oracle equivalence", 0, oracle_equivalence},
        {10, "Bernstein property", 0, bernstein},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && secs > c.time_limit) {
            o.pass = false;
            o.detail += fmt("; took %.1f s, limit %.0f s", secs, c.time_limit);
        }
        failed += o.pass ? 0 : 1;
        std::printf("[%s] criterion %d: %s (%.2f s) - %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

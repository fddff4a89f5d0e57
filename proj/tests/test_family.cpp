#include <doctest.h>

#include <cmath>

#include "lpoly/errors.hpp"
#include "lpoly/family.hpp"
#include "support/oracles.hpp"

using namespace lpoly;

namespace {

std::size_t parse_error_line(const std::string& text, std::string& message) {
    try {
        parse_family(text);
    } catch (const ParseError& e) {
        message = e.message();
        return e.line();
    }
    return 0;
}

MonomialFamily all_pairs(std::uint32_t n) {
    std::vector<Monomial> ms;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) ms.push_back({i, j});
    return {n, ms};
}

}  // namespace

TEST_CASE("parse transcribes signs and monomials") {
    const auto p = parse_family("n 2\n+ 1\n- 2\n+ 1 2\n");
    CHECK(p.num_vars() == 2);
    REQUIRE(p.size() == 3);
    CHECK(p.family()[0] == Monomial{0});
    CHECK(p.family()[1] == Monomial{1});
    CHECK(p.family()[2] == Monomial{0, 1});
    CHECK(p.signs() == std::vector<int>{1, -1, 1});
    CHECK(p.degree() == 2);
    CHECK(p.family().degree_profile() == std::vector<std::size_t>{2, 2});
}

TEST_CASE("missing sign defaults to plus") {
    const auto p = parse_family("n 3\n1 3\n2\n");
    CHECK(p.family()[1] == Monomial{0, 2});
    CHECK(p.signs() == std::vector<int>{1, 1});
}

TEST_CASE("comments, blank lines and CRLF are accepted") {
    const auto p = parse_family("# header comment\r\nn 2   # two vars\r\n\r\n- 2 1\r\n+ 1 # trailing\r\n");
    CHECK(serialize(p) == "n 2\n+ 1\n- 1 2\n");
}

TEST_CASE("parse errors carry line numbers") {
    std::string msg;
    CHECK(parse_error_line("n 2\n+ 1 1\n", msg) == 2);
    CHECK(msg == "repeated index");
    CHECK(parse_error_line("n 2\n+ 1\n+ 3\n", msg) == 3);
    CHECK(msg.find("out of range") != std::string::npos);
    CHECK(parse_error_line("n 2\n+ 0 1\n", msg) == 2);
    CHECK(parse_error_line("n 2\n+ 1 2\n- 2 1\n", msg) == 3);
    CHECK(msg.find("duplicate monomial") != std::string::npos);
    CHECK(parse_error_line("n 2\n+ 1 2\n-\n", msg) == 3);
    CHECK(msg == "empty monomial");
    CHECK(parse_error_line("n 2\n+ 1 x\n", msg) == 2);
    CHECK(msg.find("malformed") != std::string::npos);
    CHECK(parse_error_line("+ 1\n", msg) == 1);
    CHECK(parse_error_line("", msg) == 1);
    CHECK(parse_error_line("n 0\n", msg) == 1);
    CHECK(parse_error_line("# c\nn 3\n+ 1 2\n", msg) == 2);
    CHECK(msg == "variable 3 appears in no monomial");
}

TEST_CASE("serialize is canonical and always signs every monomial") {
    const auto p = parse_family("n 2\n+ 1 2\n- 2\n1\n");
    CHECK(serialize(p) == "n 2\n+ 1\n- 2\n+ 1 2\n");
    const LittlewoodPoly plus(MonomialFamily(3, {{0, 1, 2}, {1}, {0, 2}, {0}}));
    CHECK(serialize(plus) == "n 3\n+ 1\n+ 2\n+ 1 3\n+ 1 2 3\n");
}

TEST_CASE("parse(serialize(p)) is the identity") {
    Rng rng(42);
    for (int t = 0; t < 200; ++t) {
        const auto p = oracle::random_poly(rng, 16, 5, 100);
        CHECK(parse_family(serialize(p)) == p);
    }
}

TEST_CASE("family constructor rejects invariant violations") {
    CHECK_THROWS_AS(MonomialFamily(2, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(MonomialFamily(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(MonomialFamily(2, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MonomialFamily(2, {{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MonomialFamily(2, {{0}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(LittlewoodPoly(MonomialFamily(1, {{0}}), {0}), std::invalid_argument);
    CHECK_THROWS_AS(LittlewoodPoly(MonomialFamily(1, {{0}}), {1, 1}), std::invalid_argument);
}

TEST_CASE("assignment packs signs") {
    std::vector<int> s(130, 1);
    s[0] = s[64] = s[129] = -1;
    auto a = Assignment::from_signs(s);
    CHECK(a.size() == 130);
    CHECK(a[0] == -1);
    CHECK(a[1] == 1);
    CHECK(a[64] == -1);
    CHECK(a[129] == -1);
    a.flip(129);
    CHECK(a[129] == 1);
    CHECK(Assignment::from_bits(3, 0b101).to_signs() == std::vector<int>{-1, 1, -1});
}

TEST_CASE("bound summary") {
    SUBCASE("d = 1 reports u exactly") {
        const MonomialFamily f(4, {{0}, {1}, {2}, {3}});
        const auto b = bound_summary(f);
        CHECK(b.lb_main == 4.0);
        CHECK(b.sqrt_u == doctest::Approx(2.0));
        CHECK(b.lb == 4.0);
    }
    SUBCASE("d = 2 constant") {
        // 3^{1} * 2^{5/2} * 1^{3/2} * 2 = 24 sqrt(2)
        const double expected = 1.0 / (24.0 * std::sqrt(2.0));
        CHECK(lower_bound_constant(2) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(lower_bound_constant(2) == doctest::Approx(0.029463).epsilon(1e-5));
        CHECK_THROWS_AS(lower_bound_constant(1), std::invalid_argument);
    }
    SUBCASE("all pairs on five vertices") {
        const auto b = bound_summary(all_pairs(5));
        CHECK(b.u == 10);
        CHECK(b.sum_sqrt_ui == doctest::Approx(10.0));
        CHECK(b.ub_chaining == doctest::Approx(33.4));
        CHECK(b.ub_simple == doctest::Approx(std::sqrt(120.0)));
        CHECK(b.ub_simple == doctest::Approx(10.954).epsilon(1e-4));
        CHECK(b.ub == b.ub_simple);
        CHECK(b.lb_main == doctest::Approx(10.0 / (24.0 * std::sqrt(2.0))));
    }
}

TEST_CASE("incidence and Cauchy-Schwarz invariants on random families") {
    Rng rng(7);
    for (int t = 0; t < 300; ++t) {
        const auto p = oracle::random_poly(rng, 20, 6, 200);
        const auto& f = p.family();
        std::size_t sum_sizes = 0;
        for (const auto& s : f.monomials()) sum_sizes += s.size();
        CHECK(f.total_incidence() == sum_sizes);
        CHECK(sum_sizes <= f.degree() * f.size());
        CHECK(f.covers_all_variables());

        const auto b = bound_summary(f);
        const double n = static_cast<double>(f.num_vars());
        CHECK(b.sum_sqrt_ui <= std::sqrt(n * static_cast<double>(sum_sizes)) + 1e-9);
        CHECK(std::sqrt(n * static_cast<double>(sum_sizes)) <=
              std::sqrt(static_cast<double>(f.degree()) * n * static_cast<double>(f.size())) + 1e-9);
        CHECK(b.lb >= b.sqrt_u);
        CHECK(b.sqrt_u >= 1.0);
        CHECK(b.lb_main >= 0);
        CHECK(b.ub >= 0);
    }
}

TEST_CASE("random_family covers variables and hits the top degree") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        RandomFamilyParams params{10, 3, 12, t % 2 == 0};
        const auto f = random_family(params, rng);
        CHECK(f.covers_all_variables());
        CHECK(f.degree() == 3);
        if (params.homogeneous)
            for (const auto& s : f.monomials()) CHECK(s.size() == 3);
    }
}

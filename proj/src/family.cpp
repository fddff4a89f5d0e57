#include "lpoly/family.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lpoly/errors.hpp"

namespace lpoly {

bool canonical_less(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace {

// Empty string when valid.
std::string monomial_defect(const Monomial& s, std::size_t n) {
    if (s.empty()) return "empty monomial";
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] >= n) return "index out of range";
        if (j > 0 && s[j] == s[j - 1]) return "repeated index";
        if (j > 0 && s[j] < s[j - 1]) return "indices not increasing";
    }
    return {};
}

}  // namespace

MonomialFamily::MonomialFamily(std::size_t num_vars, std::vector<Monomial> monomials)
    : n_(num_vars), monomials_(std::move(monomials)) {
    for (const auto& s : monomials_) {
        if (auto defect = monomial_defect(s, n_); !defect.empty()) throw std::invalid_argument(defect);
    }
    std::sort(monomials_.begin(), monomials_.end(), canonical_less);
    if (std::adjacent_find(monomials_.begin(), monomials_.end()) != monomials_.end())
        throw std::invalid_argument("duplicate monomial");

    profile_.assign(n_, 0);
    incidence_.assign(n_, {});
    for (std::size_t m = 0; m < monomials_.size(); ++m) {
        degree_ = std::max(degree_, monomials_[m].size());
        for (auto i : monomials_[m]) {
            ++profile_[i];
            incidence_[i].push_back(static_cast<std::uint32_t>(m));
        }
    }
    if (n_ <= 64) {
        masks_.reserve(monomials_.size());
        for (const auto& s : monomials_) {
            std::uint64_t mask = 0;
            for (auto i : s) mask |= std::uint64_t{1} << i;
            masks_.push_back(mask);
        }
    }
}

bool MonomialFamily::covers_all_variables() const {
    return std::all_of(profile_.begin(), profile_.end(), [](std::size_t c) { return c > 0; });
}

std::size_t MonomialFamily::total_incidence() const {
    return std::accumulate(profile_.begin(), profile_.end(), std::size_t{0});
}

LittlewoodPoly::LittlewoodPoly(MonomialFamily family, std::vector<int> signs)
    : family_(std::move(family)), signs_(std::move(signs)) {
    if (signs_.size() != family_.size()) throw std::invalid_argument("sign count does not match monomial count");
    for (int s : signs_)
        if (s != 1 && s != -1) throw std::invalid_argument("coefficient is not +1 or -1");
}

LittlewoodPoly::LittlewoodPoly(MonomialFamily family)
    : family_(std::move(family)), signs_(family_.size(), 1) {}

LittlewoodPoly LittlewoodPoly::from_terms(std::size_t num_vars, std::vector<std::pair<Monomial, int>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    std::vector<Monomial> monomials;
    std::vector<int> signs;
    monomials.reserve(terms.size());
    signs.reserve(terms.size());
    for (auto& [s, sign] : terms) {
        monomials.push_back(std::move(s));
        signs.push_back(sign);
    }
    return {MonomialFamily(num_vars, std::move(monomials)), std::move(signs)};
}

Assignment Assignment::from_signs(std::span<const int> signs) {
    Assignment a(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("assignment coordinate is not +1 or -1");
        a.set(i, signs[i]);
    }
    return a;
}

Assignment Assignment::from_bits(std::size_t n, std::uint64_t bits) {
    if (n > 64) throw std::invalid_argument("from_bits needs n <= 64");
    Assignment a(n);
    if (n > 0) a.words_[0] = n == 64 ? bits : bits & ((std::uint64_t{1} << n) - 1);
    return a;
}

std::vector<int> Assignment::to_signs() const {
    std::vector<int> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
}

double lower_bound_constant(std::size_t d) {
    if (d < 2) throw std::invalid_argument("lower_bound_constant needs d >= 2");
    const double dd = static_cast<double>(d);
    return 1.0 / (std::pow(3.0, dd - 1) * std::pow(2.0, 2.5) * std::pow(dd - 1, 1.5) * dd);
}

BoundSummary bound_summary(const MonomialFamily& family) {
    BoundSummary b;
    b.n = family.num_vars();
    b.u = family.size();
    b.d = family.degree();
    b.sqrt_u = std::sqrt(static_cast<double>(b.u));
    for (auto ui : family.degree_profile()) b.sum_sqrt_ui += std::sqrt(static_cast<double>(ui));
    // d = 1: every variable is its own monomial, so x_i = h_i attains u.
    b.lb_main = b.d <= 1 ? static_cast<double>(b.u) : lower_bound_constant(b.d) * b.sum_sqrt_ui;
    b.ub_chaining = kChainingConstant * b.sum_sqrt_ui;
    b.ub_simple = std::sqrt(2.0 * static_cast<double>(b.n + 1) * static_cast<double>(b.u));
    b.lb = std::max(b.lb_main, b.sqrt_u);
    b.ub = std::min(b.ub_chaining, b.ub_simple);
    return b;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_unsigned(std::string_view token, std::size_t& value) {
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

LittlewoodPoly parse_family(std::string_view text) {
    std::size_t n = 0;
    std::size_t header_line = 0;
    std::vector<std::pair<Monomial, int>> terms;
    std::map<Monomial, std::size_t> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (header_line == 0) {
            if (tokens.size() != 2 || tokens[0] != "n" || !parse_unsigned(tokens[1], n) || n == 0)
                throw ParseError(line_no, "expected header 'n <N>' with N >= 1");
            header_line = line_no;
            continue;
        }

        int sign = 1;
        std::size_t first = 0;
        if (tokens[0] == "+" || tokens[0] == "-") {
            sign = tokens[0] == "-" ? -1 : 1;
            first = 1;
        }
        if (first == tokens.size()) throw ParseError(line_no, "empty monomial");

        Monomial s;
        for (std::size_t t = first; t < tokens.size(); ++t) {
            std::size_t index = 0;
            if (!parse_unsigned(tokens[t], index)) throw ParseError(line_no, "malformed token '" + std::string(tokens[t]) + "'");
            if (index < 1 || index > n) throw ParseError(line_no, "index out of range: " + std::string(tokens[t]));
            s.push_back(static_cast<std::uint32_t>(index - 1));
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ParseError(line_no, "repeated index");
        if (auto [it, fresh] = seen.emplace(s, line_no); !fresh)
            throw ParseError(line_no, "duplicate monomial (first on line " + std::to_string(it->second) + ")");
        terms.emplace_back(std::move(s), sign);
    }
    if (header_line == 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'n <N>'");

    std::vector<bool> used(n, false);
    for (const auto& [s, sign] : terms)
        for (auto i : s) used[i] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) throw ParseError(header_line, "variable " + std::to_string(i + 1) + " appears in no monomial");

    return LittlewoodPoly::from_terms(n, std::move(terms));
}

std::string serialize(const LittlewoodPoly& poly) {
    std::string out = "n " + std::to_string(poly.num_vars()) + "\n";
    const auto& monomials = poly.family().monomials();
    for (std::size_t m = 0; m < monomials.size(); ++m) {
        out += poly.sign(m) > 0 ? '+' : '-';
        for (auto i : monomials[m]) {
            out += ' ';
            out += std::to_string(i + 1);
        }
        out += '\n';
    }
    return out;
}

namespace {

Monomial random_subset(std::size_t n, std::size_t size, Rng& rng, std::uint32_t forced = UINT32_MAX) {
    std::set<std::uint32_t> chosen;
    if (forced != UINT32_MAX) chosen.insert(forced);
    while (chosen.size() < size) chosen.insert(static_cast<std::uint32_t>(rng.below(n)));
    return {chosen.begin(), chosen.end()};
}

std::size_t random_degree(const RandomFamilyParams& p, Rng& rng) {
    return p.homogeneous ? p.max_degree : 1 + static_cast<std::size_t>(rng.below(p.max_degree));
}

}  // namespace

MonomialFamily random_family(const RandomFamilyParams& params, Rng& rng) {
    const std::size_t n = params.num_vars;
    const std::size_t d = params.max_degree;
    if (d < 1 || n < d) throw std::invalid_argument("random_family needs num_vars >= max_degree >= 1");

    std::set<Monomial> chosen;
    chosen.insert(random_subset(n, d, rng));
    // Bounded retries: small n may not have target_size distinct monomials.
    for (std::size_t tries = 0; chosen.size() < params.target_size && tries < 50 * params.target_size + 100; ++tries)
        chosen.insert(random_subset(n, random_degree(params, rng), rng));

    std::vector<bool> covered(n, false);
    for (const auto& s : chosen)
        for (auto i : s) covered[i] = true;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        for (;;) {
            auto s = random_subset(n, random_degree(params, rng), rng, i);
            if (chosen.insert(s).second) {
                for (auto j : s) covered[j] = true;
                break;
            }
        }
    }
    return {n, {chosen.begin(), chosen.end()}};
}

LittlewoodPoly random_signs(const MonomialFamily& family, Rng& rng) {
    std::vector<int> signs(family.size());
    for (auto& s : signs) s = rng.sign();
    return {family, std::move(signs)};
}

}  // namespace lpoly

#include "lpoly/chaining.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lpoly {

namespace {

constexpr std::uint64_t kSignStream = 0xc4a1;
constexpr std::uint64_t kSampleStream = 0xc4a2;

double block_target(double lambda, std::size_t k, std::size_t size) {
    return lambda * std::pow(2.0, static_cast<double>(k) / 2) * std::sqrt(static_cast<double>(size));
}

}  // namespace

double min_lambda() { return std::sqrt(2.0 * std::log(2.0)); }

ChainingPartition build_partition(const MonomialFamily& family) {
    const std::size_t n = family.num_vars();
    const auto& profile = family.degree_profile();
    for (std::size_t i = 0; i < n; ++i)
        if (profile[i] == 0)
            throw std::invalid_argument("variable " + std::to_string(i + 1) + " appears in no monomial");

    ChainingPartition part;
    part.order.resize(n);
    std::iota(part.order.begin(), part.order.end(), 0U);
    std::stable_sort(part.order.begin(), part.order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return profile[a] > profile[b]; });
    part.position.resize(n);
    for (std::uint32_t r = 0; r < n; ++r) part.position[part.order[r]] = r;

    part.num_blocks = static_cast<std::size_t>(std::bit_width(n));
    part.blocks.assign(part.num_blocks, {});
    for (std::uint32_t m = 0; m < family.size(); ++m) {
        std::uint32_t last = 0;
        for (auto i : family[m]) last = std::max(last, part.position[i] + 1);
        // 1-based position p lies in [2^{k-1}, 2^k - 1] exactly when bit_width(p) = k.
        part.blocks[std::bit_width(last) - 1].push_back(m);
    }
    return part;
}

double ChainingCertificate::lemma_bound() const {
    double sum = 0;
    for (const auto& b : blocks) sum += b.target;
    return sum;
}

bool ChainingCertificate::all_exact() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const BlockRecord& b) { return b.mode == BlockMode::exact; });
}

BlockCheck check_block(const MonomialFamily& family, std::span<const int> signs, const std::vector<std::uint32_t>& block,
                       const SynthesisOptions& options, std::uint64_t sample_seed) {
    if (block.empty()) return {};
    // Relabel the touched variables 0..w-1; untouched prefix coordinates do not
    // change the increment.
    std::vector<std::uint32_t> touched;
    for (auto m : block)
        for (auto i : family[m]) touched.push_back(i);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::vector<std::pair<Monomial, int>> terms;
    terms.reserve(block.size());
    for (auto m : block) {
        Monomial s;
        for (auto i : family[m])
            s.push_back(static_cast<std::uint32_t>(std::lower_bound(touched.begin(), touched.end(), i) - touched.begin()));
        terms.emplace_back(std::move(s), signs[m]);
    }
    const auto sub = LittlewoodPoly::from_terms(touched.size(), std::move(terms));

    BlockCheck check;
    check.width = touched.size();
    if (touched.size() <= options.block_exact_limit) {
        ExhaustiveOptions ex = options.exhaustive;
        ex.limit_n = options.block_exact_limit;
        ex.parity_symmetry = true;
        check.bound = sup_norm_exact(sub, ex).value;
        check.mode = BlockMode::exact;
    } else {
        check.bound = sup_norm_sampled(sub, options.sampled_prefixes, sample_seed).value;
        check.mode = BlockMode::sampled;
    }
    return check;
}

ChainingCertificate synthesize(const MonomialFamily& family, const SynthesisOptions& options) {
    if (!(options.lambda > min_lambda()))
        throw std::invalid_argument("lambda must exceed sqrt(2 / lg e) = " + std::to_string(min_lambda()));
    if (options.budget < 1) throw std::invalid_argument("budget must be at least 1");

    ChainingCertificate cert;
    cert.lambda = options.lambda;
    cert.partition = build_partition(family);
    std::vector<int> signs(family.size(), 1);

    for (std::size_t k = 1; k <= cert.partition.num_blocks; ++k) {
        const auto& block = cert.partition.blocks[k - 1];
        BlockRecord rec;
        rec.k = k;
        rec.size = block.size();
        rec.target = block_target(options.lambda, k, block.size());

        Rng rng = Rng::derive(options.seed, kSignStream, k);
        std::int64_t best = INT64_MAX;
        bool accepted = false;
        for (std::size_t draw = 0; draw < options.budget; ++draw) {
            for (auto m : block) signs[m] = rng.sign();
            const auto check = check_block(family, signs, block, options, mix64(options.seed ^ mix64(kSampleStream + k)) ^ draw);
            best = std::min(best, check.bound);
            if (static_cast<double>(check.bound) <= rec.target) {
                rec.verified_bound = check.bound;
                rec.mode = check.mode;
                rec.width = check.width;
                rec.resamples = draw;
                accepted = true;
                break;
            }
        }
        if (!accepted) throw BudgetExhausted(k, best, rec.target);
        cert.total_bound += rec.verified_bound;
        cert.blocks.push_back(rec);
    }
    cert.poly = LittlewoodPoly(family, std::move(signs));
    if (family.num_vars() <= options.exhaustive.limit_n)
        cert.achieved = sup_norm_exact(cert.poly, options.exhaustive).value;
    return cert;
}

CertifyResult certify(const ChainingCertificate& cert, const SynthesisOptions& options) {
    std::ostringstream report;
    auto fail = [&](const std::string& why) { return CertifyResult{false, why}; };

    const auto& family = cert.poly.family();
    const auto partition = build_partition(family);
    if (partition.order != cert.partition.order || partition.blocks != cert.partition.blocks)
        return fail("partition does not match the polynomial's family");
    if (cert.blocks.size() != partition.num_blocks) return fail("block record count differs from K");

    std::int64_t total = 0;
    for (std::size_t k = 1; k <= partition.num_blocks; ++k) {
        const auto& rec = cert.blocks[k - 1];
        const auto& block = partition.blocks[k - 1];
        const double target = block_target(cert.lambda, k, block.size());
        if (rec.k != k || rec.size != block.size() || std::abs(rec.target - target) > 1e-9 * (1 + target))
            return fail("block " + std::to_string(k) + ": record inconsistent with partition");
        if (static_cast<double>(rec.verified_bound) > rec.target)
            return fail("block " + std::to_string(k) + ": verified bound exceeds target");
        if (rec.mode == BlockMode::exact) {
            SynthesisOptions exact = options;
            exact.block_exact_limit = std::max(options.block_exact_limit, rec.width);
            const auto check = check_block(family, cert.poly.signs(), block, exact, 0);
            if (check.bound != rec.verified_bound)
                return fail("block " + std::to_string(k) + ": increment " + std::to_string(check.bound) +
                            " differs from certified " + std::to_string(rec.verified_bound));
        }
        total += rec.verified_bound;
    }
    if (total != cert.total_bound) return fail("total bound is not the sum of block bounds");

    if (family.num_vars() <= options.exhaustive.limit_n) {
        const auto sup = sup_norm_exact(cert.poly, options.exhaustive).value;
        if (cert.achieved && *cert.achieved != sup) return fail("recorded sup norm differs from recomputed value");
        if (cert.all_exact() ? sup > cert.total_bound : static_cast<double>(sup) > cert.lemma_bound())
            return fail("sup norm " + std::to_string(sup) + " exceeds certified total");
        report << "sup norm " << sup << " <= " << (cert.all_exact() ? std::to_string(cert.total_bound) : std::to_string(cert.lemma_bound()));
    } else {
        report << "blocks verified; sup norm not recomputed (n above limit)";
    }
    return {true, report.str()};
}

}  // namespace lpoly

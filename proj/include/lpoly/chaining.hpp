#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpoly/evaluate.hpp"
#include "lpoly/family.hpp"

namespace lpoly {

/// Variables ordered by decreasing u_i and the monomials grouped into blocks
/// V_1..V_K by the largest reordered position they touch: V_k holds the
/// monomials whose last position (1-based) lies in [2^{k-1}, 2^k - 1].
struct ChainingPartition {
    /// order[r] is the original variable placed at reordered position r (0-based).
    std::vector<std::uint32_t> order;
    /// Inverse of order.
    std::vector<std::uint32_t> position;
    /// K = ceil(lg(n + 1)).
    std::size_t num_blocks = 0;
    /// blocks[k - 1] lists monomial ids of V_k.
    std::vector<std::vector<std::uint32_t>> blocks;

    std::size_t block_size(std::size_t k) const { return blocks.at(k - 1).size(); }
};

/// Ties in u_i are broken by ascending original index.
ChainingPartition build_partition(const MonomialFamily& family);

/// Smallest admissible slack, sqrt(2 / lg e).
double min_lambda();

enum class BlockMode { exact, sampled };

struct BlockRecord {
    std::size_t k = 0;
    std::size_t size = 0;
    /// lambda * 2^{k/2} * sqrt(v_k)
    double target = 0;
    /// Largest |h(x(k)) - h(x(k-1))| found; exact maximum in exact mode.
    std::int64_t verified_bound = 0;
    BlockMode mode = BlockMode::exact;
    /// Sign draws before the accepted one.
    std::size_t resamples = 0;
    /// Variables the block's monomials touch.
    std::size_t width = 0;
};

struct ChainingCertificate {
    LittlewoodPoly poly;
    double lambda = 1.18;
    ChainingPartition partition;
    std::vector<BlockRecord> blocks;
    /// Sum of verified_bound over blocks.
    std::int64_t total_bound = 0;
    /// Exact sup norm of poly, when n is within the exhaustive limit.
    std::optional<std::int64_t> achieved;

    /// Sum of block targets, the lemma's right-hand side.
    double lemma_bound() const;
    bool all_exact() const;
};

struct SynthesisOptions {
    double lambda = 1.18;
    /// Sign draws allowed per block.
    std::size_t budget = 1000;
    std::uint64_t seed = 0;
    /// Blocks touching at most this many variables are checked exhaustively.
    std::size_t block_exact_limit = 20;
    /// Random prefixes tried per sampled block check (plus hill climbing).
    std::size_t sampled_prefixes = 100000;
    /// Exhaustive limit for the final sup norm; also supplies worker count.
    ExhaustiveOptions exhaustive{};
};

/// Raised when some block could not meet its target within the budget.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(std::size_t k, std::int64_t best, double target)
        : std::runtime_error("block " + std::to_string(k) + ": budget exhausted, best increment " +
                             std::to_string(best) + " exceeds target " + std::to_string(target)),
          k_(k), best_(best), target_(target) {}

    std::size_t block() const noexcept { return k_; }
    std::int64_t best() const noexcept { return best_; }
    double target() const noexcept { return target_; }

private:
    std::size_t k_;
    std::int64_t best_;
    double target_;
};

/// Fixes signs block by block, redrawing a block until the max increment over
/// its prefix points is at most its target.
ChainingCertificate synthesize(const MonomialFamily& family, const SynthesisOptions& options = {});

/// Max over prefixes of |sum_{S in V_k} h_S x^S| for one block of `poly`.
struct BlockCheck {
    std::int64_t bound = 0;
    BlockMode mode = BlockMode::exact;
    std::size_t width = 0;
};
BlockCheck check_block(const MonomialFamily& family, std::span<const int> signs, const std::vector<std::uint32_t>& block,
                       const SynthesisOptions& options, std::uint64_t sample_seed);

struct CertifyResult {
    bool ok = true;
    std::string report;
};

/// Re-verifies partition, targets, every exact block and (within the limit)
/// the achieved sup norm against the certified total.
CertifyResult certify(const ChainingCertificate& cert, const SynthesisOptions& options = {});

}  // namespace lpoly

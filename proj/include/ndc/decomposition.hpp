#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ndc/finite_matrix.hpp"
#include "ndc/norm_bound.hpp"
#include "ndc/numerics.hpp"
#include "ndc/operator.hpp"
#include "ndc/partition.hpp"

namespace ndc {

inline constexpr std::uint64_t kDefaultDepth = 64;

/// Bound on the i-th hook norm || sum_{k<i} (a_ki + a_ik) + a_ii ||, computed
/// with at most `depth` indices per block.
struct HookPoint {
    BlockId i;
    NormBound bound;
    std::uint64_t depth = 0;
};

struct CertifiedIn {
    /// First hook index from which the dominating sequence stays <= eps.
    BlockId horizon;
    std::string certificate;
};

struct WitnessEvidence {
    BasisIndex row;
    BasisIndex col;
    double modulus = 0.0;
    BlockId strip;
};

struct CertifiedOut {
    double eps = 0.0;
    std::vector<WitnessEvidence> witnesses;
};

struct Empirical {
    bool in = false;
    BlockId horizon;
    double max_tail_hook_lower = 0.0;
};

using MembershipVerdict = std::variant<CertifiedIn, CertifiedOut, Empirical>;

struct PeirceBlock {
    BlockId row_block;
    BlockId col_block;
    FiniteMatrix matrix;
};

/// First min(depth, |block|) indices of a block, increasing.
std::vector<BasisIndex> block_indices(const Partition& part, BlockId block, std::uint64_t depth);

/// p_i a p_j restricted to the first `depth` indices of blocks i and j.
FiniteMatrix peirce_block(const OperatorRep& op, const Partition& part, BlockId i, BlockId j,
                          std::uint64_t depth);

/// All Peirce blocks of an explicit operator that meet its support, at a depth
/// that covers the support.
std::vector<PeirceBlock> decompose(const OperatorRep& op, const Partition& part);

/// Explicit operator holding the union of the block entries. Two blocks that
/// cover the same (row, col) position throw ConsistencyError.
OperatorRep reconstruct(const std::vector<PeirceBlock>& blocks);

/**
 * The i-th hook.
 *
 * Explicit operators get the exact strip norm, lower == upper. For generated
 * operators the lower end is the norm of the depth-truncated strip, raised by
 * any persistent-witness entry in strip i; the upper end is the best of the
 * exact value (when truncation drops nothing), truncated norm + 2 tail(n), and
 * the generator's strip bound.
 */
HookPoint hook(const OperatorRep& op, const Partition& part, BlockId i, std::uint64_t depth,
               const Tolerance& tol = {});

/// Hooks 0 .. horizon-1.
std::vector<HookPoint> hook_sequence(const OperatorRep& op, const Partition& part, BlockId horizon,
                                     std::uint64_t depth, const Tolerance& tol = {});

/// Three-valued membership in the norm decomposition: hooks -> 0.
MembershipVerdict membership(const OperatorRep& op, const Partition& part, double eps, BlockId horizon,
                             std::uint64_t depth, const Tolerance& tol = {});

/// || S_{n+1} - S_n || where S_m sums the blocks a_kl with k, l <= m. Computed
/// from the two compressions, independently of hook().
NormBound partial_sum_gap(const OperatorRep& op, const Partition& part, BlockId n, std::uint64_t depth,
                          const Tolerance& tol = {});

}  // namespace ndc

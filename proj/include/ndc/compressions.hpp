#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "ndc/decomposition.hpp"
#include "ndc/finite_matrix.hpp"
#include "ndc/norm_bound.hpp"
#include "ndc/numerics.hpp"
#include "ndc/operator.hpp"
#include "ndc/partition.hpp"

namespace ndc {

using BlockSet = std::vector<BlockId>;

/// Increasing chain of finite block sets, each truncated to `depth` indices per block.
struct CompressionSchedule {
    std::vector<BlockSet> subsets;
    std::uint64_t depth = kDefaultDepth;

    /// {0}, {0,1}, ..., {0..levels-1}.
    static CompressionSchedule prefixes(std::uint64_t levels, std::uint64_t depth = kDefaultDepth);

    /// Throws PreconditionError unless the subsets are non-empty, sorted,
    /// duplicate-free and strictly increasing under inclusion, and depth > 0.
    void validate() const;
};

struct NotHermitian {
    BasisIndex row;
    BasisIndex col;
};

struct NegativeWitness {
    BlockSet subset;
    double min_eig = 0.0;
    /// A subset of `subset` obtained by dropping blocks while the compression
    /// stays negative beyond the slack.
    BlockSet reduced;
    double reduced_min_eig = 0.0;
};

struct PositiveUpTo {
    std::size_t checked = 0;
    double worst_min_eig = 0.0;
};

using PositivityVerdict = std::variant<NotHermitian, NegativeWitness, PositiveUpTo>;

struct CompressionNorms {
    std::vector<double> points;
    NormBound estimate;
};

/// Sorted union of the first `depth` indices of each block in `subset`.
std::vector<BasisIndex> compression_indices(const Partition& part, const BlockSet& subset, std::uint64_t depth);

/// pap over those indices, p the sum of the blocks in `subset`.
FiniteMatrix compression(const OperatorRep& op, const BlockSet& subset, const Partition& part, std::uint64_t depth);

/**
 * Spectral norms of the scheduled compressions.
 *
 * The upper end of the estimate adds to the last point the Frobenius mass left
 * outside the final compression (explicit operators) or tail(n) with n the
 * first index the final compression misses (generated operators with a tail).
 */
CompressionNorms norm_via_compressions(const OperatorRep& op, const Partition& part, const CompressionSchedule& sched,
                                       const Tolerance& tol = {});

PositivityVerdict positivity_via_compressions(const OperatorRep& op, const Partition& part,
                                              const CompressionSchedule& sched, double slack = 1e-9,
                                              const Tolerance& tol = {});

}  // namespace ndc

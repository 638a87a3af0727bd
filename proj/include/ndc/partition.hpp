#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "ndc/index.hpp"

namespace ndc {

/**
 * An orthogonal family of diagonal projections {p_i} on l2(N) with sup p_i = 1,
 * given as an assignment of basis indices to blocks.
 *
 * Two shapes exist. Uniform(w) cuts N into consecutive runs of w indices.
 * CantorCoarsen(base) merges the base blocks {pair(i, j) : j >= 0} into coarse
 * block i, so every coarse block is infinite. All blocks of one partition have
 * the same cardinality, which stands in for Murray-von Neumann equivalence.
 *
 * Partitions are immutable values; copies share the base chain.
 */
class Partition {
public:
    enum class Kind { Uniform, CantorCoarsen };

    static Partition uniform(std::uint64_t width);
    static Partition cantor_coarsen(const Partition& base);

    Kind kind() const { return kind_; }
    /// Width of a Uniform partition; 0 for coarsenings.
    std::uint64_t width() const { return width_; }
    /// Base of a coarsening. Precondition: kind() == CantorCoarsen.
    const Partition& base() const;

    BlockId block_of(BasisIndex index) const;

    /// k-th index of a block in increasing order. Throws RangeError when k
    /// exceeds a finite block.
    BasisIndex index_in_block(BlockId block, std::uint64_t k) const;

    /// The ordinal k with index_in_block(block_of(index), k) == index.
    std::uint64_t position_in_block(BasisIndex index) const;

    /// Cardinality of every block; nullopt for infinite blocks.
    std::optional<std::uint64_t> block_size() const;

    /// Smallest index in a block. Increasing in the block id for every partition.
    BasisIndex first_index(BlockId block) const { return index_in_block(block, 0); }

    /// Number of indices a depth-capped truncation keeps from each block.
    std::uint64_t truncated_size(std::uint64_t depth) const;

    std::string describe() const;

    friend bool operator==(const Partition& a, const Partition& b);

private:
    Partition(Kind kind, std::uint64_t width, std::shared_ptr<const Partition> base)
        : kind_(kind), width_(width), base_(std::move(base)) {}

    BasisIndex merged_index(BlockId block, std::uint64_t k) const;

    Kind kind_;
    std::uint64_t width_;
    std::shared_ptr<const Partition> base_;
};

}  // namespace ndc

#include "ndc/partition.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "ndc/errors.hpp"

namespace ndc {

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
    // w is the anti-diagonal: the largest w with w(w+1)/2 <= z.
    auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
    while (w > 0 && w * (w + 1) / 2 > z) {
        --w;
    }
    while ((w + 1) * (w + 2) / 2 <= z) {
        ++w;
    }
    const std::uint64_t j = z - w * (w + 1) / 2;
    return {w - j, j};
}

namespace {

// Number of indices of `block` strictly below `bound`.
std::uint64_t rank_below(const Partition& part, BlockId block, std::uint64_t bound) {
    if (part.kind() == Partition::Kind::Uniform) {
        const std::uint64_t w = part.width();
        const std::uint64_t start = block.value * w;
        if (bound <= start) {
            return 0;
        }
        return std::min(bound - start, w);
    }
    const Partition& base = part.base();
    std::uint64_t total = 0;
    for (std::uint64_t j = 0;; ++j) {
        const BlockId sub(cantor_pair(block.value, j));
        if (base.first_index(sub).value >= bound) {
            break;
        }
        total += rank_below(base, sub, bound);
    }
    return total;
}

}  // namespace

Partition Partition::uniform(std::uint64_t width) {
    if (width == 0) {
        throw PreconditionError("uniform partition width must be positive");
    }
    return Partition(Kind::Uniform, width, nullptr);
}

Partition Partition::cantor_coarsen(const Partition& base) {
    return Partition(Kind::CantorCoarsen, 0, std::make_shared<const Partition>(base));
}

const Partition& Partition::base() const {
    if (kind_ != Kind::CantorCoarsen) {
        throw PreconditionError("uniform partition has no base");
    }
    return *base_;
}

BlockId Partition::block_of(BasisIndex index) const {
    if (kind_ == Kind::Uniform) {
        return BlockId(index.value / width_);
    }
    const auto [coarse, sub] = cantor_unpair(base_->block_of(index).value);
    (void)sub;
    return BlockId(coarse);
}

BasisIndex Partition::index_in_block(BlockId block, std::uint64_t k) const {
    if (kind_ == Kind::Uniform) {
        if (k >= width_) {
            throw RangeError("ordinal " + std::to_string(k) + " outside block of width " +
                             std::to_string(width_));
        }
        return BasisIndex(block.value * width_ + k);
    }
    if (const auto s = base_->block_size()) {
        // Finite base blocks are runs of consecutive indices ordered by id, so
        // walking the sub-blocks in j order walks the indices in increasing order.
        return base_->index_in_block(BlockId(cantor_pair(block.value, k / *s)), k % *s);
    }
    return merged_index(block, k);
}

BasisIndex Partition::merged_index(BlockId block, std::uint64_t k) const {
    // k-way merge of the infinite base blocks pair(block, j), j >= 0. Their
    // first indices increase with j, so block j only joins the heap once the
    // current minimum passes its first index.
    struct Cursor {
        std::uint64_t index;
        std::uint64_t sub;
        std::uint64_t ordinal;
        bool operator>(const Cursor& o) const { return index > o.index; }
    };
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
    std::uint64_t next_sub = 0;
    auto sub_first = [&](std::uint64_t j) {
        return base_->first_index(BlockId(cantor_pair(block.value, j))).value;
    };
    heap.push({sub_first(0), 0, 0});
    next_sub = 1;
    for (std::uint64_t taken = 0;; ++taken) {
        while (sub_first(next_sub) < heap.top().index) {
            heap.push({sub_first(next_sub), next_sub, 0});
            ++next_sub;
        }
        const Cursor top = heap.top();
        if (taken == k) {
            return BasisIndex(top.index);
        }
        heap.pop();
        const BlockId sub(cantor_pair(block.value, top.sub));
        heap.push({base_->index_in_block(sub, top.ordinal + 1).value, top.sub, top.ordinal + 1});
    }
}

std::uint64_t Partition::position_in_block(BasisIndex index) const {
    if (kind_ == Kind::Uniform) {
        return index.value % width_;
    }
    return rank_below(*this, block_of(index), index.value);
}

std::optional<std::uint64_t> Partition::block_size() const {
    if (kind_ == Kind::Uniform) {
        return width_;
    }
    return std::nullopt;
}

std::uint64_t Partition::truncated_size(std::uint64_t depth) const {
    const auto s = block_size();
    return s ? std::min(*s, depth) : depth;
}

std::string Partition::describe() const {
    if (kind_ == Kind::Uniform) {
        return "uniform(" + std::to_string(width_) + ")";
    }
    return "cantor_coarsen(" + base_->describe() + ")";
}

bool operator==(const Partition& a, const Partition& b) {
    if (a.kind_ != b.kind_) {
        return false;
    }
    if (a.kind_ == Partition::Kind::Uniform) {
        return a.width_ == b.width_;
    }
    return *a.base_ == *b.base_;
}

}  // namespace ndc

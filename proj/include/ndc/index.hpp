#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>

namespace ndc {

/// Position in the canonical orthonormal basis of l2(N), 0-based.
struct BasisIndex {
    std::uint64_t value = 0;

    constexpr BasisIndex() = default;
    constexpr explicit BasisIndex(std::uint64_t v) : value(v) {}
    constexpr auto operator<=>(const BasisIndex&) const = default;
};

/// Position of a projection in the fixed enumeration of a family {p_i}.
struct BlockId {
    std::uint64_t value = 0;

    constexpr BlockId() = default;
    constexpr explicit BlockId(std::uint64_t v) : value(v) {}
    constexpr auto operator<=>(const BlockId&) const = default;
};

/// Cutoff meaning "every basis index"; P_n with this n is the identity.
inline constexpr std::uint64_t kNoCutoff = std::numeric_limits<std::uint64_t>::max();

/// Cantor pairing (i+j)(i+j+1)/2 + j.
constexpr std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j) {
    const std::uint64_t s = i + j;
    return s * (s + 1) / 2 + j;
}

/// Inverse of cantor_pair; exact for every z whose pair fits in 64 bits.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

}  // namespace ndc

template <>
struct std::hash<ndc::BasisIndex> {
    std::size_t operator()(const ndc::BasisIndex& b) const noexcept {
        return std::hash<std::uint64_t>{}(b.value);
    }
};

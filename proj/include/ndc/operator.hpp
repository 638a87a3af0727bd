#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ndc/finite_matrix.hpp"
#include "ndc/index.hpp"
#include "ndc/partition.hpp"

namespace ndc {

struct ExplicitEntry {
    BasisIndex row;
    BasisIndex col;
    Complex value;
};

/// An entry a generator promises to be nonzero: |entry_at(row, col)| >= modulus.
struct WitnessEntry {
    BasisIndex row;
    BasisIndex col;
    double modulus = 0.0;
};

/// n -> bound on ||(1 - P_n) a|| + ||a (1 - P_n)||, P_n the projection onto
/// indices < n. Must be nonincreasing in n; `vanishes` declares the limit is 0.
/// n == kNoCutoff asks for the bound with P_n = 1, which is 0.
struct TailBound {
    std::function<double(std::uint64_t)> at;
    bool vanishes = false;
};

/// (partition, i) -> bound on the i-th hook norm, or nullopt when the bound does
/// not apply to that partition. Where defined it is nonincreasing in i;
/// `vanishes` declares the limit is 0.
struct StripBound {
    std::function<std::optional<double>(const Partition&, BlockId)> at;
    bool vanishes = false;
};

/// An operator known through an entry oracle plus optional certificates.
struct Generated {
    std::string name;
    std::string params;
    std::function<Complex(BasisIndex, BasisIndex)> entry;
    std::optional<TailBound> tail;
    std::optional<StripBound> strip;
    /// Infinite family j -> witness entry. Empty when the generator has none.
    std::function<WitnessEntry(std::uint64_t)> witness;
    /// Entries off the main diagonal are all zero.
    bool diagonal = false;
};

/**
 * A bounded operator on l2(N), either with exact finite support or generated
 * lazily. Values are immutable; every accessor is pure and reentrant.
 */
class OperatorRep {
public:
    using EntryMap = std::map<std::pair<std::uint64_t, std::uint64_t>, Complex>;

    /// Zero values are dropped; a repeated (row, col) throws PreconditionError.
    static OperatorRep from_entries(const std::vector<ExplicitEntry>& entries);
    static OperatorRep zero() { return OperatorRep(EntryMap{}); }
    static OperatorRep generated(Generated g);

    bool is_explicit() const { return std::holds_alternative<EntryMap>(rep_); }
    /// Precondition: is_explicit().
    const EntryMap& entries() const;
    /// Precondition: !is_explicit().
    const Generated& generator() const;

    Complex entry_at(BasisIndex row, BasisIndex col) const;

    /// Explicit operators bound their tail by the Frobenius mass outside P_n.
    std::optional<double> tail_bound(std::uint64_t cutoff) const;
    bool tail_vanishes() const;

    std::optional<double> strip_bound(const Partition& part, BlockId i) const;
    bool strip_bound_vanishes() const;

    bool has_witness() const;
    WitnessEntry witness(std::uint64_t j) const;

    bool is_diagonal() const;

    std::string describe() const;

private:
    explicit OperatorRep(EntryMap m) : rep_(std::move(m)) {}
    explicit OperatorRep(Generated g) : rep_(std::move(g)) {}

    std::variant<EntryMap, Generated> rep_;
};

}  // namespace ndc

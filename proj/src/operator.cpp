#include "ndc/operator.hpp"

#include <cmath>

#include "ndc/errors.hpp"

namespace ndc {

OperatorRep OperatorRep::from_entries(const std::vector<ExplicitEntry>& entries) {
    EntryMap m;
    std::map<std::pair<std::uint64_t, std::uint64_t>, bool> seen;
    for (const auto& e : entries) {
        const auto key = std::make_pair(e.row.value, e.col.value);
        if (!seen.emplace(key, true).second) {
            throw PreconditionError("duplicate entry at (" + std::to_string(e.row.value) + ", " +
                                    std::to_string(e.col.value) + ")");
        }
        if (e.value != Complex(0.0, 0.0)) {
            m.emplace(key, e.value);
        }
    }
    return OperatorRep(std::move(m));
}

OperatorRep OperatorRep::generated(Generated g) {
    if (!g.entry) {
        throw PreconditionError("generated operator '" + g.name + "' has no entry oracle");
    }
    return OperatorRep(std::move(g));
}

const OperatorRep::EntryMap& OperatorRep::entries() const {
    if (const auto* m = std::get_if<EntryMap>(&rep_)) {
        return *m;
    }
    throw PreconditionError("operator is not explicit");
}

const Generated& OperatorRep::generator() const {
    if (const auto* g = std::get_if<Generated>(&rep_)) {
        return *g;
    }
    throw PreconditionError("operator is not generated");
}

Complex OperatorRep::entry_at(BasisIndex row, BasisIndex col) const {
    if (const auto* m = std::get_if<EntryMap>(&rep_)) {
        const auto it = m->find({row.value, col.value});
        return it == m->end() ? Complex(0.0, 0.0) : it->second;
    }
    return std::get<Generated>(rep_).entry(row, col);
}

std::optional<double> OperatorRep::tail_bound(std::uint64_t cutoff) const {
    if (const auto* m = std::get_if<EntryMap>(&rep_)) {
        double rows = 0.0;
        double cols = 0.0;
        for (const auto& [key, v] : *m) {
            if (key.first >= cutoff) {
                rows += std::norm(v);
            }
            if (key.second >= cutoff) {
                cols += std::norm(v);
            }
        }
        return std::sqrt(rows) + std::sqrt(cols);
    }
    const auto& g = std::get<Generated>(rep_);
    if (!g.tail) {
        return std::nullopt;
    }
    return g.tail->at(cutoff);
}

bool OperatorRep::tail_vanishes() const {
    if (is_explicit()) {
        return true;
    }
    const auto& g = std::get<Generated>(rep_);
    return g.tail && g.tail->vanishes;
}

std::optional<double> OperatorRep::strip_bound(const Partition& part, BlockId i) const {
    if (is_explicit()) {
        return std::nullopt;
    }
    const auto& g = std::get<Generated>(rep_);
    if (!g.strip) {
        return std::nullopt;
    }
    return g.strip->at(part, i);
}

bool OperatorRep::strip_bound_vanishes() const {
    if (is_explicit()) {
        return false;
    }
    const auto& g = std::get<Generated>(rep_);
    return g.strip && g.strip->vanishes;
}

bool OperatorRep::has_witness() const {
    return !is_explicit() && static_cast<bool>(std::get<Generated>(rep_).witness);
}

WitnessEntry OperatorRep::witness(std::uint64_t j) const {
    if (!has_witness()) {
        throw PreconditionError("operator carries no persistent witness");
    }
    return std::get<Generated>(rep_).witness(j);
}

bool OperatorRep::is_diagonal() const {
    if (const auto* m = std::get_if<EntryMap>(&rep_)) {
        for (const auto& [key, v] : *m) {
            if (key.first != key.second) {
                return false;
            }
        }
        return true;
    }
    return std::get<Generated>(rep_).diagonal;
}

std::string OperatorRep::describe() const {
    if (const auto* m = std::get_if<EntryMap>(&rep_)) {
        return "explicit(" + std::to_string(m->size()) + " entries)";
    }
    const auto& g = std::get<Generated>(rep_);
    return g.params.empty() ? g.name : g.name + "(" + g.params + ")";
}

}  // namespace ndc

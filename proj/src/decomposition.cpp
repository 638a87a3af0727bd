#include "ndc/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "ndc/errors.hpp"

namespace ndc {

namespace {

struct SparseEntry {
    BasisIndex row;
    BasisIndex col;
    Complex value;
};

// Witness families are scanned at most this far when looking for a strip.
constexpr std::uint64_t kWitnessScan = 4096;

FiniteMatrix densify(const std::vector<SparseEntry>& entries) {
    std::set<BasisIndex> rs;
    std::set<BasisIndex> cs;
    for (const auto& e : entries) {
        rs.insert(e.row);
        cs.insert(e.col);
    }
    std::vector<BasisIndex> rows(rs.begin(), rs.end());
    std::vector<BasisIndex> cols(cs.begin(), cs.end());
    FiniteMatrix m(rows, cols);
    for (const auto& e : entries) {
        const auto r = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), e.row) - rows.begin());
        const auto c = static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), e.col) - cols.begin());
        m(r, c) += e.value;
    }
    return m;
}

double norm_of(const std::vector<SparseEntry>& entries, const Tolerance& tol) {
    if (entries.empty()) {
        return 0.0;
    }
    return spectral_norm(densify(entries), tol);
}

BlockId strip_of(const Partition& part, BasisIndex r, BasisIndex c) {
    return std::max(part.block_of(r), part.block_of(c));
}

// Union of the truncated blocks 0..last, increasing.
std::vector<BasisIndex> prefix_indices(const Partition& part, BlockId last, std::uint64_t depth) {
    std::vector<BasisIndex> out;
    for (std::uint64_t b = 0; b <= last.value; ++b) {
        const auto idx = block_indices(part, BlockId(b), depth);
        out.insert(out.end(), idx.begin(), idx.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool truncation_is_exact(const Partition& part, std::uint64_t depth) {
    const auto s = part.block_size();
    return s && *s <= depth;
}

// Smallest index dropped by truncating blocks 0..last to `depth`; every index
// below it survives, so P_n sits under the truncation projection.
std::uint64_t truncation_cutoff(const Partition& part, BlockId last, std::uint64_t depth) {
    if (truncation_is_exact(part, depth)) {
        return kNoCutoff;
    }
    std::uint64_t n = kNoCutoff;
    for (std::uint64_t b = 0; b <= last.value; ++b) {
        n = std::min(n, part.index_in_block(BlockId(b), depth).value);
    }
    return n;
}

// Largest witness modulus inside strip i, verified against the entry oracle.
std::optional<double> witness_in_strip(const OperatorRep& op, const Partition& part, BlockId i) {
    if (!op.has_witness()) {
        return std::nullopt;
    }
    std::optional<double> best;
    for (std::uint64_t j = 0; j < kWitnessScan; ++j) {
        const WitnessEntry w = op.witness(j);
        const BlockId s = strip_of(part, w.row, w.col);
        if (s > i) {
            break;
        }
        if (s == i) {
            const double m = std::abs(op.entry_at(w.row, w.col));
            if (m < w.modulus) {
                throw ConsistencyError("witness entry (" + std::to_string(w.row.value) + ", " +
                                       std::to_string(w.col.value) + ") is smaller than its declared modulus");
            }
            best = std::max(best.value_or(0.0), m);
            break;
        }
    }
    return best;
}

// Turns the norm of a truncated strip-shaped matrix into a certified bound on
// the full i-th hook of a generated operator.
NormBound bound_hook(const OperatorRep& op, const Partition& part, BlockId i, std::uint64_t depth,
                     double truncated, const Tolerance& tol) {
    std::optional<double> upper;
    auto offer = [&](double v) { upper = upper ? std::min(*upper, v) : v; };

    const std::uint64_t cutoff = truncation_cutoff(part, i, depth);
    if (cutoff == kNoCutoff) {
        offer(truncated);
    } else if (const auto t = op.tail_bound(cutoff)) {
        // ||H - P_S H P_S|| <= ||(1-P_S) H|| + ||H (1-P_S)|| <= 2 tail(n).
        offer(truncated + 2.0 * *t);
    }
    if (const auto s = op.strip_bound(part, i)) {
        offer(*s);
    }

    double lower = truncated;
    if (const auto w = witness_in_strip(op, part, i)) {
        lower = std::max(lower, *w);
    }
    if (upper && lower > *upper) {
        if (lower - *upper > 16.0 * (tol.rel * *upper + tol.abs)) {
            std::ostringstream msg;
            msg << "hook " << i.value << " of " << op.describe() << ": computed lower bound " << lower
                << " exceeds the certified upper bound " << *upper;
            throw ConsistencyError(msg.str());
        }
        upper = lower;
    }
    return NormBound(lower, upper);
}

std::vector<SparseEntry> explicit_strip(const OperatorRep& op, const Partition& part, BlockId i) {
    std::vector<SparseEntry> out;
    for (const auto& [key, v] : op.entries()) {
        const BasisIndex r(key.first);
        const BasisIndex c(key.second);
        if (strip_of(part, r, c) == i) {
            out.push_back({r, c, v});
        }
    }
    return out;
}

std::vector<SparseEntry> generated_strip(const OperatorRep& op, const Partition& part, BlockId i,
                                         std::uint64_t depth) {
    const auto all = prefix_indices(part, i, depth);
    const auto own = block_indices(part, i, depth);
    std::vector<SparseEntry> out;
    auto take = [&](BasisIndex r, BasisIndex c) {
        const Complex v = op.entry_at(r, c);
        if (v != Complex(0.0, 0.0)) {
            out.push_back({r, c, v});
        }
    };
    for (const auto r : own) {
        for (const auto c : all) {
            take(r, c);
        }
    }
    for (const auto r : all) {
        if (part.block_of(r) == i) {
            continue;
        }
        for (const auto c : own) {
            take(r, c);
        }
    }
    return out;
}

std::uint64_t support_blocks(const OperatorRep& op, const Partition& part) {
    std::uint64_t blocks = 0;
    for (const auto& [key, v] : op.entries()) {
        blocks = std::max(blocks, strip_of(part, BasisIndex(key.first), BasisIndex(key.second)).value + 1);
    }
    return blocks;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<BasisIndex> block_indices(const Partition& part, BlockId block, std::uint64_t depth) {
    const std::uint64_t count = part.truncated_size(depth);
    std::vector<BasisIndex> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        out.push_back(part.index_in_block(block, k));
    }
    return out;
}

FiniteMatrix peirce_block(const OperatorRep& op, const Partition& part, BlockId i, BlockId j,
                          std::uint64_t depth) {
    auto rows = block_indices(part, i, depth);
    auto cols = block_indices(part, j, depth);
    FiniteMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            m(r, c) = op.entry_at(rows[r], cols[c]);
        }
    }
    return m;
}

std::vector<PeirceBlock> decompose(const OperatorRep& op, const Partition& part) {
    if (!op.is_explicit()) {
        throw PreconditionError("decompose needs an explicit operator");
    }
    std::set<std::pair<BlockId, BlockId>> pairs;
    std::uint64_t depth = 1;
    for (const auto& [key, v] : op.entries()) {
        const BasisIndex r(key.first);
        const BasisIndex c(key.second);
        pairs.emplace(part.block_of(r), part.block_of(c));
        depth = std::max({depth, part.position_in_block(r) + 1, part.position_in_block(c) + 1});
    }
    std::vector<PeirceBlock> out;
    for (const auto& [bi, bj] : pairs) {
        out.push_back({bi, bj, peirce_block(op, part, bi, bj, depth)});
    }
    return out;
}

OperatorRep reconstruct(const std::vector<PeirceBlock>& blocks) {
    auto intersects = [](const std::vector<BasisIndex>& a, const std::vector<BasisIndex>& b) {
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (*ia == *ib) {
                return true;
            }
            if (*ia < *ib) {
                ++ia;
            } else {
                ++ib;
            }
        }
        return false;
    };
    for (std::size_t x = 0; x < blocks.size(); ++x) {
        for (std::size_t y = x + 1; y < blocks.size(); ++y) {
            const auto& a = blocks[x].matrix;
            const auto& b = blocks[y].matrix;
            if (intersects(a.rows(), b.rows()) && intersects(a.cols(), b.cols())) {
                throw ConsistencyError("blocks (" + std::to_string(blocks[x].row_block.value) + ", " +
                                       std::to_string(blocks[x].col_block.value) + ") and (" +
                                       std::to_string(blocks[y].row_block.value) + ", " +
                                       std::to_string(blocks[y].col_block.value) + ") overlap");
            }
        }
    }
    std::vector<ExplicitEntry> entries;
    for (const auto& blk : blocks) {
        const auto& m = blk.matrix;
        for (std::size_t r = 0; r < m.row_count(); ++r) {
            for (std::size_t c = 0; c < m.col_count(); ++c) {
                if (m(r, c) != Complex(0.0, 0.0)) {
                    entries.push_back({m.rows()[r], m.cols()[c], m(r, c)});
                }
            }
        }
    }
    return OperatorRep::from_entries(entries);
}

HookPoint hook(const OperatorRep& op, const Partition& part, BlockId i, std::uint64_t depth,
               const Tolerance& tol) {
    if (depth == 0) {
        throw PreconditionError("hook depth must be positive");
    }
    if (op.is_explicit()) {
        const double v = norm_of(explicit_strip(op, part, i), tol);
        std::uint64_t used = 0;
        for (const auto& [key, val] : op.entries()) {
            const BasisIndex r(key.first);
            const BasisIndex c(key.second);
            if (strip_of(part, r, c) == i) {
                used = std::max({used, part.position_in_block(r) + 1, part.position_in_block(c) + 1});
            }
        }
        return HookPoint{i, NormBound::exact(v), used};
    }
    const double truncated = norm_of(generated_strip(op, part, i, depth), tol);
    return HookPoint{i, bound_hook(op, part, i, depth, truncated, tol), part.truncated_size(depth)};
}

std::vector<HookPoint> hook_sequence(const OperatorRep& op, const Partition& part, BlockId horizon,
                                     std::uint64_t depth, const Tolerance& tol) {
    if (horizon.value < 1) {
        throw PreconditionError("hook sequence horizon must be at least 1");
    }
    std::vector<HookPoint> out;
    out.reserve(horizon.value);
    for (std::uint64_t i = 0; i < horizon.value; ++i) {
        out.push_back(hook(op, part, BlockId(i), depth, tol));
    }
    return out;
}

MembershipVerdict membership(const OperatorRep& op, const Partition& part, double eps, BlockId horizon,
                             std::uint64_t depth, const Tolerance& tol) {
    if (!(eps > 0.0)) {
        throw PreconditionError("membership eps must be positive");
    }
    if (horizon.value < 1) {
        throw PreconditionError("membership horizon must be at least 1");
    }
    if (op.is_explicit()) {
        const std::uint64_t b = support_blocks(op, part);
        return CertifiedIn{BlockId(b), "finite support inside blocks < " + std::to_string(b) +
                                           "; hooks vanish exactly from there on"};
    }

    const auto hooks = hook_sequence(op, part, horizon, depth, tol);

    // A certified dominating sequence d(i) >= hook_i, nonincreasing, -> 0.
    struct Dominating {
        std::string name;
        std::function<double(std::uint64_t)> at;
    };
    std::vector<Dominating> candidates;
    if (op.tail_vanishes()) {
        candidates.push_back({"tail bound at the first index of block i",
                              [&](std::uint64_t i) { return *op.tail_bound(part.first_index(BlockId(i)).value); }});
    }
    if (op.strip_bound_vanishes() && op.strip_bound(part, BlockId(0))) {
        candidates.push_back({"generator strip bound", [&](std::uint64_t i) { return *op.strip_bound(part, BlockId(i)); }});
    }
    for (const auto& d : candidates) {
        for (std::uint64_t i0 = 0; i0 < horizon.value; ++i0) {
            const double di = d.at(i0);
            if (di > eps) {
                continue;
            }
            for (std::uint64_t i = i0; i < horizon.value; ++i) {
                if (hooks[i].bound.lower > eps + tol.rel * eps + tol.abs) {
                    throw ConsistencyError("hook " + std::to_string(i) + " exceeds eps although the " + d.name +
                                           " certifies otherwise");
                }
            }
            return CertifiedIn{BlockId(i0), d.name + " is " + format_double(di) + " <= eps at i = " +
                                                std::to_string(i0) + ", nonincreasing and tends to 0"};
        }
    }

    if (op.has_witness()) {
        std::vector<WitnessEvidence> evidence;
        std::set<BlockId> strips;
        bool monotone = true;
        for (std::uint64_t j = 0; j < kWitnessScan; ++j) {
            const WitnessEntry w = op.witness(j);
            const BlockId s = strip_of(part, w.row, w.col);
            if (s.value >= horizon.value) {
                break;
            }
            const double m = std::abs(op.entry_at(w.row, w.col));
            if (m < w.modulus) {
                throw ConsistencyError("witness entry (" + std::to_string(w.row.value) + ", " +
                                       std::to_string(w.col.value) + ") is smaller than its declared modulus");
            }
            if (!evidence.empty() && s < evidence.back().strip) {
                monotone = false;
                break;
            }
            evidence.push_back({w.row, w.col, w.modulus, s});
            strips.insert(s);
        }
        if (monotone && strips.size() >= 2) {
            double delta = evidence.front().modulus;
            for (const auto& e : evidence) {
                delta = std::min(delta, e.modulus);
            }
            if (delta > 0.0) {
                return CertifiedOut{delta, std::move(evidence)};
            }
        }
    }

    const std::uint64_t from = horizon.value / 2;
    double worst = 0.0;
    for (std::uint64_t i = from; i < horizon.value; ++i) {
        worst = std::max(worst, hooks[i].bound.lower);
    }
    return Empirical{worst <= eps, horizon, worst};
}

NormBound partial_sum_gap(const OperatorRep& op, const Partition& part, BlockId n, std::uint64_t depth,
                          const Tolerance& tol) {
    if (depth == 0) {
        throw PreconditionError("partial sum depth must be positive");
    }
    const BlockId next(n.value + 1);
    if (op.is_explicit()) {
        // S_{n+1} and S_n over the support indices they touch.
        std::map<std::pair<std::uint64_t, std::uint64_t>, Complex> diff;
        for (const auto& [key, v] : op.entries()) {
            const BlockId br = part.block_of(BasisIndex(key.first));
            const BlockId bc = part.block_of(BasisIndex(key.second));
            if (br <= next && bc <= next) {
                diff[key] += v;
            }
        }
        for (const auto& [key, v] : op.entries()) {
            const BlockId br = part.block_of(BasisIndex(key.first));
            const BlockId bc = part.block_of(BasisIndex(key.second));
            if (br <= n && bc <= n) {
                diff[key] -= v;
            }
        }
        std::vector<SparseEntry> entries;
        for (const auto& [key, v] : diff) {
            if (v != Complex(0.0, 0.0)) {
                entries.push_back({BasisIndex(key.first), BasisIndex(key.second), v});
            }
        }
        return NormBound::exact(norm_of(entries, tol));
    }

    const auto big = prefix_indices(part, next, depth);
    FiniteMatrix d = FiniteMatrix::square(big);
    for (std::size_t r = 0; r < big.size(); ++r) {
        for (std::size_t c = 0; c < big.size(); ++c) {
            d(r, c) = op.entry_at(big[r], big[c]);
        }
    }
    for (std::size_t r = 0; r < big.size(); ++r) {
        if (part.block_of(big[r]) > n) {
            continue;
        }
        for (std::size_t c = 0; c < big.size(); ++c) {
            if (part.block_of(big[c]) <= n) {
                d(r, c) -= op.entry_at(big[r], big[c]);
            }
        }
    }
    const double truncated = spectral_norm(d, tol);
    return bound_hook(op, part, next, depth, truncated, tol);
}

}  // namespace ndc

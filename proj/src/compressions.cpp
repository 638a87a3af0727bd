#include "ndc/compressions.hpp"

#include <algorithm>
#include <cmath>

#include "ndc/errors.hpp"

namespace ndc {

namespace {

FiniteMatrix hermitian_part(const FiniteMatrix& m) {
    FiniteMatrix h = m;
    const std::size_t n = m.row_count();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    return h;
}

double min_eig_of(const OperatorRep& op, const Partition& part, const BlockSet& subset, std::uint64_t depth,
                  const Tolerance& tol) {
    return min_eig_hermitian(hermitian_part(compression(op, subset, part, depth)), tol);
}

std::uint64_t first_missing(const std::vector<BasisIndex>& sorted) {
    std::uint64_t n = 0;
    for (const auto& b : sorted) {
        if (b.value != n) {
            break;
        }
        ++n;
    }
    return n;
}

}  // namespace

CompressionSchedule CompressionSchedule::prefixes(std::uint64_t levels, std::uint64_t depth) {
    CompressionSchedule s;
    s.depth = depth;
    BlockSet cur;
    for (std::uint64_t k = 0; k < levels; ++k) {
        cur.push_back(BlockId(k));
        s.subsets.push_back(cur);
    }
    return s;
}

void CompressionSchedule::validate() const {
    if (depth == 0) {
        throw PreconditionError("schedule depth must be positive");
    }
    if (subsets.empty()) {
        throw PreconditionError("schedule has no subsets");
    }
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        const auto& s = subsets[k];
        if (s.empty()) {
            throw PreconditionError("schedule subset " + std::to_string(k) + " is empty");
        }
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw PreconditionError("schedule subset " + std::to_string(k) + " is not strictly sorted");
        }
        if (k > 0) {
            const auto& prev = subsets[k - 1];
            if (prev.size() >= s.size() || !std::includes(s.begin(), s.end(), prev.begin(), prev.end())) {
                throw PreconditionError("schedule subset " + std::to_string(k) +
                                        " does not strictly contain its predecessor");
            }
        }
    }
}

std::vector<BasisIndex> compression_indices(const Partition& part, const BlockSet& subset, std::uint64_t depth) {
    std::vector<BasisIndex> out;
    for (const auto b : subset) {
        const auto idx = block_indices(part, b, depth);
        out.insert(out.end(), idx.begin(), idx.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FiniteMatrix compression(const OperatorRep& op, const BlockSet& subset, const Partition& part, std::uint64_t depth) {
    if (subset.empty()) {
        throw PreconditionError("compression subset must be non-empty");
    }
    if (depth == 0) {
        throw PreconditionError("compression depth must be positive");
    }
    const auto idx = compression_indices(part, subset, depth);
    FiniteMatrix m = FiniteMatrix::square(idx);
    if (op.is_explicit()) {
        for (const auto& [key, v] : op.entries()) {
            const auto r = std::lower_bound(idx.begin(), idx.end(), BasisIndex(key.first));
            const auto c = std::lower_bound(idx.begin(), idx.end(), BasisIndex(key.second));
            if (r != idx.end() && r->value == key.first && c != idx.end() && c->value == key.second) {
                m(static_cast<std::size_t>(r - idx.begin()), static_cast<std::size_t>(c - idx.begin())) = v;
            }
        }
        return m;
    }
    for (std::size_t r = 0; r < idx.size(); ++r) {
        for (std::size_t c = 0; c < idx.size(); ++c) {
            m(r, c) = op.entry_at(idx[r], idx[c]);
        }
    }
    return m;
}

CompressionNorms norm_via_compressions(const OperatorRep& op, const Partition& part, const CompressionSchedule& sched,
                                       const Tolerance& tol) {
    sched.validate();
    CompressionNorms out;
    for (const auto& s : sched.subsets) {
        out.points.push_back(spectral_norm(compression(op, s, part, sched.depth), tol));
    }
    const double last = out.points.back();
    const auto idx = compression_indices(part, sched.subsets.back(), sched.depth);

    std::optional<double> upper;
    if (op.is_explicit()) {
        double outside = 0.0;
        for (const auto& [key, v] : op.entries()) {
            const bool in_r = std::binary_search(idx.begin(), idx.end(), BasisIndex(key.first));
            const bool in_c = std::binary_search(idx.begin(), idx.end(), BasisIndex(key.second));
            if (!(in_r && in_c)) {
                outside += std::norm(v);
            }
        }
        upper = last + std::sqrt(outside);
    } else if (const auto t = op.tail_bound(first_missing(idx))) {
        // P >= P_n, so ||a - PaP|| <= ||(1-P) a|| + ||a (1-P)|| <= tail(n).
        upper = last + *t;
    }
    out.estimate = NormBound(last, upper);
    return out;
}

PositivityVerdict positivity_via_compressions(const OperatorRep& op, const Partition& part,
                                              const CompressionSchedule& sched, double slack, const Tolerance& tol) {
    if (!(slack > 0.0)) {
        throw PreconditionError("positivity slack must be positive");
    }
    sched.validate();
    double worst = 0.0;
    for (std::size_t k = 0; k < sched.subsets.size(); ++k) {
        const auto& s = sched.subsets[k];
        const FiniteMatrix m = compression(op, s, part, sched.depth);
        const std::size_t n = m.row_count();
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c <= r; ++c) {
                if (std::abs(m(r, c) - std::conj(m(c, r))) > slack) {
                    return NotHermitian{m.rows()[r], m.cols()[c]};
                }
            }
        }
        const double mu = min_eig_hermitian(hermitian_part(m), tol);
        worst = k == 0 ? mu : std::min(worst, mu);
        if (mu < -slack) {
            NegativeWitness w{s, mu, s, mu};
            for (std::size_t drop = 0; w.reduced.size() > 1 && drop < w.reduced.size();) {
                BlockSet trial = w.reduced;
                trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(drop));
                const double t = min_eig_of(op, part, trial, sched.depth, tol);
                if (t < -slack) {
                    w.reduced = std::move(trial);
                    w.reduced_min_eig = t;
                } else {
                    ++drop;
                }
            }
            return w;
        }
    }
    return PositiveUpTo{sched.subsets.size(), worst};
}

}  // namespace ndc

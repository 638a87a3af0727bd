#include "ndc/algebra.hpp"

#include <cmath>
#include <memory>
#include <unordered_map>
#include <vector>

#include "ndc/errors.hpp"

namespace ndc {

namespace {

using EntryMap = OperatorRep::EntryMap;

OperatorRep from_map(const EntryMap& m) {
    std::vector<ExplicitEntry> list;
    list.reserve(m.size());
    for (const auto& [key, v] : m) {
        list.push_back({BasisIndex(key.first), BasisIndex(key.second), v});
    }
    return OperatorRep::from_entries(list);
}

// ||a|| <= tail(0) / 2 since P_0 = 0.
std::optional<double> norm_bound(const OperatorRep& a) {
    const auto t = a.tail_bound(0);
    if (!t) {
        return std::nullopt;
    }
    return *t / 2.0;
}

std::optional<TailBound> product_tail(const OperatorRep& a, const OperatorRep& b) {
    const auto na = norm_bound(a);
    const auto nb = norm_bound(b);
    if (!na || !nb) {
        return std::nullopt;
    }
    TailBound t;
    t.vanishes = a.tail_vanishes() && b.tail_vanishes();
    t.at = [a, b, na = *na, nb = *nb](std::uint64_t n) {
        return *a.tail_bound(n) * nb + na * *b.tail_bound(n);
    };
    return t;
}

// Smallest power-of-two cutoff with a zero tail bound.
std::optional<std::uint64_t> support_cutoff(const OperatorRep& a, std::uint64_t cap) {
    if (!a.tail_bound(0)) {
        return std::nullopt;
    }
    for (std::uint64_t n = 1; n <= cap; n *= 2) {
        if (*a.tail_bound(n) == 0.0) {
            return n;
        }
    }
    return std::nullopt;
}

OperatorRep diagonal_product(const OperatorRep& d, const OperatorRep& a, bool d_on_left) {
    Generated g;
    g.name = d_on_left ? "product(" + d.describe() + ", " + a.describe() + ")"
                       : "product(" + a.describe() + ", " + d.describe() + ")";
    g.entry = [d, a, d_on_left](BasisIndex r, BasisIndex c) {
        return d_on_left ? d.entry_at(r, r) * a.entry_at(r, c) : a.entry_at(r, c) * d.entry_at(c, c);
    };
    g.diagonal = a.is_diagonal();
    const auto nd = norm_bound(d);
    if (nd && a.tail_bound(0)) {
        g.tail = TailBound{[a, nd = *nd](std::uint64_t n) { return nd * *a.tail_bound(n); },
                           a.tail_vanishes()};
    }
    // A diagonal factor commutes with every block projection, so strips scale.
    if (nd && !a.is_explicit() && a.generator().strip) {
        g.strip = StripBound{[a, nd = *nd](const Partition& p, BlockId i) -> std::optional<double> {
                                 const auto s = a.strip_bound(p, i);
                                 if (!s) {
                                     return std::nullopt;
                                 }
                                 return nd * *s;
                             },
                             a.strip_bound_vanishes()};
    }
    return OperatorRep::generated(std::move(g));
}

EntryMap explicit_product(const EntryMap& a, const EntryMap& b) {
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, Complex>>> b_rows;
    for (const auto& [key, v] : b) {
        b_rows[key.first].emplace_back(key.second, v);
    }
    EntryMap out;
    for (const auto& [key, va] : a) {
        const auto it = b_rows.find(key.second);
        if (it == b_rows.end()) {
            continue;
        }
        for (const auto& [col, vb] : it->second) {
            out[{key.first, col}] += va * vb;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
    return out;
}

}  // namespace

OperatorRep adjoint(const OperatorRep& a) {
    if (a.is_explicit()) {
        EntryMap m;
        for (const auto& [key, v] : a.entries()) {
            m.emplace(std::make_pair(key.second, key.first), std::conj(v));
        }
        return from_map(m);
    }
    Generated g = a.generator();
    g.name = "adjoint(" + a.describe() + ")";
    g.params.clear();
    g.entry = [a](BasisIndex r, BasisIndex c) { return std::conj(a.entry_at(c, r)); };
    // The tail bound is symmetric in a and a*, and the hook strip of a* is the
    // adjoint of the strip of a, so both certificates carry over unchanged.
    if (a.has_witness()) {
        g.witness = [a](std::uint64_t j) {
            const auto w = a.witness(j);
            return WitnessEntry{w.col, w.row, w.modulus};
        };
    }
    return OperatorRep::generated(std::move(g));
}

OperatorRep scale(const OperatorRep& a, Complex lambda) {
    if (a.is_explicit()) {
        EntryMap m;
        for (const auto& [key, v] : a.entries()) {
            const Complex z = lambda * v;
            if (z != Complex(0.0, 0.0)) {
                m.emplace(key, z);
            }
        }
        return from_map(m);
    }
    const double mod = std::abs(lambda);
    Generated g = a.generator();
    g.name = "scale(" + a.describe() + ")";
    g.params.clear();
    g.entry = [a, lambda](BasisIndex r, BasisIndex c) { return lambda * a.entry_at(r, c); };
    if (g.tail) {
        g.tail->at = [a, mod](std::uint64_t n) { return mod * *a.tail_bound(n); };
    }
    if (g.strip) {
        g.strip->at = [a, mod](const Partition& p, BlockId i) -> std::optional<double> {
            const auto s = a.strip_bound(p, i);
            if (!s) {
                return std::nullopt;
            }
            return mod * *s;
        };
    }
    if (a.has_witness() && mod > 0.0) {
        g.witness = [a, mod](std::uint64_t j) {
            auto w = a.witness(j);
            w.modulus *= mod;
            return w;
        };
    } else {
        g.witness = nullptr;
    }
    return OperatorRep::generated(std::move(g));
}

OperatorRep add(const OperatorRep& a, const OperatorRep& b) {
    if (a.is_explicit() && b.is_explicit()) {
        EntryMap m = a.entries();
        for (const auto& [key, v] : b.entries()) {
            m[key] += v;
        }
        std::erase_if(m, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
        return from_map(m);
    }
    Generated g;
    g.name = "sum(" + a.describe() + ", " + b.describe() + ")";
    g.entry = [a, b](BasisIndex r, BasisIndex c) { return a.entry_at(r, c) + b.entry_at(r, c); };
    g.diagonal = a.is_diagonal() && b.is_diagonal();
    if (a.tail_bound(0) && b.tail_bound(0)) {
        g.tail = TailBound{[a, b](std::uint64_t n) { return *a.tail_bound(n) + *b.tail_bound(n); },
                           a.tail_vanishes() && b.tail_vanishes()};
    }
    const bool a_strip = !a.is_explicit() && a.generator().strip;
    const bool b_strip = !b.is_explicit() && b.generator().strip;
    if (a_strip && b_strip) {
        g.strip = StripBound{[a, b](const Partition& p, BlockId i) -> std::optional<double> {
                                 const auto sa = a.strip_bound(p, i);
                                 const auto sb = b.strip_bound(p, i);
                                 if (!sa || !sb) {
                                     return std::nullopt;
                                 }
                                 return *sa + *sb;
                             },
                             a.strip_bound_vanishes() && b.strip_bound_vanishes()};
    }
    return OperatorRep::generated(std::move(g));
}

OperatorRep multiply(const OperatorRep& a, const OperatorRep& b) {
    if (a.is_explicit() && b.is_explicit()) {
        return from_map(explicit_product(a.entries(), b.entries()));
    }
    if (a.is_diagonal()) {
        return diagonal_product(a, b, true);
    }
    if (b.is_diagonal()) {
        return diagonal_product(b, a, false);
    }

    Generated g;
    g.name = "product(" + a.describe() + ", " + b.describe() + ")";
    if (auto tail = product_tail(a, b)) {
        g.tail = std::move(*tail);
    }

    const auto fa = materialize(a);
    const auto fb = fa ? std::optional<OperatorRep>{} : materialize(b);
    if (fa) {
        auto rows = std::make_shared<std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, Complex>>>>();
        for (const auto& [key, v] : fa->entries()) {
            (*rows)[key.first].emplace_back(key.second, v);
        }
        g.entry = [rows, b](BasisIndex r, BasisIndex c) {
            Complex s(0.0, 0.0);
            const auto it = rows->find(r.value);
            if (it != rows->end()) {
                for (const auto& [k, v] : it->second) {
                    s += v * b.entry_at(BasisIndex(k), c);
                }
            }
            return s;
        };
        return OperatorRep::generated(std::move(g));
    }
    if (fb) {
        auto cols = std::make_shared<std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, Complex>>>>();
        for (const auto& [key, v] : fb->entries()) {
            (*cols)[key.second].emplace_back(key.first, v);
        }
        g.entry = [cols, a](BasisIndex r, BasisIndex c) {
            Complex s(0.0, 0.0);
            const auto it = cols->find(c.value);
            if (it != cols->end()) {
                for (const auto& [k, v] : it->second) {
                    s += a.entry_at(r, BasisIndex(k)) * v;
                }
            }
            return s;
        };
        return OperatorRep::generated(std::move(g));
    }

    if (!a.tail_vanishes() || !b.tail_vanishes()) {
        throw PreconditionError("product of " + a.describe() + " and " + b.describe() +
                                " needs finite support, a diagonal factor, or vanishing tails");
    }
    const double scale_ab = std::max(1.0, *norm_bound(a) * *norm_bound(b));
    constexpr std::uint64_t kMaxInner = std::uint64_t{1} << 16;
    std::uint64_t inner = 1;
    while (*a.tail_bound(inner) * *b.tail_bound(inner) > 1e-17 * scale_ab) {
        inner *= 2;
        if (inner > kMaxInner) {
            throw PreconditionError("product inner sum does not settle below cutoff " +
                                    std::to_string(kMaxInner));
        }
    }
    g.params = "inner=" + std::to_string(inner);
    g.entry = [a, b, inner](BasisIndex r, BasisIndex c) {
        Complex s(0.0, 0.0);
        for (std::uint64_t k = 0; k < inner; ++k) {
            s += a.entry_at(r, BasisIndex(k)) * b.entry_at(BasisIndex(k), c);
        }
        return s;
    };
    return OperatorRep::generated(std::move(g));
}

std::optional<OperatorRep> materialize(const OperatorRep& a, std::uint64_t cap) {
    if (a.is_explicit()) {
        return a;
    }
    const auto n = support_cutoff(a, cap);
    if (!n) {
        return std::nullopt;
    }
    std::vector<ExplicitEntry> list;
    for (std::uint64_t r = 0; r < *n; ++r) {
        for (std::uint64_t c = 0; c < *n; ++c) {
            const Complex v = a.entry_at(BasisIndex(r), BasisIndex(c));
            if (v != Complex(0.0, 0.0)) {
                list.push_back({BasisIndex(r), BasisIndex(c), v});
            }
        }
    }
    return OperatorRep::from_entries(list);
}

}  // namespace ndc

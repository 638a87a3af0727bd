#include "ndc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ndc/errors.hpp"

namespace ndc {

namespace {

void require_coarse(const Partition& part, const char* what) {
    if (part.kind() != Partition::Kind::CantorCoarsen) {
        throw PreconditionError(std::string(what) + " needs a cantor_coarsen partition, got " + part.describe());
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Strip bound that only applies over one partition.
StripBound strip_over(Partition own, std::function<double(std::uint64_t)> f, bool vanishes) {
    return StripBound{[own = std::move(own), f = std::move(f)](const Partition& p, BlockId i) -> std::optional<double> {
                          if (!(p == own)) {
                              return std::nullopt;
                          }
                          return f(i.value);
                      },
                      vanishes};
}

}  // namespace

Partition cantor_coarsen(const Partition& base) { return Partition::cantor_coarsen(base); }

OperatorRep matrix_unit(const Partition& part, BlockId group, std::uint64_t i, std::uint64_t j) {
    require_coarse(part, "matrix_unit");
    const Partition base = part.base();
    const BlockId bi(cantor_pair(group.value, i));
    const BlockId bj(cantor_pair(group.value, j));

    Generated g;
    g.name = "matrix_unit";
    g.params = "group=" + std::to_string(group.value) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
    g.diagonal = i == j;
    g.entry = [base, bi, bj](BasisIndex r, BasisIndex c) {
        if (base.block_of(r) != bi || base.block_of(c) != bj) {
            return Complex(0.0, 0.0);
        }
        return base.position_in_block(r) == base.position_in_block(c) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    };
    // A partial isometry: each side of the tail is at most 1.
    if (const auto s = base.block_size()) {
        const std::uint64_t last =
            std::max(base.index_in_block(bi, *s - 1).value, base.index_in_block(bj, *s - 1).value);
        g.tail = TailBound{[last](std::uint64_t n) { return n > last ? 0.0 : 2.0; }, true};
    } else {
        g.tail = TailBound{[](std::uint64_t n) { return n == kNoCutoff ? 0.0 : 2.0; }, false};
    }
    return OperatorRep::generated(std::move(g));
}

OperatorRep row_isometry(Complex lambda, const Partition& part) {
    require_coarse(part, "row_isometry");
    const double mod = std::abs(lambda);
    if (!(mod > 0.0) || !std::isfinite(mod)) {
        throw PreconditionError("row_isometry needs 0 < |lambda| < inf");
    }
    Generated g;
    g.name = "row_isometry";
    g.params = "lambda=" + fmt(lambda.real()) + (lambda.imag() != 0.0 ? "+" + fmt(lambda.imag()) + "i" : "");
    g.entry = [part, lambda](BasisIndex r, BasisIndex c) {
        // c must open coarse block n, i.e. start base block pair(n, 0).
        const Partition& base = part.base();
        const auto [n, j] = cantor_unpair(base.block_of(c).value);
        if (j != 0 || base.position_in_block(c) != 0) {
            return Complex(0.0, 0.0);
        }
        return part.index_in_block(BlockId(0), n) == r ? lambda : Complex(0.0, 0.0);
    };
    g.tail = TailBound{[mod](std::uint64_t n) { return n == kNoCutoff ? 0.0 : 2.0 * mod; }, false};
    // Strip n holds the single entry n.
    g.strip = strip_over(part, [mod](std::uint64_t) { return mod; }, false);
    g.witness = [part, mod](std::uint64_t n) {
        return WitnessEntry{part.index_in_block(BlockId(0), n), part.index_in_block(BlockId(n), 0), mod};
    };
    return OperatorRep::generated(std::move(g));
}

OperatorRep minf_sample(const MinfRule& rule) {
    const Partition unit = Partition::uniform(1);
    Generated g;
    g.name = "minf_sample";
    if (const auto* geo = std::get_if<Geometric>(&rule)) {
        const double b = geo->base;
        if (!(b > 0.0 && b < 1.0)) {
            throw PreconditionError("geometric base must lie in (0, 1), got " + fmt(b));
        }
        g.params = "rule=geometric base=" + fmt(b);
        g.entry = [b](BasisIndex r, BasisIndex c) {
            return Complex(std::pow(b, static_cast<double>(std::max(r.value, c.value))), 0.0);
        };
        // Frobenius mass of rows >= n:
        // sum_{m>=n} (2m+1-n) c^m = c^n [(n+1)/(1-c) + 2c/(1-c)^2], c = b^2.
        const double c = b * b;
        auto rows = [c](double n) {
            return std::pow(c, n) * ((n + 1.0) / (1.0 - c) + 2.0 * c / ((1.0 - c) * (1.0 - c)));
        };
        g.tail = TailBound{[rows](std::uint64_t n) {
                               if (n == kNoCutoff) {
                                   return 0.0;
                               }
                               const double v = std::min(rows(0.0), rows(static_cast<double>(n)));
                               return 2.0 * std::sqrt(v);
                           },
                           true};
        // 2i+1 entries of size b^i in strip i.
        g.strip = strip_over(
            unit, [b](std::uint64_t i) { return std::pow(b, static_cast<double>(i)) * std::sqrt(2.0 * i + 1.0); },
            true);
    } else {
        g.params = "rule=inverse_sum";
        g.entry = [](BasisIndex r, BasisIndex c) {
            return Complex(1.0 / (static_cast<double>(r.value) + static_cast<double>(c.value) + 2.0), 0.0);
        };
        // Strip i has 2i+1 entries, each at most 1/(i+2); m = max(i, 1) keeps it monotone.
        g.strip = strip_over(
            unit,
            [](std::uint64_t i) {
                const double m = static_cast<double>(std::max<std::uint64_t>(i, 1));
                return std::sqrt(2.0 * m + 1.0) / (m + 2.0);
            },
            true);
    }
    return OperatorRep::generated(std::move(g));
}

OperatorRep coarse_projection(const Partition& part, BlockId i) {
    require_coarse(part, "coarse_projection");
    Generated g;
    g.name = "coarse_projection";
    g.params = "index=" + std::to_string(i.value);
    g.diagonal = true;
    g.entry = [part, i](BasisIndex r, BasisIndex c) {
        return r == c && part.block_of(r) == i ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    };
    g.tail = TailBound{[](std::uint64_t n) { return n == kNoCutoff ? 0.0 : 2.0; }, false};
    g.strip = strip_over(part, [i](std::uint64_t k) { return k <= i.value ? 1.0 : 0.0; }, true);
    // One diagonal 1 in each base block of the group.
    const std::uint64_t step = part.base().block_size().value_or(1);
    g.witness = [part, i, step](std::uint64_t j) {
        const BasisIndex x = part.index_in_block(i, j * step);
        return WitnessEntry{x, x, 1.0};
    };
    return OperatorRep::generated(std::move(g));
}

}  // namespace ndc

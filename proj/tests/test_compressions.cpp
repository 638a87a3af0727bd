#include <doctest.h>

#include <cmath>
#include <random>

#include "ndc/algebra.hpp"
#include "ndc/compressions.hpp"
#include "ndc/constructions.hpp"
#include "ndc/errors.hpp"
#include "oracles.hpp"

using namespace ndc;

namespace {

OperatorRep diag(std::vector<double> d) {
    std::vector<ExplicitEntry> e;
    for (std::uint64_t k = 0; k < d.size(); ++k) {
        e.push_back({BasisIndex(k), BasisIndex(k), Complex(d[k], 0)});
    }
    return OperatorRep::from_entries(e);
}

BlockSet blocks(std::initializer_list<std::uint64_t> ids) {
    BlockSet s;
    for (auto i : ids) {
        s.push_back(BlockId(i));
    }
    return s;
}

}  // namespace

TEST_CASE("compression examples") {
    const Partition u2 = Partition::uniform(2);
    const auto id = compression(diag({1, 1, 1, 1}), blocks({0}), u2, 2);
    REQUIRE(id.row_count() == 2);
    CHECK(id(0, 0) == Complex(1, 0));
    CHECK(id(1, 1) == Complex(1, 0));
    CHECK(id(0, 1) == Complex(0, 0));

    const auto e = OperatorRep::from_entries({{BasisIndex(0), BasisIndex(3), Complex(1, 0)}});
    const auto z = compression(e, blocks({0}), u2, 2);
    CHECK(z.frobenius() == 0.0);
    const auto w = compression(e, blocks({0, 1}), u2, 2);
    CHECK(spectral_norm(w) == 1.0);
    CHECK_THROWS_AS(compression(e, {}, u2, 2), PreconditionError);
}

TEST_CASE("norm_via_compressions examples") {
    const Partition u2 = Partition::uniform(2);
    const auto r = norm_via_compressions(diag({2, 0, 0, 1}), u2, CompressionSchedule::prefixes(2, 2));
    CHECK(r.points == std::vector<double>{2.0, 2.0});
    CHECK(r.estimate.lower == 2.0);
    CHECK(r.estimate.upper == 2.0);

    const auto e = OperatorRep::from_entries({{BasisIndex(0), BasisIndex(3), Complex(1, 0)}});
    const auto s = norm_via_compressions(e, u2, CompressionSchedule::prefixes(2, 2));
    CHECK(s.points == std::vector<double>{0.0, 1.0});

    // schedule that misses part of the support: upper adds the mass outside
    const auto part = norm_via_compressions(e, u2, CompressionSchedule::prefixes(1, 2));
    CHECK(part.estimate.lower == 0.0);
    CHECK(part.estimate.upper == 1.0);
}

TEST_CASE("generated norm estimates") {
    // geometric sample: upper from the tail bound, lower from the compressions
    const auto m = minf_sample(Geometric{0.5});
    const auto r = norm_via_compressions(m, Partition::uniform(1), CompressionSchedule::prefixes(40, 1));
    REQUIRE(r.estimate.upper);
    CHECK(*r.estimate.upper - r.estimate.lower < 1e-9);
    // inverse sum carries no tail: upper unknown
    const auto s = norm_via_compressions(minf_sample(InverseSum{}), Partition::uniform(1),
                                         CompressionSchedule::prefixes(8, 1));
    CHECK_FALSE(s.estimate.upper);
}

TEST_CASE("schedules must strictly increase") {
    CompressionSchedule s;
    s.subsets = {blocks({0, 1}), blocks({0, 1})};
    CHECK_THROWS_AS(s.validate(), PreconditionError);
    s.subsets = {blocks({0, 1}), blocks({0, 2})};
    CHECK_THROWS_AS(s.validate(), PreconditionError);
    s.subsets = {blocks({1, 0})};
    CHECK_THROWS_AS(s.validate(), PreconditionError);
    s.subsets = {blocks({1}), blocks({0, 1, 3})};
    CHECK_NOTHROW(s.validate());
    s.depth = 0;
    CHECK_THROWS_AS(s.validate(), PreconditionError);
}

TEST_CASE("monotonicity and attainment") {
    std::mt19937_64 rng(1234);
    const Partition u2 = Partition::uniform(2);
    for (int t = 0; t < 100; ++t) {
        const auto e = oracle::random_entries(rng, 16);
        const auto a = OperatorRep::from_entries(e);
        const auto r = norm_via_compressions(a, u2, CompressionSchedule::prefixes(8, 2));
        for (std::size_t k = 1; k < r.points.size(); ++k) {
            REQUIRE(r.points[k - 1] <= r.points[k] + 2e-10);
        }
        REQUIRE(std::abs(r.points.back() - oracle::spectral_norm(oracle::to_dense(e, 16))) <= 1e-9);
        REQUIRE(r.estimate.upper == r.estimate.lower);

        // non-prefix subsets: S inside T
        const BlockSet s = blocks({1, 4});
        const BlockSet tt = blocks({1, 3, 4, 6});
        REQUIRE(spectral_norm(compression(a, s, u2, 2)) <= spectral_norm(compression(a, tt, u2, 2)) + 2e-10);
    }
}

TEST_CASE("positivity examples") {
    const auto sched = CompressionSchedule::prefixes(2, 1);
    const auto v = positivity_via_compressions(diag({1, -0.5}), Partition::uniform(1), sched);
    const auto* w = std::get_if<NegativeWitness>(&v);
    REQUIRE(w != nullptr);
    CHECK(std::abs(w->min_eig + 0.5) < 1e-14);
    CHECK(w->subset == blocks({0, 1}));
    CHECK(w->reduced == blocks({1}));
    CHECK(std::abs(w->reduced_min_eig + 0.5) < 1e-14);

    const auto nh = positivity_via_compressions(
        OperatorRep::from_entries({{BasisIndex(0), BasisIndex(1), Complex(1, 0)}}), Partition::uniform(1), sched);
    const auto* n = std::get_if<NotHermitian>(&nh);
    REQUIRE(n != nullptr);
    CHECK(n->row == BasisIndex(1));
    CHECK(n->col == BasisIndex(0));

    CHECK_THROWS_AS(positivity_via_compressions(diag({1}), Partition::uniform(1), sched, 0.0), PreconditionError);
}

TEST_CASE("Gram operators are positive up to the schedule") {
    std::mt19937_64 rng(99);
    const Partition u2 = Partition::uniform(2);
    for (int t = 0; t < 100; ++t) {
        const auto b = OperatorRep::from_entries(oracle::random_entries(rng, 12));
        const auto g = multiply(adjoint(b), b);
        const auto v = positivity_via_compressions(g, u2, CompressionSchedule::prefixes(6, 2));
        const auto* p = std::get_if<PositiveUpTo>(&v);
        REQUIRE(p != nullptr);
        REQUIRE(p->checked == 6);
        REQUIRE(p->worst_min_eig >= -1e-9);
    }
}

TEST_CASE("planted negative entries are found") {
    std::mt19937_64 rng(17);
    const Partition u2 = Partition::uniform(2);
    for (double d : {0.5, 1.0, 2.0}) {
        for (int t = 0; t < 20; ++t) {
            const auto b = OperatorRep::from_entries(oracle::random_entries(rng, 8, 0.2));
            const std::uint64_t at = 8 + rng() % 4;  // outside the support of b*b
            const auto planted = add(multiply(adjoint(b), b),
                                     OperatorRep::from_entries({{BasisIndex(at), BasisIndex(at), Complex(-d, 0)}}));
            const auto v = positivity_via_compressions(planted, u2, CompressionSchedule::prefixes(8, 2));
            const auto* w = std::get_if<NegativeWitness>(&v);
            REQUIRE(w != nullptr);
            REQUIRE(w->min_eig <= -d + 1e-9);
            // the first prefix containing the planted index
            REQUIRE(w->subset.back() == BlockId(at / 2));
        }
    }
}

TEST_CASE("Hermitian operators and their adjoints share the verdict kind") {
    std::mt19937_64 rng(5);
    const Partition u1 = Partition::uniform(1);
    for (int t = 0; t < 30; ++t) {
        const auto b = OperatorRep::from_entries(oracle::random_entries(rng, 6));
        const auto h = add(b, adjoint(b));
        const auto v1 = positivity_via_compressions(h, u1, CompressionSchedule::prefixes(6, 1));
        const auto v2 = positivity_via_compressions(adjoint(h), u1, CompressionSchedule::prefixes(6, 1));
        REQUIRE(v1.index() == v2.index());
    }
}

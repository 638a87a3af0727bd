#include <doctest.h>

#include <random>
#include <set>

#include "ndc/algebra.hpp"
#include "ndc/constructions.hpp"
#include "ndc/errors.hpp"
#include "ndc/finite_matrix.hpp"
#include "ndc/norm_bound.hpp"
#include "ndc/operator.hpp"
#include "ndc/partition.hpp"
#include "oracles.hpp"

using namespace ndc;

TEST_CASE("cantor pairing round trip") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        for (std::uint64_t j = 0; j < 200; ++j) {
            const auto [a, b] = cantor_unpair(cantor_pair(i, j));
            REQUIRE(a == i);
            REQUIRE(b == j);
        }
    }
    // large values near the double precision limit of the sqrt guess
    const std::uint64_t i = 3'000'000'000ULL;
    const std::uint64_t j = 1'234'567ULL;
    CHECK(cantor_unpair(cantor_pair(i, j)) == std::pair{i, j});
}

TEST_CASE("block_of examples") {
    CHECK(Partition::uniform(2).block_of(BasisIndex(5)) == BlockId(2));
    CHECK(Partition::uniform(1).block_of(BasisIndex(7)) == BlockId(7));
    CHECK(Partition::cantor_coarsen(Partition::uniform(1)).block_of(BasisIndex(5)) == BlockId(0));
}

TEST_CASE("index_in_block examples") {
    CHECK(Partition::uniform(2).index_in_block(BlockId(1), 0) == BasisIndex(2));
    CHECK(Partition::uniform(3).index_in_block(BlockId(0), 2) == BasisIndex(2));
    const Partition c = Partition::cantor_coarsen(Partition::uniform(1));
    const std::uint64_t want[] = {0, 2, 5, 9};
    for (std::uint64_t k = 0; k < 4; ++k) {
        CHECK(c.index_in_block(BlockId(0), k) == BasisIndex(want[k]));
    }
    CHECK_THROWS_AS(Partition::uniform(2).index_in_block(BlockId(0), 2), RangeError);
    CHECK_THROWS_AS(Partition::uniform(0), PreconditionError);
}

TEST_CASE("coarse blocks match the brute-force enumeration") {
    const Partition c = Partition::cantor_coarsen(Partition::uniform(1));
    for (std::uint64_t b = 0; b < 12; ++b) {
        const auto want = oracle::cantor_block(b, 30);
        for (std::uint64_t k = 0; k < want.size(); ++k) {
            REQUIRE(c.index_in_block(BlockId(b), k).value == want[k]);
        }
    }
}

TEST_CASE("partition totality") {
    const Partition parts[] = {Partition::uniform(1), Partition::uniform(3),
                               Partition::cantor_coarsen(Partition::uniform(1)),
                               Partition::cantor_coarsen(Partition::uniform(2)),
                               Partition::cantor_coarsen(Partition::cantor_coarsen(Partition::uniform(1)))};
    for (const auto& p : parts) {
        CAPTURE(p.describe());
        const std::uint64_t n = p.kind() == Partition::Kind::Uniform ? 10000 : 2000;
        for (std::uint64_t x = 0; x < n; ++x) {
            const BlockId b = p.block_of(BasisIndex(x));
            const std::uint64_t k = p.position_in_block(BasisIndex(x));
            REQUIRE(p.index_in_block(b, k) == BasisIndex(x));
        }
    }
}

TEST_CASE("coarsening coverage") {
    const Partition c = Partition::cantor_coarsen(Partition::uniform(1));
    std::set<std::uint64_t> seen;
    for (std::uint64_t b = 0; b < 100; ++b) {
        BasisIndex prev(0);
        for (std::uint64_t k = 0; k < 100; ++k) {
            const BasisIndex x = c.index_in_block(BlockId(b), k);
            REQUIRE(c.block_of(x) == BlockId(b));
            REQUIRE(seen.insert(x.value).second);
            if (k > 0) {
                REQUIRE(prev < x);
            }
            prev = x;
        }
    }
}

TEST_CASE("nested coarsening enumerates increasing indices") {
    const Partition cc = Partition::cantor_coarsen(Partition::cantor_coarsen(Partition::uniform(1)));
    for (std::uint64_t b = 0; b < 4; ++b) {
        for (std::uint64_t k = 1; k < 40; ++k) {
            REQUIRE(cc.index_in_block(BlockId(b), k - 1) < cc.index_in_block(BlockId(b), k));
            REQUIRE(cc.block_of(cc.index_in_block(BlockId(b), k)) == BlockId(b));
        }
    }
}

TEST_CASE("entry_at examples and purity") {
    const auto a = OperatorRep::from_entries({{BasisIndex(0), BasisIndex(0), Complex(3, 4)}});
    CHECK(a.entry_at(BasisIndex(0), BasisIndex(0)) == Complex(3, 4));
    CHECK(a.entry_at(BasisIndex(1), BasisIndex(1)) == Complex(0, 0));
    const auto m = minf_sample(Geometric{0.5});
    CHECK(m.entry_at(BasisIndex(1), BasisIndex(1)) == Complex(0.5, 0));
    for (std::uint64_t r = 0; r < 20; ++r) {
        CHECK(m.entry_at(BasisIndex(r), BasisIndex(3)) == m.entry_at(BasisIndex(r), BasisIndex(3)));
    }
}

TEST_CASE("explicit operators reject duplicates and drop zeros") {
    CHECK_THROWS_AS(OperatorRep::from_entries({{BasisIndex(1), BasisIndex(1), Complex(1, 0)},
                                               {BasisIndex(1), BasisIndex(1), Complex(2, 0)}}),
                    PreconditionError);
    const auto a = OperatorRep::from_entries({{BasisIndex(1), BasisIndex(1), Complex(0, 0)}});
    CHECK(a.entries().empty());
}

TEST_CASE("finite matrix validates index lists") {
    CHECK_THROWS_AS(FiniteMatrix({BasisIndex(1), BasisIndex(1)}, {BasisIndex(0)}), PreconditionError);
    CHECK_THROWS_AS(FiniteMatrix({BasisIndex(2), BasisIndex(1)}, {BasisIndex(0)}), PreconditionError);
    FiniteMatrix m({BasisIndex(0), BasisIndex(4)}, {BasisIndex(1), BasisIndex(3)});
    m(0, 1) = Complex(1, 2);
    const auto h = m.adjoint();
    CHECK(h.rows() == m.cols());
    CHECK(h(1, 0) == Complex(1, -2));
    const auto p = m.pruned();
    CHECK(p.row_count() == 1);
    CHECK(p.col_count() == 1);
}

TEST_CASE("norm bound ordering") {
    CHECK_THROWS_AS(NormBound(2.0, 1.0), ConsistencyError);
    CHECK_THROWS_AS(NormBound(-1.0, std::nullopt), ConsistencyError);
    CHECK_FALSE(NormBound(1.0, std::nullopt).upper_known());
}

TEST_CASE("explicit tail bound is the Frobenius mass outside P_n") {
    const auto a = OperatorRep::from_entries({{BasisIndex(0), BasisIndex(3), Complex(3, 0)},
                                              {BasisIndex(4), BasisIndex(0), Complex(4, 0)}});
    CHECK(*a.tail_bound(0) == doctest::Approx(10.0));
    CHECK(*a.tail_bound(2) == doctest::Approx(7.0));
    CHECK(*a.tail_bound(5) == 0.0);
    CHECK(*a.tail_bound(kNoCutoff) == 0.0);
}

TEST_CASE("algebra matches dense arithmetic on explicit operators") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto ea = oracle::random_entries(rng, 10);
        const auto eb = oracle::random_entries(rng, 10);
        const auto a = OperatorRep::from_entries(ea);
        const auto b = OperatorRep::from_entries(eb);
        const auto da = oracle::to_dense(ea, 10);
        const auto db = oracle::to_dense(eb, 10);
        const auto prod = oracle::multiply(da, db);
        const auto adj = oracle::adjoint(da);
        const auto p = multiply(a, b);
        const auto s = add(a, b);
        const auto h = adjoint(a);
        const auto l = scale(a, Complex(0, 2));
        for (std::size_t r = 0; r < 10; ++r) {
            for (std::size_t c = 0; c < 10; ++c) {
                const BasisIndex R(r);
                const BasisIndex C(c);
                REQUIRE(std::abs(p.entry_at(R, C) - prod[r][c]) < 1e-12);
                REQUIRE(s.entry_at(R, C) == da[r][c] + db[r][c]);
                REQUIRE(h.entry_at(R, C) == adj[r][c]);
                REQUIRE(l.entry_at(R, C) == Complex(0, 2) * da[r][c]);
            }
        }
    }
}

TEST_CASE("generated products keep a usable tail") {
    const auto a = minf_sample(Geometric{0.5});
    const auto b = minf_sample(Geometric{0.6});
    const auto p = multiply(a, b);
    REQUIRE(p.tail_vanishes());
    // entry (0,0) = sum_k 0.5^k 0.6^k
    CHECK(std::abs(p.entry_at(BasisIndex(0), BasisIndex(0)) - Complex(1.0 / (1.0 - 0.3), 0)) < 1e-14);
    for (std::uint64_t n = 1; n < 60; ++n) {
        REQUIRE(*p.tail_bound(n) <= *p.tail_bound(n - 1));
    }
    // row isometry times row isometry: neither factor has a vanishing tail
    const Partition c = Partition::cantor_coarsen(Partition::uniform(1));
    CHECK_THROWS_AS(multiply(row_isometry(Complex(1, 0), c), row_isometry(Complex(1, 0), c)), PreconditionError);
}

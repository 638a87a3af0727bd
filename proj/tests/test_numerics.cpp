#include <doctest.h>

#include <cmath>
#include <random>

#include "ndc/errors.hpp"
#include "ndc/numerics.hpp"
#include "oracles.hpp"

using namespace ndc;

namespace {

std::vector<BasisIndex> range(std::size_t n) {
    std::vector<BasisIndex> v;
    for (std::size_t k = 0; k < n; ++k) {
        v.push_back(BasisIndex(k));
    }
    return v;
}

FiniteMatrix from_dense(const oracle::Dense& d) {
    FiniteMatrix m(range(d.size()), range(d.empty() ? 0 : d[0].size()));
    for (std::size_t r = 0; r < d.size(); ++r) {
        for (std::size_t c = 0; c < d[r].size(); ++c) {
            m(r, c) = d[r][c];
        }
    }
    return m;
}

oracle::Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    oracle::Dense d(rows, std::vector<Complex>(cols));
    for (auto& row : d) {
        for (auto& x : row) {
            x = Complex(2 * oracle::draw(rng) - 1, 2 * oracle::draw(rng) - 1);
        }
    }
    return d;
}

}  // namespace

TEST_CASE("spectral norm examples") {
    CHECK(spectral_norm(from_dense({{Complex(3, 4)}})) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(spectral_norm(from_dense({{1, 0}, {0, 1}})) == doctest::Approx(1.0).epsilon(1e-14));
    const double phi = (1.0 + std::sqrt(5.0)) / 4.0;
    CHECK(std::abs(spectral_norm(from_dense({{0, 0.5}, {0.5, 0.5}})) - phi) < 1e-14);
}

TEST_CASE("min eigenvalue examples") {
    CHECK(std::abs(min_eig_hermitian(from_dense({{1, 0}, {0, -0.5}})) + 0.5) < 1e-14);
    CHECK(std::abs(min_eig_hermitian(from_dense({{2, 1}, {1, 2}})) - 1.0) < 1e-13);
    CHECK(min_eig_hermitian(from_dense({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})) == 0.0);
}

TEST_CASE("min eigenvalue rejects non-Hermitian input") {
    try {
        (void)min_eig_hermitian(from_dense({{0, 1}, {0, 0}}));
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        const std::string what = e.what();
        CHECK(what.find('1') != std::string::npos);
    }
    FiniteMatrix rect(range(2), range(3));
    CHECK_THROWS_AS((void)min_eig_hermitian(rect), PreconditionError);
}

TEST_CASE("empty matrix and bad tolerances are rejected") {
    CHECK_THROWS_AS((void)spectral_norm(FiniteMatrix{}), PreconditionError);
    Tolerance bad;
    bad.rel = 0.0;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("spectral norm agrees with the dilation oracle") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        const std::size_t r = 1 + rng() % 12;
        const std::size_t c = 1 + rng() % 12;
        const auto d = random_dense(rng, r, c);
        const double want = oracle::spectral_norm(d);
        REQUIRE(std::abs(spectral_norm(from_dense(d)) - want) <= 1e-9);
    }
}

TEST_CASE("min eigenvalue agrees with the oracle") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 12;
        auto d = random_dense(rng, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i][i] = d[i][i].real();
            for (std::size_t j = 0; j < i; ++j) {
                d[j][i] = std::conj(d[i][j]);
            }
        }
        REQUIRE(std::abs(min_eig_hermitian(from_dense(d)) - oracle::min_eig(d)) <= 1e-9);
    }
}

TEST_CASE("scaling") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        auto d = random_dense(rng, 7, 5);
        const double base = spectral_norm(from_dense(d));
        const Complex lambda(3 * oracle::draw(rng) - 1.5, oracle::draw(rng));
        for (auto& row : d) {
            for (auto& x : row) {
                x *= lambda;
            }
        }
        REQUIRE(std::abs(spectral_norm(from_dense(d)) - std::abs(lambda) * base) <= 1e-10 * std::abs(lambda) * base);
    }
}

TEST_CASE("Gram matrices are positive") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        const auto d = random_dense(rng, 6, 4);
        oracle::Dense gram(4, std::vector<Complex>(4));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                for (std::size_t k = 0; k < 6; ++k) {
                    gram[i][j] += std::conj(d[k][i]) * d[k][j];
                }
            }
        }
        for (std::size_t i = 0; i < 4; ++i) {
            gram[i][i] = gram[i][i].real();
            for (std::size_t j = 0; j < i; ++j) {
                gram[j][i] = std::conj(gram[i][j]);
            }
        }
        REQUIRE(min_eig_hermitian(from_dense(gram)) >= -1e-12);
    }
}

TEST_CASE("large matrices go through the iterative kernel") {
    const std::size_t n = detail::kDenseLimit + 40;
    FiniteMatrix m(range(n), range(n));
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Complex(1.0 + static_cast<double>(i % 17) / 16.0, 0.0);
    }
    m(3, 3) = Complex(0.0, 4.0);
    CHECK(std::abs(spectral_norm(m) - 4.0) <= 1e-10 * 4.0 + 1e-12);

    // Block diagonal: the norm is the largest block norm and the smallest
    // eigenvalue the smallest block eigenvalue, each small enough for the oracle.
    std::mt19937_64 rng(31);
    constexpr std::size_t kBlock = 9;
    constexpr std::size_t kBlocks = 21;
    FiniteMatrix big(range(kBlock * kBlocks), range(kBlock * kBlocks));
    FiniteMatrix herm(range(kBlock * kBlocks), range(kBlock * kBlocks));
    double want_norm = 0.0;
    double want_min = 1e300;
    for (std::size_t b = 0; b < kBlocks; ++b) {
        const auto d = random_dense(rng, kBlock, kBlock);
        auto h = oracle::multiply(d, oracle::adjoint(d));
        for (std::size_t i = 0; i < kBlock; ++i) {
            h[i][i] -= 1.5;
        }
        want_norm = std::max(want_norm, oracle::spectral_norm(d));
        want_min = std::min(want_min, oracle::min_eig(h));
        for (std::size_t i = 0; i < kBlock; ++i) {
            for (std::size_t j = 0; j < kBlock; ++j) {
                big(b * kBlock + i, b * kBlock + j) = d[i][j];
                herm(b * kBlock + i, b * kBlock + j) = h[i][j];
            }
        }
    }
    CHECK(std::abs(spectral_norm(big) - want_norm) <= 1e-9);
    CHECK(std::abs(min_eig_hermitian(herm) - want_min) <= 1e-9);
}

TEST_CASE("results are bit-stable across calls") {
    std::mt19937_64 rng(3);
    const auto d = random_dense(rng, 9, 9);
    const auto m = from_dense(d);
    CHECK(spectral_norm(m) == spectral_norm(m));
}

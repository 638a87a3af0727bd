#pragma once

// Test-only reference implementations. None of these call into the library's
// numerics or partition code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ndc/operator.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

/// Eigenvalues of a real symmetric matrix by cyclic real Jacobi sweeps.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double total = 0.0;
    for (const auto& row : a) {
        for (double x : row) {
            total += x * x;
        }
    }
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += a[i][j] * a[i][j];
            }
        }
        if (off <= 1e-34 * total || off == 0.0) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) {
                    continue;
                }
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = a[i][i];
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Real embedding [[Re H, -Im H], [Im H, Re H]] of a Hermitian H; every
/// eigenvalue of H appears twice.
inline std::vector<std::vector<double>> real_embedding(const Dense& h) {
    const std::size_t n = h.size();
    std::vector<std::vector<double>> r(2 * n, std::vector<double>(2 * n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r[i][j] = h[i][j].real();
            r[i][j + n] = -h[i][j].imag();
            r[i + n][j] = h[i][j].imag();
            r[i + n][j + n] = h[i][j].real();
        }
    }
    return r;
}

/// Largest singular value via the Hermitian dilation [[0, A], [A*, 0]].
inline double spectral_norm(const Dense& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    if (m == 0 || n == 0) {
        return 0.0;
    }
    Dense d(m + n, std::vector<Complex>(m + n));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d[i][m + j] = a[i][j];
            d[m + j][i] = std::conj(a[i][j]);
        }
    }
    const auto ev = symmetric_eigenvalues(real_embedding(d));
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

inline double min_eig(const Dense& h) { return symmetric_eigenvalues(real_embedding(h)).front(); }

/// Members of coarse block i of the Cantor coarsening of Uniform(1), by
/// walking the anti-diagonals of the pairing grid.
inline std::vector<std::uint64_t> cantor_block(std::uint64_t i, std::size_t count) {
    std::vector<std::uint64_t> out;
    std::uint64_t z = 0;
    for (std::uint64_t s = 0; out.size() < count; ++s) {
        for (std::uint64_t j = 0; j <= s; ++j, ++z) {
            if (s - j == i) {
                out.push_back(z);
            }
        }
    }
    return out;
}

inline double draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Random operator with support in {0..n-1}^2.
inline std::vector<ndc::ExplicitEntry> random_entries(std::mt19937_64& rng, std::uint64_t n, double density = 0.3) {
    std::vector<ndc::ExplicitEntry> e;
    for (std::uint64_t r = 0; r < n; ++r) {
        for (std::uint64_t c = 0; c < n; ++c) {
            if (draw(rng) < density) {
                e.push_back({ndc::BasisIndex(r), ndc::BasisIndex(c), Complex(2 * draw(rng) - 1, 2 * draw(rng) - 1)});
            }
        }
    }
    return e;
}

inline Dense to_dense(const std::vector<ndc::ExplicitEntry>& e, std::size_t n) {
    Dense d(n, std::vector<Complex>(n));
    for (const auto& x : e) {
        d[x.row.value][x.col.value] = x.value;
    }
    return d;
}

inline Dense dense_of(const ndc::OperatorRep& op, std::size_t n) {
    Dense d(n, std::vector<Complex>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            d[r][c] = op.entry_at(ndc::BasisIndex(r), ndc::BasisIndex(c));
        }
    }
    return d;
}

inline Dense multiply(const Dense& a, const Dense& b) {
    const std::size_t n = a.size();
    Dense out(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

inline Dense adjoint(const Dense& a) {
    const std::size_t n = a.size();
    Dense out(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[j][i] = std::conj(a[i][j]);
        }
    }
    return out;
}

/// Hook i of a dense matrix under Uniform(w): entries with max(r/w, c/w) == i.
inline double hook(const Dense& a, std::size_t w, std::size_t i) {
    const std::size_t n = a.size();
    Dense s(n, std::vector<Complex>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (std::max(r / w, c / w) == i) {
                s[r][c] = a[r][c];
            }
        }
    }
    return spectral_norm(s);
}

}  // namespace oracle

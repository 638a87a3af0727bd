#include "ndc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ndc/errors.hpp"

namespace ndc {

void Tolerance::validate() const {
    if (!(rel > 0.0) || !(abs > 0.0) || max_iter == 0) {
        throw PreconditionError("tolerance requires rel > 0, abs > 0 and max_iter > 0");
    }
}

namespace {

std::string shape_of(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

// Cyclic Jacobi for Hermitian matrices. Each rotation J = D R first turns a_pq
// real via the phase D = diag(.., e^{-i phi} at q, ..), then zeroes it with the
// real rotation R, so J^H A J has a zero (p, q) entry.
std::vector<double> jacobi(std::vector<Complex> a, std::size_t n, std::size_t max_sweeps) {
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * n + c]; };
    for (std::size_t k = 0; k < n; ++k) {
        at(k, k) = Complex(at(k, k).real(), 0.0);
    }

    double total = 0.0;
    for (const auto& z : a) {
        total += std::norm(z);
    }
    const double frob = std::sqrt(total);

    bool converged = (n <= 1);
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(at(p, q));
            }
        }
        if (off == 0.0 || std::sqrt(2.0 * off) <= 1e-15 * frob) {
            converged = true;
            break;
        }
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = std::abs(at(p, q));
                if (g == 0.0) {
                    continue;
                }
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                // Past the first sweeps, entries below the diagonal resolution are dropped.
                if (sweep > 3 && std::abs(app) + 100.0 * g == std::abs(app) &&
                    std::abs(aqq) + 100.0 * g == std::abs(aqq)) {
                    at(p, q) = at(q, p) = Complex(0.0, 0.0);
                    continue;
                }
                ++rotations;
                const Complex phase = at(p, q) / g;  // e^{i phi}
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = at(k, p);
                    const Complex akq = at(k, q);
                    at(k, p) = c * akp + jqp * akq;
                    at(k, q) = s * akp + jqq * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = at(p, k);
                    const Complex aqk = at(q, k);
                    at(p, k) = c * apk + std::conj(jqp) * aqk;
                    at(q, k) = s * apk + std::conj(jqq) * aqk;
                }
                at(p, p) = Complex(app - t * g, 0.0);
                at(q, q) = Complex(aqq + t * g, 0.0);
                at(p, q) = at(q, p) = Complex(0.0, 0.0);
            }
        }
        if (rotations == 0) {
            converged = true;
        }
    }
    if (!converged) {
        throw NumericFailure("Jacobi eigenvalue iteration did not converge on a " + shape_of(n, n) + " matrix");
    }

    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = at(k, k).real();
    }
    std::sort(values.begin(), values.end());
    return values;
}

Complex dot(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex s(0.0, 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += std::conj(x[k]) * y[k];
    }
    return s;
}

double norm2(const std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& z : x) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

// Gram matrix of the smaller side: M^H M when cols <= rows, else M M^H.
std::vector<Complex> gram(const FiniteMatrix& m, std::size_t& dim) {
    const std::size_t r = m.row_count();
    const std::size_t c = m.col_count();
    if (c <= r) {
        dim = c;
        std::vector<Complex> g(c * c, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = i; j < c; ++j) {
                Complex s(0.0, 0.0);
                for (std::size_t k = 0; k < r; ++k) {
                    s += std::conj(m(k, i)) * m(k, j);
                }
                g[i * c + j] = s;
                g[j * c + i] = std::conj(s);
            }
        }
        return g;
    }
    dim = r;
    std::vector<Complex> g(r * r, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            Complex s(0.0, 0.0);
            for (std::size_t k = 0; k < c; ++k) {
                s += m(i, k) * std::conj(m(j, k));
            }
            g[i * r + j] = s;
            g[j * r + i] = std::conj(s);
        }
    }
    return g;
}

std::size_t sweep_limit(const Tolerance& tol) {
    return std::min<std::size_t>(tol.max_iter, 100);
}

struct TridiagonalRitz {
    double value = 0.0;
    std::vector<double> vector;  // unit norm
    double spread = 0.0;         // max |eigenvalue|
};

// Number of eigenvalues below x of the symmetric tridiagonal (alpha, beta), by
// the Sturm sequence of the LDL^T pivots.
std::size_t eigenvalues_below(const std::vector<double>& alpha, const std::vector<double>& beta, double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        const double b2 = k == 0 ? 0.0 : beta[k - 1] * beta[k - 1];
        d = alpha[k] - x - (k == 0 ? 0.0 : b2 / d);
        if (d == 0.0) {
            d = -std::numeric_limits<double>::min();
        }
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

// Extreme eigenpair of a small symmetric tridiagonal: bisection for the value,
// then inverse iteration for the vector.
TridiagonalRitz tridiagonal_ritz(const std::vector<double>& alpha, const std::vector<double>& beta, bool largest) {
    const std::size_t m = alpha.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < m; ++k) {
        const double r = (k > 0 ? std::abs(beta[k - 1]) : 0.0) + (k + 1 < m ? std::abs(beta[k]) : 0.0);
        lo = std::min(lo, alpha[k] - r);
        hi = std::max(hi, alpha[k] + r);
    }
    const double glo = lo;
    const double ghi = hi;
    const std::size_t target = largest ? m - 1 : 0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) {
            break;
        }
        // The target-th eigenvalue is below mid iff more than target lie below.
        if (eigenvalues_below(alpha, beta, mid) > target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    TridiagonalRitz out;
    out.value = lo + (hi - lo) / 2.0;
    out.spread = std::max(std::abs(glo), std::abs(ghi));

    // Inverse iteration on T - (value + shift) with a pivot-guarded Thomas solve.
    const double shift = std::max(out.spread, 1e-300) * 1e-13 * (largest ? 1.0 : -1.0);
    const double sigma = out.value + shift;
    std::vector<double> x(m, 1.0);
    std::vector<double> c(m);
    std::vector<double> y(m);
    for (int pass = 0; pass < 3; ++pass) {
        double denom = alpha[0] - sigma;
        for (std::size_t k = 0; k < m; ++k) {
            if (k > 0) {
                denom = alpha[k] - sigma - beta[k - 1] * c[k - 1];
            }
            if (std::abs(denom) < 1e-300) {
                denom = 1e-300;
            }
            c[k] = k + 1 < m ? beta[k] / denom : 0.0;
            y[k] = (x[k] - (k > 0 ? beta[k - 1] * y[k - 1] : 0.0)) / denom;
        }
        for (std::size_t k = m; k-- > 0;) {
            x[k] = y[k] - (k + 1 < m ? c[k] * x[k + 1] : 0.0);
        }
        double nx = 0.0;
        for (double v : x) {
            nx += v * v;
        }
        nx = std::sqrt(nx);
        for (double& v : x) {
            v /= nx;
        }
    }
    out.vector = std::move(x);
    return out;
}

}  // namespace

namespace detail {

std::vector<double> jacobi_eigenvalues(std::vector<Complex> a, std::size_t n, std::size_t max_sweeps) {
    return jacobi(std::move(a), n, max_sweeps);
}

double lanczos_extreme(const std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>& apply,
                       std::size_t n, bool largest, const Tolerance& tol) {
    if (n == 0) {
        throw PreconditionError("Lanczos on an empty operator");
    }
    // Fixed start: all ones plus a deterministic perturbation.
    std::vector<Complex> start(n);
    for (std::size_t k = 0; k < n; ++k) {
        start[k] = Complex(1.0 + 0.25 * std::sin(static_cast<double>(k) + 1.0), 0.0);
    }
    const double sn = norm2(start);
    for (auto& z : start) {
        z /= sn;
    }

    const std::size_t basis_cap = std::min<std::size_t>(n, 400);
    std::size_t matvecs = 0;
    std::vector<Complex> w(n);
    while (matvecs < tol.max_iter) {
        std::vector<std::vector<Complex>> basis{start};
        std::vector<double> alpha;
        std::vector<double> beta;
        double theta = 0.0;
        std::vector<Complex> ritz;  // coefficients of the Ritz vector in the basis
        for (std::size_t j = 0; j < basis_cap; ++j) {
            apply(basis[j], w);
            ++matvecs;
            const double aj = dot(basis[j], w).real();
            alpha.push_back(aj);
            // Full reorthogonalisation, twice.
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& b : basis) {
                    const Complex h = dot(b, w);
                    for (std::size_t k = 0; k < n; ++k) {
                        w[k] -= h * b[k];
                    }
                }
            }
            const double bj = norm2(w);

            const std::size_t m = alpha.size();
            const TridiagonalRitz tr = tridiagonal_ritz(alpha, beta, largest);
            theta = tr.value;
            ritz.assign(tr.vector.begin(), tr.vector.end());
            const double scale = tr.spread;
            const double residual = bj * std::abs(ritz[m - 1]);
            const double target = 0.1 * (tol.rel * scale + tol.abs);
            if (residual <= target || bj <= std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300) ||
                m == n) {
                return theta;
            }
            if (j + 1 == basis_cap || matvecs >= tol.max_iter) {
                break;
            }
            beta.push_back(bj);
            for (auto& z : w) {
                z /= bj;
            }
            basis.push_back(w);
        }
        // Restart from the current Ritz vector.
        std::vector<Complex> next(n, Complex(0.0, 0.0));
        for (std::size_t b = 0; b < ritz.size(); ++b) {
            for (std::size_t k = 0; k < n; ++k) {
                next[k] += ritz[b] * basis[b][k];
            }
        }
        const double nn = norm2(next);
        for (auto& z : next) {
            z /= nn;
        }
        start = std::move(next);
    }
    throw NumericFailure("Lanczos did not converge on an operator of order " + std::to_string(n) + " within " +
                         std::to_string(tol.max_iter) + " products");
}

}  // namespace detail

double spectral_norm(const FiniteMatrix& m, const Tolerance& tol) {
    tol.validate();
    if (m.empty()) {
        throw PreconditionError("spectral norm of an empty matrix");
    }
    const FiniteMatrix p = m.pruned();
    if (p.empty()) {
        return 0.0;
    }
    if (p.row_count() == 1 && p.col_count() == 1) {
        return std::abs(p(0, 0));
    }
    if (p.row_count() == 1 || p.col_count() == 1) {
        return p.frobenius();
    }
    const std::size_t small = std::min(p.row_count(), p.col_count());
    if (small <= detail::kDenseLimit) {
        std::size_t dim = 0;
        auto g = gram(p, dim);
        try {
            const auto ev = detail::jacobi_eigenvalues(std::move(g), dim, sweep_limit(tol));
            return std::sqrt(std::max(ev.back(), 0.0));
        } catch (const NumericFailure&) {
            throw NumericFailure("spectral norm did not converge on a " + shape_of(m.row_count(), m.col_count()) +
                                 " matrix");
        }
    }
    // Implicit Gram operator on the smaller side.
    const bool right = p.col_count() <= p.row_count();
    const std::size_t r = p.row_count();
    const std::size_t c = p.col_count();
    std::vector<Complex> mid(right ? r : c);
    auto apply = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
        if (right) {
            for (std::size_t i = 0; i < r; ++i) {
                Complex s(0.0, 0.0);
                for (std::size_t k = 0; k < c; ++k) {
                    s += p(i, k) * x[k];
                }
                mid[i] = s;
            }
            std::fill(y.begin(), y.end(), Complex(0.0, 0.0));
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t k = 0; k < c; ++k) {
                    y[k] += std::conj(p(i, k)) * mid[i];
                }
            }
        } else {
            std::fill(mid.begin(), mid.end(), Complex(0.0, 0.0));
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t k = 0; k < c; ++k) {
                    mid[k] += std::conj(p(i, k)) * x[i];
                }
            }
            for (std::size_t i = 0; i < r; ++i) {
                Complex s(0.0, 0.0);
                for (std::size_t k = 0; k < c; ++k) {
                    s += p(i, k) * mid[k];
                }
                y[i] = s;
            }
        }
    };
    // |sqrt(x) - sqrt(y)| <= sqrt(|x - y|), so abs^2 on the Gram side gives abs on sigma.
    Tolerance gram_tol = tol;
    gram_tol.abs = tol.abs * tol.abs;
    try {
        const double lam = detail::lanczos_extreme(apply, small, true, gram_tol);
        return std::sqrt(std::max(lam, 0.0));
    } catch (const NumericFailure&) {
        throw NumericFailure("spectral norm did not converge on a " + shape_of(m.row_count(), m.col_count()) +
                             " matrix");
    }
}

double min_eig_hermitian(const FiniteMatrix& m, const Tolerance& tol) {
    tol.validate();
    if (m.empty()) {
        throw PreconditionError("minimum eigenvalue of an empty matrix");
    }
    if (m.rows() != m.cols()) {
        throw PreconditionError("minimum eigenvalue needs identical row and column index lists");
    }
    const std::size_t n = m.row_count();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol.abs) {
                throw PreconditionError("matrix is not Hermitian at (" + std::to_string(m.rows()[i].value) + ", " +
                                        std::to_string(m.cols()[j].value) + ")");
            }
        }
    }
    // Indices whose row is entirely zero carry eigenvalue 0 and drop out.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < n && !nonzero; ++j) {
            nonzero = m(i, j) != Complex(0.0, 0.0) || m(j, i) != Complex(0.0, 0.0);
        }
        if (nonzero) {
            keep.push_back(i);
        }
    }
    const bool dropped = keep.size() < n;
    if (keep.empty()) {
        return 0.0;
    }
    const std::size_t k = keep.size();
    std::vector<Complex> a(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            a[i * k + j] = 0.5 * (m(keep[i], keep[j]) + std::conj(m(keep[j], keep[i])));
        }
    }
    double lam = 0.0;
    try {
        if (k <= detail::kDenseLimit) {
            lam = detail::jacobi_eigenvalues(std::move(a), k, sweep_limit(tol)).front();
        } else {
            auto apply = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
                for (std::size_t i = 0; i < k; ++i) {
                    Complex s(0.0, 0.0);
                    for (std::size_t j = 0; j < k; ++j) {
                        s += a[i * k + j] * x[j];
                    }
                    y[i] = s;
                }
            };
            lam = detail::lanczos_extreme(apply, k, false, tol);
        }
    } catch (const NumericFailure&) {
        throw NumericFailure("minimum eigenvalue did not converge on a " + shape_of(n, n) + " matrix");
    }
    return dropped ? std::min(lam, 0.0) : lam;
}

}  // namespace ndc

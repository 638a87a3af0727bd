#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ndc/finite_matrix.hpp"

namespace ndc {

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;
    std::size_t max_iter = 100000;

    /// Throws PreconditionError unless rel, abs > 0 and max_iter > 0.
    void validate() const;
};

/// Largest singular value of a non-empty matrix, to within
/// tol.rel * sigma_max + tol.abs. Deterministic.
double spectral_norm(const FiniteMatrix& m, const Tolerance& tol = {});

/// Smallest eigenvalue of a Hermitian matrix over identical row/column lists,
/// to within tol.rel * ||m|| + tol.abs. Entries must be Hermitian within tol.abs.
double min_eig_hermitian(const FiniteMatrix& m, const Tolerance& tol = {});

namespace detail {

/// Matrices at or below this order go to the dense Jacobi solver; larger ones to Lanczos.
inline constexpr std::size_t kDenseLimit = 160;

/// Eigenvalues (ascending) of a dense n x n Hermitian matrix in row-major
/// storage, by cyclic complex Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<Complex> a, std::size_t n, std::size_t max_sweeps);

/// Extreme eigenvalue of a Hermitian operator given by its action, by Lanczos
/// with full reorthogonalisation and explicit restarts from a fixed start vector.
double lanczos_extreme(const std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>& apply,
                       std::size_t n, bool largest, const Tolerance& tol);

}  // namespace detail

}  // namespace ndc

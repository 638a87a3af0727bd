#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ndc/index.hpp"

namespace ndc {

using Complex = std::complex<double>;

/// Dense complex matrix over explicit, strictly increasing row and column
/// index lists. Row-major storage.
class FiniteMatrix {
public:
    FiniteMatrix() = default;
    FiniteMatrix(std::vector<BasisIndex> rows, std::vector<BasisIndex> cols);
    FiniteMatrix(std::vector<BasisIndex> rows, std::vector<BasisIndex> cols, std::vector<Complex> data);

    /// Square matrix over one index list.
    static FiniteMatrix square(std::vector<BasisIndex> indices) {
        auto cols = indices;
        return FiniteMatrix(std::move(indices), std::move(cols));
    }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }
    bool empty() const { return rows_.empty() || cols_.empty(); }

    const std::vector<BasisIndex>& rows() const { return rows_; }
    const std::vector<BasisIndex>& cols() const { return cols_; }
    const std::vector<Complex>& data() const { return data_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_.size() + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_.size() + c]; }

    /// Conjugate transpose, with the index lists swapped.
    FiniteMatrix adjoint() const;

    /// Copy without the rows and columns that are entirely zero.
    FiniteMatrix pruned() const;

    /// Frobenius norm.
    double frobenius() const;

    bool operator==(const FiniteMatrix&) const = default;

private:
    std::vector<BasisIndex> rows_;
    std::vector<BasisIndex> cols_;
    std::vector<Complex> data_;
};

}  // namespace ndc

#include "ndc/finite_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndc/errors.hpp"

namespace ndc {

namespace {

void require_increasing(const std::vector<BasisIndex>& idx, const char* what) {
    for (std::size_t k = 1; k < idx.size(); ++k) {
        if (!(idx[k - 1] < idx[k])) {
            throw PreconditionError(std::string(what) + " indices must be strictly increasing");
        }
    }
}

}  // namespace

FiniteMatrix::FiniteMatrix(std::vector<BasisIndex> rows, std::vector<BasisIndex> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)), data_(rows_.size() * cols_.size()) {
    require_increasing(rows_, "row");
    require_increasing(cols_, "column");
}

FiniteMatrix::FiniteMatrix(std::vector<BasisIndex> rows, std::vector<BasisIndex> cols,
                           std::vector<Complex> data)
    : rows_(std::move(rows)), cols_(std::move(cols)), data_(std::move(data)) {
    require_increasing(rows_, "row");
    require_increasing(cols_, "column");
    if (data_.size() != rows_.size() * cols_.size()) {
        throw PreconditionError("matrix data does not match its shape");
    }
}

FiniteMatrix FiniteMatrix::adjoint() const {
    FiniteMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

FiniteMatrix FiniteMatrix::pruned() const {
    std::vector<char> row_used(rows_.size(), 0);
    std::vector<char> col_used(cols_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            if ((*this)(r, c) != Complex(0.0, 0.0)) {
                row_used[r] = 1;
                col_used[c] = 1;
            }
        }
    }
    std::vector<std::size_t> rsel;
    std::vector<std::size_t> csel;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (row_used[r]) {
            rsel.push_back(r);
        }
    }
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        if (col_used[c]) {
            csel.push_back(c);
        }
    }
    std::vector<BasisIndex> rows;
    std::vector<BasisIndex> cols;
    for (auto r : rsel) {
        rows.push_back(rows_[r]);
    }
    for (auto c : csel) {
        cols.push_back(cols_[c]);
    }
    FiniteMatrix out(std::move(rows), std::move(cols));
    for (std::size_t r = 0; r < rsel.size(); ++r) {
        for (std::size_t c = 0; c < csel.size(); ++c) {
            out(r, c) = (*this)(rsel[r], csel[c]);
        }
    }
    return out;
}

double FiniteMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

}  // namespace ndc

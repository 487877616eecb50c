#pragma once

#include "folcoh/scalar.hpp"

#include <optional>
#include <vector>

namespace folcoh {

// Dense matrix over the exact rationals. Sizes here are tiny (at most a few
// hundred columns), so plain Gauss-Jordan elimination is fine.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Scalar>& row);

    // Reduced row echelon form (leading entries 1, zeros above and below).
    // Returns the pivot columns. Deterministic: first nonzero column wins.
    std::vector<std::size_t> rref();

    std::size_t rank() const;

    // Canonical nullspace basis: one vector per free column of the RREF,
    // in ascending free-column order, with the free coordinate set to 1.
    std::vector<std::vector<Scalar>> kernel() const;

    // Solves A x = b with free coordinates pinned to 0; nullopt when
    // inconsistent.
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

    RatMatrix transposed() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

// Rows are vectors spanning a subspace; returns the RREF basis of that span.
std::vector<std::vector<Scalar>> canonical_basis(std::vector<std::vector<Scalar>> rows);

// Rank of a span given as rows.
std::size_t span_rank(const std::vector<std::vector<Scalar>>& rows);

// True when v lies in the row span.
bool in_span(const std::vector<std::vector<Scalar>>& rows, const std::vector<Scalar>& v);

} // namespace folcoh

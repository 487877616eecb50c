#include "folcoh/linalg.hpp"

#include <stdexcept>

namespace folcoh {

void RatMatrix::append_row(const std::vector<Scalar>& row) {
    if (cols_ == 0 && rows_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw std::invalid_argument("row size mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<std::size_t> RatMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
        std::size_t pivot_row = lead;
        while (pivot_row < rows_ && at(pivot_row, col) == 0)
            ++pivot_row;
        if (pivot_row == rows_)
            continue;
        if (pivot_row != lead)
            for (std::size_t c = 0; c < cols_; ++c)
                std::swap(at(pivot_row, c), at(lead, c));
        Scalar inv = at(lead, col);
        for (std::size_t c = col; c < cols_; ++c)
            at(lead, c) /= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == lead)
                continue;
            Scalar factor = at(r, col);
            if (factor == 0)
                continue;
            for (std::size_t c = col; c < cols_; ++c)
                at(r, c) -= factor * at(lead, c);
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

std::size_t RatMatrix::rank() const {
    RatMatrix copy = *this;
    return copy.rref().size();
}

std::vector<std::vector<Scalar>> RatMatrix::kernel() const {
    RatMatrix copy = *this;
    std::vector<std::size_t> pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Scalar> v(cols_, Scalar(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -copy.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Scalar>> RatMatrix::solve(const std::vector<Scalar>& b) const {
    if (b.size() != rows_)
        throw std::invalid_argument("rhs size mismatch");
    RatMatrix aug(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = b[r];
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_)
        return std::nullopt;
    std::vector<Scalar> x(cols_, Scalar(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(r, cols_);
    return x;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out.at(c, r) = at(r, c);
    return out;
}

std::vector<std::vector<Scalar>> canonical_basis(std::vector<std::vector<Scalar>> rows) {
    if (rows.empty())
        return {};
    RatMatrix m;
    for (auto& r : rows)
        m.append_row(r);
    std::size_t rank = m.rref().size();
    std::vector<std::vector<Scalar>> out;
    for (std::size_t r = 0; r < rank; ++r) {
        std::vector<Scalar> v(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c)
            v[c] = m.at(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t span_rank(const std::vector<std::vector<Scalar>>& rows) {
    return canonical_basis(rows).size();
}

bool in_span(const std::vector<std::vector<Scalar>>& rows, const std::vector<Scalar>& v) {
    if (rows.empty()) {
        for (const auto& c : v)
            if (c != 0)
                return false;
        return true;
    }
    RatMatrix m;
    for (const auto& r : rows)
        m.append_row(r);
    return m.transposed().solve(v).has_value();
}

} // namespace folcoh

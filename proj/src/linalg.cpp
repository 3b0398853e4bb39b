#include "strengthlab/linalg.hpp"

#include <stdexcept>

namespace strengthlab {

uint32_t row_reduce(const Field& k, Mat& m, std::vector<uint32_t>* pivots) {
    uint32_t rank = 0;
    for (uint32_t col = 0; col < m.cols && rank < m.rows; ++col) {
        uint32_t pr = rank;
        while (pr < m.rows && k.is_zero(m.at(pr, col))) ++pr;
        if (pr == m.rows) continue;
        if (pr != rank)
            for (uint32_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(rank, c));
        FieldElem piv_inv = k.inv(m.at(rank, col));
        for (uint32_t c = col; c < m.cols; ++c) m.at(rank, c) = k.mul(m.at(rank, c), piv_inv);
        for (uint32_t r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            FieldElem f = m.at(r, col);
            if (k.is_zero(f)) continue;
            for (uint32_t c = col; c < m.cols; ++c)
                m.at(r, c) = k.sub(m.at(r, c), k.mul(f, m.at(rank, c)));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

uint32_t rank_of(const Field& k, Mat m) { return row_reduce(k, m); }

std::optional<std::vector<FieldElem>> solve(const Field& k, const Mat& A,
                                            const std::vector<FieldElem>& b) {
    if (b.size() != A.rows) throw std::invalid_argument("solve: rhs length mismatch");
    Mat aug(A.rows, A.cols + 1);
    for (uint32_t r = 0; r < A.rows; ++r) {
        for (uint32_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    std::vector<uint32_t> pivots;
    row_reduce(k, aug, &pivots);
    for (auto p : pivots)
        if (p == A.cols) return std::nullopt;  // pivot in the rhs column: inconsistent
    std::vector<FieldElem> x(A.cols, k.zero());
    for (uint32_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, A.cols);
    return x;
}

std::vector<std::vector<FieldElem>> nullspace(const Field& k, const Mat& A) {
    Mat m = A;
    std::vector<uint32_t> pivots;
    row_reduce(k, m, &pivots);
    std::vector<bool> is_pivot(A.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<FieldElem>> basis;
    for (uint32_t free_col = 0; free_col < A.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<FieldElem> v(A.cols, k.zero());
        v[free_col] = k.one();
        for (uint32_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = k.neg(m.at(i, free_col));
        basis.push_back(std::move(v));
    }
    return basis;
}

FieldElem det(const Field& k, Mat m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: square matrix required");
    FieldElem d = k.one();
    for (uint32_t col = 0; col < m.cols; ++col) {
        uint32_t pr = col;
        while (pr < m.rows && k.is_zero(m.at(pr, col))) ++pr;
        if (pr == m.rows) return k.zero();
        if (pr != col) {
            for (uint32_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(col, c));
            d = k.neg(d);
        }
        d = k.mul(d, m.at(col, col));
        FieldElem piv_inv = k.inv(m.at(col, col));
        for (uint32_t r = col + 1; r < m.rows; ++r) {
            FieldElem f = k.mul(m.at(r, col), piv_inv);
            if (k.is_zero(f)) continue;
            for (uint32_t c = col; c < m.cols; ++c)
                m.at(r, c) = k.sub(m.at(r, c), k.mul(f, m.at(col, c)));
        }
    }
    return d;
}

std::vector<FieldElem> mat_vec(const Field& k, const Mat& A, const std::vector<FieldElem>& x) {
    if (x.size() != A.cols) throw std::invalid_argument("mat_vec: length mismatch");
    std::vector<FieldElem> y(A.rows, k.zero());
    for (uint32_t r = 0; r < A.rows; ++r) {
        FieldElem acc = k.zero();
        for (uint32_t c = 0; c < A.cols; ++c) acc = k.add(acc, k.mul(A.at(r, c), x[c]));
        y[r] = acc;
    }
    return y;
}

}  // namespace strengthlab

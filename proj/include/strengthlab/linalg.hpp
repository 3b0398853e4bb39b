#pragma once

#include <optional>
#include <vector>

#include "strengthlab/field.hpp"

namespace strengthlab {

/// Dense row-major matrix of field elements. Desk-scale only; every
/// operation is exact Gaussian elimination with first-nonzero pivoting.
struct Mat {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<FieldElem> a;

    Mat() = default;
    Mat(uint32_t r, uint32_t c) : rows(r), cols(c), a(size_t(r) * c, FieldElem{0}) {}

    FieldElem& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
    FieldElem at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }
};

/// In-place reduced row echelon form; returns the rank.
/// Pivot columns, in order, are appended to *pivots when given.
uint32_t row_reduce(const Field& k, Mat& m, std::vector<uint32_t>* pivots = nullptr);

uint32_t rank_of(const Field& k, Mat m);

/// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<FieldElem>> solve(const Field& k, const Mat& A,
                                            const std::vector<FieldElem>& b);

/// Basis of the right kernel {x : A x = 0}.
std::vector<std::vector<FieldElem>> nullspace(const Field& k, const Mat& A);

FieldElem det(const Field& k, Mat m);

std::vector<FieldElem> mat_vec(const Field& k, const Mat& A, const std::vector<FieldElem>& x);

}  // namespace strengthlab

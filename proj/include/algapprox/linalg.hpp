#pragma once

#include "algapprox/poly.hpp"

#include <cstddef>
#include <vector>

namespace algapprox {

using RatVec = std::vector<Rat>;
using IntVec = std::vector<BigInt>;

// Row-major dense matrix over Q.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    RatVec row(std::size_t r) const;
    RatVec col(std::size_t c) const;
    void set_col(std::size_t c, const RatVec& v);
    RatMatrix transposed() const;

    static RatMatrix from_rows(const std::vector<RatVec>& rows);
    static RatMatrix from_cols(const std::vector<RatVec>& cols);

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    RatVec operator*(const RatVec& v) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(RatMatrix m);
std::size_t rank(const std::vector<RatVec>& rows);

// basis of {x : m x = 0}
std::vector<RatVec> kernel(const RatMatrix& m);

Rat determinant(RatMatrix m);

// Solves m x = b for square nonsingular m; throws SystemSingular otherwise.
RatVec solve(RatMatrix m, RatVec b);

// true iff v lies in the Q-span of rows
bool in_span(const std::vector<RatVec>& rows, const RatVec& v);

// scales a nonzero rational vector to a primitive integer vector whose first nonzero entry is positive
IntVec primitive_integer_vector(const RatVec& v);

// Integral LLL (exact, Cohen's integral variant). Rows of `basis` must be
// linearly independent. delta = delta_num / delta_den.
struct LllResult {
    std::vector<IntVec> basis;
    // unimodular transform: basis = transform * input
    std::vector<IntVec> transform;
    // squared Gram-Schmidt norms |b_i*|^2, exact
    std::vector<Rat> gso_norms;
};

LllResult lll_reduce(const std::vector<IntVec>& basis, long delta_num = 99, long delta_den = 100);

// exact squared Gram-Schmidt norms of independent rows
std::vector<Rat> gram_schmidt_norms(const std::vector<IntVec>& basis);

}  // namespace algapprox

#ifndef MTR_MATRIX_HPP
#define MTR_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "mtr/bigint.hpp"
#include "mtr/errors.hpp"

namespace mtr {

using Vec = std::vector<Int>;

// Dense integer matrix, row major. Square in most contracts; rectangular
// shapes appear internally (stacked lattice generators, kernel bases).
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

    // Row-of-rows literal, used heavily by tests.
    IntMatrix(std::initializer_list<std::initializer_list<long>> lit);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Int& c) const;

    Vec apply(const Vec& v) const;         // matrix * column vector
    IntMatrix transpose() const;

    void swap_rows(std::size_t a, std::size_t b);
    void negate_row(std::size_t i);
    // row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

    bool is_zero() const;

    std::string to_string() const;         // "a b; c d" inline form

private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

// Bareiss fraction-free determinant. Throws NonSquare.
Int det(const IntMatrix& m);

// Rank over Q by fraction-free elimination.
std::size_t rank_Q(const IntMatrix& m);

// dim ker(m) over Q, i.e. cols - rank.
std::size_t kernel_dim_Q(const IntMatrix& m);

// Adjugate (transposed cofactor matrix); adj(M) * M = det(M) * I.
IntMatrix adjugate(const IntMatrix& m);

// M^n for n in Z. Negative n requires |det M| = 1
// (throws NegativePowerOfNonUnimodular otherwise).
IntMatrix matpow(const IntMatrix& m, long n);

// Index of the subgroup of Z^rows generated by the columns: |det| of any
// column basis when the columns span full rank, infinite otherwise.
// Accepts rectangular input (more columns than rows).
IndexValue lattice_index(const IntMatrix& generators);

} // namespace mtr

#endif

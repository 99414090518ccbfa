#include "mtr/matrix.hpp"

#include <sstream>

namespace mtr {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> lit) {
    rows_ = lit.size();
    cols_ = rows_ ? lit.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : lit) {
        if (r.size() != cols_)
            throw NonSquare("ragged matrix literal");
        for (long v : r) e_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw WrongDimension("matrix addition shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw WrongDimension("matrix subtraction shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_)
        throw WrongDimension("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += a * o.at(k, j);
        }
    }
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

IntMatrix IntMatrix::operator*(const Int& c) const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
    return r;
}

Vec IntMatrix::apply(const Vec& v) const {
    if (v.size() != cols_)
        throw WrongDimension("matrix-vector shape mismatch");
    Vec r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r[i] += at(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap(at(a, j), at(b, j));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j)
        at(i, j) = -at(i, j);
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        at(dst, j) += c * at(src, j);
}

Vec IntMatrix::row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec IntMatrix::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void IntMatrix::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows_)
        throw WrongDimension("column assignment shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << at(i, j).get_str();
        }
    }
    return os.str();
}

Int det(const IntMatrix& m) {
    if (!m.is_square()) throw NonSquare("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
                // The Bareiss update divides exactly by the previous pivot.
                a.at(i, j) = divexact(t, prev);
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    Int d = a.at(n - 1, n - 1);
    return sign < 0 ? Int(-d) : d;
}

std::size_t rank_Q(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a.at(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        a.swap_rows(rank, piv);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a.at(i, col) == 0) continue;
            // Integer row elimination keeps everything exact; scale both rows.
            Int p = a.at(rank, col), q = a.at(i, col);
            for (std::size_t j = col; j < cols; ++j)
                a.at(i, j) = a.at(i, j) * p - a.at(rank, j) * q;
        }
        ++rank;
    }
    return rank;
}

std::size_t kernel_dim_Q(const IntMatrix& m) {
    return m.cols() - rank_Q(m);
}

IntMatrix adjugate(const IntMatrix& m) {
    if (!m.is_square()) throw NonSquare("adjugate of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return m;
    if (n == 1) return IntMatrix::identity(1);
    IntMatrix adj(n, n);
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc) = m.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            Int cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            adj.at(j, i) = cof;             // transposed placement
        }
    }
    return adj;
}

IntMatrix matpow(const IntMatrix& m, long n) {
    if (!m.is_square()) throw NonSquare("power of non-square matrix");
    IntMatrix base = m;
    if (n < 0) {
        Int d = det(m);
        if (d != 1 && d != -1)
            throw NegativePowerOfNonUnimodular(
                "negative power requires determinant +-1, got " + d.get_str());
        base = adjugate(m);
        if (d == -1) base = -base;          // M^-1 = adj(M) / det(M)
        n = -n;
    }
    IntMatrix result = IntMatrix::identity(m.rows());
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

} // namespace mtr

#pragma once

// Dense rational matrices and the elimination routines everything else is
// built from. Vectors are columns; composition of linear maps is the matrix
// product of the left factor with the right factor.

#include "isx/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace isx {

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}
    Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        a_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) {
        check_index(i, j);
        return a_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return a_[i * cols_ + j];
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch: " + shape() + " * " + o.shape());
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (o(k, j) == 0) continue;
                    r(i, j) += aik * o(k, j);
                }
            }
        return r;
    }
    Mat operator+(const Mat& o) const {
        require_same_shape(o, "+");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        require_same_shape(o, "-");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Mat scaled(const Rational& c) const {
        Mat r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    Mat column(std::size_t j) const {
        Mat c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }
    Mat columns(const std::vector<std::size_t>& idx) const {
        Mat c(rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) c(i, j) = (*this)(i, idx[j]);
        return c;
    }
    Mat rows_slice(std::size_t first, std::size_t count) const {
        Mat r(count, cols_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(first + i, j);
        return r;
    }

    std::string shape() const {
        std::ostringstream os;
        os << rows_ << "x" << cols_;
        return os.str();
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") outside " + shape());
    }
    void require_same_shape(const Mat& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("matrix ") + op + " shape mismatch: " + shape() +
                                        " vs " + o.shape());
    }

    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

inline std::ostream& operator<<(std::ostream& os, const Mat& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    }
    return os << "]";
}

inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Mat r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

inline Mat vstack(const Mat& a, const Mat& b) {
    if (a.rows() == 0 && a.cols() == 0) return b;
    if (b.rows() == 0 && b.cols() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Mat r(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
    }
    return r;
}

struct RowReduction {
    Mat rref;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, ascending
    std::size_t rank = 0;
};

// Gauss-Jordan elimination to reduced row echelon form. Pivot choice is the
// first nonzero entry in the current column, so the result is deterministic.
inline RowReduction row_reduce(Mat m) {
    RowReduction out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(sel, j));
        const Rational inv = Rational(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    out.rref = std::move(m);
    return out;
}

inline std::size_t rank(const Mat& m) { return row_reduce(m).rank; }

// Columns form a basis of the kernel. Free coordinates are set to 1 one at a
// time, in ascending column order.
inline Mat kernel_basis(const Mat& m) {
    const RowReduction rr = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat k(m.cols(), free_cols.size());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const std::size_t f = free_cols[t];
        k(f, t) = 1;
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) k(rr.pivots[r], t) = -rr.rref(r, f);
    }
    return k;
}

// Indices of a maximal independent set of columns (the pivot columns).
inline std::vector<std::size_t> independent_columns(const Mat& m) {
    return row_reduce(m).pivots;
}

// Basis of the column space, taken from the columns of m itself.
inline Mat column_space_basis(const Mat& m) { return m.columns(independent_columns(m)); }

// One solution of a x = b with all free variables zero, or nullopt when the
// system is inconsistent. b may have several columns; they are solved jointly.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
    const RowReduction rr = row_reduce(hstack(a, b));
    for (std::size_t p : rr.pivots)
        if (p >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j) x(rr.pivots[r], j) = rr.rref(r, a.cols() + j);
    return x;
}

inline std::optional<Mat> try_inverse(const Mat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const RowReduction rr = row_reduce(hstack(a, Mat::identity(a.rows())));
    if (rr.rank != a.rows()) return std::nullopt;
    Mat inv(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) inv(i, j) = rr.rref(i, a.cols() + j);
    return inv;
}

inline Mat inverse(const Mat& a) {
    auto inv = try_inverse(a);
    if (!inv) throw std::invalid_argument("matrix is singular, " + a.shape());
    return *inv;
}

inline bool is_invertible(const Mat& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

// Given columns s spanning a subspace of the left factor of a bilinear
// pairing (value x^T p y), return a kernel basis of the right-side
// annihilator {y : x^T p y = 0 for all x in span s}.
inline Mat right_annihilator(const Mat& s, const Mat& p) {
    if (s.rows() != p.rows()) throw std::invalid_argument("annihilator shape mismatch");
    return kernel_basis(s.transpose() * p);
}

// Left-side annihilator {x : x^T p y = 0 for all y in span s}.
inline Mat left_annihilator(const Mat& p, const Mat& s) {
    if (s.rows() != p.cols()) throw std::invalid_argument("annihilator shape mismatch");
    return kernel_basis((p * s).transpose());
}

}  // namespace isx

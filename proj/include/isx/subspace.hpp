#pragma once

// Subspaces of Q^n with a canonical basis, so equality and membership are
// decidable by matrix comparison, plus deterministic quotient data.

#include "isx/matrix.hpp"

#include <vector>

namespace isx {

class Subspace {
public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

    // Canonicalizes the span of the given columns: the stored basis is the
    // transposed reduced row echelon form of span^T, so equal subspaces have
    // equal bases.
    static Subspace span_of(std::size_t ambient, const Mat& columns) {
        Mat cols = columns;
        if (cols.cols() == 0)
            cols = Mat(ambient, 0);
        else if (cols.rows() != ambient)
            throw std::invalid_argument("subspace span ambient mismatch");
        const RowReduction rr = row_reduce(cols.transpose());
        Subspace s(ambient);
        s.basis_ = rr.rref.rows_slice(0, rr.rank).transpose();
        return s;
    }
    static Subspace full(std::size_t ambient) { return span_of(ambient, Mat::identity(ambient)); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }

    bool contains(const Mat& vec) const {
        if (vec.rows() != ambient_ || vec.cols() != 1)
            throw std::invalid_argument("contains expects an ambient column vector");
        return solve(basis_, vec).has_value();
    }
    bool contains(const Subspace& other) const {
        if (other.ambient_ != ambient_) return false;
        return solve(basis_, other.basis_).has_value();
    }
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    std::size_t ambient_;
    Mat basis_;
};

inline Subspace span_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("sum ambient mismatch");
    return Subspace::span_of(a.ambient(), hstack(a.basis(), b.basis()));
}

inline Subspace intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("intersection ambient mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
    // Null combinations of [A | B] give vectors A x = -B y in both spans.
    const Mat k = kernel_basis(hstack(a.basis(), b.basis()));
    Mat coeff(a.dim(), k.cols());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) coeff(i, j) = k(i, j);
    return Subspace::span_of(a.ambient(), a.basis() * coeff);
}

// {x : f x in w}, where f maps the domain into w's ambient space.
inline Subspace preimage(const Mat& f, const Subspace& w) {
    if (f.rows() != w.ambient()) throw std::invalid_argument("preimage ambient mismatch");
    if (w.dim() == w.ambient()) return Subspace::full(f.cols());
    // Compose with any projection whose kernel is exactly w.
    const Mat p = kernel_basis(w.basis().transpose()).transpose();
    return Subspace::span_of(f.cols(), kernel_basis(p * f));
}

inline Subspace image(const Mat& f) { return Subspace::span_of(f.rows(), f); }
inline Subspace kernel(const Mat& f) { return Subspace::span_of(f.cols(), kernel_basis(f)); }

// Quotient of Q^n by a subspace: a projection onto coordinates indexed by
// `kept` together with a section, with projection * section = identity and
// kernel(projection) = the subspace.
struct Quotient {
    Mat projection;                 // (n-d) x n
    Mat section;                    // n x (n-d)
    std::vector<std::size_t> kept;  // the non-pivot coordinates
};

inline Quotient quotient_by(const Subspace& w) {
    const std::size_t n = w.ambient();
    const RowReduction rr = row_reduce(w.basis().transpose());
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    Quotient q;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) q.kept.push_back(j);
    const std::size_t d = q.kept.size();
    q.projection = Mat(d, n);
    q.section = Mat(n, d);
    for (std::size_t t = 0; t < d; ++t) {
        q.projection(t, q.kept[t]) = 1;
        q.section(q.kept[t], t) = 1;
    }
    // Reducing a vector by the echelon rows of w zeroes its pivot
    // coordinates without changing its class, so the projection is
    // "subtract the pivot part, keep the free coordinates".
    for (std::size_t r = 0; r < rr.rank; ++r)
        for (std::size_t t = 0; t < d; ++t)
            q.projection(t, rr.pivots[r]) -= rr.rref(r, q.kept[t]);
    return q;
}

inline Quotient quotient_by_image(const Mat& f) { return quotient_by(image(f)); }

// Standard basis vectors on the non-pivot coordinates: a deterministic
// complement of w in its ambient space.
inline Mat coordinate_complement(const Subspace& w) {
    const Quotient q = quotient_by(w);
    return q.section;
}

// Extends a basis of `inner` to one of `outer` using columns of outer's
// canonical basis; returns only the added columns.
inline Mat complement_within(const Subspace& inner, const Subspace& outer) {
    if (!outer.contains(inner)) throw std::invalid_argument("complement_within: not a subspace");
    Mat acc = inner.basis();
    std::size_t have = rank(acc);
    Mat added(outer.ambient(), 0);
    for (std::size_t j = 0; j < outer.dim(); ++j) {
        const Mat cand = hstack(acc, outer.basis().column(j));
        if (rank(cand) > have) {
            acc = cand;
            ++have;
            added = hstack(added, outer.basis().column(j));
        }
    }
    if (have != outer.dim()) throw std::logic_error("complement_within failed to span");
    return added;
}

}  // namespace isx

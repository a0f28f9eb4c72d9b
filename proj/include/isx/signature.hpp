#pragma once

// Signature of a symmetric rational matrix by congruence diagonalization.
// Everything stays rational; eigenvalues are never touched.

#include "isx/matrix.hpp"

namespace isx {

struct Signature {
    long n_plus = 0;
    long n_minus = 0;
    long n_zero = 0;

    long sigma() const { return n_plus - n_minus; }
    bool operator==(const Signature& o) const {
        return n_plus == o.n_plus && n_minus == o.n_minus && n_zero == o.n_zero;
    }
};

// Lagrange reduction with symmetric pivoting. When the whole remaining
// diagonal vanishes but the row does not, adding row and column j to slot k
// produces the diagonal entry 2 g(k, j) and reduction continues.
inline Signature symmetric_signature(Mat g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("signature needs a square matrix");
    if (g != g.transpose()) throw std::invalid_argument("signature needs a symmetric matrix");
    const std::size_t n = g.rows();
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        if (g(k, k) == 0) {
            std::size_t diag = n;
            for (std::size_t j = k + 1; j < n && diag == n; ++j)
                if (g(j, j) != 0) diag = j;
            if (diag != n) {
                for (std::size_t t = 0; t < n; ++t) std::swap(g(k, t), g(diag, t));
                for (std::size_t t = 0; t < n; ++t) std::swap(g(t, k), g(t, diag));
            } else {
                std::size_t off = n;
                for (std::size_t j = k + 1; j < n && off == n; ++j)
                    if (g(k, j) != 0) off = j;
                if (off == n) {
                    // Row k is zero on the active block; it contributes a
                    // radical dimension and nothing to eliminate.
                    ++sig.n_zero;
                    continue;
                }
                for (std::size_t t = 0; t < n; ++t) g(k, t) += g(off, t);
                for (std::size_t t = 0; t < n; ++t) g(t, k) += g(t, off);
            }
        }
        const Rational pivot = g(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (g(i, k) == 0) continue;
            const Rational f = g(i, k) / pivot;
            for (std::size_t t = 0; t < n; ++t) g(i, t) -= f * g(k, t);
            for (std::size_t t = 0; t < n; ++t) g(t, i) -= f * g(t, k);
        }
        if (pivot > 0)
            ++sig.n_plus;
        else
            ++sig.n_minus;
    }
    return sig;
}

}  // namespace isx

#pragma once

// Boundary tube data: the graded boundary space B with its intersection
// pairing, and for each of the two middle perversities the absolute and
// relative spaces with the three maps of their long exact sequence plus the
// absolute/relative duality pairing. Validation checks exactness, pairing
// nondegeneracy and graded symmetry, and commutativity of every square of
// the duality ladder.

#include "isx/chain.hpp"
#include "isx/graded.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace isx {

enum class Perversity { lower, upper };

inline Perversity opposite(Perversity p) {
    return p == Perversity::lower ? Perversity::upper : Perversity::lower;
}
inline const char* name(Perversity p) { return p == Perversity::lower ? "lower" : "upper"; }

struct TubeSide {
    GradedSpace absolute;    // P
    GradedSpace relative;    // P_rel
    GradedMap b_to_p;        // B -> P, shift 0
    GradedMap p_to_rel;      // P -> P_rel, shift 0
    GradedMap rel_bdry;      // P_rel -> B, shift -1
    GradedPairing abs_rel;   // P(this side) x P_rel(other side), total N

    bool operator==(const TubeSide& o) const {
        return absolute == o.absolute && relative == o.relative && b_to_p == o.b_to_p &&
               p_to_rel == o.p_to_rel && rel_bdry == o.rel_bdry && abs_rel == o.abs_rel;
    }
};

struct TubeDatum {
    std::string tube_name;
    int dimension = 0;  // N; the boundary pairing has total degree N-1
    bool witt = false;
    int min_degree = 0;
    int max_degree = 0;
    GradedSpace boundary;        // B
    GradedPairing bdry_pairing;  // B x B, total N-1
    TubeSide side_lower, side_upper;

    const TubeSide& side(Perversity p) const {
        return p == Perversity::lower ? side_lower : side_upper;
    }
    TubeSide& side(Perversity p) { return p == Perversity::lower ? side_lower : side_upper; }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;

    void fail(const std::string& what) {
        ok = false;
        errors.push_back(what);
    }
    void merge(const ValidationReport& o) {
        if (!o.ok) ok = false;
        errors.insert(errors.end(), o.errors.begin(), o.errors.end());
    }
};

namespace detail {

inline bool exact_at(const Mat& incoming, const Mat& outgoing) {
    return image(incoming) == kernel(outgoing);
}

inline std::string degstr(int d) { return std::to_string(d); }

}  // namespace detail

inline ValidationReport validate_tube(const TubeDatum& t) {
    ValidationReport rep;
    const int N = t.dimension;

    if (t.min_degree > t.max_degree) rep.fail("degree range is empty");
    const auto in_range = [&](const GradedSpace& s, const char* which) {
        if (s.empty()) return;
        if (s.min_degree() < t.min_degree || s.max_degree() > t.max_degree)
            rep.fail(std::string(which) + " has dimensions outside the declared degree range");
    };
    in_range(t.boundary, "boundary");

    if (t.witt && !(t.side_lower == t.side_upper))
        rep.fail("witt instance has distinct perversity sides");

    // Boundary pairing: shape, nondegeneracy, graded symmetry
    // <x, y>_i = (-1)^{i (N-1-i)} <y, x>_{N-1-i}.
    if (t.bdry_pairing.left() != t.boundary || t.bdry_pairing.right() != t.boundary ||
        t.bdry_pairing.total() != N - 1) {
        rep.fail("boundary pairing endpoints or total degree are wrong");
    } else {
        if (!t.bdry_pairing.nondegenerate()) rep.fail("boundary pairing is degenerate");
        for (const auto& [i, dim] : t.boundary.dims()) {
            const Mat lhs = t.bdry_pairing.block(i);
            Mat rhs = t.bdry_pairing.block(N - 1 - i).transpose();
            if ((std::int64_t(i) * (N - 1 - i)) % 2 != 0) rhs = -rhs;
            if (lhs != rhs)
                rep.fail("boundary pairing breaks graded symmetry at degree " + detail::degstr(i));
        }
    }

    for (Perversity pv : {Perversity::lower, Perversity::upper}) {
        const TubeSide& s = t.side(pv);
        const std::string tag = std::string("side ") + name(pv);
        in_range(s.absolute, "absolute space");
        in_range(s.relative, "relative space");

        if (s.b_to_p.src() != t.boundary || s.b_to_p.dst() != s.absolute || s.b_to_p.shift() != 0) {
            rep.fail(tag + ": b_to_p endpoints or shift are wrong");
            continue;
        }
        if (s.p_to_rel.src() != s.absolute || s.p_to_rel.dst() != s.relative ||
            s.p_to_rel.shift() != 0) {
            rep.fail(tag + ": p_to_rel endpoints or shift are wrong");
            continue;
        }
        if (s.rel_bdry.src() != s.relative || s.rel_bdry.dst() != t.boundary ||
            s.rel_bdry.shift() != -1) {
            rep.fail(tag + ": rel_bdry endpoints or shift are wrong");
            continue;
        }

        // Long exact sequence ... -> B_i -> P_i -> P_rel_i -> B_{i-1} -> ...
        int lo = t.min_degree, hi = t.max_degree;
        for (int i = lo; i <= hi; ++i) {
            if (!detail::exact_at(s.b_to_p.block(i), s.p_to_rel.block(i)))
                rep.fail(tag + ": sequence not exact at absolute degree " + detail::degstr(i));
            if (!detail::exact_at(s.p_to_rel.block(i), s.rel_bdry.block(i)))
                rep.fail(tag + ": sequence not exact at relative degree " + detail::degstr(i));
            if (!detail::exact_at(s.rel_bdry.block(i + 1), s.b_to_p.block(i)))
                rep.fail(tag + ": sequence not exact at boundary degree " + detail::degstr(i));
        }

        const TubeSide& other = t.side(opposite(pv));
        if (s.abs_rel.left() != s.absolute || s.abs_rel.right() != other.relative ||
            s.abs_rel.total() != N) {
            rep.fail(tag + ": absolute/relative pairing endpoints or total degree are wrong");
            continue;
        }
        if (!s.abs_rel.nondegenerate())
            rep.fail(tag + ": absolute/relative pairing is degenerate");
    }
    if (!rep.ok) return rep;

    // Duality ladder: with D(x) = <x, .>, the three squares say the duals of
    // b_to_p, p_to_rel, rel_bdry are rel_bdry, p_to_rel, b_to_p of the other
    // side. As matrix identities per degree i:
    //   (1) b_to_p_i^T Psi_i          = Phi_i rel_bdry'_{N-i}
    //   (2) Psi'_{N-i} p_to_rel_i     = p_to_rel'_{N-i}^T Psi_i^T
    //   (3) Phi_{i-1}^T rel_bdry_i    = b_to_p'_{N-i}^T Psi'_{N-i}
    // where primes are the opposite side and Psi pairs this side's absolute
    // space with the opposite relative space.
    for (Perversity pv : {Perversity::lower, Perversity::upper}) {
        const TubeSide& s = t.side(pv);
        const TubeSide& o = t.side(opposite(pv));
        const std::string tag = std::string("ladder from side ") + name(pv);
        for (int i = t.min_degree; i <= t.max_degree; ++i) {
            const Mat lhs1 = s.b_to_p.block(i).transpose() * s.abs_rel.block(i);
            const Mat rhs1 = t.bdry_pairing.block(i) * o.rel_bdry.block(N - i);
            if (lhs1 != rhs1)
                rep.fail(tag + ": square 1 fails at degree " + detail::degstr(i));

            const Mat lhs2 = o.abs_rel.block(N - i) * s.p_to_rel.block(i);
            const Mat rhs2 = o.p_to_rel.block(N - i).transpose() * s.abs_rel.block(i).transpose();
            if (lhs2 != rhs2)
                rep.fail(tag + ": square 2 fails at degree " + detail::degstr(i));

            const Mat lhs3 = t.bdry_pairing.block(i - 1).transpose() * s.rel_bdry.block(i);
            const Mat rhs3 = o.b_to_p.block(N - i).transpose() * o.abs_rel.block(N - i);
            if (lhs3 != rhs3)
                rep.fail(tag + ": square 3 fails at degree " + detail::degstr(i));
        }
    }
    return rep;
}

// The two interesting graded pieces cut out of B by the sequence: Z = the
// image of the absolute space in B... actually of B in P; see below.
//
// Z_i = im(b_to_p_i) inside P_i, and Y_i = coker(p_to_rel_i). The kernel of
// b_to_p_i equals im(rel_bdry_{i+1}) and is a copy of Y_{i+1} sitting inside
// B_i; its basis is recorded in y_in_b.
struct ZYData {
    GradedSpace Z, Y;
    std::map<int, Mat> z_in_p;   // per degree i: basis columns of im(b_to_p_i)
    std::map<int, Mat> y_in_b;   // per boundary degree i: basis of ker(b_to_p_i) = im(rel_bdry_{i+1})

    Mat z_basis(int deg) const {
        const auto it = z_in_p.find(deg);
        return it == z_in_p.end() ? Mat(0, 0) : it->second;
    }
    Mat y_basis(int deg, std::size_t bdim) const {
        const auto it = y_in_b.find(deg);
        return it == y_in_b.end() ? Mat(bdim, 0) : it->second;
    }
};

inline ZYData compute_zy(const TubeDatum& t, Perversity pv) {
    const TubeSide& s = t.side(pv);
    ZYData out;
    for (int i = t.min_degree; i <= t.max_degree; ++i) {
        const Mat alpha = s.b_to_p.block(i);
        const Mat z = column_space_basis(alpha);
        if (z.cols() > 0) {
            out.Z.set_dim(i, z.cols());
            out.z_in_p.emplace(i, z);
        }
        const std::size_t y = s.relative.dim(i) - rank(s.p_to_rel.block(i));
        if (y > 0) out.Y.set_dim(i, y);

        const Mat gam = column_space_basis(s.rel_bdry.block(i + 1));
        if (image(gam) != kernel(alpha))
            throw std::logic_error("zy: im(rel_bdry) differs from ker(b_to_p) at degree " +
                                   detail::degstr(i));
        if (gam.cols() > 0) out.y_in_b.emplace(i, gam);
    }
    // Short exact sequence bookkeeping: Y_{i+1} + Z_i = B_i.
    for (int i = t.min_degree; i <= t.max_degree; ++i)
        if (out.Y.dim(i + 1) + out.Z.dim(i) != t.boundary.dim(i))
            throw std::logic_error("zy: dim Y_{i+1} + dim Z_i != dim B_i at degree " +
                                   detail::degstr(i));
    for (const auto& [i, m] : out.y_in_b)
        if (std::size_t(m.cols()) != out.Y.dim(i + 1))
            throw std::logic_error("zy: embedded Y basis has wrong dimension at degree " +
                                   detail::degstr(i));
    return out;
}

// Cross checks tying the two perversity sides together: complementary
// dimensions and the vanishing of the boundary pairing on the two embedded
// Y's. Returns a report rather than throwing since these double as
// validation for externally supplied data.
inline ValidationReport check_zy_duality(const TubeDatum& t, const ZYData& lower,
                                         const ZYData& upper) {
    ValidationReport rep;
    const int N = t.dimension;
    for (int i = t.min_degree; i <= t.max_degree; ++i) {
        if (lower.Y.dim(i) != upper.Z.dim(N - i))
            rep.fail("dim Y(lower)_" + detail::degstr(i) + " != dim Z(upper)_" +
                     detail::degstr(N - i));
        if (upper.Y.dim(i) != lower.Z.dim(N - i))
            rep.fail("dim Y(upper)_" + detail::degstr(i) + " != dim Z(lower)_" +
                     detail::degstr(N - i));
    }
    for (int i = t.min_degree; i <= t.max_degree; ++i) {
        const Mat wl = lower.y_basis(i, t.boundary.dim(i));
        const Mat wu = upper.y_basis(N - 1 - i, t.boundary.dim(N - 1 - i));
        if (wl.cols() == 0 || wu.cols() == 0) continue;
        if (!(wl.transpose() * t.bdry_pairing.block(i) * wu).is_zero())
            rep.fail("boundary pairing does not vanish on the embedded Y spaces at degree " +
                     detail::degstr(i));
    }
    return rep;
}

}  // namespace isx

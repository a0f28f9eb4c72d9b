#pragma once

// Global data: the ambient graded space M receiving the boundary, and the
// duality pairing on the cone R of that inclusion. Validation checks that
// the pairing is nondegenerate and compatible with the boundary pairing
// through the two connecting squares. intersection_space assembles the cone
// of the composite A -> B -> M together with all of the connecting maps and
// verifies the octahedron of exact triangles behind them.

#include "isx/approximation.hpp"

namespace isx {

struct GlobalDatum {
    GradedSpace ambient;       // M
    GradedMap include_bdry;    // iota : B -> M, shift 0
    GradedPairing lefschetz;   // R x M, total N, where R is the cone of iota
};

// Canonical cone of iota. Degreewise R_i = coker(iota)_i (+) ker(iota)_{i-1}.
inline ConeModel ambient_cone(const TubeDatum& t, const GlobalDatum& g) {
    if (g.include_bdry.src() != t.boundary || g.include_bdry.dst() != g.ambient ||
        g.include_bdry.shift() != 0)
        throw std::invalid_argument("ambient inclusion endpoints or shift are wrong");
    return cone_model(g.include_bdry);
}

// The pairing with the roles of the two factors exchanged:
// <m, rho>' = (-1)^{i (N-i)} <rho, m> for m of degree i.
inline Mat lefschetz_swapped_block(const GlobalDatum& g, int N, int i) {
    Mat b = g.lefschetz.block(N - i).transpose();
    if ((std::int64_t(i) * (N - i)) % 2 != 0) b = -b;
    return b;
}

inline ValidationReport validate_global(const TubeDatum& t, const GlobalDatum& g) {
    ValidationReport rep;
    const int N = t.dimension;
    if (!g.ambient.empty() &&
        (g.ambient.min_degree() < t.min_degree || g.ambient.max_degree() > t.max_degree)) {
        rep.fail("ambient space has dimensions outside the declared degree range");
        return rep;
    }
    ConeModel R;
    try {
        R = ambient_cone(t, g);
    } catch (const std::exception& e) {
        rep.fail(e.what());
        return rep;
    }
    if (g.lefschetz.left() != R.H || g.lefschetz.right() != g.ambient ||
        g.lefschetz.total() != N) {
        rep.fail("duality pairing endpoints or total degree are wrong");
        return rep;
    }
    if (!g.lefschetz.nondegenerate()) rep.fail("duality pairing is degenerate");

    // Self test, not a property of the input: the cone triangle
    // B -> M -> R -> B[-1] must be exact by construction.
    const GradedMap j = R.include_dst, delta = R.bdry_src;
    for (int i = t.min_degree; i <= t.max_degree + 1; ++i) {
        if (!(image(g.include_bdry.block(i)) == kernel(j.block(i))) ||
            !(image(j.block(i)) == kernel(delta.block(i))) ||
            !(image(delta.block(i + 1)) == kernel(g.include_bdry.block(i))))
            throw std::logic_error("ambient cone triangle is not exact at degree " +
                                   std::to_string(i));
    }

    // Square 1: <iota b, rho>' = <b, delta rho> for b of degree i.
    for (int i = t.min_degree - 1; i <= t.max_degree + 1; ++i) {
        const Mat lhs = g.include_bdry.block(i).transpose() * lefschetz_swapped_block(g, N, i);
        const Mat rhs = t.bdry_pairing.block(i) * delta.block(N - i);
        if (lhs != rhs) rep.fail("duality square 1 fails at degree " + std::to_string(i));
    }
    // Square 2: <j m, m'> = <m, j m'>' for m of degree i.
    for (int i = t.min_degree - 1; i <= t.max_degree + 1; ++i) {
        const Mat lhs = j.block(i).transpose() * g.lefschetz.block(i);
        const Mat rhs = lefschetz_swapped_block(g, N, i) * j.block(N - i);
        if (lhs != rhs) rep.fail("duality square 2 fails at degree " + std::to_string(i));
    }
    return rep;
}

// The intersection model: the cone of phi = iota . f with every map of the
// two exact triangles through it.
struct IXModel {
    int N = 0;
    Perversity perversity = Perversity::lower;
    Approximation approx;
    GradedPairing bdry_pairing;   // copy of the tube pairing
    GradedPairing lefschetz;      // copy of the ambient pairing
    ConeData cf;                  // cone of f : A -> B, with ell and the Y identification
    ConeModel R;                  // cone of iota : B -> M
    ConeModel ix;                 // cone of phi : A -> M
    GradedMap phi;                // A -> M
    GradedMap u;                  // H_cf -> H_ix
    GradedMap v;                  // H_ix -> R
    GradedMap h;                  // M -> H_ix
    GradedMap g;                  // H_ix -> A, shift -1
    GradedMap iota;               // B -> M

    const GradedSpace& H() const { return ix.H; }
    GradedMap ell() const { return cf.ell; }                 // B -> H_cf
    GradedMap j() const { return R.include_dst; }            // M -> R
    GradedMap delta() const { return R.bdry_src; }           // R -> B, shift -1
};

namespace detail {

// Coordinates of the columns of `vectors` in the column basis `basis`;
// throws if they are not in the span.
inline Mat coordinates_in(const Mat& basis, const Mat& vectors, const char* what) {
    const auto x = solve(basis, vectors);
    if (!x) throw std::logic_error(std::string(what) + ": vectors leave the span");
    return *x;
}

}  // namespace detail

inline IXModel intersection_space(const TubeDatum& t, const GlobalDatum& g,
                                  const Approximation& a, Perversity pv) {
    if (!a.zero_differential())
        throw std::invalid_argument("intersection model requires a zero differential approximation");
    IXModel m;
    m.N = t.dimension;
    m.perversity = pv;
    m.approx = a;
    m.bdry_pairing = t.bdry_pairing;
    m.lefschetz = g.lefschetz;
    m.iota = g.include_bdry;
    m.cf = cone_data(t, pv, a);
    m.R = ambient_cone(t, g);
    m.phi = compose(g.include_bdry, a.f);
    m.ix = cone_model(m.phi);

    // u([b], a) = ([iota b], a), in cone model coordinates.
    m.u = GradedMap::zero(m.cf.cone.H, m.ix.H, 0);
    for (const auto& [i, dim] : m.cf.cone.H.dims()) {
        const std::size_t ck_cf = m.cf.cone.coker_dim(i), kr_cf = m.cf.cone.ker_dim(i - 1);
        const std::size_t ck_ix = m.ix.coker_dim(i), kr_ix = m.ix.ker_dim(i - 1);
        Mat blk(ck_ix + kr_ix, ck_cf + kr_cf);
        const Mat top = m.ix.coker_projection(i) * g.include_bdry.block(i) * m.cf.cone.coker_section(i);
        for (std::size_t r = 0; r < ck_ix; ++r)
            for (std::size_t c = 0; c < ck_cf; ++c) blk(r, c) = top(r, c);
        if (kr_cf > 0) {
            const Mat conv = detail::coordinates_in(m.ix.ker_basis(i - 1), m.cf.cone.ker_basis(i - 1),
                                                    "kernel comparison of f into phi");
            for (std::size_t r = 0; r < kr_ix; ++r)
                for (std::size_t c = 0; c < kr_cf; ++c) blk(ck_ix + r, ck_cf + c) = conv(r, c);
        }
        m.u.set_block(i, blk);
    }

    // v([m], a) = ([m], f a).
    m.v = GradedMap::zero(m.ix.H, m.R.H, 0);
    for (const auto& [i, dim] : m.ix.H.dims()) {
        const std::size_t ck_ix = m.ix.coker_dim(i), kr_ix = m.ix.ker_dim(i - 1);
        const std::size_t ck_r = m.R.coker_dim(i), kr_r = m.R.ker_dim(i - 1);
        Mat blk(ck_r + kr_r, ck_ix + kr_ix);
        const Mat top = m.R.coker_projection(i) * m.ix.coker_section(i);
        for (std::size_t r = 0; r < ck_r; ++r)
            for (std::size_t c = 0; c < ck_ix; ++c) blk(r, c) = top(r, c);
        if (kr_ix > 0) {
            const Mat fk = a.f.block(i - 1) * m.ix.ker_basis(i - 1);
            const Mat conv = detail::coordinates_in(m.R.ker_basis(i - 1), fk,
                                                    "kernel comparison of phi into iota");
            for (std::size_t r = 0; r < kr_r; ++r)
                for (std::size_t c = 0; c < kr_ix; ++c) blk(ck_r + r, ck_ix + c) = conv(r, c);
        }
        m.v.set_block(i, blk);
    }

    // h(m) = ([m], 0) and g([m], a) = a.
    m.h = m.ix.include_dst;
    m.g = m.ix.bdry_src;

    // The two triangles through H_ix, checked as exact sequences, plus the
    // five compatibilities of the octahedron.
    const GradedMap ell = m.cf.ell, j = m.R.include_dst, delta = m.R.bdry_src;
    const GradedMap ell_delta = compose(ell, delta);  // R -> H_cf, shift -1
    for (int i = t.min_degree - 1; i <= t.max_degree + 2; ++i) {
        if (!(image(m.u.block(i)) == kernel(m.v.block(i))))
            throw std::logic_error("triangle not exact at the intersection term, degree " +
                                   std::to_string(i));
        if (!(image(m.v.block(i)) == kernel(ell_delta.block(i))))
            throw std::logic_error("triangle not exact at the ambient cone term, degree " +
                                   std::to_string(i));
        if (!(image(ell_delta.block(i + 1)) == kernel(m.u.block(i))))
            throw std::logic_error("triangle not exact at the boundary cone term, degree " +
                                   std::to_string(i));
        if (!(image(m.phi.block(i)) == kernel(m.h.block(i))))
            throw std::logic_error("triangle not exact at the ambient term, degree " +
                                   std::to_string(i));
        if (!(image(m.h.block(i)) == kernel(m.g.block(i))))
            throw std::logic_error("triangle not exact at the intersection term (second triangle), "
                                   "degree " + std::to_string(i));
        if (!(image(m.g.block(i + 1)) == kernel(m.phi.block(i))))
            throw std::logic_error("triangle not exact at the approximation term, degree " +
                                   std::to_string(i));
    }
    // (1) the boundary map of the u, v triangle is ell . delta: implicit in
    //     the exactness checks above, which use exactly that composite.
    // (2) the boundary of the cone of f agrees with g . u.
    if (!(compose(m.g, m.u) == m.cf.cone.bdry_src))
        throw std::logic_error("cone boundary differs from g after u");
    // (3) j = v . h.
    if (!(compose(m.v, m.h) == j)) throw std::logic_error("j differs from v after h");
    // (4) u . ell = h . iota.
    if (!(compose(m.u, ell) == compose(m.h, g.include_bdry)))
        throw std::logic_error("u after ell differs from h after iota");
    // (5) delta . v = f . g.
    if (!(compose(delta, m.v) == compose(a.f, m.g)))
        throw std::logic_error("delta after v differs from f after g");

    return m;
}

// Dimensions of the intersection homology model per degree.
inline std::map<int, std::size_t> ix_dimensions(const IXModel& m) {
    std::map<int, std::size_t> out;
    for (const auto& [deg, d] : m.H().dims()) out[deg] = d;
    return out;
}

}  // namespace isx

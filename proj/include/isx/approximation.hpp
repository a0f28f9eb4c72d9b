#pragma once

// Boundary approximations: chain complexes (A, d) with a chain map f into
// the boundary that become the Z part on homology. Provides the canonical
// coordinate complement construction, a checker for externally supplied
// candidates, the cone of f with its boundary identification, the local
// duality pairing, and the obstruction to extending it, computed by two
// independent methods that are required to agree.

#include "isx/tube.hpp"

namespace isx {

struct Approximation {
    ChainComplex complex;  // (A, d); d is zero for the built-in constructions
    GradedMap f;           // A -> B, shift 0, chain map into (B, 0)

    bool zero_differential() const { return complex.d.is_zero(); }
};

// A with zero differential, embedded as the coordinate complement of the
// copy of Y inside B. Deterministic: the complement consists of standard
// basis vectors on the non-pivot coordinates.
inline Approximation default_approximation(const TubeDatum& t, Perversity pv) {
    const ZYData zy = compute_zy(t, pv);
    GradedSpace as;
    std::map<int, Mat> blocks;
    for (const auto& [i, bdim] : t.boundary.dims()) {
        const Mat w = zy.y_basis(i, bdim);
        const Mat comp = coordinate_complement(Subspace::span_of(bdim, w));
        if (comp.cols() == 0) continue;
        as.set_dim(i, comp.cols());
        blocks.emplace(i, comp);
    }
    Approximation a;
    a.complex = ChainComplex::with_zero_differential(as);
    a.f = GradedMap::zero(as, t.boundary, 0);
    for (const auto& [i, m] : blocks) a.f.set_block(i, m);
    return a;
}

// Coordinates of the Z part: solves the image basis against b_to_p, so the
// composite below is "project B onto Z".
inline Mat z_projection(const TubeSide& s, const ZYData& zy, int degree) {
    const Mat zb = zy.z_basis(degree);
    if (zb.cols() == 0) return Mat(0, s.b_to_p.block(degree).cols());
    const auto x = solve(zb, s.b_to_p.block(degree));
    if (!x) throw std::logic_error("z projection: image basis failed to span");
    return *x;
}

// Candidate acceptance: (A, d) a genuine complex, f a chain map into (B, 0),
// and H(A) -> B -> Z an isomorphism in every degree. Candidates with
// nonzero differential are evaluated through their homology.
inline ValidationReport check_approximation(const TubeDatum& t, Perversity pv,
                                            const Approximation& a) {
    ValidationReport rep;
    const TubeSide& s = t.side(pv);
    try {
        a.complex.validate();
    } catch (const std::exception& e) {
        rep.fail(std::string("approximation complex: ") + e.what());
        return rep;
    }
    if (a.f.shift() != 0 || a.f.src() != a.complex.space || a.f.dst() != t.boundary) {
        rep.fail("approximation map endpoints or shift are wrong");
        return rep;
    }
    if (!compose(a.f, a.complex.d).is_zero()) {
        rep.fail("approximation map is not a chain map into the zero differential");
        return rep;
    }
    const ZYData zy = compute_zy(t, pv);
    const Homology ha = homology(a.complex);
    for (int i = t.min_degree; i <= t.max_degree; ++i) {
        const Mat composite =
            z_projection(s, zy, i) * a.f.block(i) * ha.section(i, a.complex.space.dim(i));
        if (composite.rows() != composite.cols() || ha.H.dim(i) != zy.Z.dim(i) ||
            !(composite.rows() == 0 || is_invertible(composite)))
            rep.fail("H(A) -> Z fails to be an isomorphism at degree " + std::to_string(i));
    }
    return rep;
}

// The cone of f with the inclusion of B and the identification of its
// homology with the shifted Y. Requires a zero differential candidate; the
// checks on ell and the boundary identification are hard errors because
// they cannot fail on valid data.
struct ConeData {
    ConeModel cone;               // of f : A -> B
    GradedMap ell;                // B -> H_cf, shift 0
    std::map<int, Mat> bdry_iso;  // per degree r: H_cf(r) x Y(r+1), invertible
    ZYData zy;

    Mat bdry_iso_block(int r) const {
        const auto it = bdry_iso.find(r);
        return it == bdry_iso.end() ? Mat(cone.H.dim(r), 0) : it->second;
    }
};

inline ConeData cone_data(const TubeDatum& t, Perversity pv, const Approximation& a) {
    if (!a.zero_differential())
        throw std::invalid_argument("cone data requires a zero differential approximation");
    ConeData cd;
    cd.zy = compute_zy(t, pv);
    cd.cone = cone_model(a.f);
    cd.ell = cd.cone.include_dst;
    for (const auto& [r, h] : cd.cone.H.dims()) {
        if (rank(cd.ell.block(r)) != h)
            throw std::logic_error("cone inclusion is not surjective at degree " +
                                   std::to_string(r));
        const Mat w = cd.zy.y_basis(r, t.boundary.dim(r));
        const Mat iso = cd.ell.block(r) * w;
        if (iso.rows() != iso.cols() || !is_invertible(iso))
            throw std::logic_error(
                "shifted Y does not map isomorphically onto the cone homology at degree " +
                std::to_string(r));
        cd.bdry_iso.emplace(r, iso);
    }
    for (const auto& [r, m] : cd.zy.y_in_b)
        if (cd.cone.H.dim(r) != std::size_t(m.cols()))
            throw std::logic_error(
                "shifted Y does not map isomorphically onto the cone homology at degree " +
                std::to_string(r));
    return cd;
}

// Local duality: the nondegenerate pairing between H_cf of one side and the
// approximation of the other, normalized so that composing with ell is the
// boundary pairing against f wherever that is possible. Blocks are square
// by the complementary dimension counts and invertible for valid data.
inline GradedPairing local_duality_iso(const GradedPairing& bdry_pairing, int N,
                                       const ConeData& cd, const Approximation& a_other) {
    GradedPairing pi(cd.cone.H, a_other.complex.space, N - 1);
    for (const auto& [r, h] : cd.cone.H.dims()) {
        const Mat w = cd.zy.y_basis(r, bdry_pairing.left().dim(r));
        const Mat lw = cd.bdry_iso_block(r);
        const Mat rhs = w.transpose() * bdry_pairing.block(r) * a_other.f.block(N - 1 - r);
        if (rhs.cols() != lw.rows())
            throw std::logic_error("local duality block is not square at degree " +
                                   std::to_string(r));
        const Mat block = inverse(lw).transpose() * rhs;
        if (!is_invertible(block))
            throw std::logic_error("local duality fails to be an isomorphism at degree " +
                                   std::to_string(r));
        pi.set_block(r, block);
    }
    return pi;
}

inline GradedPairing local_duality_iso(const TubeDatum& t, const ConeData& cd,
                                       const Approximation& a_other) {
    return local_duality_iso(t.bdry_pairing, t.dimension, cd, a_other);
}

struct ObstructionReport {
    std::map<int, bool> diagram_vanishes;  // keyed by boundary degree
    std::map<int, bool> pairing_vanishes;
    bool all_vanish = true;
    std::vector<int> failing_degrees;
};

// The obstruction to extending local duality over all of B, evaluated by
// the diagram route (does duality composed with ell equal the boundary
// pairing against f) and by the direct pairing route (does the boundary
// pairing vanish on the two approximation images). The two routes are
// computed independently and must agree degree by degree; disagreement
// means the implementation is inconsistent, not the data, so it is fatal.
inline ObstructionReport obstructions(const TubeDatum& t, const Approximation& a_lower,
                                      const Approximation& a_upper) {
    const int N = t.dimension;
    const ConeData cd_lower = cone_data(t, Perversity::lower, a_lower);
    const ConeData cd_upper = cone_data(t, Perversity::upper, a_upper);
    const GradedPairing pi_lower = local_duality_iso(t, cd_lower, a_upper);
    const GradedPairing pi_upper = local_duality_iso(t, cd_upper, a_lower);

    ObstructionReport rep;
    for (int r = t.min_degree; r <= t.max_degree; ++r) {
        const Mat fl = a_lower.f.block(r);
        const Mat fu = a_upper.f.block(N - 1 - r);
        const bool pairing_ok = (fl.transpose() * t.bdry_pairing.block(r) * fu).is_zero();

        const Mat defect_lower = cd_lower.ell.block(r).transpose() * pi_lower.block(r) -
                                 t.bdry_pairing.block(r) * fu;
        const Mat fu_at_r = a_upper.f.block(r);
        const Mat defect_upper = cd_upper.ell.block(r).transpose() * pi_upper.block(r) -
                                 t.bdry_pairing.block(r) * a_lower.f.block(N - 1 - r);
        const bool diagram_ok = defect_lower.is_zero();

        // The mirrored routes must agree with the mirrored degrees.
        const bool pairing_mirror =
            (fu_at_r.transpose() * t.bdry_pairing.block(r) * a_lower.f.block(N - 1 - r)).is_zero();
        if (diagram_ok != pairing_ok)
            throw std::logic_error("obstruction methods disagree at degree " + std::to_string(r));
        if (defect_upper.is_zero() != pairing_mirror)
            throw std::logic_error("obstruction methods disagree at degree " + std::to_string(r));

        rep.diagram_vanishes[r] = diagram_ok;
        rep.pairing_vanishes[r] = pairing_ok;
        if (!pairing_ok) {
            rep.all_vanish = false;
            rep.failing_degrees.push_back(r);
        }
    }
    return rep;
}

// Witt construction: keep the canonical complement in low degrees, and in
// degrees at or above the middle take the annihilator of the already chosen
// complementary piece under the boundary pairing. For valid Witt data this
// always lands in a complement of Y, which is verified.
inline Approximation witt_approximation(const TubeDatum& t) {
    if (!t.witt) throw std::invalid_argument("witt approximation needs witt data");
    if (t.dimension % 2 != 0)
        throw std::invalid_argument("witt approximation needs even dimension");
    const int N = t.dimension;
    const int m = N / 2;
    const Approximation base = default_approximation(t, Perversity::lower);
    const ZYData zy = compute_zy(t, Perversity::lower);

    GradedSpace as;
    std::map<int, Mat> blocks;
    for (const auto& [i, bdim] : t.boundary.dims()) {
        Mat block;
        if (i < m) {
            block = base.f.block(i);
        } else {
            const Mat flow = base.f.block(N - 1 - i);
            block = kernel_basis(flow.transpose() * t.bdry_pairing.block(i).transpose());
        }
        if (block.cols() == 0) continue;
        as.set_dim(i, block.cols());
        blocks.emplace(i, block);
    }
    Approximation a;
    a.complex = ChainComplex::with_zero_differential(as);
    a.f = GradedMap::zero(as, t.boundary, 0);
    for (const auto& [i, m2] : blocks) a.f.set_block(i, m2);

    for (const auto& [i, bdim] : t.boundary.dims()) {
        const Mat block = a.f.block(i);
        if (std::size_t(block.cols()) != zy.Z.dim(i))
            throw std::logic_error("witt complement has wrong dimension at degree " +
                                   std::to_string(i));
        const Subspace meet =
            intersection(image(block), image(zy.y_basis(i, bdim)));
        if (meet.dim() != 0)
            throw std::logic_error("witt complement meets the shifted Y at degree " +
                                   std::to_string(i));
    }
    const ValidationReport rep = check_approximation(t, Perversity::lower, a);
    if (!rep.ok) throw std::logic_error("witt construction failed: " + rep.errors.front());
    return a;
}

}  // namespace isx

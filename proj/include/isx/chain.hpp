#pragma once

// Chain complexes with degree -1 differential, mapping cones, and homology
// with explicit cycle sections and class projections. Also the closed-form
// cone model used when both sides of a map carry the zero differential.

#include "isx/graded.hpp"
#include "isx/subspace.hpp"

#include <map>

namespace isx {

struct ChainComplex {
    GradedSpace space;
    GradedMap d;  // shift -1

    static ChainComplex with_zero_differential(const GradedSpace& s) {
        return ChainComplex{s, GradedMap::zero(s, s, -1)};
    }

    void validate() const {
        if (d.shift() != -1) throw std::invalid_argument("differential must have shift -1");
        if (d.src() != space || d.dst() != space)
            throw std::invalid_argument("differential endpoints differ from the underlying space");
        const GradedMap dd = compose(d, d);
        if (!dd.is_zero()) throw std::invalid_argument("differential does not square to zero");
    }
};

// A chain map between complexes: degreewise blocks commuting with the
// differentials, d_dst f = f d_src (shift 0).
inline void require_chain_map(const GradedMap& f, const ChainComplex& src, const ChainComplex& dst) {
    if (f.shift() != 0) throw std::invalid_argument("chain map must have shift 0");
    if (f.src() != src.space || f.dst() != dst.space)
        throw std::invalid_argument("chain map endpoints mismatch");
    if (compose(dst.d, f) != compose(f, src.d))
        throw std::invalid_argument("map does not commute with differentials");
}

struct MappingCone {
    ChainComplex complex;     // C_i = dst_i (+) src_{i-1}
    GradedMap include_dst;    // dst -> C, shift 0
    GradedMap project_src;    // C -> src, shift -1, (b, a) |-> a
};

// Cone of f : src -> dst with differential d(b, a) = (d b + f a, -d a).
inline MappingCone mapping_cone(const GradedMap& f, const ChainComplex& src, const ChainComplex& dst) {
    require_chain_map(f, src, dst);
    GradedSpace cs;
    {
        std::map<int, std::size_t> dims;
        for (const auto& [deg, dim] : dst.space.dims()) dims[deg] += dim;
        for (const auto& [deg, dim] : src.space.dims()) dims[deg + 1] += dim;
        for (const auto& [deg, dim] : dims) cs.set_dim(deg, dim);
    }
    MappingCone cone;
    cone.complex.space = cs;
    cone.complex.d = GradedMap::zero(cs, cs, -1);
    cone.include_dst = GradedMap::zero(dst.space, cs, 0);
    cone.project_src = GradedMap::zero(cs, src.space, -1);
    for (const auto& [deg, dim] : cs.dims()) {
        const std::size_t nb = dst.space.dim(deg), na = src.space.dim(deg - 1);
        const std::size_t mb = dst.space.dim(deg - 1), ma = src.space.dim(deg - 2);
        Mat d(mb + ma, nb + na);
        const Mat db = dst.d.block(deg), da = src.d.block(deg - 1), fb = f.block(deg - 1);
        for (std::size_t i = 0; i < mb; ++i) {
            for (std::size_t j = 0; j < nb; ++j) d(i, j) = db(i, j);
            for (std::size_t j = 0; j < na; ++j) d(i, nb + j) = fb(i, j);
        }
        for (std::size_t i = 0; i < ma; ++i)
            for (std::size_t j = 0; j < na; ++j) d(mb + i, nb + j) = -da(i, j);
        cone.complex.d.set_block(deg, d);

        Mat inc(nb + na, nb);
        for (std::size_t i = 0; i < nb; ++i) inc(i, i) = 1;
        cone.include_dst.set_block(deg, inc);

        Mat proj(na, nb + na);
        for (std::size_t i = 0; i < na; ++i) proj(i, nb + i) = 1;
        cone.project_src.set_block(deg, proj);
    }
    cone.complex.validate();
    return cone;
}

// Homology with a chosen cycle representative per class and a projection
// defined on all chains that kills boundaries and restricts to "take the
// class" on cycles: class_projection * cycle_section = identity.
struct Homology {
    GradedSpace H;
    std::map<int, Mat> cycle_section;     // chains(deg) x H(deg)
    std::map<int, Mat> class_projection;  // H(deg) x chains(deg)

    Mat section(int deg, std::size_t chain_dim) const {
        const auto it = cycle_section.find(deg);
        if (it != cycle_section.end()) return it->second;
        return Mat(chain_dim, 0);
    }
    Mat projection(int deg, std::size_t chain_dim) const {
        const auto it = class_projection.find(deg);
        if (it != class_projection.end()) return it->second;
        return Mat(0, chain_dim);
    }
};

inline Homology homology(const ChainComplex& c) {
    c.validate();
    Homology out;
    for (const auto& [deg, n] : c.space.dims()) {
        const Mat cycles = kernel_basis(c.d.block(deg));
        const Mat boundaries = column_space_basis(c.d.block(deg + 1));
        // Extend the boundary basis to a basis of the cycles; the added
        // columns represent the homology classes.
        Mat reps(n, 0);
        {
            Mat acc = boundaries;
            std::size_t have = rank(acc);
            for (std::size_t j = 0; j < cycles.cols(); ++j) {
                const Mat cand = hstack(acc, cycles.column(j));
                if (rank(cand) > have) {
                    acc = cand;
                    ++have;
                    reps = hstack(reps, cycles.column(j));
                }
            }
        }
        const std::size_t h = reps.cols();
        out.H.set_dim(deg, h);
        if (h == 0) continue;
        // Complete [boundaries | reps] to a basis of the chains with
        // standard vectors, invert, and read off the rows dual to reps.
        Mat full = hstack(boundaries, reps);
        std::size_t have = rank(full);
        for (std::size_t j = 0; j < n && have < n; ++j) {
            Mat e(n, 1);
            e(j, 0) = 1;
            const Mat cand = hstack(full, e);
            if (rank(cand) > have) {
                full = cand;
                ++have;
            }
        }
        const Mat inv = inverse(full);
        out.cycle_section[deg] = reps;
        out.class_projection[deg] = inv.rows_slice(boundaries.cols(), h);
    }
    return out;
}

// Map induced on homology by a chain map.
inline GradedMap induced_on_homology(const GradedMap& f, const ChainComplex& src,
                                     const ChainComplex& dst, const Homology& hsrc,
                                     const Homology& hdst) {
    GradedMap r(hsrc.H, hdst.H, f.shift());
    for (const auto& [deg, h] : hsrc.H.dims()) {
        const int tdeg = deg + f.shift();
        r.set_block(deg, hdst.projection(tdeg, dst.space.dim(tdeg)) * f.block(deg) *
                             hsrc.section(deg, src.space.dim(deg)));
    }
    return r;
}

// Closed-form cone model for a shift 0 map between zero-differential
// complexes: H_i = coker(f)_i (+) ker(f)_{i-1}, with the inclusion of the
// target and the boundary onto the source in explicit coordinates.
struct ConeModel {
    GradedSpace H;
    GradedMap f;                      // the map the model was built from
    std::map<int, Quotient> coker;    // per target degree
    std::map<int, Mat> ker;           // per source degree, kernel basis columns
    GradedMap include_dst;            // dst -> H, shift 0: t |-> ([t], 0)
    GradedMap bdry_src;               // H -> src, shift -1: ([t], a) |-> a (source coordinates)

    std::size_t coker_dim(int deg) const {
        const auto it = coker.find(deg);
        return it == coker.end() ? 0 : it->second.kept.size();
    }
    std::size_t ker_dim(int deg) const {
        const auto it = ker.find(deg);
        return it == ker.end() ? 0 : it->second.cols();
    }
    Mat coker_projection(int deg) const {
        const auto it = coker.find(deg);
        if (it != coker.end()) return it->second.projection;
        return Mat(0, f.dst().dim(deg));
    }
    Mat coker_section(int deg) const {
        const auto it = coker.find(deg);
        if (it != coker.end()) return it->second.section;
        return Mat(f.dst().dim(deg), 0);
    }
    Mat ker_basis(int deg) const {
        const auto it = ker.find(deg);
        if (it != ker.end()) return it->second;
        return Mat(f.src().dim(deg), 0);
    }
};

inline ConeModel cone_model(const GradedMap& f) {
    if (f.shift() != 0) throw std::invalid_argument("cone model expects a shift 0 map");
    ConeModel m;
    m.f = f;
    for (const auto& [deg, dim] : f.dst().dims()) {
        Quotient q = quotient_by_image(f.block(deg));
        if (!q.kept.empty()) m.coker.emplace(deg, std::move(q));
    }
    for (const auto& [deg, dim] : f.src().dims()) {
        Mat k = kernel_basis(f.block(deg));
        if (k.cols() > 0) m.ker.emplace(deg, std::move(k));
    }
    for (const auto& [deg, dim] : f.dst().dims())
        m.H.set_dim(deg, m.coker_dim(deg) + m.ker_dim(deg - 1));
    for (const auto& [deg, k] : m.ker)
        m.H.set_dim(deg + 1, m.coker_dim(deg + 1) + k.cols());

    m.include_dst = GradedMap::zero(f.dst(), m.H, 0);
    for (const auto& [deg, dim] : f.dst().dims())
        m.include_dst.set_block(deg, vstack(m.coker_projection(deg),
                                            Mat(m.ker_dim(deg - 1), dim)));
    m.bdry_src = GradedMap::zero(m.H, f.src(), -1);
    for (const auto& [deg, dim] : m.H.dims()) {
        const std::size_t nc = m.coker_dim(deg);
        m.bdry_src.set_block(deg, hstack(Mat(f.src().dim(deg - 1), nc), m.ker_basis(deg - 1)));
    }
    return m;
}

// Consistency check between the closed-form model and the generic cone
// homology: the comparison map (coker section, kernel inclusion) must be an
// isomorphism intertwining the inclusions and boundaries.
inline void check_cone_model_against_generic(const GradedMap& f, const ConeModel& model) {
    const ChainComplex src = ChainComplex::with_zero_differential(f.src());
    const ChainComplex dst = ChainComplex::with_zero_differential(f.dst());
    const MappingCone cone = mapping_cone(f, src, dst);
    const Homology hc = homology(cone.complex);
    for (const auto& [deg, dim] : model.H.dims())
        if (hc.H.dim(deg) != dim)
            throw std::logic_error("cone model dimension mismatch at degree " + std::to_string(deg));
    for (const auto& [deg, dim] : hc.H.dims())
        if (model.H.dim(deg) != dim)
            throw std::logic_error("cone model dimension mismatch at degree " + std::to_string(deg));
    for (const auto& [deg, dim] : model.H.dims()) {
        // Chains of the cone at deg are dst_deg (+) src_{deg-1}.
        const std::size_t nb = f.dst().dim(deg), na = f.src().dim(deg - 1);
        const Mat sec = model.coker_section(deg), kb = model.ker_basis(deg - 1);
        Mat chains(nb + na, dim);
        for (std::size_t j = 0; j < sec.cols(); ++j)
            for (std::size_t i = 0; i < nb; ++i) chains(i, j) = sec(i, j);
        for (std::size_t j = 0; j < kb.cols(); ++j)
            for (std::size_t i = 0; i < na; ++i) chains(nb + i, sec.cols() + j) = kb(i, j);
        const Mat compare = hc.projection(deg, nb + na) * chains;
        if (!is_invertible(compare))
            throw std::logic_error("cone model comparison map is singular at degree " +
                                   std::to_string(deg));
        // The inclusion of the target must agree through the comparison.
        const Mat lhs = compare * model.include_dst.block(deg);
        const Mat rhs = hc.projection(deg, nb + na) * cone.include_dst.block(deg);
        if (lhs != rhs)
            throw std::logic_error("cone model inclusion mismatch at degree " + std::to_string(deg));
        // And the boundary must agree on representatives.
        const Mat bs = model.bdry_src.block(deg);
        const Mat generic_b = cone.project_src.block(deg) * chains;
        if (bs != generic_b)
            throw std::logic_error("cone model boundary mismatch at degree " + std::to_string(deg));
    }
}

}  // namespace isx

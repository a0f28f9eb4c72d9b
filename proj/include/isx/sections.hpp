#pragma once

// Families of sections attached to an intersection model: a degreewise
// section s of v on its image and a degreewise retraction r of the map
// induced by h on its coimage. The canonical pivot based family, a reversed
// variant, and the untwisted family built from the duality pairing. Also
// the assembled duality pairing on the model itself.

#include "isx/global.hpp"

#include <string>

namespace isx {

// Standard basis vectors extending span(spanning) to all of Q^n, scanned in
// ascending or descending coordinate order.
inline Mat standard_complement(const Mat& spanning, std::size_t n, bool reversed = false) {
    Mat acc = spanning.cols() > 0 ? spanning : Mat(n, 0);
    std::size_t have = rank(acc);
    Mat added(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t j = reversed ? n - 1 - step : step;
        Mat e(n, 1);
        e(j, 0) = 1;
        const Mat cand = hstack(acc, e);
        if (rank(cand) > have) {
            acc = cand;
            ++have;
            added = hstack(added, e);
        }
    }
    return added;
}

struct SectionFamily {
    std::string label;
    std::map<int, Mat> im_v_basis;  // per degree: R(i) x d_v, spanning im v_i
    std::map<int, Mat> s;           // per degree: H(i) x d_v, with v s = im_v_basis
    std::map<int, Mat> coim_basis;  // per degree: M(i) x d_c, a lift of M/ker h
    std::map<int, Mat> retraction;  // per degree: d_c x H(i), with r (h coim) = id

    Mat im_v(int deg, std::size_t rdim) const {
        const auto it = im_v_basis.find(deg);
        return it == im_v_basis.end() ? Mat(rdim, 0) : it->second;
    }
    Mat s_block(int deg, std::size_t hdim) const {
        const auto it = s.find(deg);
        return it == s.end() ? Mat(hdim, 0) : it->second;
    }
    Mat coim(int deg, std::size_t mdim) const {
        const auto it = coim_basis.find(deg);
        return it == coim_basis.end() ? Mat(mdim, 0) : it->second;
    }
    Mat retr(int deg, std::size_t hdim) const {
        const auto it = retraction.find(deg);
        return it == retraction.end() ? Mat(0, hdim) : it->second;
    }
};

// Structural acceptance of a family against a model.
inline ValidationReport check_section_family(const IXModel& m, const SectionFamily& fam) {
    ValidationReport rep;
    for (const auto& [deg, hdim] : m.H().dims()) {
        const Mat vb = m.v.block(deg);
        const Mat basis = fam.im_v(deg, vb.rows());
        if (!(image(basis) == image(vb)) || rank(basis) != std::size_t(basis.cols())) {
            rep.fail("family does not carry a basis of im v at degree " + std::to_string(deg));
            continue;
        }
        const Mat sec = fam.s_block(deg, hdim);
        if (sec.cols() != basis.cols() || vb * sec != basis)
            rep.fail("family section fails v s = id at degree " + std::to_string(deg));
    }
    for (const auto& [deg, hdim] : m.H().dims()) {
        const std::size_t mdim = m.h.block(deg).cols();
        const Mat c = fam.coim(deg, mdim);
        const Mat hb = m.h.block(deg);
        if (std::size_t(c.cols()) != rank(hb) ||
            rank(hstack(kernel_basis(hb), c)) != mdim) {
            rep.fail("family coimage lift is not a complement of ker h at degree " +
                     std::to_string(deg));
            continue;
        }
        const Mat r = fam.retr(deg, hdim);
        if (r.rows() != c.cols() || r.cols() != hdim || !(r * (hb * c) == Mat::identity(c.cols())))
            rep.fail("family retraction fails r h = id at degree " + std::to_string(deg));
    }
    return rep;
}

// The canonical family: image bases from pivot columns, particular
// solutions with zero free variables, complements from standard basis
// vectors. `reversed` scans coordinates from the top instead, giving a
// second deterministic family.
inline SectionFamily default_sections(const IXModel& m, bool reversed = false) {
    SectionFamily fam;
    fam.label = reversed ? "pivot-reversed" : "pivot";
    for (const auto& [deg, hdim] : m.H().dims()) {
        const Mat vb = m.v.block(deg);
        Mat basis;
        if (!reversed) {
            basis = column_space_basis(vb);
        } else {
            std::vector<std::size_t> idx;
            Mat acc(vb.rows(), 0);
            for (std::size_t step = 0; step < vb.cols(); ++step) {
                const std::size_t jcol = vb.cols() - 1 - step;
                const Mat cand = hstack(acc, vb.column(jcol));
                if (rank(cand) > rank(acc)) {
                    acc = cand;
                    idx.push_back(jcol);
                }
            }
            basis = vb.columns(idx);
        }
        const auto sec = solve(vb, basis);
        if (!sec) throw std::logic_error("section solve failed");
        if (basis.cols() > 0) {
            fam.im_v_basis.emplace(deg, basis);
            fam.s.emplace(deg, *sec);
        }

        const Mat hb = m.h.block(deg);
        const Mat c = standard_complement(kernel_basis(hb), hb.cols(), reversed);
        const Mat hc = hb * c;
        const Mat d = standard_complement(hc, hdim, reversed);
        const Mat full = hstack(hc, d);
        if (!is_invertible(full)) throw std::logic_error("coimage assembly failed");
        if (c.cols() > 0) {
            fam.coim_basis.emplace(deg, c);
            fam.retraction.emplace(deg, inverse(full).rows_slice(0, hc.cols()));
        }
    }
    return fam;
}

// The untwisted family. On the image of j the section is forced to factor
// through h; the rest of im v is sectioned over the complement Q cut out by
// the duality pairing against the preimage of im(s j) in complementary
// degree. The retraction is chosen so its kernel lies inside s(Q). Requires
// even total dimension and vanishing obstruction for the model's own
// approximation (the mirror side is taken to carry the same data).
inline SectionFamily untwisted_sections(const IXModel& m) {
    const int N = m.N;
    if (N % 2 != 0) throw std::invalid_argument("untwisted sections need even dimension");
    for (const auto& [r, dim] : m.approx.f.src().dims()) {
        const Mat defect = m.approx.f.block(r).transpose() * m.bdry_pairing.block(r) *
                           m.approx.f.block(N - 1 - r);
        if (!defect.is_zero())
            throw std::invalid_argument("untwisted sections need vanishing obstructions");
    }

    SectionFamily fam;
    fam.label = "untwisted";
    const GradedMap j = m.j();

    // Pass 1: preimage bases of im j.
    std::map<int, Mat> lifts;  // per degree: M(i) x dim(im j), complement of ker j
    for (const auto& [deg, mdim] : m.iota.dst().dims()) {
        const Mat jb = j.block(deg);
        const Mat cu = standard_complement(kernel_basis(jb), mdim);
        if (cu.cols() > 0) lifts.emplace(deg, cu);
    }
    const auto lift = [&](int deg) {
        const auto it = lifts.find(deg);
        return it == lifts.end() ? Mat(m.iota.dst().dim(deg), 0) : it->second;
    };

    // Pass 2: per degree, the decomposition im v = im j (+) Q and the
    // section through it.
    for (const auto& [deg, hdim] : m.H().dims()) {
        const Mat vb = m.v.block(deg);
        const std::size_t rdim = vb.rows();
        const Mat cu = lift(deg);
        const Mat jcu = j.block(deg) * cu;

        // Q annihilates, under the ambient pairing, the preimage under h of
        // im(s j) in complementary degree; that preimage is the span of the
        // complementary lift plus ker h.
        const int cdeg = N - deg;
        const Subspace target = span_sum(image(lift(cdeg)), kernel(m.h.block(cdeg)));
        const Mat ann = left_annihilator(m.lefschetz.block(deg), target.basis());
        const Subspace q = intersection(image(vb), Subspace::span_of(rdim, ann));
        if (q.dim() + std::size_t(rank(jcu)) != rank(vb) ||
            intersection(q, image(jcu)).dim() != 0)
            throw std::logic_error("untwisted decomposition im v = im j + Q failed at degree " +
                                   std::to_string(deg));

        const Mat basis = hstack(jcu, q.basis());
        const auto qsec = solve(vb, q.basis());
        if (!qsec) throw std::logic_error("untwisted section solve failed");
        const Mat sec = hstack(m.h.block(deg) * cu, *qsec);
        if (vb * sec != basis)
            throw std::logic_error("untwisted section fails v s = id at degree " +
                                   std::to_string(deg));
        if (basis.cols() > 0) {
            fam.im_v_basis.emplace(deg, basis);
            fam.s.emplace(deg, sec);
        }

        // Retraction with kernel inside s(Q).
        const Mat sq = *qsec;  // columns span s(Q)
        const Mat hb = m.h.block(deg);
        const Subspace meet = intersection(image(sq), image(hb));
        const Mat k = complement_within(meet, image(sq));
        const Mat c = standard_complement(kernel_basis(hb), hb.cols());
        const Mat hc = hb * c;
        const Mat full = hstack(hc, k);
        if (!is_invertible(full))
            throw std::logic_error("untwisted retraction failed: H is not im h + ker r at degree " +
                                   std::to_string(deg));
        if (c.cols() > 0) {
            fam.coim_basis.emplace(deg, c);
            fam.retraction.emplace(deg, inverse(full).rows_slice(0, hc.cols()));
        }
    }
    return fam;
}

// The duality pairing on the intersection model, assembled from the local
// duality through g on the image of u and from the ambient pairing through
// the retraction on the image of s. The two models must share the ambient
// datum; for Witt data they may be one and the same. Throws when a block
// fails to be square or invertible, or when any of the four evaluation
// identities against the constituent pairings fails.
inline GradedPairing global_duality(const IXModel& mp, const SectionFamily& fp,
                                    const IXModel& mq, const SectionFamily& fq) {
    const int N = mp.N;
    if (mq.N != N) throw std::invalid_argument("duality: mismatched dimensions");
    if (!(mp.lefschetz == mq.lefschetz) || !(mp.bdry_pairing == mq.bdry_pairing))
        throw std::invalid_argument("duality: models do not share the ambient data");
    // Precondition: the obstruction for this ordered pair vanishes (checked
    // by the pairing route; the diagram route agrees, see obstructions()).
    for (const auto& [r, dim] : mp.approx.f.src().dims()) {
        const Mat defect = mp.approx.f.block(r).transpose() * mp.bdry_pairing.block(r) *
                           mq.approx.f.block(N - 1 - r);
        if (!defect.is_zero())
            throw std::invalid_argument("duality requires vanishing obstructions");
    }
    const GradedPairing local = local_duality_iso(mp.bdry_pairing, N, mp.cf, mq.approx);

    GradedPairing pi(mp.H(), mq.H(), N);
    for (const auto& [deg, hq] : mq.H().dims())
        if (mp.H().dim(N - deg) != hq)
            throw std::logic_error("duality block is not square at degree " +
                                   std::to_string(N - deg));
    for (const auto& [r, hdim] : mp.H().dims()) {
        const std::size_t hq = mq.H().dim(N - r);
        if (hq != hdim)
            throw std::logic_error("duality block is not square at degree " + std::to_string(r));

        // Basis of H through im u (+) im s.
        const Mat ub = mp.u.block(r);
        const Mat cu = standard_complement(kernel_basis(ub), ub.cols());
        const Mat upart = ub * cu;
        const Mat spart = fp.s_block(r, hdim);
        const Mat e = hstack(upart, spart);
        if (!is_invertible(e))
            throw std::logic_error("duality assembly failed: H is not im u + im s at degree " +
                                   std::to_string(r));

        // Functionals carried by the u part: local duality composed with g.
        const Mat urows = cu.transpose() * local.block(r) * mq.g.block(N - r);

        // Functionals carried by the s part: the ambient pairing, pushed
        // through the retraction; they must kill ker h, which is im phi.
        const Mat vb = fp.im_v(r, mp.v.block(r).rows());
        const Mat srows_on_m = vb.transpose() * mp.lefschetz.block(r);
        if (!(srows_on_m * mq.phi.block(N - r)).is_zero())
            throw std::logic_error("ambient functionals fail to kill ker h at degree " +
                                   std::to_string(r));
        const std::size_t mdim = mq.h.block(N - r).cols();
        const Mat srows = srows_on_m * fq.coim(N - r, mdim) * fq.retr(N - r, hq);

        const Mat block = inverse(e).transpose() * vstack(urows, srows);
        if (!is_invertible(block))
            throw std::logic_error("duality fails to be an isomorphism at degree " +
                                   std::to_string(r));
        pi.set_block(r, block);
    }

    // The four evaluation identities, as matrix equations per degree.
    for (const auto& [r, hdim] : mp.H().dims()) {
        const Mat blk = pi.block(r);
        const Mat ub = mp.u.block(r);
        const Mat cu = standard_complement(kernel_basis(ub), ub.cols());
        const Mat upart = ub * cu;
        const Mat spart = fp.s_block(r, hdim);

        // (im u, im h) = 0.
        if (!(upart.transpose() * blk * mq.h.block(N - r)).is_zero())
            throw std::logic_error("duality identity (u, h) fails at degree " + std::to_string(r));
        // (im s, ker r) = 0.
        const Mat kr = kernel_basis(fq.retr(N - r, mq.H().dim(N - r)));
        if (!(spart.transpose() * blk * kr).is_zero())
            throw std::logic_error("duality identity (s, ker r) fails at degree " +
                                   std::to_string(r));
        // (u ell b, y) = (-1)^{r (N-r)} (v y, iota b).
        const Mat lhs = compose(mp.u, mp.ell()).block(r).transpose() * blk;
        Mat rhs = mp.iota.block(r).transpose() * mp.lefschetz.block(N - r).transpose() *
                  mq.v.block(N - r);
        if ((std::int64_t(r) * (N - r)) % 2 != 0) rhs = -rhs;
        if (lhs != rhs)
            throw std::logic_error("duality identity (u ell, v) fails at degree " +
                                   std::to_string(r));
        // (s c, h d) = <c, d> in the ambient pairing.
        const Mat vb = fp.im_v(r, mp.v.block(r).rows());
        if (!(spart.transpose() * blk * mq.h.block(N - r) ==
              vb.transpose() * mp.lefschetz.block(r)))
            throw std::logic_error("duality identity (s, h) fails at degree " + std::to_string(r));
    }
    return pi;
}

// Witt form: one model carries both sides.
inline GradedPairing global_duality(const IXModel& m, const SectionFamily& fam) {
    return global_duality(m, fam, m, fam);
}

}  // namespace isx

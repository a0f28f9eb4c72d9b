#pragma once

// Middle degree gram matrices and the signature comparison. The ambient
// gram lives on the image of j in the cone of the boundary inclusion; the
// intersection gram lives on the middle homology of the intersection model
// in the basis adapted to an untwisted family. Signatures are computed by
// congruence, never through eigenvalues.

#include "isx/sections.hpp"
#include "isx/signature.hpp"

namespace isx {

struct GramData {
    Mat gram;
    Mat basis;  // columns used to evaluate the pairing
};

// Gram matrix of <j m, m'> on the image of j in middle degree. Lift choices
// do not matter; this is re-verified by perturbing the lifts along ker j.
inline GramData ambient_gram_matrix(const IXModel& m) {
    if (m.N % 2 != 0) throw std::invalid_argument("middle gram needs even dimension");
    const int mid = m.N / 2;
    const GradedMap j = m.j();
    const Mat jb = j.block(mid);
    const Mat kj = kernel_basis(jb);
    const Mat cu = standard_complement(kj, jb.cols());
    const Mat gram = cu.transpose() * jb.transpose() * m.lefschetz.block(mid) * cu;

    if (kj.cols() > 0 && cu.cols() > 0) {
        Mat perturbed = cu;
        for (std::size_t c = 0; c < perturbed.cols(); ++c)
            for (std::size_t i = 0; i < perturbed.rows(); ++i)
                perturbed(i, c) += kj(i, c % kj.cols());
        const Mat gram2 =
            perturbed.transpose() * jb.transpose() * m.lefschetz.block(mid) * perturbed;
        if (gram2 != gram)
            throw std::logic_error("ambient gram depends on the choice of lifts");
    }
    return GramData{gram, cu};
}

struct IXGram {
    Mat gram;
    std::size_t dim_u = 0, dim_sj = 0, dim_kr = 0;
    Mat ambient_block;  // the (sj, sj) block, equal to the ambient gram
};

// Gram of the duality pairing in the adapted middle basis
// im u (+) im(s j) (+) ker r. Verifies the expected block structure and
// that the middle block reproduces the ambient gram on compatible bases.
// The zero block at (ker r, s j) holds for untwisted families only, so it
// is asserted exactly when `untwisted` is set.
inline IXGram ix_gram_matrix(const IXModel& m, const SectionFamily& fam, const GradedPairing& pi,
                             bool untwisted = true) {
    if (m.N % 2 != 0) throw std::invalid_argument("middle gram needs even dimension");
    const int mid = m.N / 2;
    const std::size_t hdim = m.H().dim(mid);

    const Mat ub = m.u.block(mid);
    const Mat cu_u = standard_complement(kernel_basis(ub), ub.cols());
    const Mat upart = ub * cu_u;

    const Mat jb = m.j().block(mid);
    const Mat lifts = standard_complement(kernel_basis(jb), jb.cols());
    const Mat vb = fam.im_v(mid, m.v.block(mid).rows());
    Mat sj(hdim, 0);
    if (lifts.cols() > 0) {
        const auto coords = solve(vb, jb * lifts);
        if (!coords) throw std::logic_error("im j leaves the recorded im v basis");
        sj = fam.s_block(mid, hdim) * *coords;
    }
    const Mat kr = kernel_basis(fam.retr(mid, hdim));

    const Mat e = hstack(hstack(upart, sj), kr);
    if (!is_invertible(e))
        throw std::logic_error("middle homology is not im u + im(s j) + ker r");

    IXGram out;
    out.dim_u = upart.cols();
    out.dim_sj = sj.cols();
    out.dim_kr = kr.cols();
    out.gram = e.transpose() * pi.block(mid) * e;

    const auto block = [&](std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t jj = 0; jj < nc; ++jj) b(i, jj) = out.gram(r0 + i, c0 + jj);
        return b;
    };
    const std::size_t nu = out.dim_u, ns = out.dim_sj, nk = out.dim_kr;
    if (!block(0, nu, 0, nu).is_zero() || !block(0, nu, nu, ns).is_zero() ||
        !block(nu, ns, 0, nu).is_zero() || !block(nu, ns, nu + ns, nk).is_zero() ||
        !block(nu + ns, nk, nu + ns, nk).is_zero())
        throw std::logic_error("middle gram violates the expected zero blocks");
    if (untwisted && !block(nu + ns, nk, nu, ns).is_zero())
        throw std::logic_error("middle gram violates the untwisted zero block");
    out.ambient_block = block(nu, ns, nu, ns);

    const GramData ambient = ambient_gram_matrix(m);
    if (ambient.gram != out.ambient_block)
        throw std::logic_error("middle gram block differs from the ambient gram");
    return out;
}

struct SignatureReport {
    int N = 0;
    int middle = 0;
    Mat gram_ambient;
    Mat gram_ix;
    Signature sig_ambient;
    Signature sig_ix;
    bool equal = false;
    std::map<int, std::size_t> ix_dims;
};

// End to end comparison: requires Witt data of dimension divisible by four
// with vanishing obstructions for its canonical Witt complement. Builds the
// untwisted family and compares the two signatures.
inline SignatureReport signature_report(const TubeDatum& t, const GlobalDatum& g,
                                        const Approximation& a) {
    if (!t.witt) throw std::invalid_argument("signature comparison needs witt data");
    if (t.dimension % 4 != 0)
        throw std::invalid_argument("signature comparison needs dimension divisible by four");
    const ObstructionReport obs = obstructions(t, a, a);
    if (!obs.all_vanish)
        throw std::invalid_argument("signature comparison needs vanishing obstructions");

    const IXModel m = intersection_space(t, g, a, Perversity::lower);
    const SectionFamily fam = untwisted_sections(m);
    const GradedPairing pi = global_duality(m, fam);

    SignatureReport rep;
    rep.N = t.dimension;
    rep.middle = t.dimension / 2;
    const GramData ambient = ambient_gram_matrix(m);
    const IXGram ix = ix_gram_matrix(m, fam, pi, true);
    rep.gram_ambient = ambient.gram;
    rep.gram_ix = ix.gram;
    if (rep.gram_ambient != rep.gram_ambient.transpose() ||
        rep.gram_ix != rep.gram_ix.transpose())
        throw std::logic_error("middle grams are not symmetric");
    rep.sig_ambient = symmetric_signature(rep.gram_ambient);
    rep.sig_ix = symmetric_signature(rep.gram_ix);
    rep.equal = rep.sig_ambient.sigma() == rep.sig_ix.sigma();
    rep.ix_dims = ix_dimensions(m);
    return rep;
}

}  // namespace isx

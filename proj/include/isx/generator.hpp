#pragma once

// Deterministic instance generator. Instances are produced in a normal form
// that satisfies every validity constraint by construction and are then
// conjugated degreewise by random unimodular changes of basis, which
// preserves validity while hiding the coordinate structure. Profiles with
// overlapping complementary Z dimensions make the canonical complement
// obstructed; the adversarial flag biases conjugations toward that.

#include "isx/approximation.hpp"
#include "isx/global.hpp"

#include <cstdint>
#include <random>
#include <sstream>

namespace isx {

struct GenProfile {
    int dimension = 4;            // N, even
    std::uint64_t seed = 0;
    std::vector<std::size_t> z_profile;       // length N, Z dimension per boundary degree
    std::vector<std::size_t> extra_profile;   // length N+1, symmetric, extra absolute classes
    std::vector<std::size_t> kernel_profile;  // length N, dim ker(iota) per boundary degree
    std::vector<std::size_t> coker_profile;   // length N+1, symmetric, dim coker(iota)
    long max_entry = 2;           // bound for randomly drawn integer entries
    bool adversarial = false;
    bool conjugate = true;         // apply a random change of basis
    bool middle_definite = false;  // identity middle pairing block
};

struct Instance {
    std::string name;
    TubeDatum tube;
    GlobalDatum global;
};

namespace gen_detail {

// Self contained RNG so results do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t raw() { return eng_(); }
    long uniform(long lo, long hi) {  // inclusive
        return lo + long(raw() % std::uint64_t(hi - lo + 1));
    }
    std::size_t index(std::size_t n) { return std::size_t(raw() % std::uint64_t(n)); }
    bool flip() { return (raw() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

// Unimodular integer matrix with bounded entries: a permutation times unit
// triangular factors, so the inverse is again integral.
inline Mat unimodular(Rng& rng, std::size_t n, long bound) {
    Mat l = Mat::identity(n), u = Mat::identity(n), p(n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    for (std::size_t i = 0; i < n; ++i) p(perm[i], i) = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) l(i, j) = rng.uniform(-bound, bound);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) u(i, j) = rng.uniform(-bound, bound);
    return p * l * u;
}

struct NormalForm {
    int N = 0;
    std::vector<std::size_t> z, e, k, w;          // profiles (e, w indexed 0..N)
    std::vector<std::vector<bool>> kill_z, kill_y;  // which coordinates iota kills
};

inline std::size_t zat(const NormalForm& nf, int i) {
    return (i < 0 || i >= nf.N) ? 0 : nf.z[std::size_t(i)];
}
inline std::size_t eat(const NormalForm& nf, int i) {
    return (i < 0 || i > nf.N) ? 0 : nf.e[std::size_t(i)];
}
inline std::size_t wat(const NormalForm& nf, int i) {
    return (i < 0 || i > nf.N) ? 0 : nf.w[std::size_t(i)];
}
inline std::size_t bat(const NormalForm& nf, int i) { return zat(nf, i) + zat(nf, nf.N - 1 - i); }

}  // namespace gen_detail

// Builds the uncoupled normal form instance for the given profiles. The
// boundary at degree i carries the Z coordinates of degree i followed by a
// copy of the Z coordinates of degree N-1-i (the embedded Y); the pairing
// is the coordinate swap; the ambient space keeps the unkilled coordinates
// and adds w extra ones; the duality pairing on the cone is pinned by the
// compatibility squares except for a free block, which is drawn at random.
namespace gen_detail {

inline Mat phi_block(const NormalForm& nf, int i) {
    const std::size_t a = zat(nf, i), b = zat(nf, nf.N - 1 - i);
    Mat m(a + b, b + a);
    for (std::size_t t = 0; t < a; ++t) m(t, b + t) = 1;
    for (std::size_t t = 0; t < b; ++t) m(a + t, t) = 1;
    return m;
}

inline std::vector<std::size_t> killed_coords(const NormalForm& nf, int i) {
    std::vector<std::size_t> out;
    if (i < 0 || i >= nf.N) return out;
    const std::size_t zi = zat(nf, i), yi = zat(nf, nf.N - 1 - i);
    for (std::size_t a = 0; a < zi; ++a)
        if (nf.kill_z[std::size_t(i)][a]) out.push_back(a);
    for (std::size_t a = 0; a < yi; ++a)
        if (nf.kill_y[std::size_t(i)][a]) out.push_back(zi + a);
    return out;
}

inline std::vector<std::size_t> surviving_coords(const NormalForm& nf, int i) {
    std::vector<std::size_t> out;
    if (i < 0 || i >= nf.N) return out;
    const std::size_t zi = zat(nf, i), yi = zat(nf, nf.N - 1 - i);
    for (std::size_t a = 0; a < zi; ++a)
        if (!nf.kill_z[std::size_t(i)][a]) out.push_back(a);
    for (std::size_t a = 0; a < yi; ++a)
        if (!nf.kill_y[std::size_t(i)][a]) out.push_back(zi + a);
    return out;
}

}  // namespace gen_detail

inline Instance build_normal_form(const gen_detail::NormalForm& nf, gen_detail::Rng& rng,
                                  long max_entry, bool middle_definite) {
    using namespace gen_detail;
    const int N = nf.N;
    Instance inst;
    TubeDatum& t = inst.tube;
    t.dimension = N;
    t.witt = true;
    t.min_degree = 0;
    t.max_degree = N;

    for (int i = 0; i < N; ++i) t.boundary.set_dim(i, bat(nf, i));

    TubeSide side;
    for (int i = 0; i <= N; ++i) {
        side.absolute.set_dim(i, zat(nf, i) + eat(nf, i));
        side.relative.set_dim(i, eat(nf, i) + zat(nf, N - i));
    }
    side.b_to_p = GradedMap::zero(t.boundary, side.absolute, 0);
    side.p_to_rel = GradedMap::zero(side.absolute, side.relative, 0);
    side.rel_bdry = GradedMap::zero(side.relative, t.boundary, -1);
    for (int i = 0; i <= N; ++i) {
        const std::size_t zi = zat(nf, i), yi = zat(nf, N - 1 - i), ei = eat(nf, i);
        if (i < N && bat(nf, i) > 0 && zi + ei > 0) {
            Mat alpha(zi + ei, zi + yi);
            for (std::size_t a = 0; a < zi; ++a) alpha(a, a) = 1;
            side.b_to_p.set_block(i, alpha);
        }
        const std::size_t reli = eat(nf, i) + zat(nf, N - i);
        if (zi + ei > 0 && reli > 0) {
            Mat beta(reli, zi + ei);
            for (std::size_t a = 0; a < ei; ++a) beta(a, zi + a) = 1;
            side.p_to_rel.set_block(i, beta);
        }
        const std::size_t yprev = zat(nf, N - i);  // Y part of P_rel_i = Y part of B_{i-1}
        if (reli > 0 && i - 1 >= 0 && bat(nf, i - 1) > 0 && yprev > 0) {
            Mat gamma(bat(nf, i - 1), reli);
            const std::size_t zprev = zat(nf, i - 1);
            for (std::size_t a = 0; a < yprev; ++a) gamma(zprev + a, eat(nf, i) + a) = 1;
            side.rel_bdry.set_block(i, gamma);
        }
    }
    side.abs_rel = GradedPairing(side.absolute, side.relative, N);
    for (int i = 0; i <= N; ++i) {
        const std::size_t zi = zat(nf, i), ei = eat(nf, i);
        const std::size_t cols = eat(nf, N - i) + zat(nf, i);
        if (zi + ei == 0 || cols == 0) continue;
        Mat psi(zi + ei, cols);
        for (std::size_t a = 0; a < zi; ++a) psi(a, eat(nf, N - i) + a) = 1;
        for (std::size_t a = 0; a < ei; ++a) psi(zi + a, a) = 1;
        side.abs_rel.set_block(i, psi);
    }
    t.side_lower = side;
    t.side_upper = side;

    t.bdry_pairing = GradedPairing(t.boundary, t.boundary, N - 1);
    for (int i = 0; i < N; ++i)
        if (bat(nf, i) > 0 && bat(nf, N - 1 - i) > 0) t.bdry_pairing.set_block(i, phi_block(nf, i));

    GlobalDatum& g = inst.global;
    for (int i = 0; i <= N; ++i) {
        const std::size_t mi = surviving_coords(nf, i).size() + wat(nf, i);
        if (mi > 0) g.ambient.set_dim(i, mi);
    }
    g.include_bdry = GradedMap::zero(t.boundary, g.ambient, 0);
    for (int i = 0; i < N; ++i) {
        const auto surv = surviving_coords(nf, i);
        if (bat(nf, i) == 0 || g.ambient.dim(i) == 0) continue;
        Mat iota(g.ambient.dim(i), bat(nf, i));
        for (std::size_t s = 0; s < surv.size(); ++s) iota(s, surv[s]) = 1;
        g.include_bdry.set_block(i, iota);
    }

    // Duality pairing on the cone of iota, block by block in the canonical
    // cone coordinates: rows are (W_i, K_{i-1}), columns (C_{N-i}, W_{N-i}).
    const ConeModel R = cone_model(g.include_bdry);
    g.lefschetz = GradedPairing(R.H, g.ambient, N);

    // The middle free symmetric (or alternating) block is shared between
    // the two halves of the construction, so draw it first.
    const int mid = N / 2;
    Mat middle_ww(wat(nf, mid), wat(nf, mid));
    if (mid % 2 == 0) {
        for (std::size_t a = 0; a < middle_ww.rows(); ++a)
            middle_ww(a, a) = middle_definite ? 1 : (rng.flip() ? 1 : -1);
    } else {
        for (std::size_t a = 0; a + 1 < middle_ww.rows(); a += 2) {
            middle_ww(a, a + 1) = 1;
            middle_ww(a + 1, a) = -1;
        }
    }

    for (int i = 0; i <= N; ++i) {
        const std::size_t wi = wat(nf, i), ki = killed_coords(nf, i - 1).size();
        const std::size_t cn = surviving_coords(nf, N - i).size(), wn = wat(nf, N - i);
        if (wi + ki == 0 || cn + wn == 0) continue;
        Mat blk(wi + ki, cn + wn);
        const long sign = ((std::int64_t(i) * (N - i)) % 2 == 0) ? 1 : -1;
        // K x C: pinned against the boundary pairing.
        const auto killed = killed_coords(nf, i - 1);
        const auto surv = surviving_coords(nf, N - i);
        const Mat phi = t.bdry_pairing.block(N - i);  // B_{N-i} x B_{i-1}
        for (std::size_t x = 0; x < killed.size(); ++x)
            for (std::size_t c = 0; c < surv.size(); ++c)
                blk(wi + x, c) = Rational(sign) * phi(surv[c], killed[x]);
        // W x W: identity below the middle, the forced transpose above it,
        // the drawn block at the middle.
        if (wi > 0 && wn > 0) {
            Mat ww(wi, wn);
            if (i < mid)
                ww = Mat::identity(wi);
            else if (i > mid)
                ww = Mat::identity(wi).scaled(sign);
            else
                ww = middle_ww;
            for (std::size_t a = 0; a < wi; ++a)
                for (std::size_t b2 = 0; b2 < wn; ++b2) blk(a, cn + b2) = ww(a, b2);
        }
        // K x W: free.
        for (std::size_t x = 0; x < ki; ++x)
            for (std::size_t b2 = 0; b2 < wn; ++b2)
                blk(wi + x, cn + b2) = rng.uniform(-max_entry, max_entry);
        g.lefschetz.set_block(i, blk);
    }
    return inst;
}

// Degreewise change of basis on every stored space. The duality pairing is
// re-expressed in the canonical cone coordinates of the transformed
// inclusion.
inline Instance conjugate_instance(const Instance& in, gen_detail::Rng& rng, long bound) {
    using namespace gen_detail;
    const int N = in.tube.dimension;
    const int lo = in.tube.min_degree, hi = in.tube.max_degree;

    std::map<int, Mat> sb, sp, sprel, sm;
    for (int i = lo; i <= hi; ++i) {
        sb[i] = unimodular(rng, in.tube.boundary.dim(i), bound);
        sp[i] = unimodular(rng, in.tube.side_lower.absolute.dim(i), bound);
        sprel[i] = unimodular(rng, in.tube.side_lower.relative.dim(i), bound);
        sm[i] = unimodular(rng, in.global.ambient.dim(i), bound);
    }
    const auto at = [](const std::map<int, Mat>& m, int i, std::size_t dim) {
        const auto it = m.find(i);
        return it == m.end() ? Mat::identity(dim) : it->second;
    };

    Instance out = in;
    TubeDatum& t = out.tube;
    TubeSide ns;
    const TubeSide& s = in.tube.side_lower;
    ns.absolute = s.absolute;
    ns.relative = s.relative;
    ns.b_to_p = GradedMap::zero(t.boundary, ns.absolute, 0);
    ns.p_to_rel = GradedMap::zero(ns.absolute, ns.relative, 0);
    ns.rel_bdry = GradedMap::zero(ns.relative, t.boundary, -1);
    ns.abs_rel = GradedPairing(ns.absolute, ns.relative, N);
    for (int i = lo; i <= hi; ++i) {
        ns.b_to_p.set_block(i, sp[i] * s.b_to_p.block(i) * inverse(sb[i]));
        ns.p_to_rel.set_block(i, sprel[i] * s.p_to_rel.block(i) * inverse(sp[i]));
        if (i - 1 >= lo)
            ns.rel_bdry.set_block(i, sb[i - 1] * s.rel_bdry.block(i) * inverse(sprel[i]));
        if (N - i >= lo && N - i <= hi)
            ns.abs_rel.set_block(
                i, inverse(sp[i]).transpose() * s.abs_rel.block(i) * inverse(sprel[N - i]));
    }
    t.side_lower = ns;
    t.side_upper = ns;
    t.bdry_pairing = GradedPairing(t.boundary, t.boundary, N - 1);
    for (int i = lo; i <= hi; ++i) {
        const int d = N - 1 - i;
        if (d < lo || d > hi) continue;
        t.bdry_pairing.set_block(i, inverse(sb[i]).transpose() * in.tube.bdry_pairing.block(i) *
                                        inverse(sb[d]));
    }

    GlobalDatum& g = out.global;
    g.include_bdry = GradedMap::zero(t.boundary, g.ambient, 0);
    for (int i = lo; i <= hi; ++i)
        g.include_bdry.set_block(i, sm[i] * in.global.include_bdry.block(i) * inverse(sb[i]));

    // Transport of the pairing to the new canonical cone coordinates.
    const ConeModel r_old = cone_model(in.global.include_bdry);
    const ConeModel r_new = cone_model(g.include_bdry);
    g.lefschetz = GradedPairing(r_new.H, g.ambient, N);
    for (const auto& [i, rdim] : r_old.H.dims()) {
        const std::size_t co = r_old.coker_dim(i), kd = r_old.ker_dim(i - 1);
        Mat trans(r_new.coker_dim(i) + r_new.ker_dim(i - 1), co + kd);
        if (co > 0) {
            const Mat tc = r_new.coker_projection(i) *
                           at(sm, i, in.global.ambient.dim(i)) * r_old.coker_section(i);
            for (std::size_t a = 0; a < tc.rows(); ++a)
                for (std::size_t b = 0; b < co; ++b) trans(a, b) = tc(a, b);
        }
        if (kd > 0) {
            const Mat moved = at(sb, i - 1, in.tube.boundary.dim(i - 1)) * r_old.ker_basis(i - 1);
            const auto tk = solve(r_new.ker_basis(i - 1), moved);
            if (!tk) throw std::logic_error("cone kernel transport failed");
            for (std::size_t a = 0; a < tk->rows(); ++a)
                for (std::size_t b = 0; b < kd; ++b)
                    trans(r_new.coker_dim(i) + a, co + b) = (*tk)(a, b);
        }
        const std::size_t mdim = in.global.ambient.dim(N - i);
        g.lefschetz.set_block(i, inverse(trans).transpose() * in.global.lefschetz.block(i) *
                                     inverse(at(sm, N - i, mdim)));
    }
    return out;
}

inline void validate_profile(const GenProfile& p) {
    if (p.dimension < 2 || p.dimension % 2 != 0)
        throw std::invalid_argument("generator profile: dimension must be even and at least 2");
    const std::size_t n = std::size_t(p.dimension);
    if (!p.z_profile.empty() && p.z_profile.size() != n)
        throw std::invalid_argument("generator profile: z_profile must have one entry per "
                                    "boundary degree");
    if (!p.extra_profile.empty()) {
        if (p.extra_profile.size() != n + 1)
            throw std::invalid_argument("generator profile: extra_profile must cover degrees 0..N");
        for (std::size_t i = 0; i <= n; ++i)
            if (p.extra_profile[i] != p.extra_profile[n - i])
                throw std::invalid_argument(
                    "generator profile: extra_profile must be symmetric about the middle");
    }
    if (!p.kernel_profile.empty()) {
        if (p.kernel_profile.size() != n)
            throw std::invalid_argument("generator profile: kernel_profile must have one entry "
                                        "per boundary degree");
        if (p.z_profile.empty())
            throw std::invalid_argument(
                "generator profile: kernel_profile needs an explicit z_profile");
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t b = p.z_profile[i] + p.z_profile[n - 1 - i];
            if (p.kernel_profile[i] + p.kernel_profile[n - 1 - i] != b)
                throw std::invalid_argument(
                    "generator profile: kernel_profile entries at complementary degrees must sum "
                    "to the boundary dimension");
        }
    }
    if (!p.coker_profile.empty()) {
        if (p.coker_profile.size() != n + 1)
            throw std::invalid_argument("generator profile: coker_profile must cover degrees 0..N");
        for (std::size_t i = 0; i <= n; ++i)
            if (p.coker_profile[i] != p.coker_profile[n - i])
                throw std::invalid_argument(
                    "generator profile: coker_profile must be symmetric about the middle");
        if (p.dimension % 4 == 2 && p.coker_profile[n / 2] % 2 != 0)
            throw std::invalid_argument(
                "generator profile: middle block must have even rank in dimensions 2 mod 4");
    }
    if (p.max_entry < 1)
        throw std::invalid_argument("generator profile: max_entry must be positive");
}

inline Instance generate_instance(const GenProfile& p) {
    using namespace gen_detail;
    validate_profile(p);
    const int N = p.dimension;
    const std::size_t n = std::size_t(N);
    Rng rng(p.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL + std::uint64_t(N));

    NormalForm nf;
    nf.N = N;
    nf.z.assign(n, 0);
    if (!p.z_profile.empty()) {
        nf.z = p.z_profile;
    } else {
        for (std::size_t i = 0; 2 * i + 1 < n; ++i) {
            const std::size_t j = n - 1 - i;
            if (p.adversarial) {
                nf.z[i] = std::size_t(rng.uniform(0, 2));
                nf.z[j] = std::size_t(rng.uniform(0, 2));
            } else if (rng.flip()) {
                nf.z[i] = std::size_t(rng.uniform(0, 2));
            } else {
                nf.z[j] = std::size_t(rng.uniform(0, 2));
            }
        }
        if (p.adversarial) {
            bool overlap = false;
            for (std::size_t i = 0; i < n; ++i)
                if (nf.z[i] > 0 && nf.z[n - 1 - i] > 0) overlap = true;
            if (!overlap) {
                nf.z[n / 2 - 1] = std::max<std::size_t>(nf.z[n / 2 - 1], 1);
                nf.z[n / 2] = std::max<std::size_t>(nf.z[n / 2], 1);
            }
        }
    }

    nf.e.assign(n + 1, 0);
    if (!p.extra_profile.empty()) {
        nf.e = p.extra_profile;
    } else {
        for (std::size_t i = 0; 2 * i <= n; ++i) {
            nf.e[i] = std::size_t(rng.uniform(0, 1));
            nf.e[n - i] = nf.e[i];
        }
    }

    nf.k.assign(n, 0);
    if (!p.kernel_profile.empty()) {
        nf.k = p.kernel_profile;
    } else {
        for (std::size_t i = 0; 2 * i + 1 < n; ++i) {
            const std::size_t b = nf.z[i] + nf.z[n - 1 - i];
            nf.k[i] = std::size_t(rng.uniform(0, long(b)));
            nf.k[n - 1 - i] = b - nf.k[i];
        }
    }

    // Split each kernel between the Z and Y coordinates and mark the killed
    // coordinates; the complementary degree kills exactly the coordinates
    // dual to the surviving ones.
    nf.kill_z.assign(n, {});
    nf.kill_y.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        nf.kill_z[i].assign(nf.z[i], false);
        nf.kill_y[i].assign(nf.z[n - 1 - i], false);
    }
    for (std::size_t i = 0; 2 * i + 1 < n; ++i) {
        const std::size_t j = n - 1 - i;
        const std::size_t zi = nf.z[i], yi = nf.z[j];
        const std::size_t ki = nf.k[i];
        if (ki > zi + yi)
            throw std::invalid_argument("generator profile: kernel exceeds boundary dimension");
        const std::size_t zlo = ki > yi ? ki - yi : 0;
        const std::size_t zhi = std::min(zi, ki);
        const std::size_t kz = zlo + std::size_t(rng.uniform(0, long(zhi - zlo)));
        const std::size_t ky = ki - kz;
        for (std::size_t a = 0; a < kz; ++a) nf.kill_z[i][a] = true;
        for (std::size_t a = 0; a < ky; ++a) nf.kill_y[i][a] = true;
        // Dual coordinates: z^j_a pairs with y^i_a, y^j_a with z^i_a.
        for (std::size_t a = 0; a < yi; ++a) nf.kill_z[j][a] = !nf.kill_y[i][a];
        for (std::size_t a = 0; a < zi; ++a) nf.kill_y[j][a] = !nf.kill_z[i][a];
    }

    nf.w.assign(n + 1, 0);
    if (!p.coker_profile.empty()) {
        nf.w = p.coker_profile;
    } else {
        for (std::size_t i = 0; 2 * i < n; ++i) {
            nf.w[i] = std::size_t(rng.uniform(0, 2));
            nf.w[n - i] = nf.w[i];
        }
        nf.w[n / 2] = std::size_t(rng.uniform(0, 2));
        if (N % 4 == 2 && nf.w[n / 2] % 2 != 0) nf.w[n / 2] += 1;
    }

    const Instance normal = build_normal_form(nf, rng, p.max_entry, p.middle_definite);

    // Conjugate; adversarial profiles retry a bounded number of times until
    // the canonical complement actually fails somewhere.
    Instance result = normal;
    if (p.conjugate) {
        const int attempts = p.adversarial ? 8 : 1;
        for (int attempt = 0; attempt < attempts; ++attempt) {
            Rng crng(p.seed * 0xBF58476D1CE4E5B9ULL +
                     0x94D049BB133111EBULL * std::uint64_t(attempt + 1));
            result = conjugate_instance(normal, crng, p.max_entry);
            if (!p.adversarial) break;
            try {
                const Approximation a = default_approximation(result.tube, Perversity::lower);
                if (!obstructions(result.tube, a, a).all_vanish) break;
            } catch (const std::exception&) {
                break;  // already inconsistent for the canonical complement
            }
        }
    }

    std::ostringstream label;
    label << "gen-d" << N << "-s" << p.seed << (p.adversarial ? "-adv" : "");
    result.name = label.str();
    result.tube.tube_name = result.name;
    return result;
}

struct MutationResult {
    Instance instance;
    bool changed = false;
    std::string description;
};

namespace gen_detail {

struct Slot {
    std::string matrix;
    int degree = 0;
    std::size_t row = 0, col = 0;
};

template <typename Visit>
inline void visit_blocks(const Instance& in, Visit&& visit) {
    const TubeDatum& t = in.tube;
    const int lo = t.min_degree, hi = t.max_degree;
    const auto map_blocks = [&](const char* tag, const GradedMap& m) {
        for (int d = lo; d <= hi + 1; ++d) {
            const Mat b = m.block(d);
            if (b.rows() > 0 && b.cols() > 0) visit(tag, d, b);
        }
    };
    const auto pairing_blocks = [&](const char* tag, const GradedPairing& m) {
        for (int d = lo; d <= hi + 1; ++d) {
            const Mat b = m.block(d);
            if (b.rows() > 0 && b.cols() > 0) visit(tag, d, b);
        }
    };
    map_blocks("b_to_p", t.side_lower.b_to_p);
    map_blocks("p_to_rel", t.side_lower.p_to_rel);
    map_blocks("rel_bdry", t.side_lower.rel_bdry);
    pairing_blocks("D_abs_rel", t.side_lower.abs_rel);
    if (!t.witt) {
        map_blocks("b_to_p_upper", t.side_upper.b_to_p);
        map_blocks("p_to_rel_upper", t.side_upper.p_to_rel);
        map_blocks("rel_bdry_upper", t.side_upper.rel_bdry);
        pairing_blocks("D_abs_rel_upper", t.side_upper.abs_rel);
    }
    pairing_blocks("D_bdry", t.bdry_pairing);
    map_blocks("iota", in.global.include_bdry);
    pairing_blocks("lefschetz", in.global.lefschetz);
}

}  // namespace gen_detail

// Perturbs one entry of one stored matrix by a nonzero rational: the block
// is chosen uniformly among the nonempty stored blocks, then an entry within
// it, then one of three perturbation styles (shift by a small rational, zero
// the entry, or negate it). On Witt data the perturbation applies to the
// shared side, exactly as it would when editing the serialized form. An
// instance with no stored entries is returned unchanged.
inline MutationResult mutate_instance(const Instance& in, std::uint64_t seed) {
    using namespace gen_detail;
    std::vector<Slot> blocks;
    std::vector<Mat> mats;
    visit_blocks(in, [&](const char* tag, int d, const Mat& b) {
        blocks.push_back(Slot{tag, d, 0, 0});
        mats.push_back(b);
    });
    MutationResult out;
    out.instance = in;
    if (blocks.empty()) {
        out.description = "no stored entries to mutate";
        return out;
    }
    Rng rng(seed * 0x2545F4914F6CDD1DULL + 0x9E3779B97F4A7C15ULL);
    const std::size_t which = rng.index(blocks.size());
    Slot chosen = blocks[which];
    const Mat& picked = mats[which];
    chosen.row = rng.index(picked.rows());
    chosen.col = rng.index(picked.cols());
    const Rational current = picked(chosen.row, chosen.col);

    static const Rational shifts[] = {Rational(1), Rational(-1), Rational(2),
                                      Rational(-2), Rational(1, 2), Rational(-1, 2),
                                      Rational(1, 3)};
    Rational delta;
    switch (rng.index(3)) {
        case 0: delta = shifts[rng.index(sizeof(shifts) / sizeof(shifts[0]))]; break;
        case 1: delta = current == 0 ? Rational(1) : -current; break;           // zero it out
        default: delta = current == 0 ? Rational(-1) : -2 * current; break;     // negate
    }

    TubeDatum& t = out.instance.tube;
    const auto bump_map = [&](GradedMap& m) {
        Mat b = m.block(chosen.degree);
        b(chosen.row, chosen.col) += delta;
        m.set_block(chosen.degree, b);
    };
    const auto bump_pairing = [&](GradedPairing& m) {
        Mat b = m.block(chosen.degree);
        b(chosen.row, chosen.col) += delta;
        m.set_block(chosen.degree, b);
    };
    const std::string& tag = chosen.matrix;
    if (tag == "b_to_p") {
        bump_map(t.side_lower.b_to_p);
        if (t.witt) bump_map(t.side_upper.b_to_p);
    } else if (tag == "p_to_rel") {
        bump_map(t.side_lower.p_to_rel);
        if (t.witt) bump_map(t.side_upper.p_to_rel);
    } else if (tag == "rel_bdry") {
        bump_map(t.side_lower.rel_bdry);
        if (t.witt) bump_map(t.side_upper.rel_bdry);
    } else if (tag == "D_abs_rel") {
        bump_pairing(t.side_lower.abs_rel);
        if (t.witt) bump_pairing(t.side_upper.abs_rel);
    } else if (tag == "b_to_p_upper") {
        bump_map(t.side_upper.b_to_p);
    } else if (tag == "p_to_rel_upper") {
        bump_map(t.side_upper.p_to_rel);
    } else if (tag == "rel_bdry_upper") {
        bump_map(t.side_upper.rel_bdry);
    } else if (tag == "D_abs_rel_upper") {
        bump_pairing(t.side_upper.abs_rel);
    } else if (tag == "D_bdry") {
        bump_pairing(t.bdry_pairing);
    } else if (tag == "iota") {
        bump_map(out.instance.global.include_bdry);
    } else if (tag == "lefschetz") {
        bump_pairing(out.instance.global.lefschetz);
    } else {
        throw std::logic_error("unknown mutation slot");
    }
    out.changed = true;
    std::ostringstream desc;
    desc << tag << " degree " << chosen.degree << " entry (" << chosen.row << "," << chosen.col
         << ") += " << to_string(delta);
    out.description = desc.str();
    return out;
}

}  // namespace isx

// Ambient data validation and the intersection model with its two exact
// triangles.

#include <catch2/catch_amalgamated.hpp>

#include "isx/fixtures.hpp"
#include "isx/global.hpp"

using namespace isx;

TEST_CASE("fixture global data validates") {
    const Instance fx = pinched_torus();
    const ValidationReport rep = validate_global(fx.tube, fx.global);
    for (const auto& e : rep.errors) INFO(e);
    CHECK(rep.ok);
}

TEST_CASE("ambient cone of the fixture") {
    const Instance fx = pinched_torus();
    const ConeModel R = ambient_cone(fx.tube, fx.global);
    // iota is onto in degrees 0 and 1 and vanishes above, so R is pure
    // kernel, shifted up by one.
    CHECK(R.H.dim(0) == 0);
    CHECK(R.H.dim(1) == 0);
    CHECK(R.H.dim(2) == 0);
    CHECK(R.H.dim(3) == 1);
    CHECK(R.H.dim(4) == 1);
    CHECK_NOTHROW(check_cone_model_against_generic(fx.global.include_bdry, R));
}

TEST_CASE("ambient cone rejects bad endpoints") {
    const Instance fx = pinched_torus();
    GlobalDatum bad = fx.global;
    GradedSpace wrong;
    wrong.set_dim(0, 2);
    bad.include_bdry = GradedMap::zero(wrong, fx.global.ambient, 0);
    CHECK_THROWS_AS(ambient_cone(fx.tube, bad), std::invalid_argument);
    // validate_global reports the same problem instead of throwing.
    CHECK(!validate_global(fx.tube, bad).ok);
}

TEST_CASE("validator flags a perturbed duality pairing") {
    Instance fx = pinched_torus();
    Mat b = fx.global.lefschetz.block(3);
    b(0, 0) = 2;  // was -1
    fx.global.lefschetz.set_block(3, b);
    CHECK(!validate_global(fx.tube, fx.global).ok);
}

TEST_CASE("validator flags a degenerate duality pairing") {
    Instance fx = pinched_torus();
    fx.global.lefschetz.set_block(4, Mat(1, 1));
    CHECK(!validate_global(fx.tube, fx.global).ok);
}

TEST_CASE("validator flags wrong pairing endpoints") {
    Instance fx = pinched_torus();
    const ConeModel R = ambient_cone(fx.tube, fx.global);
    fx.global.lefschetz = GradedPairing(R.H, fx.global.ambient, 5);
    CHECK(!validate_global(fx.tube, fx.global).ok);
}

TEST_CASE("intersection model of the fixture") {
    const Instance fx = pinched_torus();
    for (Perversity pv : {Perversity::lower, Perversity::upper}) {
        const Approximation a = default_approximation(fx.tube, pv);
        const IXModel m = intersection_space(fx.tube, fx.global, a, pv);

        CHECK(m.H().dim(0) == 0);
        CHECK(m.H().dim(1) == 1);
        CHECK(m.H().dim(2) == 0);
        CHECK(m.H().dim(3) == 1);
        CHECK(m.H().dim(4) == 0);

        const auto dims = ix_dimensions(m);
        CHECK(dims.size() == 2);
        CHECK(dims.at(1) == 1);
        CHECK(dims.at(3) == 1);

        // Map endpoints around the two triangles.
        CHECK(m.u.src() == m.cf.cone.H);
        CHECK(m.u.dst() == m.H());
        CHECK(m.v.src() == m.H());
        CHECK(m.v.dst() == m.R.H);
        CHECK(m.h.src() == fx.global.ambient);
        CHECK(m.h.dst() == m.H());
        CHECK(m.g.src() == m.H());
        CHECK(m.g.dst() == a.complex.space);
        CHECK(m.g.shift() == -1);

        // phi = iota . f.
        CHECK(m.phi == compose(fx.global.include_bdry, a.f));
    }
}

TEST_CASE("intersection model needs a zero differential") {
    const Instance fx = pinched_torus();
    GradedSpace as;
    as.set_dim(0, 1);
    as.set_dim(1, 1);
    Approximation a;
    a.complex.space = as;
    a.complex.d = GradedMap::zero(as, as, -1);
    Mat d(1, 1);
    d(0, 0) = 1;
    a.complex.d.set_block(1, d);
    a.f = GradedMap::zero(as, fx.tube.boundary, 0);
    CHECK_THROWS_AS(intersection_space(fx.tube, fx.global, a, Perversity::lower),
                    std::invalid_argument);
}

TEST_CASE("intersection model on generated instances") {
    for (unsigned seed : {1u, 4u, 8u}) {
        GenProfile p;
        p.dimension = 6;
        p.seed = seed;
        const Instance in = generate_instance(p);
        REQUIRE(validate_tube(in.tube).ok);
        REQUIRE(validate_global(in.tube, in.global).ok);

        const Approximation a = default_approximation(in.tube, Perversity::lower);
        // Construction runs all octahedron identities internally.
        const IXModel m = intersection_space(in.tube, in.global, a, Perversity::lower);
        CHECK(m.N == 6);

        // The model sits between the ambient homology and its cone: the
        // triangle dimensions must balance degreewise,
        // dim H_ix = dim im u + dim im s-part = rank u + rank v.
        for (const auto& [deg, hdim] : m.H().dims())
            CHECK(hdim == rank(m.u.block(deg)) + rank(m.v.block(deg)));
    }
}

TEST_CASE("intersection model on the witt complement of adversarial data") {
    GenProfile p;
    p.dimension = 4;
    p.seed = 2;
    p.adversarial = true;
    const Instance in = generate_instance(p);
    const Approximation w = witt_approximation(in.tube);
    const IXModel m = intersection_space(in.tube, in.global, w, Perversity::lower);
    CHECK(m.H() == intersection_space(in.tube, in.global, w, Perversity::upper).H());
}

#pragma once

// Built-in instances used by the test suite and the command line tool.

#include "isx/generator.hpp"

namespace isx {

// A 4-dimensional Witt instance modeling a suspension-like singular space
// whose boundary strata contribute one class in each degree. All matrices
// are written out explicitly; the generator reproduces the same instance
// from the matching profile, which the tests cross-check.
inline Instance pinched_torus() {
    Instance inst;
    inst.name = "pinched-torus";
    TubeDatum& t = inst.tube;
    t.tube_name = inst.name;
    t.dimension = 4;
    t.witt = true;
    t.min_degree = 0;
    t.max_degree = 4;

    for (int i = 0; i < 4; ++i) t.boundary.set_dim(i, 1);

    TubeSide s;
    s.absolute.set_dim(0, 1);
    s.absolute.set_dim(2, 2);
    s.relative.set_dim(2, 2);
    s.relative.set_dim(4, 1);
    s.b_to_p = GradedMap::zero(t.boundary, s.absolute, 0);
    s.b_to_p.set_block(0, Mat{{1}});
    s.b_to_p.set_block(2, Mat{{1}, {0}});
    s.p_to_rel = GradedMap::zero(s.absolute, s.relative, 0);
    s.p_to_rel.set_block(2, Mat{{0, 1}, {0, 0}});
    s.rel_bdry = GradedMap::zero(s.relative, t.boundary, -1);
    s.rel_bdry.set_block(2, Mat{{0, 1}});
    s.rel_bdry.set_block(4, Mat{{1}});
    s.abs_rel = GradedPairing(s.absolute, s.relative, 4);
    s.abs_rel.set_block(0, Mat{{1}});
    s.abs_rel.set_block(2, Mat{{0, 1}, {1, 0}});
    t.side_lower = s;
    t.side_upper = s;

    t.bdry_pairing = GradedPairing(t.boundary, t.boundary, 3);
    for (int i = 0; i < 4; ++i) t.bdry_pairing.set_block(i, Mat{{1}});

    GlobalDatum& g = inst.global;
    g.ambient.set_dim(0, 1);
    g.ambient.set_dim(1, 1);
    g.include_bdry = GradedMap::zero(t.boundary, g.ambient, 0);
    g.include_bdry.set_block(0, Mat{{1}});
    g.include_bdry.set_block(1, Mat{{1}});

    const ConeModel r = cone_model(g.include_bdry);
    g.lefschetz = GradedPairing(r.H, g.ambient, 4);
    g.lefschetz.set_block(3, Mat{{-1}});
    g.lefschetz.set_block(4, Mat{{1}});
    return inst;
}

// The generator profile that rebuilds the same instance in the same
// coordinates.
inline GenProfile pinched_torus_profile() {
    GenProfile p;
    p.dimension = 4;
    p.seed = 0;
    p.z_profile = {1, 0, 1, 0};
    p.extra_profile = {0, 0, 1, 0, 0};
    p.kernel_profile = {0, 0, 1, 1};
    p.coker_profile = {0, 0, 0, 0, 0};
    p.conjugate = false;
    return p;
}

// A space with empty boundary data in every degree.
inline Instance empty_instance() {
    Instance inst;
    inst.name = "empty";
    TubeDatum& t = inst.tube;
    t.tube_name = inst.name;
    t.dimension = 4;
    t.witt = true;
    t.min_degree = 0;
    t.max_degree = 4;
    TubeSide s;
    s.b_to_p = GradedMap::zero(t.boundary, s.absolute, 0);
    s.p_to_rel = GradedMap::zero(s.absolute, s.relative, 0);
    s.rel_bdry = GradedMap::zero(s.relative, t.boundary, -1);
    s.abs_rel = GradedPairing(s.absolute, s.relative, 4);
    t.side_lower = s;
    t.side_upper = s;
    t.bdry_pairing = GradedPairing(t.boundary, t.boundary, 3);
    GlobalDatum& g = inst.global;
    g.include_bdry = GradedMap::zero(t.boundary, g.ambient, 0);
    const ConeModel r = cone_model(g.include_bdry);
    g.lefschetz = GradedPairing(r.H, g.ambient, 4);
    return inst;
}

}  // namespace isx

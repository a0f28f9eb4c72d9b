// Random instance generation: profile validation, reproduction of the
// hand-built fixture, validity of the output, adversarial behavior, and
// single-entry mutations.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "isx/fixtures.hpp"
#include "isx/global.hpp"

using namespace isx;

namespace {

bool instances_equal(const Instance& a, const Instance& b) {
    return a.tube.dimension == b.tube.dimension && a.tube.witt == b.tube.witt &&
           a.tube.min_degree == b.tube.min_degree && a.tube.max_degree == b.tube.max_degree &&
           a.tube.boundary == b.tube.boundary && a.tube.bdry_pairing == b.tube.bdry_pairing &&
           a.tube.side_lower == b.tube.side_lower && a.tube.side_upper == b.tube.side_upper &&
           a.global.ambient == b.global.ambient &&
           a.global.include_bdry == b.global.include_bdry &&
           a.global.lefschetz == b.global.lefschetz;
}

void check_instance_valid(const Instance& in) {
    const ValidationReport t = validate_tube(in.tube);
    for (const auto& e : t.errors) INFO(e);
    REQUIRE(t.ok);
    const ValidationReport g = validate_global(in.tube, in.global);
    for (const auto& e : g.errors) INFO(e);
    REQUIRE(g.ok);
}

}  // namespace

TEST_CASE("profile validation") {
    GenProfile p;

    SECTION("odd dimension") {
        p.dimension = 5;
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("dimension too small") {
        p.dimension = 0;
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("wrong z length") {
        p.z_profile = {1, 0, 1};
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("asymmetric extra profile") {
        p.extra_profile = {1, 0, 0, 0, 0};
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("kernel profile without z profile") {
        p.kernel_profile = {0, 0, 0, 0};
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("kernel not complementary") {
        p.z_profile = {1, 0, 1, 0};
        p.kernel_profile = {0, 1, 1, 1};  // k_0 + k_3 = 1 = b_0 but k_1 + k_2 = 2 != b_1 = 1
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("asymmetric coker profile") {
        p.coker_profile = {1, 0, 0, 0, 0};
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("odd middle coker in dimension 6") {
        p.dimension = 6;
        p.coker_profile = {0, 0, 0, 1, 0, 0, 0};
        CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    }
    SECTION("valid profile passes") {
        p.z_profile = {1, 0, 1, 0};
        p.kernel_profile = {0, 0, 1, 1};
        p.extra_profile = {0, 0, 1, 0, 0};
        p.coker_profile = {0, 0, 0, 0, 0};
        CHECK_NOTHROW(validate_profile(p));
    }
}

TEST_CASE("generator reproduces the fixture from its profile") {
    const Instance fx = pinched_torus();
    const Instance gen = generate_instance(pinched_torus_profile());
    CHECK(instances_equal(fx, gen));
}

TEST_CASE("generated instances are valid") {
    for (int n : {4, 6}) {
        for (unsigned seed = 0; seed < 8; ++seed) {
            GenProfile p;
            p.dimension = n;
            p.seed = seed;
            p.adversarial = seed % 2 == 1;
            const Instance in = generate_instance(p);
            check_instance_valid(in);
            CHECK(in.tube.witt);
            CHECK(in.tube.dimension == n);
            CHECK(in.name.find("gen-d" + std::to_string(n)) == 0);

            const ZYData lower = compute_zy(in.tube, Perversity::lower);
            const ZYData upper = compute_zy(in.tube, Perversity::upper);
            CHECK(check_zy_duality(in.tube, lower, upper).ok);

            // Dual route obstruction computation must never disagree.
            const Approximation al = default_approximation(in.tube, Perversity::lower);
            const Approximation au = default_approximation(in.tube, Perversity::upper);
            CHECK_NOTHROW(obstructions(in.tube, al, au));
        }
    }
}

TEST_CASE("generation is deterministic in the seed") {
    GenProfile p;
    p.dimension = 6;
    p.seed = 42;
    p.adversarial = true;
    const Instance a = generate_instance(p);
    const Instance b = generate_instance(p);
    CHECK(instances_equal(a, b));
    CHECK(a.name == b.name);

    p.seed = 43;
    const Instance c = generate_instance(p);
    CHECK(!instances_equal(a, c));
}

TEST_CASE("adversarial instances mostly obstruct the default complement") {
    int failing = 0;
    const int total = 16;
    for (unsigned seed = 0; seed < total; ++seed) {
        GenProfile p;
        p.dimension = 4;
        p.seed = seed;
        p.adversarial = true;
        const Instance in = generate_instance(p);
        const Approximation al = default_approximation(in.tube, Perversity::lower);
        const Approximation au = default_approximation(in.tube, Perversity::upper);
        if (!obstructions(in.tube, al, au).all_vanish) ++failing;
    }
    CHECK(failing >= total / 2);
}

TEST_CASE("plain instances have vanishing obstructions") {
    for (int n : {4, 6}) {
        for (unsigned seed = 0; seed < 6; ++seed) {
            GenProfile p;
            p.dimension = n;
            p.seed = seed;
            const Instance in = generate_instance(p);
            const Approximation al = default_approximation(in.tube, Perversity::lower);
            const Approximation au = default_approximation(in.tube, Perversity::upper);
            CHECK(obstructions(in.tube, al, au).all_vanish);
        }
    }
}

TEST_CASE("unconjugated instances expose the block shapes") {
    GenProfile p;
    p.dimension = 4;
    p.seed = 5;
    p.z_profile = {2, 0, 1, 0};
    p.kernel_profile = {1, 1, 0, 1};
    p.extra_profile = {1, 0, 0, 0, 1};
    p.conjugate = false;
    const Instance in = generate_instance(p);
    check_instance_valid(in);

    // Boundary dims b_i = z_i + z_{3-i}.
    CHECK(in.tube.boundary.dim(0) == 2);
    CHECK(in.tube.boundary.dim(1) == 1);
    CHECK(in.tube.boundary.dim(2) == 1);
    CHECK(in.tube.boundary.dim(3) == 2);
    // Absolute dims p_i = z_i + e_i.
    CHECK(in.tube.side_lower.absolute.dim(0) == 3);
    CHECK(in.tube.side_lower.absolute.dim(2) == 1);

    const ZYData zy = compute_zy(in.tube, Perversity::lower);
    CHECK(zy.Z.dim(0) == 2);
    CHECK(zy.Z.dim(1) == 0);
    CHECK(zy.Z.dim(2) == 1);
    CHECK(zy.Y.dim(1) == 0);
    CHECK(zy.Y.dim(2) == 1);
    CHECK(zy.Y.dim(3) == 0);
    CHECK(zy.Y.dim(4) == 2);
}

TEST_CASE("mutations flip exactly one stored entry") {
    const Instance fx = pinched_torus();
    int changed_count = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const MutationResult mut = mutate_instance(fx, seed);
        REQUIRE(mut.changed);
        CHECK(!mut.description.empty());
        ++changed_count;

        // Witt instances stay witt symmetric under mutation.
        CHECK(mut.instance.tube.side_lower == mut.instance.tube.side_upper);
        CHECK(!instances_equal(fx, mut.instance));
    }
    CHECK(changed_count == 30);
}

TEST_CASE("mutation is deterministic in the seed") {
    const Instance fx = pinched_torus();
    const MutationResult a = mutate_instance(fx, 7);
    const MutationResult b = mutate_instance(fx, 7);
    CHECK(a.description == b.description);
    CHECK(instances_equal(a.instance, b.instance));
}

TEST_CASE("mutating an empty instance is a no-op") {
    const Instance e = empty_instance();
    const MutationResult mut = mutate_instance(e, 1);
    CHECK(!mut.changed);
    CHECK(mut.description == "no stored entries to mutate");
}

TEST_CASE("mutations hit different blocks across seeds") {
    const Instance fx = pinched_torus();
    std::set<std::string> seen;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) seen.insert(mutate_instance(fx, seed).description);
    // 15 stored blocks and several operators: expect real spread.
    CHECK(seen.size() >= 10);
}

#include <catch2/catch_amalgamated.hpp>

#include "isx/matrix.hpp"
#include "isx/rational.hpp"
#include "isx/signature.hpp"
#include "isx/subspace.hpp"

#include <random>

using namespace isx;

namespace {

Mat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound = 3) {
    Mat m(rows, cols);
    const std::uint64_t span = std::uint64_t(2 * bound + 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = long(rng() % span) - bound;
    return m;
}

Mat random_unit_triangular(std::mt19937_64& rng, std::size_t n) {
    Mat l = Mat::identity(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) l(r, c) = long(rng() % 5) - 2;
    Mat u = Mat::identity(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) u(r, c) = long(rng() % 5) - 2;
    return l * u;
}

}  // namespace

TEST_CASE("rational parsing accepts canonical forms") {
    CHECK(parse_rational("0") == Rational(0));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-10/4") == Rational(-5, 2));
    CHECK(to_string(Rational(-5, 2)) == "-5/2");
    CHECK(to_string(Rational(4)) == "4");
    CHECK(parse_rational(to_string(Rational(22, 7))) == Rational(22, 7));
}

TEST_CASE("rational parsing rejects junk") {
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1 "), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("+1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
}

TEST_CASE("row reduction of a rank one matrix") {
    const Mat m{{1, 2}, {2, 4}};
    const RowReduction rr = row_reduce(m);
    CHECK(rr.rank == 1);
    CHECK(rr.pivots == std::vector<std::size_t>{0});
    CHECK(rr.rref == Mat{{1, 2}, {0, 0}});
    CHECK(rank(m) == 1);
    CHECK(rank(m.transpose()) == 1);
}

TEST_CASE("row reduction is idempotent and rank is transpose invariant") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        const Mat m = random_matrix(rng, r, c);
        const RowReduction rr = row_reduce(m);
        CHECK(row_reduce(rr.rref).rref == rr.rref);
        CHECK(rank(m) == rank(m.transpose()));
        CHECK(rr.rank + kernel_basis(m).cols() == c);
    }
}

TEST_CASE("kernel basis spans the kernel") {
    const Mat m{{1, 2}, {2, 4}};
    const Mat k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK((m * k).is_zero());
    CHECK(k == Mat{{-2}, {1}});
}

TEST_CASE("solve returns the particular solution with free variables at zero") {
    const Mat a{{2}};
    const auto x = solve(a, Mat{{1}});
    REQUIRE(x.has_value());
    CHECK((*x)(0, 0) == Rational(1, 2));

    const Mat wide{{1, 1}};
    const auto y = solve(wide, Mat{{5}});
    REQUIRE(y.has_value());
    CHECK(*y == Mat{{5}, {0}});

    CHECK_FALSE(solve(Mat{{1}, {1}}, Mat{{1}, {2}}).has_value());
}

TEST_CASE("solve and inverse agree on random invertible matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const Mat s = random_unit_triangular(rng, n);
        REQUIRE(is_invertible(s));
        const Mat inv = inverse(s);
        CHECK(s * inv == Mat::identity(n));
        CHECK(inv * s == Mat::identity(n));
        const Mat b = random_matrix(rng, n, 2);
        const auto x = solve(s, b);
        REQUIRE(x.has_value());
        CHECK(s * *x == b);
    }
}

TEST_CASE("hyperbolic plane has signature zero") {
    const Signature s = symmetric_signature(Mat{{0, 1}, {1, 0}});
    CHECK(s.n_plus == 1);
    CHECK(s.n_minus == 1);
    CHECK(s.n_zero == 0);
    CHECK(s.sigma() == 0);
}

TEST_CASE("diagonal signatures count signs and kernel") {
    const Signature s = symmetric_signature(Mat{{2, 0, 0}, {0, -3, 0}, {0, 0, 0}});
    CHECK(s.n_plus == 1);
    CHECK(s.n_minus == 1);
    CHECK(s.n_zero == 1);

    const Signature t = symmetric_signature(Mat{{1, 2}, {2, 1}});
    CHECK(t.n_plus == 1);
    CHECK(t.n_minus == 1);
}

TEST_CASE("signature is a congruence invariant") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        Mat g = random_matrix(rng, n, n);
        g = g + g.transpose();
        const Mat s = random_unit_triangular(rng, n);
        const Signature before = symmetric_signature(g);
        const Signature after = symmetric_signature(s.transpose() * g * s);
        CHECK(before == after);
    }
}

TEST_CASE("signature rejects non symmetric input") {
    CHECK_THROWS_AS(symmetric_signature(Mat{{0, 1}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("span canonicalization and membership") {
    const Subspace v = Subspace::span_of(3, Mat{{1, 1}, {0, 2}, {0, 0}});
    CHECK(v.dim() == 2);
    Mat probe(3, 1);
    probe(0, 0) = 5;
    probe(1, 0) = -3;
    CHECK(v.contains(probe));
    probe(2, 0) = 1;
    CHECK_FALSE(v.contains(probe));

    const Subspace same = Subspace::span_of(3, Mat{{2, 7}, {4, 3}, {0, 0}});
    CHECK(v == same);
}

TEST_CASE("span of an empty generator list is the zero space") {
    const Subspace z = Subspace::span_of(3, Mat());
    CHECK(z.dim() == 0);
    CHECK(z.basis().rows() == 3);
    CHECK(Subspace(3) == z);
}

TEST_CASE("sum and intersection satisfy the dimension formula") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        const Subspace a = Subspace::span_of(n, random_matrix(rng, n, 1 + rng() % 3));
        const Subspace b = Subspace::span_of(n, random_matrix(rng, n, 1 + rng() % 3));
        const Subspace s = span_sum(a, b);
        const Subspace i = intersection(a, b);
        CHECK(s.dim() + i.dim() == a.dim() + b.dim());
        CHECK(s.contains(a));
        CHECK(s.contains(b));
        CHECK(a.contains(i));
        CHECK(b.contains(i));
    }
}

TEST_CASE("quotient projection and section compose to the identity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const Subspace w = Subspace::span_of(n, random_matrix(rng, n, rng() % (n + 1)));
        const Quotient q = quotient_by(w);
        const std::size_t qd = n - w.dim();
        REQUIRE(q.projection.rows() == qd);
        CHECK(q.projection * q.section == Mat::identity(qd));
        CHECK((q.projection * w.basis()).is_zero());
    }
}

TEST_CASE("complement_within extends an inner space inside an outer one") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        const Subspace outer = Subspace::span_of(n, random_matrix(rng, n, 1 + rng() % n));
        const Subspace inner =
            Subspace::span_of(n, outer.basis().columns({0}));
        const Mat added = complement_within(inner, outer);
        CHECK(inner.dim() + added.cols() == outer.dim());
        const Subspace rebuilt = span_sum(inner, Subspace::span_of(n, added));
        CHECK(rebuilt == outer);
    }
}

TEST_CASE("annihilator is an involution under a nondegenerate pairing") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        Mat pairing = random_unit_triangular(rng, n);  // invertible
        const std::size_t k = rng() % (n + 1);
        const Subspace v = Subspace::span_of(n, random_matrix(rng, n, k));
        // Annihilator on the right: vectors w with v^T . pairing . w = 0.
        const Mat ann = kernel_basis(v.basis().transpose() * pairing);
        CHECK(v.dim() + ann.cols() == n);
        const Mat back = kernel_basis((pairing * ann).transpose());
        CHECK(Subspace::span_of(n, back) == v);
    }
}

TEST_CASE("hstack and vstack shapes") {
    const Mat a{{1, 2}, {3, 4}};
    const Mat b{{5}, {6}};
    CHECK(hstack(a, b) == Mat{{1, 2, 5}, {3, 4, 6}});
    CHECK(vstack(a, Mat{{7, 8}}) == Mat{{1, 2}, {3, 4}, {7, 8}});
    CHECK(hstack(Mat(), b) == b);
    CHECK(vstack(a, Mat()) == a);
    CHECK_THROWS_AS(hstack(a, Mat{{1}}), std::invalid_argument);
}

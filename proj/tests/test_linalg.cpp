#include "doctest.h"

#include "qsl2/linalg.hpp"

using namespace qsl2;

namespace {

Mat rand_mat(const FieldCtx* c, long n, long m, SplitMix64& rng, long spread = 4) {
    Mat a(c, n, m);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j)
            a.at(i, j) = FieldElem::from_int(c, rng.next_in(-spread, spread));
    return a;
}

} // namespace

TEST_CASE("rref, rank and nullspace") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    SplitMix64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Mat a = rand_mat(c, 5, 7, rng);
        Mat ns = a.nullspace();
        CHECK(a.rank() + ns.cols() == 7);
        CHECK((a * ns).is_zero());
        if (ns.cols() > 0) CHECK(ns.rank() == ns.cols());
    }
}

TEST_CASE("inverse and determinant") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    SplitMix64 rng(5);
    int invertible_seen = 0;
    for (int trial = 0; trial < 12; ++trial) {
        Mat a = rand_mat(c, 4, 4, rng);
        FieldElem d = a.det();
        auto inv = a.inverse();
        CHECK(d.is_zero() == !inv.has_value());
        if (inv) {
            ++invertible_seen;
            CHECK(*inv * a == Mat::identity(c, 4));
            CHECK(a * *inv == Mat::identity(c, 4));
        }
        Mat b = rand_mat(c, 4, 4, rng);
        CHECK((a * b).det() == a.det() * b.det());
    }
    CHECK(invertible_seen > 0);
}

TEST_CASE("solve consistent and inconsistent systems") {
    auto ctx = FieldCtx::make(2);
    const FieldCtx* c = ctx.get();
    SplitMix64 rng(9);
    Mat a = rand_mat(c, 4, 3, rng);
    Mat x = rand_mat(c, 3, 2, rng);
    Mat b = a * x;
    auto sol = a.solve(b);
    REQUIRE(sol.has_value());
    CHECK(a * *sol == b);
    // make an inconsistent rhs by perturbing outside the column space
    Mat ns_t = a.transpose().nullspace();
    if (ns_t.cols() > 0) {
        Mat bad = b;
        for (long i = 0; i < 4; ++i) bad.at(i, 0) = bad.at(i, 0) + ns_t.at(i, 0);
        CHECK_FALSE(a.solve(bad).has_value());
    }
}

TEST_CASE("kronecker product flattening is associative") {
    auto ctx = FieldCtx::make(2);
    const FieldCtx* c = ctx.get();
    SplitMix64 rng(17);
    Mat a = rand_mat(c, 2, 2, rng), b = rand_mat(c, 3, 3, rng), d = rand_mat(c, 2, 2, rng);
    CHECK(a.kron(b).kron(d) == a.kron(b.kron(d)));
    CHECK((a.kron(b)) * (a.kron(b)) == (a * a).kron(b * b));
}

#include "doctest.h"

#include "qsl2/repcore.hpp"

using namespace qsl2;

namespace {

ProjPoint pp(const FieldCtx* c, long a, long b) {
    return ProjPoint::make(FieldElem::from_int(c, a), FieldElem::from_int(c, b));
}

std::vector<ProjPoint> sample_points(const FieldCtx* c) {
    return {ProjPoint::infinity_point(c), ProjPoint::zero_point(c), pp(c, 1, 1),
            pp(c, 1, -1)};
}

} // namespace

TEST_CASE("trivial module") {
    auto ctx = FieldCtx::make(3);
    Rep triv = build_simple(ctx, 1, Sign::plus);
    CHECK(triv.dim == 1);
    CHECK(triv.raise_m.is_zero());
    CHECK(triv.lower_m.is_zero());
    CHECK(triv.grp_m.at(0, 0).is_one());
}

TEST_CASE("simple module actions match the printed basis formulas") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    Rep x2 = build_simple(ctx, 2, Sign::plus);
    CHECK(x2.grp_m.at(0, 0) == q_power(c, 1));
    CHECK(x2.grp_m.at(1, 1) == q_power(c, -1));
    // E a_1 = [1][1] a_0 = a_0
    CHECK(x2.raise_m.at(0, 1).is_one());
    // F a_0 = a_1
    CHECK(x2.lower_m.at(1, 0).is_one());
}

TEST_CASE("dimension formulas for all constructors") {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        for (Sign sg : {Sign::plus, Sign::minus}) {
            for (long s = 1; s <= p; ++s) CHECK(build_simple(ctx, s, sg).dim == s);
            for (long s = 1; s <= p - 1; ++s) {
                CHECK(build_P(ctx, s, sg).dim == 2 * p);
                for (long n = 2; n <= 3; ++n) {
                    CHECK(build_MW(ctx, s, sg, n, Family::M).dim == p * n - s);
                    CHECK(build_MW(ctx, s, sg, n, Family::W).dim == p * n - p + s);
                }
                for (long n = 1; n <= 2; ++n)
                    for (const auto& lam : sample_points(c))
                        CHECK(build_E(ctx, s, sg, n, lam).dim == p * n);
            }
        }
    }
}

TEST_CASE("every constructor output passes validate") {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        for (Sign sg : {Sign::plus, Sign::minus}) {
            for (long s = 1; s <= p; ++s) CHECK(validate(build_simple(ctx, s, sg)).ok);
            for (long s = 1; s <= p - 1; ++s) {
                CHECK(validate(build_P(ctx, s, sg)).ok);
                for (long n = 2; n <= 3; ++n) {
                    CHECK(validate(build_MW(ctx, s, sg, n, Family::M)).ok);
                    CHECK(validate(build_MW(ctx, s, sg, n, Family::W)).ok);
                }
                for (long n = 1; n <= 2; ++n)
                    for (const auto& lam : sample_points(c))
                        CHECK(validate(build_E(ctx, s, sg, n, lam)).ok);
            }
        }
    }
}

TEST_CASE("perturbing one entry of E fails the commutator relation") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    Rep x2 = build_simple(ctx, 2, Sign::plus);
    x2.raise_m.at(0, 1) = x2.raise_m.at(0, 1) + FieldElem::one(c);
    ValidationResult v = validate(x2);
    CHECK_FALSE(v.ok);
    CHECK(v.violated == "EF-FE=(K-K^-1)/(q-q^-1)");
}

TEST_CASE("K^4 = 1 on P_1^+ at p=2 by direct matrix power") {
    auto ctx = FieldCtx::make(2);
    Rep p1 = build_P(ctx, 1, Sign::plus);
    CHECK(p1.grp_m.pow(4) == Mat::identity(ctx.get(), p1.dim));
}

TEST_CASE("E(1;lambda) matches the printed entries on canonical coordinates") {
    auto ctx = FieldCtx::make(5);
    const FieldCtx* c = ctx.get();
    long s = 2;
    FieldElem beta = FieldElem::from_int(c, 7);
    Rep e = build_E(ctx, s, Sign::plus, 1, ProjPoint::make(FieldElem::one(c), beta));
    // basis order: b_0, b_1, x_0, x_1, x_2
    CHECK(e.lower_m.at(s, s - 1).is_one());          // F b_{s-1} = lambda_1 x_0
    CHECK(e.raise_m.at(s + (5 - s - 1), 0) == beta); // E b_0 = lambda_2 x_{p-s-1}
    CHECK(e.grp_m.at(0, 0) == q_power(c, s - 1));
    CHECK(e.grp_m.at(s, s) == -q_power(c, 5 - s - 1));
    // [0:1]: lambda_1 = 0, lambda_2 = 1
    Rep e0 = build_E(ctx, s, Sign::plus, 1, ProjPoint::zero_point(c));
    CHECK(e0.lower_m.at(s, s - 1).is_zero());
    CHECK(e0.raise_m.at(s + (5 - s - 1), 0).is_one());
}

TEST_CASE("tensor with the unit object is the identity on matrices") {
    auto ctx = FieldCtx::make(3);
    Rep unit = build_simple(ctx, 1, Sign::plus);
    Rep z = build_MW(ctx, 1, Sign::plus, 2, Family::M);
    Rep t = tensor(unit, z);
    CHECK(t.raise_m == z.raise_m);
    CHECK(t.lower_m == z.lower_m);
    CHECK(t.grp_m == z.grp_m);
}

TEST_CASE("tensor validates and is matrix-associative") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    Rep a = build_simple(ctx, 2, Sign::plus);
    Rep b = build_E(ctx, 1, Sign::plus, 1, pp(c, 1, 1));
    Rep d = build_simple(ctx, 3, Sign::minus);
    CHECK(validate(tensor(a, b)).ok);
    Rep left = tensor(tensor(a, b), d);
    Rep right = tensor(a, tensor(b, d));
    CHECK(left.raise_m == right.raise_m);
    CHECK(left.lower_m == right.lower_m);
    CHECK(left.grp_m == right.grp_m);
    CHECK(tensor(a, b).dim == a.dim * b.dim);
}

TEST_CASE("tensor rejects mismatched tags") {
    auto ctx = FieldCtx::make(2);
    Rep a = build_simple(ctx, 1, Sign::plus);
    Rep d = a;
    d.tag = Algebra::Dbar;
    CHECK_THROWS_AS(tensor(a, d), DomainError);
}

TEST_CASE("double dual returns the original matrices") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    for (const Rep& z : {build_simple(ctx, 2, Sign::plus),
                         build_E(ctx, 1, Sign::plus, 2, pp(c, 1, 1)),
                         build_MW(ctx, 2, Sign::minus, 2, Family::W)}) {
        Rep dd = dual(dual(z, DualSide::right), DualSide::left);
        CHECK(dd.raise_m == z.raise_m);
        CHECK(dd.lower_m == z.lower_m);
        CHECK(dd.grp_m == z.grp_m);
        CHECK(validate(dual(z, DualSide::right)).ok);
        CHECK(validate(dual(z, DualSide::left)).ok);
    }
}

TEST_CASE("weight multiplicities of a simple are all one") {
    auto ctx = FieldCtx::make(5);
    Rep x4 = build_simple(ctx, 4, Sign::plus);
    auto ws = weight_spaces(x4);
    CHECK(ws.size() == 4);
    for (auto& [lam, basis] : ws) CHECK(basis.cols() == 1);
}

TEST_CASE("direct sum dims add") {
    auto ctx = FieldCtx::make(3);
    Rep a = build_simple(ctx, 2, Sign::plus);
    Rep b = build_P(ctx, 1, Sign::minus);
    CHECK(direct_sum({a, b}).dim == a.dim + b.dim);
    CHECK(validate(direct_sum({a, b})).ok);
}

TEST_CASE("submodule generated by x_0 inside E_s^+(1;lambda)") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    long s = 1;
    Rep e = build_E(ctx, s, Sign::plus, 1, pp(c, 1, 1));
    Mat seed(c, e.dim, 1);
    seed.at(s, 0) = FieldElem::one(c); // x_0 coordinate
    SubRep sub = submodule_generated(e, seed);
    CHECK(sub.rep.dim == 3 - s); // X_{p-s}^-
    CHECK(validate(sub.rep).ok);
    Rep want = build_simple(ctx, 3 - s, Sign::minus);
    auto we = weight_spaces(sub.rep);
    auto ww = weight_spaces(want);
    REQUIRE(we.size() == ww.size());
    for (size_t i = 0; i < we.size(); ++i) CHECK(we[i].first == ww[i].first);
}

TEST_CASE("Casimir is central and block eigenvalues pair X_s^+ with X_{p-s}^-") {
    for (long p : {3L, 5L}) {
        auto ctx = FieldCtx::make(p);
        for (long s = 1; s <= p - 1; ++s) {
            Rep xp = build_simple(ctx, s, Sign::plus);
            Rep xm = build_simple(ctx, p - s, Sign::minus);
            Mat cp = casimir_matrix(xp), cm = casimir_matrix(xm);
            CHECK(cp * xp.raise_m == xp.raise_m * cp);
            CHECK(cp.at(0, 0) == cm.at(0, 0)); // scalars coincide across the block
            CHECK(cp.at(0, 0) == block_eigenvalue(ctx.get(), s));
        }
        CHECK(casimir_matrix(build_simple(ctx, p, Sign::plus)).at(0, 0) ==
              block_eigenvalue(ctx.get(), p));
        CHECK(casimir_matrix(build_simple(ctx, p, Sign::minus)).at(0, 0) ==
              block_eigenvalue(ctx.get(), 0));
    }
}

TEST_CASE("block decomposition of Steinberg tensors") {
    {
        auto ctx = FieldCtx::make(5);
        Rep t = tensor(build_simple(ctx, 5, Sign::plus), build_simple(ctx, 2, Sign::plus));
        auto blocks = block_decompose(t);
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0].block == 4); // J_{5,2} = {4}
        CHECK(blocks[0].rep.dim == 10);
    }
    {
        auto ctx = FieldCtx::make(3);
        Rep t = tensor(build_simple(ctx, 3, Sign::plus), build_simple(ctx, 3, Sign::plus));
        auto blocks = block_decompose(t);
        REQUIRE(blocks.size() == 2);
        // block 1 carries P_1^+ (dim 6), block 3 a copy of X_3^+
        CHECK(blocks[0].block == 1);
        CHECK(blocks[0].rep.dim == 6);
        CHECK(blocks[1].block == 3);
        CHECK(blocks[1].rep.dim == 3);
        for (auto& b : blocks) CHECK(validate(b.rep).ok);
    }
}

TEST_CASE("quotient by a submodule acts on the complement") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    Rep e = build_E(ctx, 2, Sign::plus, 2, pp(c, 1, 1));
    Mat seed(c, e.dim, 1);
    seed.at(0, 0) = FieldElem::one(c); // b_0 of copy 0
    SubRep sub = submodule_generated(e, seed);
    CHECK(sub.rep.dim == 3);
    Rep q = quotient_by(e, sub.incl);
    CHECK(q.dim == 3);
    CHECK(validate(q).ok);
}

TEST_CASE("rep JSON round-trip") {
    auto ctx = FieldCtx::make(2);
    const FieldCtx* c = ctx.get();
    Rep e = build_E(ctx, 1, Sign::minus, 2, pp(c, 1, -1));
    Rep back = Rep::from_json(ctx, e.to_json());
    CHECK(back.dim == e.dim);
    CHECK(back.raise_m == e.raise_m);
    CHECK(back.lower_m == e.lower_m);
    CHECK(back.grp_m == e.grp_m);
    CHECK(back.grpinv_m == e.grpinv_m);
}

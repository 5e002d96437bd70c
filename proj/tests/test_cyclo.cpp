#include "doctest.h"

#include "qsl2/cyclo.hpp"

#include <vector>

using namespace qsl2;

namespace {

// test-local integer polynomial helpers, used as the independent oracle for
// the cyclotomic polynomial construction
using ZPoly = std::vector<long>;

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division, asserts zero remainder
ZPoly zdiv(ZPoly num, const ZPoly& den) {
    ZPoly quot(num.size() - den.size() + 1, 0);
    for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
        long dd = static_cast<long>(den.size()) - 1;
        REQUIRE(num[k + dd] % den[dd] == 0);
        long c = num[k + dd] / den[dd];
        quot[k] = c;
        for (long j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    for (long v : num) REQUIRE(v == 0);
    return quot;
}

std::vector<long> to_longs(const std::vector<mpz_class>& v) {
    std::vector<long> r;
    for (const auto& x : v) r.push_back(x.get_si());
    return r;
}

} // namespace

TEST_CASE("cyclotomic polynomials against the division oracle") {
    // Phi_8 = (x^8-1) / (Phi_1 Phi_2 Phi_4)
    ZPoly x8m1(9, 0);
    x8m1[0] = -1;
    x8m1[8] = 1;
    ZPoly den = zmul(zmul(ZPoly{-1, 1}, ZPoly{1, 1}), ZPoly{1, 0, 1});
    CHECK(zdiv(x8m1, den) == ZPoly{1, 0, 0, 0, 1}); // x^4 + 1
    CHECK(to_longs(cyclotomic_poly(8)) == std::vector<long>{1, 0, 0, 0, 1});

    // Phi_12 = (x^12-1) / (Phi_1 Phi_2 Phi_3 Phi_4 Phi_6)
    ZPoly x12m1(13, 0);
    x12m1[0] = -1;
    x12m1[12] = 1;
    ZPoly den12 = zmul(zmul(zmul(zmul(ZPoly{-1, 1}, ZPoly{1, 1}), ZPoly{1, 1, 1}),
                            ZPoly{1, 0, 1}),
                       ZPoly{1, -1, 1});
    CHECK(zdiv(x12m1, den12) == ZPoly{1, 0, -1, 0, 1}); // x^4 - x^2 + 1
    CHECK(to_longs(cyclotomic_poly(12)) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("degree of Phi_N equals phi(N)") {
    for (long N : {4, 8, 12, 20, 28, 36, 40}) {
        CHECK(static_cast<long>(cyclotomic_poly(N).size()) - 1 == euler_phi(N));
    }
}

TEST_CASE("zeta has exact order N") {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        CHECK(FieldElem::zeta_power(c, 4 * p).is_one());
        for (long k = 1; k < 4 * p; ++k) CHECK_FALSE(FieldElem::zeta_power(c, k).is_one());
    }
}

TEST_CASE("q is a primitive 2p-th root") {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        CHECK(q_power(c, 2 * p).is_one());
        for (long j = 1; j < 2 * p; ++j) CHECK_FALSE(q_power(c, j).is_one());
    }
}

TEST_CASE("p=2 powers of q") {
    auto ctx = FieldCtx::make(2);
    const FieldCtx* c = ctx.get();
    CHECK(q_power(c, 4).is_one());
    CHECK(q_power(c, 2) == -FieldElem::one(c));
}

TEST_CASE("field inverse law at p=3") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    FieldElem d = q_power(c, 1) - q_power(c, -1);
    CHECK((d * d.inverse()).is_one());
    CHECK((d / d).is_one());
}

TEST_CASE("division by zero is a distinct error") {
    auto ctx = FieldCtx::make(2);
    const FieldCtx* c = ctx.get();
    CHECK_THROWS_AS(FieldElem::one(c) / FieldElem::zero(c), DivideByZeroError);
    CHECK_THROWS_AS(FieldElem::zero(c).inverse(), DivideByZeroError);
}

TEST_CASE("quantum integers") {
    for (long p : {2L, 3L, 5L, 7L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        CHECK(qint(c, 0).is_zero());
        CHECK(qint(c, 1).is_one());
        for (long n = 0; n <= p; ++n) CHECK(qint(c, n) == qint(c, p - n));
        CHECK(qint(c, p).is_zero());
    }
    // [2] at p=2, oracle: direct evaluation q + q^-1 with q a primitive
    // fourth root
    auto ctx = FieldCtx::make(2);
    const FieldCtx* c = ctx.get();
    FieldElem direct = q_power(c, 1) + q_power(c, -1);
    CHECK(qint(c, 2) == direct);
    CHECK(direct.is_zero());
}

TEST_CASE("q-Pascal identity for quantum binomials") {
    for (long p : {3L, 5L, 7L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        for (long n = 1; n < p; ++n)
            for (long k = 1; k < n; ++k) {
                FieldElem lhs = qbinom(c, n, k);
                FieldElem rhs = q_power(c, k) * qbinom(c, n - 1, k) +
                                q_power(c, k - n) * qbinom(c, n - 1, k - 1);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("qbinom rejects out-of-range arguments") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    CHECK_THROWS_AS(qbinom(c, 3, 1), DomainError); // n = p: denominator [p-k]! fine but n >= p rejected
    CHECK_THROWS_AS(qbinom(c, 2, 3), DomainError);
    CHECK_THROWS_AS(qbinom(c, 2, -1), DomainError);
}

TEST_CASE("canonical form is idempotent") {
    auto ctx = FieldCtx::make(3);
    const FieldCtx* c = ctx.get();
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> raw(2 * c->root_order());
        for (auto& x : raw) x = Rational(rng.next_in(-9, 9), rng.next_in(1, 7));
        FieldElem once = FieldElem::from_poly(c, raw);
        FieldElem twice = FieldElem::from_poly(c, once.coeffs());
        CHECK(once == twice);
    }
}

TEST_CASE("ring axioms on pseudo-random elements") {
    auto ctx = FieldCtx::make(5);
    const FieldCtx* c = ctx.get();
    SplitMix64 rng(11);
    auto rand_elem = [&]() {
        std::vector<Rational> raw(c->degree());
        for (auto& x : raw) x = Rational(rng.next_in(-5, 5), rng.next_in(1, 4));
        return FieldElem::from_poly(c, raw);
    };
    for (int trial = 0; trial < 10; ++trial) {
        FieldElem a = rand_elem(), b = rand_elem(), d = rand_elem();
        CHECK(a * (b + d) == a * b + a * d);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("string serialization round-trips bit-exactly") {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = FieldCtx::make(p);
        const FieldCtx* c = ctx.get();
        SplitMix64 rng(13);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Rational> raw(c->degree());
            for (auto& x : raw) x = Rational(rng.next_in(-20, 20), rng.next_in(1, 9));
            FieldElem e = FieldElem::from_poly(c, raw);
            CHECK(FieldElem::parse(c, e.to_string()) == e);
            CHECK(FieldElem::from_json_strings(c, e.to_json_strings()) == e);
        }
        CHECK(FieldElem::parse(c, "0").is_zero());
        CHECK(FieldElem::parse(c, "-3/2 + 1*z^2") ==
              FieldElem::from_rational(c, Rational(-3, 2)) +
                  FieldElem::zeta_power(c, 2));
        CHECK_THROWS_AS(FieldElem::parse(c, "2x"), ParseError);
    }
}

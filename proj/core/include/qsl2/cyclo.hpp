#ifndef QSL2_CYCLO_HPP
#define QSL2_CYCLO_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "qsl2/common.hpp"

namespace qsl2 {

using Rational = mpq_class;

/// Integer-coefficient cyclotomic polynomial Phi_N, monic, ascending degree.
std::vector<mpz_class> cyclotomic_poly(long N);

long euler_phi(long N);

class FieldElem;

/// The cyclotomic field Q(zeta_N) with N = 4p. zeta is a primitive N-th
/// root of unity and q := zeta^2 is a primitive 2p-th root, so half-integer
/// powers of q live in the same field. Immutable after construction.
class FieldCtx {
public:
    static std::shared_ptr<const FieldCtx> make(long p);

    long p() const { return p_; }
    long root_order() const { return N_; }
    long degree() const { return deg_; }
    const std::vector<mpz_class>& minimal_poly() const { return phi_poly_; }

    /// zeta^k reduced to the power basis, any integer k.
    const std::vector<Rational>& zeta_power_coeffs(long k) const;

private:
    FieldCtx(long p);

    long p_;
    long N_;
    long deg_;
    std::vector<mpz_class> phi_poly_;
    // x^k mod Phi_N for k = 0 .. max(N-1, 2*deg-2); everything products of
    // two reduced elements or zeta_power can produce.
    std::vector<std::vector<Rational>> pow_table_;

    friend class FieldElem;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(deg-1) with
/// exact rational coordinates. The representation is canonical: two elements
/// are equal iff their coordinate vectors are equal.
class FieldElem {
public:
    FieldElem() : ctx_(nullptr) {}

    static FieldElem zero(const FieldCtx* ctx);
    static FieldElem one(const FieldCtx* ctx);
    static FieldElem from_rational(const FieldCtx* ctx, const Rational& r);
    static FieldElem from_int(const FieldCtx* ctx, long v);
    static FieldElem zeta_power(const FieldCtx* ctx, long k);
    /// Reduce an arbitrary-degree polynomial in zeta mod Phi_N.
    static FieldElem from_poly(const FieldCtx* ctx, const std::vector<Rational>& coeffs);

    const FieldCtx* ctx() const { return ctx_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// The constant coordinate; only meaningful when is_rational().
    const Rational& rational_part() const { return c_[0]; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    /// Throws DivideByZeroError when o == 0.
    FieldElem operator/(const FieldElem& o) const;
    FieldElem inverse() const;

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    bool operator==(const FieldElem& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElem& o) const { return c_ != o.c_; }

    /// "c0 + c1*z + c2*z^2 + ..." with exact rationals "a/b"; zero terms are
    /// omitted, the zero element prints as "0". parse() round-trips bit-exactly.
    std::string to_string() const;
    static FieldElem parse(const FieldCtx* ctx, const std::string& s);

    std::vector<std::string> to_json_strings() const;
    static FieldElem from_json_strings(const FieldCtx* ctx, const std::vector<std::string>& v);

private:
    FieldElem(const FieldCtx* ctx, std::vector<Rational> c) : ctx_(ctx), c_(std::move(c)) {}

    const FieldCtx* ctx_;
    std::vector<Rational> c_;
};

/// q^k with q = zeta^2, any integer k.
FieldElem q_power(const FieldCtx* ctx, long k);

/// Quantum integer [n] = (q^n - q^-n)/(q - q^-1). Satisfies [n] = [p-n].
FieldElem qint(const FieldCtx* ctx, long n);

/// [n]! = [1][2]...[n], n >= 0.
FieldElem qfact(const FieldCtx* ctx, long n);

/// Quantum binomial [n]!/([k]![n-k]!). Requires 0 <= k <= n < p so that the
/// denominator is nonzero; anything else throws DomainError.
FieldElem qbinom(const FieldCtx* ctx, long n, long k);

} // namespace qsl2

#endif

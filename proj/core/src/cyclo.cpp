#include "qsl2/cyclo.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qsl2 {

long euler_phi(long N) {
    long result = N;
    long n = N;
    for (long f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            while (n % f == 0) n /= f;
            result -= result / f;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Exact division of integer polynomials, remainder must be zero.
std::vector<mpz_class> poly_div_exact(const std::vector<mpz_class>& num,
                                      const std::vector<mpz_class>& den) {
    std::vector<mpz_class> rem = num;
    std::vector<mpz_class> quot(num.size() - den.size() + 1, mpz_class(0));
    const long dd = static_cast<long>(den.size()) - 1;
    for (long k = static_cast<long>(rem.size()) - 1 - dd; k >= 0; --k) {
        mpz_class c = rem[k + dd] / den[dd];
        if (rem[k + dd] % den[dd] != 0)
            throw InternalError("cyclotomic division not exact");
        quot[k] = c;
        if (c != 0)
            for (long j = 0; j <= dd; ++j) rem[k + j] -= c * den[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw InternalError("cyclotomic division left a remainder");
    while (quot.size() > 1 && quot.back() == 0) quot.pop_back();
    return quot;
}

std::vector<mpz_class> poly_mul_z(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

} // namespace

std::vector<mpz_class> cyclotomic_poly(long N) {
    if (N < 1) throw DomainError("cyclotomic_poly requires N >= 1");
    // x^N - 1 divided by the product of Phi_d over proper divisors d of N.
    std::vector<mpz_class> num(N + 1, mpz_class(0));
    num[0] = -1;
    num[N] = 1;
    std::vector<mpz_class> den{mpz_class(1)};
    for (long d = 1; d < N; ++d)
        if (N % d == 0) den = poly_mul_z(den, cyclotomic_poly(d));
    return poly_div_exact(num, den);
}

FieldCtx::FieldCtx(long p) : p_(p), N_(4 * p) {
    if (p < 2) throw DomainError("field context requires p >= 2");
    phi_poly_ = cyclotomic_poly(N_);
    deg_ = static_cast<long>(phi_poly_.size()) - 1;
    if (deg_ != euler_phi(N_)) throw InternalError("deg(Phi_N) != phi(N)");

    const long maxpow = std::max(N_ - 1, 2 * deg_ - 2);
    pow_table_.resize(maxpow + 1);
    for (long k = 0; k < deg_; ++k) {
        pow_table_[k].assign(deg_, Rational(0));
        pow_table_[k][k] = 1;
    }
    // x^k = x * x^(k-1) mod Phi; Phi is monic so x^deg = -(lower part).
    for (long k = deg_; k <= maxpow; ++k) {
        std::vector<Rational> v(deg_, Rational(0));
        const auto& prev = pow_table_[k - 1];
        for (long j = 0; j + 1 < deg_; ++j) v[j + 1] = prev[j];
        const Rational& top = prev[deg_ - 1];
        if (top != 0)
            for (long j = 0; j < deg_; ++j) v[j] -= top * Rational(phi_poly_[j]);
        pow_table_[k] = std::move(v);
    }
}

std::shared_ptr<const FieldCtx> FieldCtx::make(long p) {
    return std::shared_ptr<const FieldCtx>(new FieldCtx(p));
}

const std::vector<Rational>& FieldCtx::zeta_power_coeffs(long k) const {
    long r = k % N_;
    if (r < 0) r += N_;
    return pow_table_[r];
}

FieldElem FieldElem::zero(const FieldCtx* ctx) {
    return FieldElem(ctx, std::vector<Rational>(ctx->degree(), Rational(0)));
}

FieldElem FieldElem::one(const FieldCtx* ctx) {
    auto c = std::vector<Rational>(ctx->degree(), Rational(0));
    c[0] = 1;
    return FieldElem(ctx, std::move(c));
}

FieldElem FieldElem::from_rational(const FieldCtx* ctx, const Rational& r) {
    auto c = std::vector<Rational>(ctx->degree(), Rational(0));
    c[0] = r;
    return FieldElem(ctx, std::move(c));
}

FieldElem FieldElem::from_int(const FieldCtx* ctx, long v) {
    return from_rational(ctx, Rational(v));
}

FieldElem FieldElem::zeta_power(const FieldCtx* ctx, long k) {
    return FieldElem(ctx, ctx->zeta_power_coeffs(k));
}

FieldElem FieldElem::from_poly(const FieldCtx* ctx, const std::vector<Rational>& coeffs) {
    std::vector<Rational> c(ctx->degree(), Rational(0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        long r = static_cast<long>(k);
        if (r < ctx->degree()) {
            c[r] += coeffs[k];
        } else {
            r %= ctx->root_order();
            const auto& pw = ctx->zeta_power_coeffs(r);
            for (long j = 0; j < ctx->degree(); ++j) c[j] += coeffs[k] * pw[j];
        }
    }
    for (auto& x : c) x.canonicalize();
    return FieldElem(ctx, std::move(c));
}

bool FieldElem::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElem::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElem::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
    return FieldElem(ctx_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
    return FieldElem(ctx_, std::move(c));
}

FieldElem FieldElem::operator-() const {
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return FieldElem(ctx_, std::move(c));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    const long deg = ctx_->degree();
    std::vector<Rational> prod(2 * deg - 1, Rational(0));
    for (long i = 0; i < deg; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; j < deg; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    std::vector<Rational> c(deg, Rational(0));
    for (long k = 0; k < deg; ++k) c[k] = prod[k];
    for (long k = deg; k < 2 * deg - 1; ++k) {
        if (prod[k] == 0) continue;
        const auto& pw = ctx_->pow_table_[k];
        for (long j = 0; j < deg; ++j) c[j] += prod[k] * pw[j];
    }
    for (auto& x : c) x.canonicalize();
    return FieldElem(ctx_, std::move(c));
}

namespace {

using QPoly = std::vector<Rational>; // ascending coefficients

void qpoly_trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qpoly_rem(QPoly a, const QPoly& b) {
    qpoly_trim(a);
    const long db = static_cast<long>(b.size()) - 1;
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        Rational c = a.back() / b[db];
        long shift = static_cast<long>(a.size()) - 1 - db;
        for (long j = 0; j <= db; ++j) a[shift + j] -= c * b[j];
        qpoly_trim(a);
    }
    return a;
}

} // namespace

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivideByZeroError();
    // Extended Euclid for gcd(a, Phi) = 1 over Q[x]: track u with u*a = g mod Phi.
    const long deg = ctx_->degree();
    QPoly r0(ctx_->minimal_poly().size());
    for (size_t i = 0; i < r0.size(); ++i) r0[i] = Rational(ctx_->minimal_poly()[i]);
    QPoly r1(c_.begin(), c_.end());
    qpoly_trim(r1);
    QPoly u0{}, u1{Rational(1)}; // u0*a = r0 (mod Phi) with u0 = 0, u1*a = r1
    while (true) {
        qpoly_trim(r1);
        if (r1.empty()) throw InternalError("element not invertible mod Phi_N");
        if (r1.size() == 1) {
            // r1 is a nonzero constant: inverse = u1 / r1.
            QPoly res = u1;
            for (auto& x : res) x /= r1[0];
            std::vector<Rational> c(deg, Rational(0));
            for (size_t i = 0; i < res.size() && i < static_cast<size_t>(deg); ++i) c[i] = res[i];
            for (auto& x : c) x.canonicalize();
            return FieldElem(ctx_, std::move(c));
        }
        // (r0, r1) -> (r1, r0 mod r1), same combination on u.
        QPoly q; // quotient of r0 by r1
        {
            QPoly a = r0;
            const long db = static_cast<long>(r1.size()) - 1;
            q.assign(std::max<long>(1, static_cast<long>(a.size()) - db), Rational(0));
            while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
                Rational c = a.back() / r1[db];
                long shift = static_cast<long>(a.size()) - 1 - db;
                q[shift] += c;
                for (long j = 0; j <= db; ++j) a[shift + j] -= c * r1[j];
                qpoly_trim(a);
            }
        }
        QPoly r2 = qpoly_rem(r0, r1);
        // u2 = u0 - q*u1
        QPoly u2 = u0;
        if (u2.size() < q.size() + u1.size()) u2.resize(q.size() + u1.size(), Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < u1.size(); ++j) u2[i + j] -= q[i] * u1[j];
        }
        qpoly_trim(u2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    return *this * o.inverse();
}

std::string FieldElem::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (k == 0) {
            out << c_[k].get_str();
        } else {
            out << c_[k].get_str() << "*z";
            if (k > 1) out << "^" << k;
        }
    }
    if (first) out << "0";
    return out.str();
}

namespace {

Rational parse_rational(const std::string& tok) {
    if (tok.empty()) throw ParseError("empty rational");
    for (char ch : tok)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
            throw ParseError("bad rational '" + tok + "'");
    try {
        Rational r(tok);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational '" + tok + "'");
    }
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace

FieldElem FieldElem::parse(const FieldCtx* ctx, const std::string& s) {
    std::vector<Rational> coeffs(ctx->degree(), Rational(0));
    std::string body = strip(s);
    if (body.empty()) throw ParseError("empty field element");
    if (body == "0") return FieldElem::zero(ctx);
    size_t pos = 0;
    while (pos < body.size()) {
        size_t next = body.find(" + ", pos);
        std::string term = strip(next == std::string::npos ? body.substr(pos)
                                                           : body.substr(pos, next - pos));
        pos = next == std::string::npos ? body.size() : next + 3;
        if (term.empty()) throw ParseError("empty term in '" + s + "'");
        size_t star = term.find("*z");
        long power = 0;
        std::string rat = term;
        if (star != std::string::npos) {
            rat = strip(term.substr(0, star));
            std::string zexp = strip(term.substr(star + 2));
            if (zexp.empty()) {
                power = 1;
            } else if (zexp[0] == '^') {
                power = std::stol(zexp.substr(1));
            } else {
                throw ParseError("bad z power in '" + term + "'");
            }
        }
        if (power < 0 || power >= ctx->degree())
            throw ParseError("z power out of range in '" + term + "'");
        coeffs[power] += parse_rational(rat);
    }
    for (auto& x : coeffs) x.canonicalize();
    return from_poly(ctx, coeffs);
}

std::vector<std::string> FieldElem::to_json_strings() const {
    std::vector<std::string> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(x.get_str());
    return v;
}

FieldElem FieldElem::from_json_strings(const FieldCtx* ctx, const std::vector<std::string>& v) {
    if (static_cast<long>(v.size()) != ctx->degree())
        throw ParseError("field element coordinate count mismatch");
    std::vector<Rational> c;
    c.reserve(v.size());
    for (const auto& tok : v) c.push_back(parse_rational(tok));
    return from_poly(ctx, c);
}

FieldElem q_power(const FieldCtx* ctx, long k) {
    return FieldElem::zeta_power(ctx, 2 * k);
}

FieldElem qint(const FieldCtx* ctx, long n) {
    FieldElem num = q_power(ctx, n) - q_power(ctx, -n);
    FieldElem den = q_power(ctx, 1) - q_power(ctx, -1);
    return num / den;
}

FieldElem qfact(const FieldCtx* ctx, long n) {
    if (n < 0) throw DomainError("qfact requires n >= 0");
    FieldElem r = FieldElem::one(ctx);
    for (long l = 1; l <= n; ++l) r *= qint(ctx, l);
    return r;
}

FieldElem qbinom(const FieldCtx* ctx, long n, long k) {
    if (k < 0 || k > n || n >= ctx->p())
        throw DomainError("qbinom requires 0 <= k <= n < p");
    return qfact(ctx, n) / (qfact(ctx, k) * qfact(ctx, n - k));
}

} // namespace qsl2

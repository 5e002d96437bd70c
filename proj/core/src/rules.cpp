#include "qsl2/rules.hpp"

#include <algorithm>
#include <functional>

namespace qsl2 {

std::vector<long> index_I(long p, long s, long s2) {
    if (s < 1 || s > p || s2 < 1 || s2 > p) throw DomainError("index_I needs 1 <= s,s' <= p");
    if (s > s2) std::swap(s, s2);
    std::vector<long> out;
    for (long i = 1; i <= s; ++i) {
        long t = s2 - s + 2 * i - 1;
        if (t <= 2 * p - s - s2) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> index_J(long p, long sigma) {
    if (sigma < 2 || sigma > 2 * p) throw DomainError("index_J needs 2 <= sigma <= 2p");
    long s = std::max<long>(1, sigma - p);
    long s2 = sigma - s; // s <= s2 <= p
    std::vector<long> out;
    for (long i = 1; i <= s; ++i) {
        long t = 2 * p - 2 * i - s2 + s + 1;
        if (t <= p) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool is_projective_label(long p, const ModuleLabel& l) {
    return l.fam == Family::P || (l.fam == Family::X && l.s == p);
}

bool is_x1(const ModuleLabel& l, Sign sg) {
    return l.fam == Family::X && l.s == 1 && l.sign == sg;
}

FieldElem minus_one_pow(const FieldCtx* c, long e) {
    return FieldElem::from_int(c, (e % 2 + 2) % 2 == 0 ? 1 : -1);
}

/// X_1^- (x) L as a single label.
ModuleLabel absorb_left(const FieldCtx* c, const ModuleLabel& l) {
    ModuleLabel r = l;
    r.sign = flip(l.sign);
    if (l.fam == Family::E)
        r.lambda = l.lambda->scaled(minus_one_pow(c, c->p() - 1));
    return r;
}

/// L (x) X_1^- as a single label.
ModuleLabel absorb_right(const FieldCtx* c, const ModuleLabel& l) {
    ModuleLabel r = l;
    r.sign = flip(l.sign);
    if (l.fam == Family::E) r.lambda = l.lambda->negated();
    return r;
}

/// A = strip_right(A) (x) X_1^-  /  A = X_1^- (x) strip_left(A).
ModuleLabel strip_right(const FieldCtx* c, const ModuleLabel& l) {
    ModuleLabel r = l;
    r.sign = Sign::plus;
    if (l.fam == Family::E) r.lambda = l.lambda->negated();
    return r;
}

ModuleLabel strip_left(const FieldCtx* c, const ModuleLabel& l) {
    ModuleLabel r = l;
    r.sign = Sign::plus;
    if (l.fam == Family::E)
        r.lambda = l.lambda->scaled(minus_one_pow(c, c->p() - 1));
    return r;
}

FormalDecomp map_labels(const FormalDecomp& d,
                        const std::function<ModuleLabel(const ModuleLabel&)>& f) {
    FormalDecomp out(d.p());
    for (const auto& [lab, m] : d.parts()) out.add(f(lab), m);
    return out;
}

FormalDecomp rule(const FieldCtxPtr& ctx, const ModuleLabel& a0, const ModuleLabel& b0,
                  RewriteRoute route);

/// Thm "simple and simple": X_s^+ (x) X_{s'}^+, any s, s' up to p.
FormalDecomp rule_xx_pp(const FieldCtxPtr& ctx, long s, long s2) {
    const long p = ctx->p();
    FormalDecomp out(p);
    for (long t : index_I(p, s, s2)) out.add(ModuleLabel::simple(t, Sign::plus), 1);
    for (long t : index_J(p, s + s2)) out.add(ModuleLabel::proj(t, Sign::plus), 1);
    return out;
}

/// Thm "projective and simple": P_s^+ (x) X_{s'}^+ (either order).
FormalDecomp rule_px_pp(const FieldCtxPtr& ctx, long s, long s2) {
    const long p = ctx->p();
    FormalDecomp out(p);
    for (long t : index_I(p, s, s2)) out.add(ModuleLabel::proj(t, Sign::plus), 1);
    for (long t : index_J(p, s + s2)) out.add(ModuleLabel::proj(t, Sign::plus), 2);
    for (long t : index_J(p, p - s + s2)) out.add(ModuleLabel::proj(t, Sign::minus), 2);
    return out;
}

/// Thm "M and M" (all printed sign combinations).
/// The mixed M (x) W display pairs M_s^a(m) (x) W_{s'}^b(n) with
/// W_{s'}^b(m) (x) M_s^a(n); the m/n assignment there is a typo for
/// W_{s'}^b(n) (x) M_s^a(m) - the matrix oracle at p=3 (see
/// test_rules.cpp) confirms the corrected reading used here.
FormalDecomp rule_mw(const FieldCtxPtr& ctx, const ModuleLabel& a, const ModuleLabel& b) {
    const long p = ctx->p();
    FormalDecomp out(p);
    auto addP = [&](long sigma, Sign sg, long mult) {
        if (mult == 0) return;
        for (long t : index_J(p, sigma)) out.add(ModuleLabel::proj(t, sg), mult);
    };

    // family-with-simple
    if (a.fam == Family::X || b.fam == Family::X) {
        const ModuleLabel& fam = a.fam == Family::X ? b : a;
        const ModuleLabel& sim = a.fam == Family::X ? a : b;
        Sign prod = fam.sign * sim.sign;
        long s = fam.s, s2 = sim.s, n = fam.n;
        if (fam.fam == Family::M) {
            for (long t : index_I(p, s, s2)) out.add(ModuleLabel::mfam(t, prod, n), 1);
            addP(s + s2, prod, n - 1);
            addP(p - s + s2, flip(prod), n);
        } else {
            for (long t : index_I(p, s, s2)) out.add(ModuleLabel::wfam(t, prod, n), 1);
            addP(s + s2, prod, n);
            addP(p - s + s2, flip(prod), n - 1);
        }
        return out;
    }

    Sign prod = a.sign * b.sign;
    if (a.fam == Family::M && b.fam == Family::M) {
        long s = a.s, s2 = b.s, m = a.n, n = b.n;
        for (long t : index_I(p, s, s2)) {
            out.add(ModuleLabel::mfam(p - t, flip(prod), m + n - 1), 1);
            out.add(ModuleLabel::proj(t, prod), (m - 1) * (n - 1));
        }
        addP(s + s2, prod, (m - 1) * (n - 1));
        addP(2 * p - s - s2, prod, m * n);
        addP(p + s - s2, flip(prod), (m - 1) * n);
        addP(p - s + s2, flip(prod), m * (n - 1));
        return out;
    }
    if (a.fam == Family::W && b.fam == Family::W) {
        long s = a.s, s2 = b.s, m = a.n, n = b.n;
        for (long t : index_I(p, s, s2)) {
            out.add(ModuleLabel::wfam(t, prod, m + n - 1), 1);
            out.add(ModuleLabel::proj(t, prod), (m - 1) * (n - 1));
        }
        addP(s + s2, prod, m * n);
        addP(2 * p - s - s2, prod, (m - 1) * (n - 1));
        addP(p + s - s2, flip(prod), m * (n - 1));
        addP(p - s + s2, flip(prod), (m - 1) * n);
        return out;
    }
    // mixed orders: both reduce to the M_s^a(m) (x) W_{s'}^b(n) display
    long s, s2, m, n;
    if (a.fam == Family::M) {
        s = a.s;
        m = a.n;
        s2 = b.s;
        n = b.n;
    } else {
        s = b.s;
        m = b.n;
        s2 = a.s;
        n = a.n;
    }
    for (long t : index_I(p, s, s2)) {
        // Y_t^{prod}(m, n)
        if (m > n) {
            out.add(ModuleLabel::mfam(t, prod, m - n + 1), 1);
            out.add(ModuleLabel::proj(t, prod), m * (n - 1));
        } else if (m == n) {
            out.add(ModuleLabel::simple(p - t, flip(prod)), 1);
            out.add(ModuleLabel::proj(t, prod), n * (n - 1));
        } else {
            out.add(ModuleLabel::wfam(p - t, flip(prod), n - m + 1), 1);
            out.add(ModuleLabel::proj(t, prod), (m - 1) * n);
        }
    }
    addP(s + s2, prod, (m - 1) * n);
    addP(2 * p - s - s2, prod, m * (n - 1));
    addP(p + s - s2, flip(prod), (m - 1) * (n - 1));
    addP(p - s + s2, flip(prod), m * n);
    return out;
}

/// Thm "E and X", ++ only; order matters through the sign of the point.
FormalDecomp rule_ex_pp(const FieldCtxPtr& ctx, const ModuleLabel& e, long s2,
                        bool e_on_left) {
    const FieldCtx* c = ctx.get();
    const long p = ctx->p();
    FormalDecomp out(p);
    FieldElem qs = qint(c, e.s);
    for (long t : index_I(p, e.s, s2)) {
        FieldElem factor = qs / qint(c, t);
        if (!e_on_left) factor *= minus_one_pow(c, s2 - 1);
        out.add(ModuleLabel::efam(t, Sign::plus, e.n, e.lambda->scaled(factor)), 1);
    }
    for (long t : index_J(p, e.s + s2)) out.add(ModuleLabel::proj(t, Sign::plus), e.n);
    for (long t : index_J(p, p - e.s + s2)) out.add(ModuleLabel::proj(t, Sign::minus), e.n);
    return out;
}

/// Thm "E and M", ++ only, all four orders.
FormalDecomp rule_emw_pp(const FieldCtxPtr& ctx, const ModuleLabel& e, const ModuleLabel& mw,
                         bool e_on_left) {
    const FieldCtx* c = ctx.get();
    const long p = ctx->p();
    FormalDecomp out(p);
    long s = e.s, m = e.n, s2 = mw.s, n = mw.n;
    FieldElem qs = qint(c, s);
    auto addP = [&](long sigma, Sign sg, long mult) {
        for (long t : index_J(p, sigma)) out.add(ModuleLabel::proj(t, sg), mult);
    };
    if (mw.fam == Family::M) {
        for (long t : index_I(p, s, s2)) {
            FieldElem factor = qs / qint(c, t);
            factor = e_on_left ? -factor : factor * minus_one_pow(c, s2);
            out.add(ModuleLabel::efam(p - t, Sign::minus, m, e.lambda->scaled(factor)), 1);
            out.add(ModuleLabel::proj(t, Sign::plus), m * (n - 1));
        }
        addP(s + s2, Sign::plus, m * (n - 1));
        addP(2 * p - s - s2, Sign::plus, m * n);
        addP(p + s - s2, Sign::minus, m * n);
        addP(p - s + s2, Sign::minus, m * (n - 1));
    } else {
        for (long t : index_I(p, s, s2)) {
            FieldElem factor = qs / qint(c, t);
            if (!e_on_left) factor *= minus_one_pow(c, s2 - 1);
            out.add(ModuleLabel::efam(t, Sign::plus, m, e.lambda->scaled(factor)), 1);
            out.add(ModuleLabel::proj(t, Sign::plus), m * (n - 1));
        }
        addP(s + s2, Sign::plus, m * n);
        addP(2 * p - s - s2, Sign::plus, m * (n - 1));
        addP(p + s - s2, Sign::minus, m * (n - 1));
        addP(p - s + s2, Sign::minus, m * n);
    }
    return out;
}

/// Prop "E and E" + Thm "V_t", ++ only.
FormalDecomp rule_ee_pp(const FieldCtxPtr& ctx, const ModuleLabel& ea, const ModuleLabel& eb) {
    const FieldCtx* c = ctx.get();
    const long p = ctx->p();
    FormalDecomp out(p);
    long s = ea.s, m = ea.n, s2 = eb.s, n = eb.n;
    long l = std::min(m, n);
    FieldElem qs = qint(c, s), qs2 = qint(c, s2);
    for (long t : index_I(p, s, s2)) {
        FieldElem qt = qint(c, t);
        ProjPoint nu = ea.lambda->scaled(qs / qt);
        ProjPoint nu_other = eb.lambda->scaled(minus_one_pow(c, s - 1) * qs2 / qt);
        if (nu == nu_other) {
            out.add(ModuleLabel::efam(t, Sign::plus, l, nu), 1);
            out.add(ModuleLabel::efam(p - t, Sign::minus, l, nu.negated()), 1);
            out.add(ModuleLabel::proj(t, Sign::plus), m * n - l);
        } else {
            out.add(ModuleLabel::proj(t, Sign::plus), m * n);
        }
    }
    for (long t : index_J(p, s + s2)) out.add(ModuleLabel::proj(t, Sign::plus), m * n);
    for (long t : index_J(p, 2 * p - s - s2)) out.add(ModuleLabel::proj(t, Sign::plus), m * n);
    for (long t : index_J(p, p + s - s2)) out.add(ModuleLabel::proj(t, Sign::minus), m * n);
    for (long t : index_J(p, p - s + s2)) out.add(ModuleLabel::proj(t, Sign::minus), m * n);
    return out;
}

/// Strips a minus sign according to the route, recursing into the ++ rules.
FormalDecomp rule_strip(const FieldCtxPtr& ctx, const ModuleLabel& a, const ModuleLabel& b,
                        RewriteRoute route) {
    const FieldCtx* c = ctx.get();
    if (route == RewriteRoute::right) {
        if (a.sign == Sign::minus)
            return rule(ctx, strip_right(c, a), absorb_left(c, b), route);
        FormalDecomp d = rule(ctx, a, strip_right(c, b), route);
        return map_labels(d, [&](const ModuleLabel& l) { return absorb_right(c, l); });
    }
    if (b.sign == Sign::minus)
        return rule(ctx, absorb_right(c, a), strip_left(c, b), route);
    FormalDecomp d = rule(ctx, strip_left(c, a), b, route);
    return map_labels(d, [&](const ModuleLabel& l) { return absorb_left(c, l); });
}

FormalDecomp rule(const FieldCtxPtr& ctx, const ModuleLabel& a0, const ModuleLabel& b0,
                  RewriteRoute route) {
    const FieldCtx* c = ctx.get();
    const long p = ctx->p();
    ModuleLabel a = a0.canonicalized(p), b = b0.canonicalized(p);

    // unit object
    if (is_x1(a, Sign::plus)) {
        FormalDecomp out(p);
        out.add(b, 1);
        return out;
    }
    if (is_x1(b, Sign::plus)) {
        FormalDecomp out(p);
        out.add(a, 1);
        return out;
    }

    // twisting object X_1^-
    if (is_x1(a, Sign::minus)) {
        FormalDecomp out(p);
        out.add(absorb_left(c, b), 1);
        return out;
    }
    if (is_x1(b, Sign::minus)) {
        FormalDecomp out(p);
        out.add(absorb_right(c, a), 1);
        return out;
    }

    if (a.fam == Family::X && b.fam == Family::X) {
        if (a.sign == Sign::plus && b.sign == Sign::plus) return rule_xx_pp(ctx, a.s, b.s);
        return rule_strip(ctx, a, b, route);
    }

    // P (x) X in either order
    if ((a.fam == Family::P && b.fam == Family::X) ||
        (a.fam == Family::X && b.fam == Family::P)) {
        const ModuleLabel& pr = a.fam == Family::P ? a : b;
        const ModuleLabel& xs = a.fam == Family::P ? b : a;
        if (pr.sign == Sign::plus && xs.sign == Sign::plus)
            return rule_px_pp(ctx, pr.s, xs.s);
        return rule_strip(ctx, a, b, route);
    }

    // projective (x) arbitrary via composition factors
    if (is_projective_label(p, a) || is_projective_label(p, b)) {
        bool expand_b = is_projective_label(p, a);
        const ModuleLabel& keep = expand_b ? a : b;
        const ModuleLabel& other = expand_b ? b : a;
        FormalDecomp factors = composition_factors_rule(p, other);
        FormalDecomp out(p);
        for (const auto& [lab, mult] : factors.parts()) {
            FormalDecomp piece =
                expand_b ? rule(ctx, keep, lab, route) : rule(ctx, lab, keep, route);
            for (const auto& [l2, m2] : piece.parts()) out.add(l2, m2 * mult);
        }
        return out;
    }

    auto is_mw = [](const ModuleLabel& l) {
        return l.fam == Family::M || l.fam == Family::W;
    };
    bool ea = a.fam == Family::E, eb = b.fam == Family::E;

    if (!ea && !eb) return rule_mw(ctx, a, b); // M/W against X/M/W, all signs printed

    if (ea && b.fam == Family::X) {
        if (a.sign == Sign::plus && b.sign == Sign::plus)
            return rule_ex_pp(ctx, a, b.s, true);
        return rule_strip(ctx, a, b, route);
    }
    if (eb && a.fam == Family::X) {
        if (a.sign == Sign::plus && b.sign == Sign::plus)
            return rule_ex_pp(ctx, b, a.s, false);
        return rule_strip(ctx, a, b, route);
    }
    if (ea && is_mw(b)) {
        if (a.sign == Sign::plus && b.sign == Sign::plus)
            return rule_emw_pp(ctx, a, b, true);
        return rule_strip(ctx, a, b, route);
    }
    if (eb && is_mw(a)) {
        if (a.sign == Sign::plus && b.sign == Sign::plus)
            return rule_emw_pp(ctx, b, a, false);
        return rule_strip(ctx, a, b, route);
    }
    if (ea && eb) {
        if (a.sign == Sign::plus && b.sign == Sign::plus) return rule_ee_pp(ctx, a, b);
        return rule_strip(ctx, a, b, route);
    }
    throw InternalError("tensor_rule dispatch fell through for " + a.to_string() + " (x) " +
                        b.to_string());
}

} // namespace

FormalDecomp tensor_rule_via(const FieldCtxPtr& ctx, const ModuleLabel& a,
                             const ModuleLabel& b, RewriteRoute route) {
    return rule(ctx, a, b, route);
}

FormalDecomp tensor_rule(const FieldCtxPtr& ctx, const ModuleLabel& a, const ModuleLabel& b) {
    const long p = ctx->p();
    FormalDecomp right = rule(ctx, a, b, RewriteRoute::right);
    FormalDecomp left = rule(ctx, a, b, RewriteRoute::left);
    if (right != left)
        throw InternalError("rewrite routes disagree on " + a.to_string() + " (x) " +
                            b.to_string() + ": " + right.to_string() + " vs " +
                            left.to_string());
    long want = a.canonicalized(p).dim(p) * b.canonicalized(p).dim(p);
    if (right.total_dim() != want)
        throw InternalError("tensor_rule dimension mismatch for " + a.to_string() + " (x) " +
                            b.to_string());
    return right;
}

ModuleLabel dual_rule(long p, const ModuleLabel& a0) {
    ModuleLabel a = a0.canonicalized(p);
    switch (a.fam) {
        case Family::X:
        case Family::P:
            return a;
        case Family::M:
            return ModuleLabel::wfam(p - a.s, flip(a.sign), a.n);
        case Family::W:
            return ModuleLabel::mfam(p - a.s, flip(a.sign), a.n);
        case Family::E: {
            const FieldCtx* c = a.lambda->l1().ctx() ? a.lambda->l1().ctx()
                                                     : a.lambda->l2().ctx();
            long e = a.sign == Sign::plus ? a.s : p - a.s;
            ProjPoint lam = a.lambda->scaled(minus_one_pow(c, e));
            return ModuleLabel::efam(p - a.s, flip(a.sign), a.n, lam);
        }
    }
    throw DomainError("unknown label family");
}

FormalDecomp dual_rule_decomp(const FormalDecomp& d) {
    FormalDecomp out(d.p());
    for (const auto& [lab, m] : d.parts()) out.add(dual_rule(d.p(), lab), m);
    return out;
}

FormalDecomp composition_factors_rule(long p, const ModuleLabel& a0) {
    ModuleLabel a = a0.canonicalized(p);
    FormalDecomp out(p);
    switch (a.fam) {
        case Family::X:
            out.add(a, 1);
            break;
        case Family::P:
            out.add(ModuleLabel::simple(a.s, a.sign), 2);
            out.add(ModuleLabel::simple(p - a.s, flip(a.sign)), 2);
            break;
        case Family::M:
            out.add(ModuleLabel::simple(a.s, a.sign), a.n - 1);
            out.add(ModuleLabel::simple(p - a.s, flip(a.sign)), a.n);
            break;
        case Family::W:
            out.add(ModuleLabel::simple(a.s, a.sign), a.n);
            out.add(ModuleLabel::simple(p - a.s, flip(a.sign)), a.n - 1);
            break;
        case Family::E:
            out.add(ModuleLabel::simple(a.s, a.sign), a.n);
            out.add(ModuleLabel::simple(p - a.s, flip(a.sign)), a.n);
            break;
    }
    return out;
}

CommuteReport commutes_rule(const FieldCtxPtr& ctx, const ModuleLabel& a,
                            const ModuleLabel& b) {
    CommuteReport rep{true, tensor_rule(ctx, a, b), tensor_rule(ctx, b, a), ""};
    if (rep.ab != rep.ba) {
        rep.commutes = false;
        rep.witness = rep.ab.diff(rep.ba);
    }
    return rep;
}

} // namespace qsl2

#include "qsl2/doublecover.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qsl2 {

FieldElem alpha_value(const FieldCtx* ctx, AlphaUnit a) {
    const long p = ctx->p();
    switch (a) {
        case AlphaUnit::one: return FieldElem::one(ctx);
        case AlphaUnit::minus_one: return FieldElem::zeta_power(ctx, 2 * p);
        case AlphaUnit::i: return FieldElem::zeta_power(ctx, p);
        case AlphaUnit::minus_i: return FieldElem::zeta_power(ctx, 3 * p);
    }
    throw DomainError("bad alpha");
}

namespace {

long alpha_exponent(const FieldCtx* ctx, AlphaUnit a) {
    const long p = ctx->p();
    switch (a) {
        case AlphaUnit::one: return 0;
        case AlphaUnit::minus_one: return 2 * p;
        case AlphaUnit::i: return p;
        case AlphaUnit::minus_i: return 3 * p;
    }
    return 0;
}

} // namespace

Rep build_T(const FieldCtxPtr& ctx, long s, AlphaUnit alpha, const FieldElem& kappa1,
            const FieldElem& kappa2, long n) {
    const FieldCtx* c = ctx.get();
    const long p = c->p();
    const long N = c->root_order();
    if (s < 1 || s > p - 1) throw DomainError("build_T needs 1 <= s <= p-1");
    if (n < 1) throw DomainError("build_T needs n >= 1");
    if (kappa1.is_zero() || kappa2.is_zero())
        throw DomainError("build_T needs kappa in (k^x)^2");

    Rep z;
    z.ctx = ctx;
    z.tag = Algebra::Dbar;
    z.dim = 2 * p * n;
    // index: hat * p*n + u*n + (m-1), u = 0..p-1, m = 1..n
    auto idx = [p, n](long hat, long u, long m) { return hat * p * n + u * n + (m - 1); };

    z.raise_m = Mat(c, z.dim, z.dim);
    z.lower_m = Mat(c, z.dim, z.dim);
    z.grp_m = Mat(c, z.dim, z.dim);
    z.grpinv_m = Mat(c, z.dim, z.dim);
    std::vector<long> w(z.dim);

    const long ae = alpha_exponent(c, alpha);
    FieldElem a2 = alpha_value(c, alpha) * alpha_value(c, alpha);
    for (long hat = 0; hat < 2; ++hat)
        for (long u = 0; u < p; ++u)
            for (long m = 1; m <= n; ++m) {
                long e = ((ae + (s - 1 - 2 * u) + (hat ? 2 * p : 0)) % N + N) % N;
                long i = idx(hat, u, m);
                w[i] = e;
                z.grp_m.at(i, i) = FieldElem::zeta_power(c, e);
                z.grpinv_m.at(i, i) = FieldElem::zeta_power(c, -e);
                // f shifts u up within the same copy
                if (u + 1 < p) z.lower_m.at(idx(hat, u + 1, m), i) = FieldElem::one(c);
                // e shifts u down; at u = 0 it crosses to the other family
                if (u > 0) {
                    z.raise_m.at(idx(hat, u - 1, m), i) =
                        a2 * qint(c, u) * qint(c, s - u);
                } else {
                    const FieldElem& kap = hat ? kappa2 : kappa1;
                    z.raise_m.at(idx(1 - hat, p - 1, m), i) = kap;
                    if (m > 1)
                        z.raise_m.at(idx(1 - hat, p - 1, m - 1), i) = FieldElem::one(c);
                }
            }
    z.wexp = std::move(w);
    return z;
}

Rep restrict_to_U(const Rep& d) {
    if (d.tag != Algebra::Dbar) throw DomainError("restrict_to_U takes a Dbar rep");
    const FieldCtx* c = d.ctx.get();
    Rep z;
    z.ctx = d.ctx;
    z.tag = Algebra::Ubar;
    z.dim = d.dim;
    z.raise_m = d.raise_m;
    z.lower_m = d.lower_m;
    z.grp_m = d.grp_m * d.grp_m;
    z.grpinv_m = d.grpinv_m * d.grpinv_m;
    if (d.wexp) {
        std::vector<long> w(d.dim);
        for (long i = 0; i < d.dim; ++i) w[i] = (2 * (*d.wexp)[i]) % c->root_order();
        z.wexp = std::move(w);
    }
    return z;
}

JordanSplitReport jordan_split_check(const FieldCtxPtr& ctx, long s, AlphaUnit alpha,
                                     const FieldElem& kappa1, const FieldElem& kappa2,
                                     long n, const FieldElem& beta) {
    const FieldCtx* c = ctx.get();
    const long p = c->p();
    if (alpha != AlphaUnit::one && alpha != AlphaUnit::minus_one)
        throw DomainError("jordan_split_check needs alpha in {1,-1}");
    if (beta * beta != kappa1 * kappa2)
        throw DomainError("jordan_split_check: beta^2 != kappa1*kappa2");

    // G = [[0, J(n,kappa2)], [J(n,kappa1), 0]] acting on (unhatted, hatted)
    // m-coordinates, as read off the u = 0 gluing of T^s.
    Mat g(c, 2 * n, 2 * n);
    for (long m = 0; m < n; ++m) {
        g.at(n + m, m) = kappa1;
        if (m > 0) g.at(n + m - 1, m) = FieldElem::one(c);
        g.at(m, n + m) = kappa2;
        if (m > 0) g.at(m - 1, n + m) = FieldElem::one(c);
    }

    // chain basis for each eigenvalue
    auto chain_for = [&](const FieldElem& ev) -> std::optional<Mat> {
        Mat shifted = g;
        for (long i = 0; i < 2 * n; ++i) shifted.at(i, i) = shifted.at(i, i) - ev;
        Mat ker = shifted.pow(n).nullspace();
        if (ker.cols() != n) return std::nullopt;
        Mat pow_nm1 = shifted.pow(n - 1);
        // cyclic vector: some kernel column (or a small sum) not killed by
        // (G-ev)^(n-1)
        auto try_vec = [&](const Mat& v) -> std::optional<Mat> {
            if ((pow_nm1 * v).is_zero()) return std::nullopt;
            Mat cols(c, 2 * n, n);
            for (long k = 1; k <= n; ++k) {
                Mat xk = shifted.pow(n - k) * v;
                for (long i = 0; i < 2 * n; ++i) cols.at(i, k - 1) = xk.at(i, 0);
            }
            return cols;
        };
        for (long j = 0; j < ker.cols(); ++j) {
            auto r = try_vec(ker.col(j));
            if (r) return r;
        }
        for (long j = 0; j < ker.cols(); ++j)
            for (long k = j + 1; k < ker.cols(); ++k) {
                auto r = try_vec(ker.col(j) + ker.col(k));
                if (r) return r;
            }
        return std::nullopt;
    };

    JordanSplitReport rep;
    auto cp = chain_for(beta);
    auto cm = chain_for(-beta);
    if (!cp || !cm) {
        rep.detail = "gluing block is not conjugate to J(n;beta) (+) J(n;-beta)";
        return rep;
    }
    Mat q = cp->hstack(*cm);
    auto qinv = q.inverse();
    if (!qinv) {
        rep.detail = "chain matrix Q is singular";
        return rep;
    }
    // verify Q^-1 G Q = diag(J(n;beta), J(n;-beta)) with 1s above the diagonal
    Mat want(c, 2 * n, 2 * n);
    for (long m = 0; m < n; ++m) {
        want.at(m, m) = beta;
        want.at(n + m, n + m) = -beta;
        if (m > 0) {
            want.at(m - 1, m) = FieldElem::one(c);
            want.at(n + m - 1, n + m) = FieldElem::one(c);
        }
    }
    if (*qinv * g * q != want) {
        rep.detail = "Q fails to put the gluing block into Jordan form";
        return rep;
    }

    // Psi: b-basis of T|_U -> standard basis of E (+) E; build its inverse
    // Theta: E(+)E -> T, columns are the b-vectors in T-coordinates.
    Rep t = build_T(ctx, s, alpha, kappa1, kappa2, n);
    Rep tu = restrict_to_U(t);
    Rep ep = build_E(ctx, s, Sign::plus, n, ProjPoint::make(FieldElem::one(c), beta));
    Rep em = build_E(ctx, s, Sign::plus, n, ProjPoint::make(FieldElem::one(c), -beta));
    Rep ee = direct_sum({ep, em});

    auto t_idx = [p, n](long hat, long u, long m) { return hat * p * n + u * n + (m - 1); };
    // build_glued ordering: top copies (c,i) -> c*s+i, socle a*s + c*(p-s)+j
    auto e_idx = [s, p, n](long copy, long u) {
        return u < s ? copy * s + u : n * s + copy * (p - s) + (u - s);
    };
    Mat theta(c, 2 * p * n, 2 * p * n);
    for (long u = 0; u < p; ++u)
        for (long col = 0; col < 2 * n; ++col) {
            // b-vector #col at layer u: coordinates Q[.,col] spread over
            // (unhatted m, hatted m) at this u
            long target = col < n ? e_idx(col, u) : p * n + e_idx(col - n, u);
            for (long row = 0; row < 2 * n; ++row) {
                long hat = row < n ? 0 : 1;
                long m = (row % n) + 1;
                theta.at(t_idx(hat, u, m), target) = q.at(row, col);
            }
        }
    if (!theta.inverse()) {
        rep.detail = "Psi is not bijective";
        return rep;
    }
    for (auto [gt, ge] : {std::pair<const Mat*, const Mat*>{&tu.raise_m, &ee.raise_m},
                          {&tu.lower_m, &ee.lower_m},
                          {&tu.grp_m, &ee.grp_m}}) {
        if (*gt * theta != theta * *ge) {
            rep.detail = "Psi is not a U-intertwiner";
            return rep;
        }
    }
    rep.pass = true;
    rep.detail = "T^s|_U = E_s^+(n;[1:beta]) (+) E_s^+(n;[1:-beta]) verified";
    rep.theta = theta;
    return rep;
}

Mat rmatrix_on(const Rep& a, const Rep& b) {
    if (a.tag != Algebra::Dbar || b.tag != Algebra::Dbar)
        throw DomainError("rmatrix_on takes Dbar reps");
    const FieldCtx* c = a.ctx.get();
    const long p = c->p();
    const long N = 4 * p;

    FieldElem q = q_power(c, 1), qi = q_power(c, -1);
    FieldElem qd = q - qi;

    // powers of e, f, t
    std::vector<Mat> epow{Mat::identity(c, a.dim)}, fpow{Mat::identity(c, b.dim)};
    for (long m = 1; m < p; ++m) {
        epow.push_back(epow.back() * a.raise_m);
        fpow.push_back(fpow.back() * b.lower_m);
    }
    std::vector<Mat> tpow_a{Mat::identity(c, a.dim)}, tpow_b{Mat::identity(c, b.dim)};
    for (long k = 1; k < N; ++k) {
        tpow_a.push_back(tpow_a.back() * a.grp_m);
        tpow_b.push_back(tpow_b.back() * b.grp_m);
    }

    Mat r(c, a.dim * b.dim, a.dim * b.dim);
    FieldElem inv4p = FieldElem::from_rational(c, Rational(1, 4 * p));
    for (long m = 0; m < p; ++m) {
        FieldElem base = inv4p;
        for (long i = 0; i < m; ++i) base *= qd;
        base = base / qfact(c, m);
        for (long nn = 0; nn < N; ++nn) {
            Mat left = epow[m] * tpow_a[nn];
            for (long j = 0; j < N; ++j) {
                // q^{m(m-1)/2 + m(nn-j)} * q^{-nn*j/2} = zeta^{m(m-1)+2m(nn-j)-nn*j}
                long ex = m * (m - 1) + 2 * m * (nn - j) - nn * j;
                FieldElem coeff = base * FieldElem::zeta_power(c, ex);
                r = r + left.kron(fpow[m] * tpow_b[j]).scaled(coeff);
            }
        }
    }
    return r;
}

BraidReport braiding_check(const Rep& a, const Rep& b) {
    const FieldCtx* c = a.ctx.get();
    BraidReport rep;
    Mat r = rmatrix_on(a, b);
    // sigma: A (x) B -> B (x) A on coordinates
    Mat sw(c, a.dim * b.dim, a.dim * b.dim);
    for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < b.dim; ++j)
            sw.at(j * a.dim + i, i * b.dim + j) = FieldElem::one(c);
    Mat m = sw * r;
    Rep ab = tensor(a, b), ba = tensor(b, a);
    if (m * ab.raise_m != ba.raise_m * m) {
        rep.detail = "sigma.R does not intertwine e";
        return rep;
    }
    if (m * ab.lower_m != ba.lower_m * m) {
        rep.detail = "sigma.R does not intertwine f";
        return rep;
    }
    if (m * ab.grp_m != ba.grp_m * m) {
        rep.detail = "sigma.R does not intertwine t";
        return rep;
    }
    if (!m.inverse()) {
        rep.detail = "sigma.R is singular";
        return rep;
    }
    rep.pass = true;
    rep.detail = "sigma.R is an invertible Dbar-intertwiner";
    return rep;
}

namespace {

/// Exact solution space of TE = qET, TF = q^-1 FT, TK = KT for a
/// weight-diagonal rep; unknowns are the weight-preserving entries.
std::vector<Mat> twisted_space(const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    FieldElem q = q_power(c, 1), qi = q_power(c, -1);
    std::vector<std::pair<long, long>> unk;
    std::map<std::pair<long, long>, long> pos;
    for (long i = 0; i < z.dim; ++i)
        for (long j = 0; j < z.dim; ++j)
            if ((*z.wexp)[i] == (*z.wexp)[j]) {
                pos[{i, j}] = static_cast<long>(unk.size());
                unk.emplace_back(i, j);
            }
    std::vector<std::vector<std::pair<long, FieldElem>>> rows;
    auto add_equations = [&](const Mat& g, const FieldElem& scale) {
        // T g - scale * g T = 0
        for (long i = 0; i < z.dim; ++i)
            for (long j = 0; j < z.dim; ++j) {
                std::vector<std::pair<long, FieldElem>> row;
                for (long k = 0; k < z.dim; ++k) {
                    if (g.at(k, j).is_zero()) continue;
                    auto it = pos.find({i, k});
                    if (it != pos.end()) row.emplace_back(it->second, g.at(k, j));
                }
                for (long l = 0; l < z.dim; ++l) {
                    if (g.at(i, l).is_zero()) continue;
                    auto it = pos.find({l, j});
                    if (it != pos.end()) row.emplace_back(it->second, -scale * g.at(i, l));
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
    };
    add_equations(z.raise_m, q);
    add_equations(z.lower_m, qi);
    Mat sys(c, static_cast<long>(rows.size()), static_cast<long>(unk.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (auto& [col, v] : rows[r])
            sys.at(static_cast<long>(r), col) = sys.at(static_cast<long>(r), col) + v;
    Mat ns = sys.rows() == 0 ? Mat::identity(c, static_cast<long>(unk.size()))
                             : sys.nullspace();
    std::vector<Mat> out;
    for (long v = 0; v < ns.cols(); ++v) {
        Mat t(c, z.dim, z.dim);
        for (size_t u = 0; u < unk.size(); ++u)
            t.at(unk[u].first, unk[u].second) = ns.at(static_cast<long>(u), v);
        out.push_back(std::move(t));
    }
    return out;
}

bool verify_lift(const Rep& z, const Mat& t) {
    const FieldCtx* c = z.ctx.get();
    FieldElem q = q_power(c, 1), qi = q_power(c, -1);
    if (t * z.raise_m != (z.raise_m * t).scaled(q)) return false;
    if (t * z.lower_m != (z.lower_m * t).scaled(qi)) return false;
    if (t * t != z.grp_m) return false;
    if (t.pow(4 * c->p()) != Mat::identity(c, z.dim)) return false;
    return true;
}

struct DiagPropagation {
    bool consistent = true;
    std::vector<long> qdeg;      // relative q-exponent per node
    std::vector<long> component; // component id per node
    std::vector<std::string> conflicts;
};

DiagPropagation propagate_diag(const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    const long tp = 2 * c->p(); // order of q
    DiagPropagation dp;
    dp.qdeg.assign(z.dim, 0);
    dp.component.assign(z.dim, -1);
    // edges from nonzero E entries: t_row = q * t_col; from F: t_row = q^-1 t_col
    std::vector<std::vector<std::pair<long, long>>> adj(z.dim);
    for (long i = 0; i < z.dim; ++i)
        for (long j = 0; j < z.dim; ++j) {
            if (!z.raise_m.at(i, j).is_zero()) {
                adj[j].push_back({i, 1});
                adj[i].push_back({j, -1});
            }
            if (!z.lower_m.at(i, j).is_zero()) {
                adj[j].push_back({i, -1});
                adj[i].push_back({j, 1});
            }
        }
    long comp = 0;
    for (long root = 0; root < z.dim; ++root) {
        if (dp.component[root] >= 0) continue;
        dp.component[root] = comp;
        dp.qdeg[root] = 0;
        std::vector<long> stack{root};
        while (!stack.empty()) {
            long v = stack.back();
            stack.pop_back();
            for (auto [w, d] : adj[v]) {
                long expect = dp.qdeg[v] + d;
                if (dp.component[w] < 0) {
                    dp.component[w] = comp;
                    dp.qdeg[w] = expect;
                    stack.push_back(w);
                } else if (((dp.qdeg[w] - expect) % tp + tp) % tp != 0) {
                    dp.consistent = false;
                    std::ostringstream os;
                    os << "t[" << w << "] forced to both q^" << dp.qdeg[w] << "*tau and q^"
                       << expect << "*tau along an E/F gluing cycle (q has order " << tp
                       << ")";
                    dp.conflicts.push_back(os.str());
                }
            }
        }
        ++comp;
    }
    std::sort(dp.conflicts.begin(), dp.conflicts.end());
    dp.conflicts.erase(std::unique(dp.conflicts.begin(), dp.conflicts.end()),
                       dp.conflicts.end());
    return dp;
}

std::optional<Mat> diagonal_lift(const Rep& z, std::vector<std::string>& conflicts) {
    const FieldCtx* c = z.ctx.get();
    const long N = c->root_order();
    DiagPropagation dp = propagate_diag(z);
    if (!dp.consistent) {
        conflicts = dp.conflicts;
        return std::nullopt;
    }
    long ncomp = 0;
    for (long i = 0; i < z.dim; ++i) ncomp = std::max(ncomp, dp.component[i] + 1);
    // per component: tau^2 = zeta^(w_i - 4*qdeg_i) must be constant
    std::vector<long> tau2(ncomp, -1);
    for (long i = 0; i < z.dim; ++i) {
        long e = (((*z.wexp)[i] - 4 * dp.qdeg[i]) % N + N) % N;
        long& slot = tau2[dp.component[i]];
        if (slot < 0) {
            slot = e;
        } else if (slot != e) {
            std::ostringstream os;
            os << "tau^2 forced to both zeta^" << slot << " and zeta^" << e
               << " inside one E/F component";
            conflicts.push_back(os.str());
            return std::nullopt;
        }
    }
    Mat t(c, z.dim, z.dim);
    for (long i = 0; i < z.dim; ++i) {
        long e2 = tau2[dp.component[i]];
        if (e2 % 2 != 0) {
            conflicts.push_back("tau^2 is an odd zeta power; no square root in Q(zeta)");
            return std::nullopt;
        }
        long e = (e2 / 2 + 2 * dp.qdeg[i]) % N;
        t.at(i, i) = FieldElem::zeta_power(c, ((e % N) + N) % N);
    }
    if (!verify_lift(z, t)) return std::nullopt;
    return t;
}

} // namespace

Rep LiftResult::as_dbar(const Rep& z) const {
    if (verdict != Verdict::liftable || !witness_t)
        throw DomainError("as_dbar needs a liftable result");
    Rep d;
    d.ctx = z.ctx;
    d.tag = Algebra::Dbar;
    d.dim = z.dim;
    d.raise_m = z.raise_m;
    d.lower_m = z.lower_m;
    d.grp_m = *witness_t;
    d.grpinv_m = *witness_t->inverse();
    const FieldCtx* c = z.ctx.get();
    // t is diagonalizable with root-of-unity eigenvalues; keep exponents when
    // it is diagonal on the stored basis
    bool diag = true;
    for (long i = 0; i < d.dim && diag; ++i)
        for (long j = 0; j < d.dim && diag; ++j)
            if (i != j && !d.grp_m.at(i, j).is_zero()) diag = false;
    if (diag) {
        std::vector<long> w(d.dim);
        for (long i = 0; i < d.dim; ++i) w[i] = root_of_unity_exponent(c, d.grp_m.at(i, i));
        d.wexp = std::move(w);
    }
    return d;
}

LiftResult lift(const Rep& z) {
    if (z.tag != Algebra::Ubar) throw DomainError("lift takes a Ubar rep");
    const FieldCtx* c = z.ctx.get();
    LiftResult res;

    // work on a weight basis
    Rep zw = z;
    Mat from_w; // change of basis back to z coordinates
    bool changed_basis = false;
    if (!z.wexp) {
        auto ws = weight_spaces(z);
        Mat u(c, z.dim, 0);
        std::vector<long> w;
        for (auto& [lam, basis] : ws) {
            long e = root_of_unity_exponent(c, lam);
            for (long j = 0; j < basis.cols(); ++j) w.push_back(e);
            u = u.cols() == 0 ? basis : u.hstack(basis);
        }
        Mat uinv = *u.inverse();
        zw.raise_m = uinv * z.raise_m * u;
        zw.lower_m = uinv * z.lower_m * u;
        zw.grp_m = uinv * z.grp_m * u;
        zw.grpinv_m = uinv * z.grpinv_m * u;
        zw.wexp = w;
        from_w = u;
        changed_basis = true;
    }

    auto finish_with = [&](Mat t) {
        if (changed_basis) t = from_w * t * *from_w.inverse();
        if (!verify_lift(z, t)) throw InternalError("lift witness failed verification");
        res.verdict = LiftResult::Verdict::liftable;
        res.witness_t = t;
        return res;
    };

    std::vector<std::string> conflicts;
    auto diag = diagonal_lift(zw, conflicts);
    if (diag) return finish_with(*diag);

    // multiplicity-one weights force a diagonal T, so conflicts are final
    bool mult_one = true;
    {
        std::map<long, long> count;
        for (long e : *zw.wexp) count[e]++;
        for (auto& [e, k] : count)
            if (k > 1) mult_one = false;
    }
    std::vector<Mat> space = twisted_space(zw);
    if (space.empty()) {
        res.verdict = LiftResult::Verdict::not_liftable;
        res.obstruction = conflicts;
        res.obstruction.push_back(
            "the space of maps with TE=qET, TF=q^-1FT, TK=KT is zero");
        return res;
    }
    if (mult_one && !conflicts.empty()) {
        res.verdict = LiftResult::Verdict::not_liftable;
        res.obstruction = conflicts;
        res.obstruction.push_back("K-weights are multiplicity one, so T must be diagonal");
        return res;
    }

    // tensor-block provenance: restrict the lift of the tensor factors
    if (z.prov) {
        LiftResult ll = lift(*z.prov->left);
        LiftResult lr = lift(*z.prov->right);
        if (ll.verdict == LiftResult::Verdict::liftable &&
            lr.verdict == LiftResult::Verdict::liftable) {
            Mat big = ll.witness_t->kron(*lr.witness_t);
            Mat t = z.prov->proj * big * z.prov->incl;
            if (verify_lift(z, t)) {
                res.verdict = LiftResult::Verdict::liftable;
                res.witness_t = t;
                return res;
            }
        }
    }

    // single-generator quadratic: T = c*B with B^2 proportional to K
    for (const Mat& b : space) {
        Mat b2 = b * b;
        // find scalar gamma with b2 = gamma * K (K is invertible diag here)
        FieldElem gamma;
        bool ok = false;
        for (long i = 0; i < zw.dim && !ok; ++i)
            if (!b2.at(i, i).is_zero()) {
                gamma = b2.at(i, i) / zw.grp_m.at(i, i);
                ok = true;
            }
        if (!ok) continue;
        if (b2 != zw.grp_m.scaled(gamma)) continue;
        // need c with c^2 = 1/gamma
        auto rt = [&]() -> std::optional<FieldElem> {
            FieldElem target = gamma.inverse();
            // gamma is a ratio of roots of unity times rationals in practice
            for (long k = 0; k < c->root_order(); ++k) {
                FieldElem cand = target * FieldElem::zeta_power(c, -2 * k);
                if (!cand.is_rational()) continue;
                Rational r = cand.rational_part();
                if (r < 0) continue;
                mpz_class num = r.get_num(), den = r.get_den(), sn, sd;
                mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
                mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
                if (sn * sn != num || sd * sd != den) continue;
                return FieldElem::from_rational(c, Rational(sn) / Rational(sd)) *
                       FieldElem::zeta_power(c, k);
            }
            return std::nullopt;
        }();
        if (!rt) continue;
        Mat t = b.scaled(*rt);
        if (verify_lift(zw, t)) return finish_with(t);
    }

    res.verdict = LiftResult::Verdict::undetermined;
    res.obstruction = conflicts;
    res.obstruction.push_back("lift decision incomplete for this module shape");
    return res;
}

} // namespace qsl2

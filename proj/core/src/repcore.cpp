#include "qsl2/repcore.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qsl2 {

namespace {

FieldElem fe_int(const FieldCtx* c, long v) { return FieldElem::from_int(c, v); }

} // namespace

ValidationResult validate(const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    const long p = c->p();
    const Mat& R = z.raise_m;
    const Mat& L = z.lower_m;
    const Mat& G = z.grp_m;
    const Mat& Gi = z.grpinv_m;
    Mat id = Mat::identity(c, z.dim);
    FieldElem q = q_power(c, 1), qi = q_power(c, -1);
    FieldElem qd = q - qi;

    auto fail = [](const char* name) { return ValidationResult{false, name}; };

    if (z.tag == Algebra::Ubar) {
        if (G * Gi != id || Gi * G != id) return fail("KK^-1=1");
        if (G * R != (R * G).scaled(q * q)) return fail("KEK^-1=q^2E");
        if (G * L != (L * G).scaled(qi * qi)) return fail("KFK^-1=q^-2F");
        if ((R * L - L * R).scaled(qd) != G - Gi) return fail("EF-FE=(K-K^-1)/(q-q^-1)");
        if (G.pow(2 * p) != id) return fail("K^2p=1");
        if (!R.pow(p).is_zero()) return fail("E^p=0");
        if (!L.pow(p).is_zero()) return fail("F^p=0");
    } else {
        if (G * Gi != id || Gi * G != id) return fail("tt^-1=1");
        if (G * R != (R * G).scaled(q)) return fail("tet^-1=qe");
        if (G * L != (L * G).scaled(qi)) return fail("tft^-1=q^-1f");
        if ((R * L - L * R).scaled(qd) != G * G - Gi * Gi)
            return fail("ef-fe=(t^2-t^-2)/(q-q^-1)");
        if (G.pow(4 * p) != id) return fail("t^4p=1");
        if (!R.pow(p).is_zero()) return fail("e^p=0");
        if (!L.pow(p).is_zero()) return fail("f^p=0");
    }
    return {};
}

Rep build_simple(const FieldCtxPtr& ctx, long s, Sign sign) {
    const FieldCtx* c = ctx.get();
    const long p = c->p();
    if (s < 1 || s > p) throw DomainError("build_simple needs 1 <= s <= p");
    const long sg = kappa(sign);
    Rep z;
    z.ctx = ctx;
    z.tag = Algebra::Ubar;
    z.dim = s;
    z.grp_m = Mat(c, s, s);
    z.grpinv_m = Mat(c, s, s);
    z.raise_m = Mat(c, s, s);
    z.lower_m = Mat(c, s, s);
    std::vector<long> w(s);
    for (long i = 0; i < s; ++i) {
        long e = 2 * (s - 1 - 2 * i) + (sign == Sign::minus ? 2 * p : 0);
        e %= c->root_order();
        if (e < 0) e += c->root_order();
        w[i] = e;
        z.grp_m.at(i, i) = FieldElem::zeta_power(c, e);
        z.grpinv_m.at(i, i) = FieldElem::zeta_power(c, -e);
        if (i >= 1)
            z.raise_m.at(i - 1, i) = fe_int(c, sg) * qint(c, i) * qint(c, s - i);
        if (i + 1 < s) z.lower_m.at(i + 1, i) = FieldElem::one(c);
    }
    z.wexp = std::move(w);
    return z;
}

namespace {

/// Length-2 glued module: a copies of the X_s^sign basis on top, b copies of
/// the X_{p-s}^{-sign} basis in the socle, and gluing matrices tauE (b x a,
/// where E sends the top vector b_0 into x_{p-s-1} coordinates) and tauF
/// (b x a, where F sends b_{s-1} into x_0 coordinates). The defining
/// relations hold for every choice of tauE, tauF; the isomorphism class is
/// the Kronecker class of the pencil.
Rep build_glued(const FieldCtxPtr& ctx, long s, Sign sign, const Mat& tauE, const Mat& tauF) {
    const FieldCtx* c = ctx.get();
    const long p = c->p();
    if (s < 1 || s > p - 1) throw DomainError("glued module needs 1 <= s <= p-1");
    const long a = tauE.cols();
    const long b = tauE.rows();
    const long t = p - s;
    const long sg = kappa(sign);
    const long N = c->root_order();
    Rep z;
    z.ctx = ctx;
    z.tag = Algebra::Ubar;
    z.dim = a * s + b * t;
    auto top_idx = [s](long copy, long i) { return copy * s + i; };
    auto soc_idx = [a, s, t](long copy, long j) { return a * s + copy * t + j; };

    z.grp_m = Mat(c, z.dim, z.dim);
    z.grpinv_m = Mat(c, z.dim, z.dim);
    z.raise_m = Mat(c, z.dim, z.dim);
    z.lower_m = Mat(c, z.dim, z.dim);
    std::vector<long> w(z.dim);

    for (long cp = 0; cp < a; ++cp)
        for (long i = 0; i < s; ++i) {
            long e = (2 * (s - 1 - 2 * i) + (sign == Sign::minus ? 2 * p : 0)) % N;
            if (e < 0) e += N;
            w[top_idx(cp, i)] = e;
        }
    for (long cp = 0; cp < b; ++cp)
        for (long j = 0; j < t; ++j) {
            long e = (2 * (t - 1 - 2 * j) + (sign == Sign::plus ? 2 * p : 0)) % N;
            if (e < 0) e += N;
            w[soc_idx(cp, j)] = e;
        }
    for (long i = 0; i < z.dim; ++i) {
        z.grp_m.at(i, i) = FieldElem::zeta_power(c, w[i]);
        z.grpinv_m.at(i, i) = FieldElem::zeta_power(c, -w[i]);
    }

    for (long cp = 0; cp < a; ++cp) {
        for (long i = 1; i < s; ++i)
            z.raise_m.at(top_idx(cp, i - 1), top_idx(cp, i)) =
                fe_int(c, sg) * qint(c, i) * qint(c, s - i);
        for (long i = 0; i + 1 < s; ++i)
            z.lower_m.at(top_idx(cp, i + 1), top_idx(cp, i)) = FieldElem::one(c);
        for (long bc = 0; bc < b; ++bc) {
            if (!tauE.at(bc, cp).is_zero())
                z.raise_m.at(soc_idx(bc, t - 1), top_idx(cp, 0)) = tauE.at(bc, cp);
            if (!tauF.at(bc, cp).is_zero())
                z.lower_m.at(soc_idx(bc, 0), top_idx(cp, s - 1)) = tauF.at(bc, cp);
        }
    }
    for (long cp = 0; cp < b; ++cp) {
        for (long j = 1; j < t; ++j)
            z.raise_m.at(soc_idx(cp, j - 1), soc_idx(cp, j)) =
                fe_int(c, -sg) * qint(c, j) * qint(c, t - j);
        for (long j = 0; j + 1 < t; ++j)
            z.lower_m.at(soc_idx(cp, j + 1), soc_idx(cp, j)) = FieldElem::one(c);
    }
    z.wexp = std::move(w);
    return z;
}

Mat jordan_shift(const FieldCtx* c, long n) {
    // entry (m-1, m) = 1: copy m couples down to copy m-1
    Mat nmat(c, n, n);
    for (long m = 1; m < n; ++m) nmat.at(m - 1, m) = FieldElem::one(c);
    return nmat;
}

} // namespace

Rep build_E(const FieldCtxPtr& ctx, long s, Sign sign, long n, const ProjPoint& lambda) {
    const FieldCtx* c = ctx.get();
    if (n < 1) throw DomainError("build_E needs n >= 1");
    Mat tauE(c, n, n), tauF(c, n, n);
    if (!lambda.l1().is_zero()) {
        // canonical [1:beta]: tauE = beta*I + N, tauF = I
        tauE = jordan_shift(c, n);
        for (long m = 0; m < n; ++m) {
            tauE.at(m, m) = lambda.l2();
            tauF.at(m, m) = FieldElem::one(c);
        }
    } else {
        // [0:1]: mirrored regular pencil, tauE = I, tauF = N
        tauF = jordan_shift(c, n);
        for (long m = 0; m < n; ++m) tauE.at(m, m) = FieldElem::one(c);
    }
    return build_glued(ctx, s, sign, tauE, tauF);
}

Rep build_MW(const FieldCtxPtr& ctx, long s, Sign sign, long n, Family which) {
    const FieldCtx* c = ctx.get();
    if (n < 2) throw DomainError("build_MW needs n >= 2");
    if (which == Family::M) {
        Mat tauE(c, n, n - 1), tauF(c, n, n - 1);
        for (long m = 0; m < n - 1; ++m) {
            tauE.at(m, m) = FieldElem::one(c);
            tauF.at(m + 1, m) = FieldElem::one(c);
        }
        return build_glued(ctx, s, sign, tauE, tauF);
    }
    if (which == Family::W) {
        Mat tauE(c, n - 1, n), tauF(c, n - 1, n);
        for (long m = 0; m < n - 1; ++m) {
            tauE.at(m, m) = FieldElem::one(c);
            tauF.at(m, m + 1) = FieldElem::one(c);
        }
        return build_glued(ctx, s, sign, tauE, tauF);
    }
    throw DomainError("build_MW takes Family::M or Family::W");
}

Rep tensor(const Rep& a, const Rep& b) {
    if (a.tag != b.tag || a.ctx.get() != b.ctx.get())
        throw DomainError("tensor requires matching algebra tag and field context");
    const FieldCtx* c = a.ctx.get();
    Rep z;
    z.ctx = a.ctx;
    z.tag = a.tag;
    z.dim = a.dim * b.dim;
    Mat ia = Mat::identity(c, a.dim), ib = Mat::identity(c, b.dim);
    if (a.tag == Algebra::Ubar) {
        z.raise_m = a.raise_m.kron(b.grp_m) + ia.kron(b.raise_m);
        z.lower_m = a.lower_m.kron(ib) + a.grpinv_m.kron(b.lower_m);
    } else {
        z.raise_m = a.raise_m.kron(b.grp_m * b.grp_m) + ia.kron(b.raise_m);
        z.lower_m = a.lower_m.kron(ib) + (a.grpinv_m * a.grpinv_m).kron(b.lower_m);
    }
    z.grp_m = a.grp_m.kron(b.grp_m);
    z.grpinv_m = a.grpinv_m.kron(b.grpinv_m);
    if (a.wexp && b.wexp) {
        const long N = c->root_order();
        std::vector<long> w(z.dim);
        for (long i = 0; i < a.dim; ++i)
            for (long j = 0; j < b.dim; ++j)
                w[i * b.dim + j] = ((*a.wexp)[i] + (*b.wexp)[j]) % N;
        z.wexp = std::move(w);
    }
    return z;
}

Rep dual(const Rep& z, DualSide side) {
    const FieldCtx* c = z.ctx.get();
    Rep d;
    d.ctx = z.ctx;
    d.tag = z.tag;
    d.dim = z.dim;
    if (z.tag == Algebra::Ubar) {
        if (side == DualSide::right) {
            d.raise_m = (-(z.raise_m * z.grpinv_m)).transpose(); // S(E) = -E K^-1
            d.lower_m = (-(z.grp_m * z.lower_m)).transpose();    // S(F) = -K F
        } else {
            d.raise_m = (-(z.grpinv_m * z.raise_m)).transpose(); // S^-1(E) = -K^-1 E
            d.lower_m = (-(z.lower_m * z.grp_m)).transpose();    // S^-1(F) = -F K
        }
    } else {
        Mat t2 = z.grp_m * z.grp_m, t2i = z.grpinv_m * z.grpinv_m;
        if (side == DualSide::right) {
            d.raise_m = (-(z.raise_m * t2i)).transpose();
            d.lower_m = (-(t2 * z.lower_m)).transpose();
        } else {
            d.raise_m = (-(t2i * z.raise_m)).transpose();
            d.lower_m = (-(z.lower_m * t2)).transpose();
        }
    }
    d.grp_m = z.grpinv_m.transpose();
    d.grpinv_m = z.grp_m.transpose();
    if (z.wexp) {
        const long N = c->root_order();
        std::vector<long> w(z.dim);
        for (long i = 0; i < z.dim; ++i) {
            long e = (N - (*z.wexp)[i]) % N;
            w[i] = e;
        }
        d.wexp = std::move(w);
    }
    return d;
}

Rep direct_sum(const std::vector<Rep>& parts) {
    if (parts.empty()) throw DomainError("direct_sum needs at least one part");
    const FieldCtx* c = parts[0].ctx.get();
    long dim = 0;
    for (const auto& p : parts) {
        if (p.tag != parts[0].tag || p.ctx.get() != c)
            throw DomainError("direct_sum requires matching tags and contexts");
        dim += p.dim;
    }
    Rep z;
    z.ctx = parts[0].ctx;
    z.tag = parts[0].tag;
    z.dim = dim;
    z.raise_m = Mat(c, dim, dim);
    z.lower_m = Mat(c, dim, dim);
    z.grp_m = Mat(c, dim, dim);
    z.grpinv_m = Mat(c, dim, dim);
    bool all_w = true;
    std::vector<long> w(dim, 0);
    long off = 0;
    for (const auto& p : parts) {
        for (long i = 0; i < p.dim; ++i)
            for (long j = 0; j < p.dim; ++j) {
                z.raise_m.at(off + i, off + j) = p.raise_m.at(i, j);
                z.lower_m.at(off + i, off + j) = p.lower_m.at(i, j);
                z.grp_m.at(off + i, off + j) = p.grp_m.at(i, j);
                z.grpinv_m.at(off + i, off + j) = p.grpinv_m.at(i, j);
            }
        if (p.wexp)
            for (long i = 0; i < p.dim; ++i) w[off + i] = (*p.wexp)[i];
        else
            all_w = false;
        off += p.dim;
    }
    if (all_w) z.wexp = std::move(w);
    return z;
}

long root_of_unity_exponent(const FieldCtx* ctx, const FieldElem& v) {
    for (long e = 0; e < ctx->root_order(); ++e)
        if (v == FieldElem::zeta_power(ctx, e)) return e;
    throw InternalError("value is not a power of zeta");
}

namespace {

/// Splits columns into weight-homogeneous components w.r.t. the stored
/// exponents; returns list of (exponent, vector) pairs.
std::vector<std::pair<long, Mat>> weight_components(const Rep& z, const Mat& vecs) {
    std::vector<std::pair<long, Mat>> out;
    const FieldCtx* c = z.ctx.get();
    for (long j = 0; j < vecs.cols(); ++j) {
        std::map<long, Mat> comp;
        for (long i = 0; i < z.dim; ++i) {
            if (vecs.at(i, j).is_zero()) continue;
            long e = (*z.wexp)[i];
            auto it = comp.find(e);
            if (it == comp.end()) it = comp.emplace(e, Mat(c, z.dim, 1)).first;
            it->second.at(i, 0) = vecs.at(i, j);
        }
        for (auto& [e, v] : comp) out.emplace_back(e, v);
    }
    return out;
}

} // namespace

SubRep submodule_generated(const Rep& z, const Mat& seeds) {
    const FieldCtx* c = z.ctx.get();
    if (!z.wexp) throw InternalError("submodule_generated expects a weight basis");
    // per-weight echelon bases, grown until closed under the four generators
    std::map<long, Mat> basis; // exponent -> dim x k matrix, rref'd columns
    std::vector<Mat> queue;
    for (auto& [e, v] : weight_components(z, seeds)) queue.push_back(v);

    auto insert_vec = [&](const Mat& v) -> bool {
        // returns true if v enlarged the span of its weight class
        long e = -1;
        for (long i = 0; i < z.dim; ++i)
            if (!v.at(i, 0).is_zero()) {
                e = (*z.wexp)[i];
                break;
            }
        if (e < 0) return false;
        auto it = basis.find(e);
        if (it == basis.end()) {
            basis.emplace(e, v);
            return true;
        }
        Mat cand = it->second.hstack(v);
        if (cand.rank() > it->second.cols()) {
            it->second = cand.column_space();
            return true;
        }
        return false;
    };

    while (!queue.empty()) {
        Mat v = queue.back();
        queue.pop_back();
        if (!insert_vec(v)) continue;
        for (const Mat* g : {&z.raise_m, &z.lower_m, &z.grp_m, &z.grpinv_m}) {
            Mat img = (*g) * v;
            for (auto& [e, comp] : weight_components(z, img)) queue.push_back(comp);
        }
    }

    long total = 0;
    for (auto& [e, m] : basis) total += m.cols();
    Mat incl(c, z.dim, total);
    std::vector<long> w(total);
    long col = 0;
    for (auto& [e, m] : basis)
        for (long j = 0; j < m.cols(); ++j, ++col) {
            w[col] = e;
            for (long i = 0; i < z.dim; ++i) incl.at(i, col) = m.at(i, j);
        }

    SubRep sr;
    sr.incl = incl;
    sr.rep.ctx = z.ctx;
    sr.rep.tag = z.tag;
    sr.rep.dim = total;
    sr.rep.wexp = std::move(w);
    auto restrict_action = [&](const Mat& g) {
        auto sol = incl.solve(g * incl);
        if (!sol) throw InternalError("submodule closure is not closed under action");
        return *sol;
    };
    sr.rep.raise_m = restrict_action(z.raise_m);
    sr.rep.lower_m = restrict_action(z.lower_m);
    sr.rep.grp_m = restrict_action(z.grp_m);
    sr.rep.grpinv_m = restrict_action(z.grpinv_m);
    return sr;
}

QuotientResult quotient_with_proj(const Rep& z, const Mat& sub_basis) {
    const FieldCtx* c = z.ctx.get();
    const long r = sub_basis.cols();
    // complete the submodule basis with standard basis vectors
    Mat u = sub_basis.cols() == 0 ? Mat(c, z.dim, 0) : sub_basis;
    std::vector<long> chosen;
    for (long i = 0; i < z.dim && u.cols() < z.dim; ++i) {
        Mat e(c, z.dim, 1);
        e.at(i, 0) = FieldElem::one(c);
        Mat cand = u.cols() == 0 ? e : u.hstack(e);
        if (cand.rank() > u.cols()) {
            u = cand;
            chosen.push_back(i);
        }
    }
    if (u.cols() != z.dim) throw InternalError("quotient basis completion failed");
    Mat uinv = *u.inverse();
    auto act = [&](const Mat& g) {
        Mat gg = uinv * g * u;
        Mat out(c, z.dim - r, z.dim - r);
        for (long i = 0; i < z.dim - r; ++i)
            for (long j = 0; j < z.dim - r; ++j) out.at(i, j) = gg.at(r + i, r + j);
        return out;
    };
    QuotientResult res;
    Rep& q = res.rep;
    q.ctx = z.ctx;
    q.tag = z.tag;
    q.dim = z.dim - r;
    q.raise_m = act(z.raise_m);
    q.lower_m = act(z.lower_m);
    q.grp_m = act(z.grp_m);
    q.grpinv_m = act(z.grpinv_m);
    if (z.wexp) {
        std::vector<long> w;
        w.reserve(chosen.size());
        for (long i : chosen) w.push_back((*z.wexp)[i]);
        q.wexp = std::move(w);
    }
    res.proj = Mat(c, z.dim - r, z.dim);
    for (long i = 0; i < z.dim - r; ++i)
        for (long j = 0; j < z.dim; ++j) res.proj.at(i, j) = uinv.at(r + i, j);
    return res;
}

Rep quotient_by(const Rep& z, const Mat& sub_basis) {
    return quotient_with_proj(z, sub_basis).rep;
}

std::vector<std::pair<FieldElem, Mat>> weight_spaces(const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    std::vector<std::pair<FieldElem, Mat>> out;
    if (z.wexp) {
        std::map<long, std::vector<long>> groups;
        for (long i = 0; i < z.dim; ++i) groups[(*z.wexp)[i]].push_back(i);
        for (auto& [e, idx] : groups) {
            Mat m(c, z.dim, static_cast<long>(idx.size()));
            for (size_t j = 0; j < idx.size(); ++j)
                m.at(idx[j], static_cast<long>(j)) = FieldElem::one(c);
            out.emplace_back(FieldElem::zeta_power(c, e), m);
        }
        return out;
    }
    // general path: try all 2p-th (4p-th for Dbar) root-of-unity eigenvalues
    long total = 0;
    for (long e = 0; e < c->root_order(); ++e) {
        FieldElem lam = FieldElem::zeta_power(c, e);
        Mat shifted = z.grp_m;
        for (long i = 0; i < z.dim; ++i) shifted.at(i, i) = shifted.at(i, i) - lam;
        Mat ker = shifted.nullspace();
        if (ker.cols() > 0) {
            out.emplace_back(lam, ker);
            total += ker.cols();
        }
    }
    if (total != z.dim) throw DomainError("grouplike generator is not diagonalizable");
    return out;
}

Mat casimir_matrix(const Rep& z) {
    if (z.tag != Algebra::Ubar) throw DomainError("casimir_matrix is for Ubar reps");
    const FieldCtx* c = z.ctx.get();
    FieldElem q = q_power(c, 1), qi = q_power(c, -1);
    FieldElem d2 = (q - qi) * (q - qi);
    return z.raise_m * z.lower_m + (z.grp_m.scaled(qi) + z.grpinv_m.scaled(q)).scaled(d2.inverse());
}

FieldElem block_eigenvalue(const FieldCtx* ctx, long b) {
    FieldElem q = q_power(ctx, 1), qi = q_power(ctx, -1);
    FieldElem d2 = (q - qi) * (q - qi);
    return (q_power(ctx, b) + q_power(ctx, -b)) / d2;
}

std::vector<BlockComponent> block_decompose(const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    const long p = c->p();
    Mat cz = casimir_matrix(z);
    // centrality is checked before the projection is trusted
    if (cz * z.raise_m != z.raise_m * cz || cz * z.lower_m != z.lower_m * cz ||
        cz * z.grp_m != z.grp_m * cz)
        throw InternalError("Casimir does not commute with the action");

    std::vector<std::pair<FieldElem, Mat>> wspaces = weight_spaces(z);
    std::vector<std::vector<Mat>> per_block(p + 1);
    for (auto& [lam, basis] : wspaces) {
        const long k = basis.cols();
        // Casimir restricted to this weight space
        auto sol = basis.solve(cz * basis);
        if (!sol) throw InternalError("Casimir does not preserve a weight space");
        Mat cw = *sol;
        long found = 0;
        for (long b = 0; b <= p; ++b) {
            Mat shifted = cw;
            FieldElem ev = block_eigenvalue(c, b);
            for (long i = 0; i < k; ++i) shifted.at(i, i) = shifted.at(i, i) - ev;
            Mat ker = shifted.pow(k).nullspace();
            if (ker.cols() == 0) continue;
            per_block[b].push_back(basis * ker);
            found += ker.cols();
        }
        if (found != k)
            throw InternalError("Casimir eigenvalue outside the block table");
    }

    // global change of basis: all block columns side by side
    std::vector<BlockComponent> out;
    Mat u(c, z.dim, 0);
    std::vector<std::pair<long, long>> spans; // (block, width)
    for (long b = 0; b <= p; ++b) {
        long width = 0;
        for (const Mat& m : per_block[b]) {
            u = u.cols() == 0 ? m : u.hstack(m);
            width += m.cols();
        }
        if (width > 0) spans.emplace_back(b, width);
    }
    if (u.cols() != z.dim) throw InternalError("block decomposition dimension mismatch");
    Mat uinv = *u.inverse();

    long off = 0;
    for (auto [b, width] : spans) {
        BlockComponent bc;
        bc.block = b;
        bc.incl = Mat(c, z.dim, width);
        bc.proj = Mat(c, width, z.dim);
        for (long j = 0; j < width; ++j)
            for (long i = 0; i < z.dim; ++i) {
                bc.incl.at(i, j) = u.at(i, off + j);
                bc.proj.at(j, i) = uinv.at(off + j, i);
            }
        bc.rep.ctx = z.ctx;
        bc.rep.tag = z.tag;
        bc.rep.dim = width;
        bc.rep.raise_m = bc.proj * z.raise_m * bc.incl;
        bc.rep.lower_m = bc.proj * z.lower_m * bc.incl;
        bc.rep.grp_m = bc.proj * z.grp_m * bc.incl;
        bc.rep.grpinv_m = bc.proj * z.grpinv_m * bc.incl;
        if (z.wexp) {
            std::vector<long> w(width);
            for (long j = 0; j < width; ++j) {
                long e = -1;
                for (long i = 0; i < z.dim; ++i)
                    if (!bc.incl.at(i, j).is_zero()) {
                        e = (*z.wexp)[i];
                        break;
                    }
                w[j] = e;
            }
            bc.rep.wexp = std::move(w);
        }
        out.push_back(std::move(bc));
        off += width;
    }
    return out;
}

Rep build_P(const FieldCtxPtr& ctx, long s, Sign sign) {
    const FieldCtx* c = ctx.get();
    const long p = c->p();
    if (s < 1 || s > p - 1) throw DomainError("build_P needs 1 <= s <= p-1");
    auto left = std::make_shared<Rep>(build_simple(ctx, p, sign));
    auto right = std::make_shared<Rep>(build_simple(ctx, p - s + 1, Sign::plus));
    Rep t = tensor(*left, *right);
    const long want_block = sign == Sign::plus ? s : p - s;
    for (auto& bc : block_decompose(t)) {
        if (bc.block != want_block) continue;
        if (bc.rep.dim != 2 * p)
            throw InternalError("projective block has unexpected dimension");
        Rep out = bc.rep;
        auto prov = std::make_shared<Rep::TensorBlockProv>();
        prov->left = left;
        prov->right = right;
        prov->incl = bc.incl;
        prov->proj = bc.proj;
        out.prov = prov;
        return out;
    }
    throw InternalError("block s missing from X_p (x) X_{p-s+1}");
}

Rep build_label(const FieldCtxPtr& ctx, const ModuleLabel& label) {
    ModuleLabel l = label.canonicalized(ctx->p());
    switch (l.fam) {
        case Family::X: return build_simple(ctx, l.s, l.sign);
        case Family::P: return build_P(ctx, l.s, l.sign);
        case Family::M: return build_MW(ctx, l.s, l.sign, l.n, Family::M);
        case Family::W: return build_MW(ctx, l.s, l.sign, l.n, Family::W);
        case Family::E: return build_E(ctx, l.s, l.sign, l.n, *l.lambda);
    }
    throw DomainError("unknown label family");
}

namespace {

nlohmann::json mat_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) rows.push_back(m.at(i, j).to_string());
    return rows;
}

Mat mat_from_json(const FieldCtx* c, long dim, const nlohmann::json& rows) {
    Mat m(c, dim, dim);
    if (static_cast<long>(rows.size()) != dim * dim)
        throw ParseError("matrix entry count mismatch");
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            m.at(i, j) = FieldElem::parse(c, rows[i * dim + j].get<std::string>());
    return m;
}

} // namespace

std::string Rep::to_json() const {
    nlohmann::json j;
    j["algebra"] = tag == Algebra::Ubar ? "Ubar" : "Dbar";
    j["p"] = ctx->p();
    j["dim"] = dim;
    const char* names[4] = {"E", "F", "K", "K^-1"};
    const char* dnames[4] = {"e", "f", "t", "t^-1"};
    const Mat* mats[4] = {&raise_m, &lower_m, &grp_m, &grpinv_m};
    nlohmann::json action;
    for (int i = 0; i < 4; ++i)
        action[tag == Algebra::Ubar ? names[i] : dnames[i]] = mat_to_json(*mats[i]);
    j["action"] = action;
    return j.dump();
}

Rep Rep::from_json(const FieldCtxPtr& ctx, const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    Rep z;
    z.ctx = ctx;
    z.tag = j.at("algebra").get<std::string>() == "Ubar" ? Algebra::Ubar : Algebra::Dbar;
    if (j.at("p").get<long>() != ctx->p()) throw ParseError("rep p mismatch");
    z.dim = j.at("dim").get<long>();
    const char* names[4] = {"E", "F", "K", "K^-1"};
    const char* dnames[4] = {"e", "f", "t", "t^-1"};
    Mat* mats[4] = {&z.raise_m, &z.lower_m, &z.grp_m, &z.grpinv_m};
    for (int i = 0; i < 4; ++i)
        *mats[i] = mat_from_json(ctx.get(), z.dim,
                                 j.at("action").at(z.tag == Algebra::Ubar ? names[i] : dnames[i]));
    return z;
}

} // namespace qsl2

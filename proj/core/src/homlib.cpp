#include "qsl2/homlib.hpp"

#include <algorithm>
#include <sstream>

namespace qsl2 {

namespace {

// ---------------------------------------------------------------- helpers

/// Columns -> weight-homogeneous echelonized spanning set. The span must be
/// K-stable (a submodule), so splitting columns by weight preserves it.
Mat weight_reduce(const Rep& z, const Mat& cols) {
    const FieldCtx* c = z.ctx.get();
    if (!z.wexp) throw InternalError("weight_reduce expects a weight basis");
    std::map<long, std::vector<Mat>> groups;
    for (long j = 0; j < cols.cols(); ++j) {
        std::map<long, Mat> comp;
        for (long i = 0; i < z.dim; ++i) {
            if (cols.at(i, j).is_zero()) continue;
            long e = (*z.wexp)[i];
            auto it = comp.find(e);
            if (it == comp.end()) it = comp.emplace(e, Mat(c, z.dim, 1)).first;
            it->second.at(i, 0) = cols.at(i, j);
        }
        for (auto& [e, v] : comp) groups[e].push_back(v);
    }
    Mat out(c, z.dim, 0);
    for (auto& [e, vecs] : groups) {
        Mat m = vecs[0];
        for (size_t i = 1; i < vecs.size(); ++i) m = m.hstack(vecs[i]);
        Mat basis = m.column_space();
        out = out.cols() == 0 ? basis : out.hstack(basis);
    }
    return out;
}

/// Restricts the action to the span of (independent, closed) columns.
Rep restrict_to_span(const Rep& z, const Mat& incl) {
    Rep r;
    r.ctx = z.ctx;
    r.tag = z.tag;
    r.dim = incl.cols();
    auto restr = [&](const Mat& g) {
        auto sol = incl.solve(g * incl);
        if (!sol) throw InternalError("span is not action-stable");
        return *sol;
    };
    r.raise_m = restr(z.raise_m);
    r.lower_m = restr(z.lower_m);
    r.grp_m = restr(z.grp_m);
    r.grpinv_m = restr(z.grpinv_m);
    if (z.wexp) {
        std::vector<long> w(incl.cols(), -1);
        for (long j = 0; j < incl.cols(); ++j)
            for (long i = 0; i < z.dim; ++i)
                if (!incl.at(i, j).is_zero()) {
                    w[j] = (*z.wexp)[i];
                    break;
                }
        r.wexp = std::move(w);
    }
    return r;
}

Mat flatten(const Mat& m) {
    Mat v(m.ctx(), m.rows() * m.cols(), 1);
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) v.at(i * m.cols() + j, 0) = m.at(i, j);
    return v;
}

/// Greedy selection of column indices of `vecs` forming a basis of its span.
std::vector<long> greedy_independent(const std::vector<Mat>& vecs, long want = -1) {
    std::vector<long> chosen;
    if (vecs.empty()) return chosen;
    Mat acc(vecs[0].ctx(), vecs[0].rows(), 0);
    for (size_t i = 0; i < vecs.size(); ++i) {
        Mat cand = acc.cols() == 0 ? vecs[i] : acc.hstack(vecs[i]);
        if (cand.rank() > acc.cols()) {
            acc = cand.column_space();
            chosen.push_back(static_cast<long>(i));
            if (want >= 0 && static_cast<long>(chosen.size()) == want) break;
        }
    }
    return chosen;
}

Mat combo(const HomSpace& h, const std::vector<long>& coeffs) {
    const FieldCtx* c = h.basis[0].ctx();
    Mat m(c, h.basis[0].rows(), h.basis[0].cols());
    for (size_t i = 0; i < h.basis.size(); ++i) {
        if (coeffs[i] == 0) continue;
        m = m + h.basis[i].scaled(FieldElem::from_int(c, coeffs[i]));
    }
    return m;
}

/// Deterministic small combinations first, then seeded random ones.
template <typename Pred>
std::optional<Mat> search_hom_combo(const HomSpace& h, SplitMix64& rng, long random_tries,
                                    Pred good) {
    if (h.dim == 0) return std::nullopt;
    const long r = h.dim;
    for (long i = 0; i < r; ++i) {
        std::vector<long> c(r, 0);
        c[i] = 1;
        Mat m = combo(h, c);
        if (good(m)) return m;
    }
    for (long i = 0; i < r; ++i)
        for (long j = i + 1; j < r; ++j)
            for (long sgn : {1, -1}) {
                std::vector<long> c(r, 0);
                c[i] = 1;
                c[j] = sgn;
                Mat m = combo(h, c);
                if (good(m)) return m;
            }
    for (long t = 0; t < random_tries; ++t) {
        std::vector<long> c(r);
        for (long i = 0; i < r; ++i) c[i] = rng.next_in(-(1L << 20), 1L << 20);
        Mat m = combo(h, c);
        if (good(m)) return m;
    }
    return std::nullopt;
}

} // namespace

// ---------------------------------------------------------------- hom_space

HomSpace hom_space(const Rep& a, const Rep& b) {
    if (a.tag != b.tag || a.ctx.get() != b.ctx.get())
        throw DomainError("hom_space requires matching algebra tag and context");
    const FieldCtx* c = a.ctx.get();
    HomSpace out;

    if (a.wexp && b.wexp) {
        // unknowns: entries T[i][j] with weight_b(i) == weight_a(j)
        std::vector<std::pair<long, long>> unk;
        std::map<std::pair<long, long>, long> pos;
        for (long i = 0; i < b.dim; ++i)
            for (long j = 0; j < a.dim; ++j)
                if ((*b.wexp)[i] == (*a.wexp)[j]) {
                    pos[{i, j}] = static_cast<long>(unk.size());
                    unk.emplace_back(i, j);
                }
        if (unk.empty()) return out;

        std::vector<std::vector<std::pair<long, FieldElem>>> rows;
        auto add_equations = [&](const Mat& ga, const Mat& gb) {
            // (T ga - gb T)[i][j] = 0
            for (long i = 0; i < b.dim; ++i)
                for (long j = 0; j < a.dim; ++j) {
                    std::vector<std::pair<long, FieldElem>> row;
                    for (long k = 0; k < a.dim; ++k) {
                        if (ga.at(k, j).is_zero()) continue;
                        auto it = pos.find({i, k});
                        if (it != pos.end()) row.emplace_back(it->second, ga.at(k, j));
                    }
                    for (long l = 0; l < b.dim; ++l) {
                        if (gb.at(i, l).is_zero()) continue;
                        auto it = pos.find({l, j});
                        if (it != pos.end()) row.emplace_back(it->second, -gb.at(i, l));
                    }
                    if (!row.empty()) rows.push_back(std::move(row));
                }
        };
        add_equations(a.raise_m, b.raise_m);
        add_equations(a.lower_m, b.lower_m);

        Mat sys(c, static_cast<long>(rows.size()), static_cast<long>(unk.size()));
        for (size_t r = 0; r < rows.size(); ++r)
            for (auto& [col, v] : rows[r])
                sys.at(static_cast<long>(r), col) = sys.at(static_cast<long>(r), col) + v;
        Mat ns = sys.rows() == 0 ? Mat::identity(c, static_cast<long>(unk.size()))
                                 : sys.nullspace();
        out.dim = ns.cols();
        for (long v = 0; v < ns.cols(); ++v) {
            Mat t(c, b.dim, a.dim);
            for (size_t u = 0; u < unk.size(); ++u)
                t.at(unk[u].first, unk[u].second) = ns.at(static_cast<long>(u), v);
            out.basis.push_back(std::move(t));
        }
        return out;
    }

    // dense fallback, includes the grouplike constraint
    const long nu = b.dim * a.dim;
    std::vector<Mat> gens_a{a.raise_m, a.lower_m, a.grp_m};
    std::vector<Mat> gens_b{b.raise_m, b.lower_m, b.grp_m};
    Mat sys(c, 3 * nu, nu);
    long row = 0;
    for (int g = 0; g < 3; ++g) {
        for (long i = 0; i < b.dim; ++i)
            for (long j = 0; j < a.dim; ++j, ++row) {
                for (long k = 0; k < a.dim; ++k)
                    sys.at(row, i * a.dim + k) =
                        sys.at(row, i * a.dim + k) + gens_a[g].at(k, j);
                for (long l = 0; l < b.dim; ++l)
                    sys.at(row, l * a.dim + j) =
                        sys.at(row, l * a.dim + j) - gens_b[g].at(i, l);
            }
    }
    Mat ns = sys.nullspace();
    out.dim = ns.cols();
    for (long v = 0; v < ns.cols(); ++v) {
        Mat t(c, b.dim, a.dim);
        for (long i = 0; i < b.dim; ++i)
            for (long j = 0; j < a.dim; ++j) t.at(i, j) = ns.at(i * a.dim + j, v);
        out.basis.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------- StdModules

StdModules::StdModules(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {
    const long p = ctx_->p();
    simples_.resize(2 * p);
    projs_.resize(2 * p);
    soc_incl_.resize(2 * p);
    for (long s = 1; s <= p; ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            long i = idx(s, sg);
            simples_[i] = build_simple(ctx_, s, sg);
            projs_[i] = s == p ? simples_[i] : build_P(ctx_, s, sg);
            HomSpace h = hom_space(simples_[i], projs_[i]);
            if (h.dim != 1) throw InternalError("socle of P(S) is not simple");
            soc_incl_[i] = h.basis[0];
        }
}

const Rep& StdModules::simple(long s, Sign sign) const { return simples_[idx(s, sign)]; }
const Rep& StdModules::proj_cover_of_simple(long s, Sign sign) const {
    return projs_[idx(s, sign)];
}
const Mat& StdModules::socle_inclusion(long s, Sign sign) const {
    return soc_incl_[idx(s, sign)];
}

std::vector<ModuleLabel> StdModules::simple_labels() const {
    std::vector<ModuleLabel> out;
    for (long s = 1; s <= p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) out.push_back(ModuleLabel::simple(s, sg));
    return out;
}

// ------------------------------------------------------- socle/top/radical

SocleResult socle(const StdModules& sm, const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    SocleResult res;
    Mat cols(c, z.dim, 0);
    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            HomSpace h = hom_space(sm.simple(s, sg), z);
            res.mults[ModuleLabel::simple(s, sg).to_string()] = h.dim;
            for (const Mat& phi : h.basis) cols = cols.cols() == 0 ? phi : cols.hstack(phi);
        }
    Mat basis = cols.cols() == 0 ? cols : weight_reduce(z, cols);
    res.sub.incl = basis;
    res.sub.rep = restrict_to_span(z, basis);
    return res;
}

SubRep radical(const StdModules& sm, const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    Mat stacked(c, 0, z.dim);
    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            HomSpace h = hom_space(z, sm.simple(s, sg));
            for (const Mat& phi : h.basis)
                stacked = stacked.rows() == 0 ? phi : stacked.vstack(phi);
        }
    Mat ker = stacked.rows() == 0 ? Mat::identity(c, z.dim) : stacked.nullspace();
    Mat basis = ker.cols() == 0 ? ker : weight_reduce(z, ker);
    SubRep sr;
    sr.incl = basis;
    sr.rep = restrict_to_span(z, basis);
    return sr;
}

TopResult top(const StdModules& sm, const Rep& z) {
    SubRep rad = radical(sm, z);
    QuotientResult q = quotient_with_proj(z, rad.incl);
    TopResult t;
    t.rep = q.rep;
    t.proj = q.proj;
    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus})
            t.mults[ModuleLabel::simple(s, sg).to_string()] =
                hom_space(z, sm.simple(s, sg)).dim;
    return t;
}

long semisimple_length(const StdModules& sm, const Rep& z) {
    long len = 0;
    Rep cur = z;
    while (cur.dim > 0) {
        SubRep rad = radical(sm, cur);
        if (rad.rep.dim == cur.dim)
            throw InternalError("radical series does not descend");
        cur = rad.rep;
        ++len;
    }
    return len;
}

FormalDecomp composition_factors(const StdModules& sm, const Rep& z) {
    FormalDecomp d(sm.p());
    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            long m = hom_space(sm.proj_cover_of_simple(s, sg), z).dim;
            if (m > 0) d.add(ModuleLabel::simple(s, sg), m);
        }
    return d;
}

// ---------------------------------------------------------------- covers

CoverResult projective_cover(const StdModules& sm, const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    TopResult t = top(sm, z);
    CoverResult res{FormalDecomp(sm.p()), Rep{}, Mat(), SubRep{}};

    std::vector<Rep> cover_parts;
    std::vector<Mat> surj_parts;
    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            long want = t.mults[ModuleLabel::simple(s, sg).to_string()];
            if (want == 0) continue;
            const Rep& pc = sm.proj_cover_of_simple(s, sg);
            HomSpace h = hom_space(pc, z);
            std::vector<Mat> images;
            images.reserve(h.basis.size());
            for (const Mat& phi : h.basis) images.push_back(flatten(t.proj * phi));
            std::vector<long> chosen = greedy_independent(images, want);
            if (static_cast<long>(chosen.size()) != want)
                throw InternalError("projective cover lift count mismatch");
            for (long i : chosen) {
                cover_parts.push_back(pc);
                surj_parts.push_back(h.basis[i]);
            }
            res.parts.add(s == sm.p() ? ModuleLabel::simple(s, sg) : ModuleLabel::proj(s, sg),
                          want);
        }
    if (cover_parts.empty()) {
        if (z.dim != 0) throw InternalError("nonzero module with empty top");
        res.cover = z;
        res.surjection = Mat(c, 0, 0);
        res.kernel.rep = z;
        res.kernel.incl = Mat(c, 0, 0);
        return res;
    }
    res.cover = direct_sum(cover_parts);
    Mat surj = surj_parts[0];
    for (size_t i = 1; i < surj_parts.size(); ++i) surj = surj.hstack(surj_parts[i]);
    res.surjection = surj;
    if (surj.rank() != z.dim) throw InternalError("cover map is not surjective");

    Mat ker = surj.nullspace();
    Mat basis = ker.cols() == 0 ? ker : weight_reduce(res.cover, ker);
    res.kernel.incl = basis;
    res.kernel.rep = restrict_to_span(res.cover, basis);

    // minimality: the kernel sits inside the radical of the cover
    if (basis.cols() > 0) {
        TopResult tc = top(sm, res.cover);
        if (!(tc.proj * basis).is_zero())
            throw InternalError("cover is not minimal");
    }
    return res;
}

long ext1(const StdModules& sm, const Rep& a, const Rep& b) {
    CoverResult cv = projective_cover(sm, a);
    return hom_space(cv.kernel.rep, b).dim - hom_space(cv.cover, b).dim +
           hom_space(a, b).dim;
}

// ------------------------------------------------------------ projectives

SplitProjResult split_projective_summands(const StdModules& sm, const Rep& z) {
    const FieldCtx* c = z.ctx.get();
    SplitProjResult res{FormalDecomp(sm.p()), z, Mat::identity(c, z.dim)};

    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            Rep& cur = res.complement;
            if (cur.dim == 0) return res;
            const Rep& pc = sm.proj_cover_of_simple(s, sg);
            if (pc.dim > cur.dim) continue;
            HomSpace h = hom_space(pc, cur);
            if (h.dim == 0) continue;
            const Mat& soc_in = sm.socle_inclusion(s, sg);
            std::vector<Mat> rest;
            rest.reserve(h.basis.size());
            for (const Mat& phi : h.basis) rest.push_back(flatten(phi * soc_in));
            std::vector<long> chosen = greedy_independent(rest);
            if (chosen.empty()) continue;
            const long k = static_cast<long>(chosen.size());

            Mat big = h.basis[chosen[0]];
            for (long i = 1; i < k; ++i) big = big.hstack(h.basis[chosen[i]]);
            if (big.rank() != k * pc.dim)
                throw InternalError("projective embedding is not injective");

            // retraction r : cur -> P^k with r * big = id, solved inside
            // Hom(cur, P)^k
            HomSpace hb = hom_space(cur, pc);
            if (hb.dim == 0) throw InternalError("missing retraction space");
            // unknowns: a[copy][j]; equations per (copy, copy')
            const long nu = k * hb.dim;
            Mat sys(c, k * k * pc.dim * pc.dim, nu);
            Mat rhs(c, k * k * pc.dim * pc.dim, 1);
            long row = 0;
            for (long cp = 0; cp < k; ++cp)
                for (long cq = 0; cq < k; ++cq) {
                    std::vector<Mat> prods;
                    prods.reserve(hb.dim);
                    for (long j = 0; j < hb.dim; ++j)
                        prods.push_back(hb.basis[j] * h.basis[chosen[cq]]);
                    for (long x = 0; x < pc.dim; ++x)
                        for (long y = 0; y < pc.dim; ++y, ++row) {
                            for (long j = 0; j < hb.dim; ++j)
                                sys.at(row, cp * hb.dim + j) = prods[j].at(x, y);
                            if (cp == cq && x == y) rhs.at(row, 0) = FieldElem::one(c);
                        }
                }
            auto sol = sys.solve(rhs);
            if (!sol) throw InternalError("projective summand has no retraction");
            Mat r(c, k * pc.dim, cur.dim);
            for (long cp = 0; cp < k; ++cp) {
                Mat rc(c, pc.dim, cur.dim);
                for (long j = 0; j < hb.dim; ++j) {
                    const FieldElem& aj = sol->at(cp * hb.dim + j, 0);
                    if (aj.is_zero()) continue;
                    rc = rc + hb.basis[j].scaled(aj);
                }
                for (long x = 0; x < pc.dim; ++x)
                    for (long y = 0; y < cur.dim; ++y) r.at(cp * pc.dim + x, y) = rc.at(x, y);
            }
            if (r * big != Mat::identity(c, k * pc.dim))
                throw InternalError("retraction verification failed");

            Mat ker = r.nullspace();
            Mat basis = ker.cols() == 0 ? ker : weight_reduce(cur, ker);
            Rep comp = restrict_to_span(cur, basis);
            res.incl = res.incl * basis;
            res.complement = comp;
            res.projs.add(
                s == sm.p() ? ModuleLabel::simple(s, sg) : ModuleLabel::proj(s, sg), k);
        }
    return res;
}

// ------------------------------------------------------------- the pencil

namespace {

struct Pencil {
    long src = 0, tgt = 0;
    Mat a; // normalized E-side map on source representatives
    Mat b; // F-side map
};

/// Chain constant of the inner E-steps of the socle copies of an oriented
/// length-2 family in block s: for orientation + the socle is X_{p-s}^- with
/// E-coefficients -[j][p-s-j]; for orientation - it is X_s^+ with +[j][s-j].
FieldElem socle_chain_constant(const FieldCtx* c, long s, Sign orientation) {
    long t = orientation == Sign::plus ? c->p() - s : s;
    long sg = orientation == Sign::plus ? -1 : 1;
    FieldElem g = FieldElem::one(c);
    for (long j = 1; j <= t - 1; ++j)
        g *= FieldElem::from_int(c, sg) * qint(c, j) * qint(c, t - j);
    return g;
}

/// Builds the oriented gluing pencil of a block-s, projective-free,
/// length <= 2 module. Source: head-weight space mod its socle part.
/// Target: socle part of the x_0-weight space. A = E^{p-s}/gamma, B = F^s
/// for orientation +; s and p-s swap for orientation -.
Pencil build_pencil(const StdModules& sm, const Rep& z, long s, Sign orientation,
                    const Mat& socle_incl) {
    const FieldCtx* c = z.ctx.get();
    const long p = sm.p();
    const long N = c->root_order();
    if (!z.wexp) throw InternalError("pencil needs a weight basis");

    long top_len = orientation == Sign::plus ? s : p - s;
    long head_exp =
        ((orientation == Sign::plus ? 2 * (s - 1) : 2 * (p - s - 1) + 2 * p) % N + N) % N;
    long x0_exp =
        ((orientation == Sign::plus ? 2 * (p - s - 1) + 2 * p : 2 * (s - 1)) % N + N) % N;

    auto coords_with_exp = [&](long e) {
        std::vector<long> idx;
        for (long i = 0; i < z.dim; ++i)
            if ((*z.wexp)[i] == e) idx.push_back(i);
        return idx;
    };
    auto socle_cols_with_exp = [&](long e) {
        Mat out(c, z.dim, 0);
        for (long j = 0; j < socle_incl.cols(); ++j) {
            long we = -1;
            for (long i = 0; i < z.dim; ++i)
                if (!socle_incl.at(i, j).is_zero()) {
                    we = (*z.wexp)[i];
                    break;
                }
            if (we == e) out = out.cols() == 0 ? socle_incl.col(j) : out.hstack(socle_incl.col(j));
        }
        return out;
    };

    std::vector<long> head_idx = coords_with_exp(head_exp);
    Mat soc_head = socle_cols_with_exp(head_exp);
    Mat soc_x0 = socle_cols_with_exp(x0_exp);

    // source representatives: coordinate vectors extending soc_head inside
    // the head weight space
    std::vector<long> reps_idx;
    {
        Mat acc = soc_head;
        for (long i : head_idx) {
            Mat e(c, z.dim, 1);
            e.at(i, 0) = FieldElem::one(c);
            Mat cand = acc.cols() == 0 ? e : acc.hstack(e);
            if (cand.rank() > acc.cols()) {
                acc = cand;
                reps_idx.push_back(i);
            }
        }
    }

    Pencil pc;
    pc.src = static_cast<long>(reps_idx.size());
    pc.tgt = soc_x0.cols();
    if (pc.src == 0 || pc.tgt == 0) {
        pc.a = Mat(c, pc.tgt, pc.src);
        pc.b = Mat(c, pc.tgt, pc.src);
        return pc;
    }

    Mat reps(c, z.dim, pc.src);
    for (long j = 0; j < pc.src; ++j) reps.at(reps_idx[j], j) = FieldElem::one(c);

    long down_e = p - top_len; // E-steps from head to x_0 coordinates
    Mat eimg = z.raise_m.pow(down_e) * reps;
    Mat fimg = z.lower_m.pow(top_len) * reps;

    auto in_soc_coords = [&](const Mat& img) {
        auto sol = soc_x0.solve(img);
        if (!sol) throw InternalError("pencil image left the socle");
        return *sol;
    };
    FieldElem gamma = socle_chain_constant(c, s, orientation);
    pc.a = in_soc_coords(eimg).scaled(gamma.inverse());
    pc.b = in_soc_coords(fimg);
    return pc;
}

using FPoly = std::vector<FieldElem>; // ascending, trimmed

void fp_trim(FPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

FPoly fp_derivative(const FPoly& f) {
    const FieldCtx* c = f.empty() ? nullptr : f[0].ctx();
    FPoly d;
    for (size_t k = 1; k < f.size(); ++k)
        d.push_back(f[k] * FieldElem::from_int(c, static_cast<long>(k)));
    fp_trim(d);
    return d;
}

FPoly fp_rem(FPoly a, const FPoly& b) {
    fp_trim(a);
    const long db = static_cast<long>(b.size()) - 1;
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        FieldElem cf = a.back() / b[db];
        long shift = static_cast<long>(a.size()) - 1 - db;
        for (long j = 0; j <= db; ++j) a[shift + j] -= cf * b[j];
        fp_trim(a);
    }
    return a;
}

FPoly fp_gcd(FPoly a, FPoly b) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FPoly r = fp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        FieldElem lead = a.back();
        for (auto& x : a) x = x / lead;
    }
    return a;
}

FPoly fp_divide_exact(FPoly a, const FPoly& b) {
    fp_trim(a);
    const long db = static_cast<long>(b.size()) - 1;
    FPoly q(std::max<long>(1, static_cast<long>(a.size()) - db), FieldElem());
    const FieldCtx* c = b[0].ctx();
    for (auto& x : q) x = FieldElem::zero(c);
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        FieldElem cf = a.back() / b[db];
        long shift = static_cast<long>(a.size()) - 1 - db;
        q[shift] = q[shift] + cf;
        for (long j = 0; j <= db; ++j) a[shift + j] -= cf * b[j];
        fp_trim(a);
    }
    if (!a.empty()) throw InternalError("inexact polynomial division");
    fp_trim(q);
    return q;
}

/// y with y^2 = g, searched in the form (rational) * zeta^k; covers every
/// square the test surface needs. Returns nullopt when not found.
std::optional<FieldElem> try_sqrt(const FieldCtx* c, const FieldElem& g) {
    if (g.is_zero()) return FieldElem::zero(c);
    for (long k = 0; k < c->root_order(); ++k) {
        FieldElem cand = g * FieldElem::zeta_power(c, -2 * k);
        if (!cand.is_rational()) continue;
        Rational r = cand.rational_part();
        if (r < 0) continue;
        mpz_class num = r.get_num(), den = r.get_den();
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        if (sn * sn != num || sd * sd != den) continue;
        FieldElem y = FieldElem::from_rational(c, Rational(sn) / Rational(sd)) *
                      FieldElem::zeta_power(c, k);
        if (y * y == g) return y;
    }
    return std::nullopt;
}

/// Coefficients a_k of det(c1 A - c2 B) = sum a_k c1^(n-k) c2^k, by
/// interpolation of det(A - t B) at t = 0..n.
std::vector<FieldElem> binary_form(const Mat& a, const Mat& b) {
    const FieldCtx* c = a.ctx();
    const long n = a.rows();
    std::vector<FieldElem> vals;
    for (long t = 0; t <= n; ++t)
        vals.push_back((a - b.scaled(FieldElem::from_int(c, t))).det());
    // Vandermonde solve for coefficients of g(t) = det(A - tB)
    Mat vd(c, n + 1, n + 1), rhs(c, n + 1, 1);
    for (long i = 0; i <= n; ++i) {
        FieldElem ti = FieldElem::one(c);
        for (long k = 0; k <= n; ++k) {
            vd.at(i, k) = ti;
            ti *= FieldElem::from_int(c, i);
        }
        rhs.at(i, 0) = vals[i];
    }
    Mat sol = *vd.solve(rhs);
    // det(A - tB) = f(1, t) with a_k multiplied by (-1)^k relative to t^k:
    // f(c1,c2) = sum a_k c1^(n-k) c2^k and f(1,t) = sum a_k t^k, so a_k is
    // the t^k coefficient directly (the sign lives inside det(c1 A - c2 B)
    // evaluated at c1=1, c2=t).
    std::vector<FieldElem> coeffs(n + 1);
    for (long k = 0; k <= n; ++k) coeffs[k] = sol.at(k, 0);
    return coeffs;
}

/// Distinct singular points of a regular pencil: tries the
/// single-point form first, then square-free strata with linear or
/// square-root-solvable quadratic factors.
std::vector<ProjPoint> pencil_points(const FieldCtx* c, const std::vector<FieldElem>& a) {
    const long n = static_cast<long>(a.size()) - 1;
    bool all_zero = true;
    for (const auto& x : a)
        if (!x.is_zero()) all_zero = false;
    if (all_zero) throw InternalError("pencil is singular as a form");

    auto verify_single = [&](const ProjPoint& pt) {
        // compare with C * (l2 c1 - l1 c2)^n
        FieldElem l1 = pt.l1(), l2 = pt.l2();
        std::vector<FieldElem> want(n + 1);
        // binomial expansion
        for (long k = 0; k <= n; ++k) {
            Rational binom = 1;
            for (long i = 0; i < k; ++i) binom *= Rational(n - i) / Rational(i + 1);
            FieldElem term = FieldElem::from_rational(c, binom);
            for (long i = 0; i < n - k; ++i) term *= l2;
            for (long i = 0; i < k; ++i) term *= -l1;
            want[k] = term;
        }
        // scale factor from the first nonzero coefficient
        for (long k = 0; k <= n; ++k) {
            if (want[k].is_zero() != a[k].is_zero()) return false;
            if (!want[k].is_zero()) {
                FieldElem sc = a[k] / want[k];
                for (long j = 0; j <= n; ++j)
                    if (a[j] != want[j] * sc) return false;
                return true;
            }
        }
        return false;
    };

    // single point?
    std::optional<ProjPoint> cand;
    if (!a[0].is_zero()) {
        FieldElem l1 = -a[1] / FieldElem::from_int(c, n);
        cand = ProjPoint::make(l1, a[0]);
    } else {
        bool only_top = true;
        for (long k = 0; k < n; ++k)
            if (!a[k].is_zero()) only_top = false;
        if (only_top) cand = ProjPoint::infinity_point(c);
    }
    if (cand && verify_single(*cand)) return {*cand};

    // multi-point: dehomogenize g(t) = sum a_k t^k; roots t give [1:t],
    // a deficit of degree gives [1:0] with the missing multiplicity.
    FPoly g(a.begin(), a.end());
    fp_trim(g);
    std::vector<ProjPoint> pts;
    if (static_cast<long>(g.size()) - 1 < n) pts.push_back(ProjPoint::infinity_point(c));

    // square-free strata
    FPoly cur = g;
    while (static_cast<long>(cur.size()) > 1) {
        FPoly der = fp_derivative(cur);
        FPoly gc = fp_gcd(cur, der);
        FPoly sf = fp_divide_exact(cur, gc); // square-free part of cur
        // roots of sf
        FPoly h = sf;
        if (h.size() == 2) {
            pts.push_back(ProjPoint::make(FieldElem::one(c), -h[0] / h[1]));
        } else if (h.size() == 3) {
            FieldElem two = FieldElem::from_int(c, 2);
            FieldElem disc = h[1] * h[1] - FieldElem::from_int(c, 4) * h[2] * h[0];
            auto rt = try_sqrt(c, disc);
            if (!rt) throw InternalError("pencil eigenvalues not expressible (quadratic)");
            FieldElem r1 = (-h[1] + *rt) / (two * h[2]);
            FieldElem r2 = (-h[1] - *rt) / (two * h[2]);
            pts.push_back(ProjPoint::make(FieldElem::one(c), r1));
            if (r1 != r2) pts.push_back(ProjPoint::make(FieldElem::one(c), r2));
        } else if (h.size() > 3) {
            throw InternalError("pencil eigenvalues not expressible (degree > 2)");
        }
        cur = gc;
    }
    // dedupe
    std::vector<ProjPoint> uniq;
    for (const auto& pt : pts) {
        bool seen = false;
        for (const auto& u : uniq)
            if (u == pt) seen = true;
        if (!seen) uniq.push_back(pt);
    }
    return uniq;
}

/// Jordan sizes of a regular pencil at the singular point pt: kernel growth
/// of G = (generic point)^-1 (pt evaluation).
std::vector<long> jordan_sizes_at(const Mat& a, const Mat& b, const ProjPoint& pt) {
    const FieldCtx* c = a.ctx();
    const long n = a.rows();
    Mat ep = a.scaled(pt.l1()) - b.scaled(pt.l2());
    // generic evaluation point
    Mat eq;
    bool found = false;
    for (long d = 0; d <= n + 1 && !found; ++d) {
        Mat candm = a - b.scaled(FieldElem::from_int(c, d));
        if (!candm.det().is_zero()) {
            eq = candm;
            found = true;
        }
    }
    if (!found) {
        Mat candm = b;
        if (candm.det().is_zero()) throw InternalError("pencil has no regular point");
        eq = candm;
    }
    Mat g = *eq.inverse() * ep;
    std::vector<long> kdims{0};
    Mat gp = Mat::identity(c, n);
    for (long j = 1; j <= n; ++j) {
        gp = gp * g;
        kdims.push_back(n - gp.rank());
        if (kdims.back() == kdims[kdims.size() - 2]) break;
    }
    std::vector<long> ge; // ge[j] = #blocks of size >= j
    for (size_t j = 1; j < kdims.size(); ++j) ge.push_back(kdims[j] - kdims[j - 1]);
    std::vector<long> sizes;
    for (long sz = static_cast<long>(ge.size()); sz >= 1; --sz) {
        long count = ge[sz - 1] - (sz < static_cast<long>(ge.size()) ? ge[sz] : 0);
        for (long i = 0; i < count; ++i) sizes.push_back(sz);
    }
    return sizes;
}

/// Attempts to split off one copy of the candidate module via an explicit
/// section/retraction pair. Returns the complement on success.
struct SplitHit {
    Rep complement;
    Mat incl;
};

std::optional<SplitHit> try_split(const Rep& z, const Rep& cand, SplitMix64& rng) {
    if (cand.dim > z.dim) return std::nullopt;
    HomSpace h1 = hom_space(cand, z);
    if (h1.dim == 0) return std::nullopt;
    HomSpace h2 = hom_space(z, cand);
    if (h2.dim == 0) return std::nullopt;
    const FieldCtx* c = z.ctx.get();

    auto attempt = [&](const Mat& phi) -> std::optional<Mat> {
        // solve sum_j a_j (psi_j phi) = id_cand
        Mat sys(c, cand.dim * cand.dim, h2.dim);
        Mat rhs(c, cand.dim * cand.dim, 1);
        for (long j = 0; j < h2.dim; ++j) {
            Mat pr = h2.basis[j] * phi;
            for (long x = 0; x < cand.dim; ++x)
                for (long y = 0; y < cand.dim; ++y)
                    sys.at(x * cand.dim + y, j) = pr.at(x, y);
        }
        for (long x = 0; x < cand.dim; ++x)
            rhs.at(x * cand.dim + x, 0) = FieldElem::one(c);
        auto sol = sys.solve(rhs);
        if (!sol) return std::nullopt;
        Mat r(c, cand.dim, z.dim);
        for (long j = 0; j < h2.dim; ++j) {
            const FieldElem& aj = sol->at(j, 0);
            if (aj.is_zero()) continue;
            r = r + h2.basis[j].scaled(aj);
        }
        return r;
    };

    std::optional<Mat> retraction;
    std::optional<Mat> section = search_hom_combo(h1, rng, 24, [&](const Mat& phi) {
        auto r = attempt(phi);
        if (r) retraction = r;
        return r.has_value();
    });
    if (!section) return std::nullopt;

    Mat ker = retraction->nullspace();
    Mat basis = ker.cols() == 0 ? ker : weight_reduce(z, ker);
    SplitHit hit;
    hit.incl = basis;
    hit.complement = restrict_to_span(z, basis);
    return hit;
}

struct BlockPieces {
    FormalDecomp parts;
    // E-family pencil points seen in the block (orientation mapped to labels)
    std::vector<ModuleLabel> e_points;
};

/// Decomposition of a single Casimir block component.
BlockPieces decompose_block(const StdModules& sm, long block, const Rep& comp,
                            SplitMix64& rng) {
    const long p = sm.p();
    BlockPieces out{FormalDecomp(p), {}};

    SplitProjResult sp = split_projective_summands(sm, comp);
    for (const auto& [lab, m] : sp.projs.parts()) out.parts.add(lab, m);
    Rep cur = sp.complement;
    if (cur.dim == 0) return out;
    if (block == p || block == 0)
        throw InternalError("Steinberg block left a non-projective residue");

    const long s = block;

    // sanity: semisimple length <= 2 from here on
    {
        SocleResult soc = socle(sm, cur);
        SubRep rad = radical(sm, cur);
        if (rad.rep.dim > 0) {
            Mat both = soc.sub.incl.hstack(rad.incl);
            if (both.rank() != soc.sub.incl.cols())
                throw InternalError("residual has semisimple length > 2");
        }
    }

    // split off M/W/simple summands by explicit section/retraction pairs
    bool changed = true;
    while (changed && cur.dim > 0) {
        changed = false;
        std::vector<ModuleLabel> cands;
        long nmax = cur.dim / p + 2;
        for (long n = nmax; n >= 2; --n) {
            for (auto [ss, sg] : {std::pair<long, Sign>{s, Sign::plus},
                                  std::pair<long, Sign>{p - s, Sign::minus}}) {
                cands.push_back(ModuleLabel::mfam(ss, sg, n));
                cands.push_back(ModuleLabel::wfam(ss, sg, n));
            }
        }
        cands.push_back(ModuleLabel::simple(s, Sign::plus));
        cands.push_back(ModuleLabel::simple(p - s, Sign::minus));
        for (const auto& lab : cands) {
            if (lab.dim(p) > cur.dim) continue;
            Rep crep = build_label(sm.ctx(), lab);
            auto hit = try_split(cur, crep, rng);
            if (hit) {
                out.parts.add(lab, 1);
                cur = hit->complement;
                changed = true;
                break;
            }
        }
    }
    if (cur.dim == 0) return out;

    // what is left is a sum of E-family modules; read both oriented pencils
    SocleResult soc = socle(sm, cur);
    long edim = 0;
    for (Sign orient : {Sign::plus, Sign::minus}) {
        Pencil pc = build_pencil(sm, cur, s, orient, soc.sub.incl);
        if (pc.src == 0 && pc.tgt == 0) continue;
        if (pc.src != pc.tgt)
            throw InternalError("E-residual pencil is not square");
        std::vector<FieldElem> form = binary_form(pc.a, pc.b);
        std::vector<ProjPoint> pts = pencil_points(sm.ctx().get(), form);
        long found = 0;
        for (const auto& pt : pts) {
            std::vector<long> sizes = jordan_sizes_at(pc.a, pc.b, pt);
            long es = orient == Sign::plus ? s : p - s;
            for (long n : sizes) {
                ModuleLabel lab = ModuleLabel::efam(es, orient, n, pt);
                out.parts.add(lab, 1);
                found += n;
                edim += n * p;
            }
            out.e_points.push_back(ModuleLabel::efam(es, orient, 1, pt));
        }
        if (found != pc.src)
            throw InternalError("pencil block sizes do not fill the source");
    }
    if (edim != cur.dim) throw InternalError("E-residual dimension mismatch");
    return out;
}

std::optional<Mat> iso_witness(const Rep& a, const Rep& b, SplitMix64& rng) {
    if (a.dim != b.dim) return std::nullopt;
    if (a.dim == 0) return Mat(a.ctx.get(), 0, 0);
    HomSpace h = hom_space(a, b);
    return search_hom_combo(h, rng, 48,
                            [&](const Mat& m) { return !m.det().is_zero(); });
}

} // namespace

FormalDecomp decompose(const StdModules& sm, const Rep& z, std::uint64_t seed) {
    SplitMix64 rng(seed);
    FormalDecomp out(sm.p());
    if (z.dim == 0) return out;
    for (const auto& bc : block_decompose(z)) {
        BlockPieces pieces = decompose_block(sm, bc.block, bc.rep, rng);
        // certify: the rebuilt sum is isomorphic to the block component
        std::vector<Rep> built;
        for (const auto& [lab, m] : pieces.parts.parts())
            for (long i = 0; i < m; ++i) built.push_back(build_label(sm.ctx(), lab));
        if (built.empty()) throw InternalError("empty block decomposition");
        Rep rebuilt = direct_sum(built);
        if (!iso_witness(bc.rep, rebuilt, rng))
            throw InternalError("decomposition certificate failed");
        for (const auto& [lab, m] : pieces.parts.parts()) out.add(lab, m);
    }
    if (out.total_dim() != z.dim)
        throw InternalError("decomposition dimensions do not add up");
    return out;
}

ModuleLabel identify(const StdModules& sm, const Rep& z, std::uint64_t seed) {
    FormalDecomp d = decompose(sm, z, seed);
    if (d.parts().size() != 1 || d.parts()[0].second != 1)
        throw InternalError("identify called on a decomposable module: " + d.to_string());
    return d.parts()[0].first;
}

std::vector<ModuleLabel> pencil_probe_labels(const StdModules& sm, const Rep& z) {
    std::vector<ModuleLabel> out;
    try {
        SplitMix64 rng(kDefaultSeed);
        for (const auto& bc : block_decompose(z)) {
            if (bc.block == 0 || bc.block == sm.p()) continue;
            BlockPieces pieces = decompose_block(sm, bc.block, bc.rep, rng);
            for (const auto& lab : pieces.e_points) out.push_back(lab);
        }
    } catch (const Error&) {
        out.clear(); // fingerprints fall back to simples and projectives
    }
    return out;
}

IsoCert is_iso(const StdModules& sm, const Rep& a, const Rep& b, std::uint64_t seed) {
    IsoCert cert{IsoCert::Verdict::undetermined, {}, "", -1, -1, false};
    if (a.dim != b.dim) {
        cert.verdict = IsoCert::Verdict::not_iso;
        cert.fingerprint_probe = "dim";
        cert.dim_a = a.dim;
        cert.dim_b = b.dim;
        return cert;
    }

    std::vector<ModuleLabel> probes;
    for (long s = 1; s <= sm.p(); ++s)
        for (Sign sg : {Sign::plus, Sign::minus}) {
            probes.push_back(ModuleLabel::simple(s, sg));
            if (s < sm.p()) probes.push_back(ModuleLabel::proj(s, sg));
        }
    for (const Rep* side : {&a, &b})
        for (const auto& lab : pencil_probe_labels(sm, *side)) {
            bool seen = false;
            for (const auto& q : probes)
                if (q == lab) seen = true;
            if (!seen) probes.push_back(lab);
        }

    for (const auto& lab : probes) {
        Rep probe = build_label(sm.ctx(), lab);
        long la = hom_space(probe, a).dim, lb = hom_space(probe, b).dim;
        if (la != lb) {
            cert.verdict = IsoCert::Verdict::not_iso;
            cert.fingerprint_probe = lab.to_string();
            cert.dim_a = la;
            cert.dim_b = lb;
            cert.probe_on_left = true;
            return cert;
        }
        long ra = hom_space(a, probe).dim, rb = hom_space(b, probe).dim;
        if (ra != rb) {
            cert.verdict = IsoCert::Verdict::not_iso;
            cert.fingerprint_probe = lab.to_string();
            cert.dim_a = ra;
            cert.dim_b = rb;
            cert.probe_on_left = false;
            return cert;
        }
    }

    SplitMix64 rng(seed);
    auto w = iso_witness(a, b, rng);
    if (w) {
        cert.verdict = IsoCert::Verdict::iso;
        cert.witness = *w;
        return cert;
    }
    return cert;
}

} // namespace qsl2

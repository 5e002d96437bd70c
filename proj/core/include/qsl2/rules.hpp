#ifndef QSL2_RULES_HPP
#define QSL2_RULES_HPP

#include "qsl2/labels.hpp"

namespace qsl2 {

/// I_{s,s'} = { t = s'-s+2i-1 : i = 1..s, t <= 2p-s-s' } for s <= s',
/// extended symmetrically. Subset of 1..p-1.
std::vector<long> index_I(long p, long s, long s2);

/// J depends only on sigma = s+s' (2..2p). Subset of 1..p; empty for
/// sigma <= p.
std::vector<long> index_J(long p, long sigma);

/// The two reduction routes for sign combinations the printed formulas omit:
/// `right` moves the twisting X_1^- factors to the right end of the product,
/// `left` to the left end, before applying the printed ++ rules.
enum class RewriteRoute { right, left };

/// Closed-form decomposition of a (x) b, order-sensitive.
FormalDecomp tensor_rule_via(const FieldCtxPtr& ctx, const ModuleLabel& a,
                             const ModuleLabel& b, RewriteRoute route);

/// Computes both routes, asserts they agree, checks dimension conservation.
FormalDecomp tensor_rule(const FieldCtxPtr& ctx, const ModuleLabel& a, const ModuleLabel& b);

/// Dual on isomorphism classes (the right and left duals agree there):
/// X and P are self-dual, M_s^a(n) <-> W_{p-s}^{-a}(n), and
/// E_s^+(n;l) -> E_{p-s}^-(n;(-1)^s l), E_s^-(n;l) -> E_{p-s}^+(n;(-1)^{p-s} l).
/// The M/W/P values are frozen from matrix duals (kept as a regression test).
ModuleLabel dual_rule(long p, const ModuleLabel& a);

FormalDecomp dual_rule_decomp(const FormalDecomp& d);

FormalDecomp composition_factors_rule(long p, const ModuleLabel& a);

struct CommuteReport {
    bool commutes = true;
    FormalDecomp ab, ba;
    std::string witness; // first differing label pair when not commuting
};

CommuteReport commutes_rule(const FieldCtxPtr& ctx, const ModuleLabel& a,
                            const ModuleLabel& b);

} // namespace qsl2

#endif

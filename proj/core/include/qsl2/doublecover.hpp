#ifndef QSL2_DOUBLECOVER_HPP
#define QSL2_DOUBLECOVER_HPP

#include "qsl2/repcore.hpp"

namespace qsl2 {

/// The fourth roots of unity allowed for alpha in T^s(alpha, kappa, n).
enum class AlphaUnit { one, minus_one, i, minus_i };

FieldElem alpha_value(const FieldCtx* ctx, AlphaUnit a);

/// The indecomposable Dbar-module T^s(alpha, kappa, n), dimension 2pn,
/// built from its explicit basis action.
Rep build_T(const FieldCtxPtr& ctx, long s, AlphaUnit alpha, const FieldElem& kappa1,
            const FieldElem& kappa2, long n);

/// Pullback along the embedding E -> e, F -> f, K -> t^2.
Rep restrict_to_U(const Rep& d);

struct JordanSplitReport {
    bool pass = false;
    std::string detail;
    /// The verified isomorphism E (+) E -> T|_U (columns are the b-basis
    /// vectors in T coordinates), present when pass is true.
    std::optional<Mat> theta;
};

/// Verifies the Jordan-splitting isomorphism
/// T^s(alpha,kappa,n)|_U = E_s^+(n;[1:beta]) (+) E_s^+(n;[1:-beta]):
/// builds the conjugating matrix Q from exact generalized eigenchains of the
/// antidiagonal gluing block, assembles the paper's map Psi, and checks it is
/// a bijective U-intertwiner. beta must satisfy beta^2 = kappa1*kappa2.
JordanSplitReport jordan_split_check(const FieldCtxPtr& ctx, long s, AlphaUnit alpha,
                                     const FieldElem& kappa1, const FieldElem& kappa2,
                                     long n, const FieldElem& beta);

/// Matrix of the universal R-matrix of Dbar on A (x) B.
Mat rmatrix_on(const Rep& a, const Rep& b);

struct BraidReport {
    bool pass = false;
    std::string detail;
};

/// Checks that sigma . R : A (x) B -> B (x) A is an invertible
/// Dbar-intertwiner.
BraidReport braiding_check(const Rep& a, const Rep& b);

struct LiftResult {
    enum class Verdict { liftable, not_liftable, undetermined } verdict =
        Verdict::undetermined;
    std::optional<Mat> witness_t;       // t-action extending the module
    std::vector<std::string> obstruction; // inconsistent sign equations
    /// Promotes a liftable result to a full Dbar rep.
    Rep as_dbar(const Rep& z) const;
};

/// Decides whether the U-module action extends to Dbar (a matrix T with
/// T^2 = K, TET^-1 = qE, TFT^-1 = q^-1F, T^4p = 1). Sound on both sides:
/// a returned witness is verified, and not_liftable is only reported when
/// the twisted-intertwiner constraint space admits no solution.
LiftResult lift(const Rep& z);

} // namespace qsl2

#endif

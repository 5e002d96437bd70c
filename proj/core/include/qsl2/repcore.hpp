#ifndef QSL2_REPCORE_HPP
#define QSL2_REPCORE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsl2/labels.hpp"
#include "qsl2/linalg.hpp"

namespace qsl2 {

enum class Algebra { Ubar, Dbar };
enum class DualSide { right, left };

/// A finite-dimensional module given by explicit generator matrices.
/// Ubar reps store E, F, K, K^-1; Dbar reps store e, f, t, t^-1 in the same
/// slots (raising, lowering, grouplike, inverse grouplike). Immutable in
/// practice: nothing in the library mutates a built Rep.
struct Rep {
    FieldCtxPtr ctx;
    Algebra tag = Algebra::Ubar;
    long dim = 0;
    Mat raise_m, lower_m, grp_m, grpinv_m;

    /// zeta-exponents of the grouplike diagonal when the basis is a weight
    /// basis (true for everything this library constructs).
    std::optional<std::vector<long>> wexp;

    /// Set when the rep was cut out of a tensor product; lets lift() reuse
    /// the factor lifts.
    struct TensorBlockProv {
        std::shared_ptr<const Rep> left, right;
        Mat incl; // parent-dim x dim
        Mat proj; // dim x parent-dim
    };
    std::shared_ptr<const TensorBlockProv> prov;

    const Mat& E() const { return raise_m; }
    const Mat& F() const { return lower_m; }
    const Mat& K() const { return grp_m; }
    const Mat& Kinv() const { return grpinv_m; }

    std::string to_json() const;
    static Rep from_json(const FieldCtxPtr& ctx, const std::string& json_text);
};

struct ValidationResult {
    bool ok = true;
    std::string violated; // first failing relation, by name
};

/// Checks every defining relation of the tagged algebra as an exact matrix
/// identity; reports the first violation by name.
ValidationResult validate(const Rep& z);

/// X_s^sign, s = 1..p (Prop. "basis" action: K a_n = ±q^{s-1-2n} a_n,
/// E a_n = ±[n][s-n] a_{n-1}, F a_n = a_{n+1}).
Rep build_simple(const FieldCtxPtr& ctx, long s, Sign sign);

/// E_s^sign(n; lambda), dimension p*n. The gluing pencil is the canonical
/// Kronecker block for the point lambda, matching the printed n=1 matrices
/// on canonical coordinates.
Rep build_E(const FieldCtxPtr& ctx, long s, Sign sign, long n, const ProjPoint& lambda);

/// M_s^sign(n) (dim pn-s) and W_s^sign(n) (dim pn-p+s), n >= 2.
Rep build_MW(const FieldCtxPtr& ctx, long s, Sign sign, long n, Family which);

/// P_s^sign, s = 1..p-1, dim 2p: the block-s component of
/// X_p^sign (x) X_{p-s+1}^+, which is a multiplicity-free sum of projectives.
Rep build_P(const FieldCtxPtr& ctx, long s, Sign sign);

/// Builds the module for any canonical label.
Rep build_label(const FieldCtxPtr& ctx, const ModuleLabel& label);

/// Tensor product along the coproduct; requires equal tags and contexts.
Rep tensor(const Rep& a, const Rep& b);

/// Dual module: right dual twists by the antipode, left dual by its inverse;
/// the action matrix is the transpose of the (inverse-)antipode image.
Rep dual(const Rep& z, DualSide side);

Rep direct_sum(const std::vector<Rep>& parts);

struct SubRep {
    Rep rep;
    Mat incl; // parent-dim x sub-dim
};

/// Smallest submodule containing the given column vectors, with the
/// restricted action. Seeds are split into weight components first so the
/// result keeps a weight basis.
SubRep submodule_generated(const Rep& z, const Mat& seeds);

struct QuotientResult {
    Rep rep;
    Mat proj; // quotient-dim x parent-dim
};

/// Quotient by the span of the given (closed) submodule basis.
QuotientResult quotient_with_proj(const Rep& z, const Mat& sub_basis);
Rep quotient_by(const Rep& z, const Mat& sub_basis);

/// K-eigenspace decomposition; throws if K is not diagonalizable.
std::vector<std::pair<FieldElem, Mat>> weight_spaces(const Rep& z);

/// The Casimir element E F + (q^-1 K + q K^-1)/(q-q^-1)^2 evaluated on z.
Mat casimir_matrix(const Rep& z);

/// Casimir eigenvalue of the linkage block b in 0..p:
/// (q^b + q^-b)/(q-q^-1)^2. Block p carries X_p^+, block 0 carries X_p^-,
/// block s in 1..p-1 carries X_s^+ and X_{p-s}^-.
FieldElem block_eigenvalue(const FieldCtx* ctx, long b);

struct BlockComponent {
    long block = 0;
    Rep rep;
    Mat incl; // parent-dim x block-dim
    Mat proj; // block-dim x parent-dim
};

/// Splits z into generalized Casimir eigenspaces labelled by block index.
/// Verifies centrality of the Casimir on z first.
std::vector<BlockComponent> block_decompose(const Rep& z);

/// zeta-exponent e with value = zeta^e, for root-of-unity values.
long root_of_unity_exponent(const FieldCtx* ctx, const FieldElem& v);

} // namespace qsl2

#endif

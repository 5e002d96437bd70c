#ifndef QSL2_LABELS_HPP
#define QSL2_LABELS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsl2/cyclo.hpp"

namespace qsl2 {

enum class Sign { plus, minus };

inline Sign operator*(Sign a, Sign b) {
    return a == b ? Sign::plus : Sign::minus;
}
inline Sign flip(Sign a) { return a == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign a) { return a == Sign::plus ? '+' : '-'; }
/// kappa(+) = 1, kappa(-) = -1.
inline long kappa(Sign a) { return a == Sign::plus ? 1 : -1; }

/// A point of the projective line over Q(zeta_N), kept in the canonical form
/// [1:beta] when the first coordinate is nonzero and [0:1] otherwise.
class ProjPoint {
public:
    static ProjPoint make(const FieldElem& l1, const FieldElem& l2);
    static ProjPoint infinity_point(const FieldCtx* ctx); // [1:0]
    static ProjPoint zero_point(const FieldCtx* ctx);     // [0:1]

    const FieldElem& l1() const { return l1_; }
    const FieldElem& l2() const { return l2_; }

    /// The paper's scalar action c.[l1:l2] = [c*l1 : l2]; total for any c
    /// (c = 0 lands on [0:1]).
    ProjPoint scaled(const FieldElem& c) const;
    ProjPoint negated() const;

    bool operator==(const ProjPoint& o) const { return l1_ == o.l1_ && l2_ == o.l2_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    std::string to_string() const;
    static ProjPoint parse(const FieldCtx* ctx, const std::string& s);

private:
    ProjPoint(FieldElem l1, FieldElem l2) : l1_(std::move(l1)), l2_(std::move(l2)) {}
    FieldElem l1_, l2_;
};

/// Family rank order used for canonical sorting: X < M < W < E < P.
enum class Family { X = 0, M = 1, W = 2, E = 3, P = 4 };

char family_char(Family f);

/// Symbolic name of an indecomposable: X/P take (s, sign), M/W take
/// (s, sign, n), E takes (s, sign, n, lambda).
struct ModuleLabel {
    Family fam;
    long s = 0;
    Sign sign = Sign::plus;
    long n = 0;
    std::optional<ProjPoint> lambda;

    static ModuleLabel simple(long s, Sign sign);
    static ModuleLabel proj(long s, Sign sign);
    static ModuleLabel mfam(long s, Sign sign, long n);
    static ModuleLabel wfam(long s, Sign sign, long n);
    static ModuleLabel efam(long s, Sign sign, long n, const ProjPoint& lam);

    /// Applies the aliases P_p = X_p, M_{p-s}(1) = W_s(1) = X_s and validates
    /// ranges against p. Throws DomainError for invalid parameters.
    ModuleLabel canonicalized(long p) const;

    long dim(long p) const;
    /// Linkage block index in 0..p: the block whose Casimir eigenvalue is
    /// (q^b + q^-b)/(q-q^-1)^2; b = p is the X_p^+ block, b = 0 is X_p^-.
    long block(long p) const;

    bool operator==(const ModuleLabel& o) const;
    std::string to_string() const;
    static ModuleLabel parse(const FieldCtx* ctx, long p, const std::string& s);
};

/// Deterministic order: (block, family rank, n, sign, s, lambda string).
bool label_less(long p, const ModuleLabel& a, const ModuleLabel& b);

/// Multiset of (canonical label, positive multiplicity), kept sorted.
class FormalDecomp {
public:
    explicit FormalDecomp(long p) : p_(p) {}

    long p() const { return p_; }
    void add(const ModuleLabel& label, long mult);
    const std::vector<std::pair<ModuleLabel, long>>& parts() const { return parts_; }
    long total_dim() const;
    bool empty() const { return parts_.empty(); }

    bool operator==(const FormalDecomp& o) const;
    bool operator!=(const FormalDecomp& o) const { return !(*this == o); }

    std::string to_string() const;
    /// {"p":..,"summands":[{"label":..,"mult":..}..],"dim":..,"certificate":..}
    std::string to_json(const std::string& certificate) const;

    /// Human-readable difference report, empty when equal.
    std::string diff(const FormalDecomp& o) const;

private:
    long p_;
    std::vector<std::pair<ModuleLabel, long>> parts_;
};

} // namespace qsl2

#endif

#ifndef QSL2_LINALG_HPP
#define QSL2_LINALG_HPP

#include <optional>
#include <vector>

#include "qsl2/cyclo.hpp"

namespace qsl2 {

/// Dense matrix over Q(zeta_N). Everything is exact; Gaussian elimination
/// uses the first nonzero pivot in each column (no pivoting heuristics needed
/// over an exact field).
class Mat {
public:
    Mat() : ctx_(nullptr), rows_(0), cols_(0) {}
    Mat(const FieldCtx* ctx, long rows, long cols);

    static Mat identity(const FieldCtx* ctx, long n);
    static Mat zero(const FieldCtx* ctx, long rows, long cols) { return Mat(ctx, rows, cols); }

    const FieldCtx* ctx() const { return ctx_; }
    long rows() const { return rows_; }
    long cols() const { return cols_; }

    FieldElem& at(long i, long j) { return a_[i * cols_ + j]; }
    const FieldElem& at(long i, long j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const FieldElem& c) const;
    Mat transpose() const;
    Mat pow(long e) const;

    /// Kronecker product with blocks ordered so that index (i,j) flattens
    /// to i*o.rows()+j; this makes (A kron B) kron C == A kron (B kron C)
    /// entry-for-entry.
    Mat kron(const Mat& o) const;

    Mat hstack(const Mat& o) const;
    Mat vstack(const Mat& o) const;
    Mat col(long j) const;
    Mat cols_at(const std::vector<long>& idx) const;

    long rank() const;
    FieldElem det() const;
    /// Columns form a basis of the right kernel (reduced echelon based,
    /// deterministic).
    Mat nullspace() const;
    /// Column space basis (deterministic: pivot columns of the RREF).
    Mat column_space() const;
    std::optional<Mat> inverse() const;

    /// One solution X of (*this) * X = rhs, if any.
    std::optional<Mat> solve(const Mat& rhs) const;

    /// In-place reduced row echelon form; returns pivot column indices.
    std::vector<long> rref_inplace();

private:
    const FieldCtx* ctx_;
    long rows_, cols_;
    std::vector<FieldElem> a_;
};

} // namespace qsl2

#endif

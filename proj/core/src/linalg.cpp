#include "qsl2/linalg.hpp"

namespace qsl2 {

Mat::Mat(const FieldCtx* ctx, long rows, long cols)
    : ctx_(ctx), rows_(rows), cols_(cols), a_(rows * cols, FieldElem::zero(ctx)) {}

Mat Mat::identity(const FieldCtx* ctx, long n) {
    Mat m(ctx, n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = FieldElem::one(ctx);
    return m;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    Mat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator-() const {
    Mat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    Mat r(ctx_, rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const FieldElem& x = at(i, k);
            if (x.is_zero()) continue;
            for (long j = 0; j < o.cols_; ++j) {
                const FieldElem& y = o.at(k, j);
                if (y.is_zero()) continue;
                r.at(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::scaled(const FieldElem& c) const {
    Mat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

Mat Mat::transpose() const {
    Mat r(ctx_, cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::pow(long e) const {
    Mat r = identity(ctx_, rows_);
    Mat b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Mat Mat::kron(const Mat& o) const {
    Mat r(ctx_, rows_ * o.rows_, cols_ * o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) {
            const FieldElem& x = at(i, j);
            if (x.is_zero()) continue;
            for (long k = 0; k < o.rows_; ++k)
                for (long l = 0; l < o.cols_; ++l) {
                    const FieldElem& y = o.at(k, l);
                    if (y.is_zero()) continue;
                    r.at(i * o.rows_ + k, j * o.cols_ + l) = x * y;
                }
        }
    return r;
}

Mat Mat::hstack(const Mat& o) const {
    Mat r(ctx_, rows_, cols_ + o.cols_);
    for (long i = 0; i < rows_; ++i) {
        for (long j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (long j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

Mat Mat::vstack(const Mat& o) const {
    Mat r(ctx_, rows_ + o.rows_, cols_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (long i = 0; i < o.rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

Mat Mat::col(long j) const {
    Mat r(ctx_, rows_, 1);
    for (long i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
}

Mat Mat::cols_at(const std::vector<long>& idx) const {
    Mat r(ctx_, rows_, static_cast<long>(idx.size()));
    for (long i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<long>(j)) = at(i, idx[j]);
    return r;
}

std::vector<long> Mat::rref_inplace() {
    std::vector<long> pivots;
    long row = 0;
    for (long colj = 0; colj < cols_ && row < rows_; ++colj) {
        long pr = -1;
        for (long i = row; i < rows_; ++i)
            if (!at(i, colj).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (long j = 0; j < cols_; ++j) std::swap(at(pr, j), at(row, j));
        FieldElem inv = at(row, colj).inverse();
        for (long j = colj; j < cols_; ++j) at(row, j) = at(row, j) * inv;
        for (long i = 0; i < rows_; ++i) {
            if (i == row || at(i, colj).is_zero()) continue;
            FieldElem f = at(i, colj);
            for (long j = colj; j < cols_; ++j) at(i, j) = at(i, j) - f * at(row, j);
        }
        pivots.push_back(colj);
        ++row;
    }
    return pivots;
}

long Mat::rank() const {
    Mat tmp = *this;
    return static_cast<long>(tmp.rref_inplace().size());
}

FieldElem Mat::det() const {
    if (rows_ != cols_) throw DomainError("det requires a square matrix");
    Mat tmp = *this;
    FieldElem d = FieldElem::one(ctx_);
    for (long colj = 0; colj < cols_; ++colj) {
        long pr = -1;
        for (long i = colj; i < rows_; ++i)
            if (!tmp.at(i, colj).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) return FieldElem::zero(ctx_);
        if (pr != colj) {
            for (long j = 0; j < cols_; ++j) std::swap(tmp.at(pr, j), tmp.at(colj, j));
            d = -d;
        }
        d *= tmp.at(colj, colj);
        FieldElem inv = tmp.at(colj, colj).inverse();
        for (long i = colj + 1; i < rows_; ++i) {
            if (tmp.at(i, colj).is_zero()) continue;
            FieldElem f = tmp.at(i, colj) * inv;
            for (long j = colj; j < cols_; ++j)
                tmp.at(i, j) = tmp.at(i, j) - f * tmp.at(colj, j);
        }
    }
    return d;
}

Mat Mat::nullspace() const {
    Mat tmp = *this;
    std::vector<long> pivots = tmp.rref_inplace();
    std::vector<bool> is_pivot(cols_, false);
    for (long pc : pivots) is_pivot[pc] = true;
    std::vector<long> free_cols;
    for (long j = 0; j < cols_; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat basis(ctx_, cols_, static_cast<long>(free_cols.size()));
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        long fc = free_cols[fi];
        basis.at(fc, static_cast<long>(fi)) = FieldElem::one(ctx_);
        for (size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], static_cast<long>(fi)) = -tmp.at(static_cast<long>(r), fc);
    }
    return basis;
}

Mat Mat::column_space() const {
    Mat tmp = *this;
    std::vector<long> pivots = tmp.rref_inplace();
    return cols_at(pivots);
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Mat aug = hstack(identity(ctx_, rows_));
    std::vector<long> pivots = aug.rref_inplace();
    if (static_cast<long>(pivots.size()) != rows_ || pivots.back() >= rows_) {
        // rank-deficient in the left block
        for (long k = 0; k < static_cast<long>(pivots.size()); ++k)
            if (pivots[k] != k) return std::nullopt;
        if (static_cast<long>(pivots.size()) != rows_) return std::nullopt;
    }
    Mat inv(ctx_, rows_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, rows_ + j);
    return inv;
}

std::optional<Mat> Mat::solve(const Mat& rhs) const {
    Mat aug = hstack(rhs);
    std::vector<long> pivots = aug.rref_inplace();
    // Inconsistent if any pivot lands in the rhs block.
    for (long pc : pivots)
        if (pc >= cols_) return std::nullopt;
    Mat x(ctx_, cols_, rhs.cols());
    for (size_t r = 0; r < pivots.size(); ++r)
        for (long j = 0; j < rhs.cols(); ++j)
            x.at(pivots[r], j) = aug.at(static_cast<long>(r), cols_ + j);
    return x;
}

} // namespace qsl2

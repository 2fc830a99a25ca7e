#include "gaugekit/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace gaugekit {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols)
        throw std::invalid_argument("Matrix: entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::diag(const CVec &d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(const CVec &v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::operator+(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix+: shape mismatch");
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

Matrix Matrix::operator-(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix-: shape mismatch");
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix*: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = a_[i * cols_ + k];
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += aik * o(k, j);
        }
    return r;
}

Matrix Matrix::operator*(cplx s) const {
    Matrix r = *this;
    for (auto &x : r.a_) x *= s;
    return r;
}

Matrix &Matrix::operator+=(const Matrix &o) { return *this = *this + o; }
Matrix &Matrix::operator-=(const Matrix &o) { return *this = *this - o; }

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::conjugate() const {
    Matrix r = *this;
    for (auto &x : r.a_) x = std::conj(x);
    return r;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Matrix::norm() const {
    double s = 0.0;
    for (const auto &x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0.0;
    for (const auto &x : a_) s = std::max(s, std::abs(x));
    return s;
}

bool Matrix::is_finite() const {
    for (const auto &x : a_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: square matrix required");
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > best) { best = std::abs(a(i, col)); piv = i; }
        if (best < 1e-300) throw std::runtime_error("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const cplx d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) { a(col, j) /= d; inv(col, j) /= d; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const cplx f = a(i, col);
            if (f == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

cplx Matrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: square matrix required");
    const std::size_t n = rows_;
    Matrix a = *this;
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > best) { best = std::abs(a(i, col)); piv = i; }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const cplx f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

CVec Matrix::apply(const CVec &v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
    CVec r(rows_, cplx(0.0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

std::vector<CVec> null_space(const Matrix &m, double tol) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Matrix a = m;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        double best = std::abs(a(r, c));
        for (std::size_t i = r + 1; i < rows; ++i)
            if (std::abs(a(i, c)) > best) { best = std::abs(a(i, c)); piv = i; }
        if (best <= tol) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        const cplx d = a(r, c);
        for (std::size_t j = 0; j < cols; ++j) a(r, j) /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const cplx f = a(i, c);
            if (f == cplx(0.0)) continue;
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<CVec> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) !=
            pivot_col.end())
            continue;
        CVec v(cols, cplx(0.0));
        v[c] = 1.0;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a(k, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

double distance(const Matrix &a, const Matrix &b) { return (a - b).max_abs(); }

CVec cvec_add(const CVec &a, const CVec &b) {
    CVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

CVec cvec_sub(const CVec &a, const CVec &b) {
    CVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

CVec cvec_scale(cplx s, const CVec &a) {
    CVec r = a;
    for (auto &x : r) x *= s;
    return r;
}

double cvec_max_abs(const CVec &a) {
    double m = 0.0;
    for (const auto &x : a) m = std::max(m, std::abs(x));
    return m;
}

cplx cvec_dot(const CVec &a, const CVec &b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace gaugekit

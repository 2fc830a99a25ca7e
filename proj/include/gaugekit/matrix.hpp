#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gaugekit {

using cplx = std::complex<double>;
using Vec = std::vector<double>;
using CVec = std::vector<cplx>;

/// Dense complex matrix, row-major. Everything in the toolkit is desk
/// scale (n <= 16 or so), so no effort is spent on blocking or BLAS.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols);
    static Matrix diag(const CVec &d);
    static Matrix column(const CVec &v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cplx &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    Matrix operator+(const Matrix &o) const;
    Matrix operator-(const Matrix &o) const;
    Matrix operator*(const Matrix &o) const;
    Matrix operator*(cplx s) const;
    Matrix operator-() const { return *this * cplx(-1.0); }
    Matrix &operator+=(const Matrix &o);
    Matrix &operator-=(const Matrix &o);

    Matrix transpose() const;
    Matrix conjugate() const;
    Matrix adjoint() const { return conjugate().transpose(); }

    cplx trace() const;
    double norm() const;     // Frobenius
    double max_abs() const;  // entrywise sup norm
    bool is_finite() const;

    /// Gauss-Jordan with partial pivoting. Throws on (numerically) singular input.
    Matrix inverse() const;
    cplx determinant() const;

    CVec apply(const CVec &v) const;

    const std::vector<cplx> &data() const { return a_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline Matrix operator*(cplx s, const Matrix &m) { return m * s; }
inline Matrix operator*(double s, const Matrix &m) { return m * cplx(s); }

Matrix kron(const Matrix &a, const Matrix &b);
Matrix commutator(const Matrix &a, const Matrix &b);

/// Basis of the kernel by Gauss-Jordan with a pivot tolerance.
std::vector<CVec> null_space(const Matrix &m, double tol = 1e-10);

double distance(const Matrix &a, const Matrix &b);

// small CVec helpers used by the field-valued modules
CVec cvec_add(const CVec &a, const CVec &b);
CVec cvec_sub(const CVec &a, const CVec &b);
CVec cvec_scale(cplx s, const CVec &a);
double cvec_max_abs(const CVec &a);
cplx cvec_dot(const CVec &a, const CVec &b);  // plain bilinear sum, no conjugation

} // namespace gaugekit

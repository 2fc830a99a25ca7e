#pragma once

#include "gaugekit/blades.hpp"
#include "gaugekit/matrix.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace gaugekit {

/// Non-degenerate quadratic-form signature: r directions with q = +1,
/// then s directions with q = -1. Generators obey v^2 = -q(v).
struct Signature {
    int r = 0;
    int s = 0;

    int n() const { return r + s; }
    double q(int i) const { return i < r ? 1.0 : -1.0; }

    bool operator==(const Signature &o) const { return r == o.r && s == o.s; }
};

enum class ScalarKind { real, complex };

/// Element of Cl(r,s) as coefficients over the 2^n blade masks.
/// Scalars are complex throughout; `kind` records whether the element is
/// meant to live in the real subalgebra.
class CliffordElement {
  public:
    CliffordElement() = default;
    explicit CliffordElement(Signature sig, ScalarKind kind = ScalarKind::complex);

    static CliffordElement scalar(Signature sig, cplx c);
    static CliffordElement basis_vector(Signature sig, int i);  // e_{i+1}
    static CliffordElement blade(Signature sig, std::uint32_t mask, cplx c = 1.0);
    static CliffordElement from_vector(Signature sig, const CVec &v);

    Signature signature() const { return sig_; }
    ScalarKind kind() const { return kind_; }
    int dim() const { return 1 << sig_.n(); }

    cplx coeff(std::uint32_t mask) const { return c_[mask]; }
    void set(std::uint32_t mask, cplx v) { c_[mask] = v; }

    CliffordElement operator+(const CliffordElement &o) const;
    CliffordElement operator-(const CliffordElement &o) const;
    CliffordElement operator*(const CliffordElement &o) const;
    CliffordElement operator*(cplx s) const;
    CliffordElement operator-() const { return *this * cplx(-1.0); }

    /// Grade involution: fixes even blades, negates odd ones.
    CliffordElement alpha() const;
    /// Reversal: sign (-1)^{p(p-1)/2} per grade-p blade.
    CliffordElement reverse() const;
    CliffordElement grade_part(int p) const;
    std::pair<CliffordElement, CliffordElement> even_odd() const;

    /// Versor inverse via phi * reverse(phi) = scalar; throws when that
    /// product has a non-scalar residue above tol.
    CliffordElement inverse(double tol = 1e-10) const;

    CVec vector_part() const;          // grade-1 coefficients e_1..e_n
    double max_abs() const;
    double nonvector_residue() const;  // sup over grades != 1
    bool is_real(double tol = 1e-12) const;

  private:
    Signature sig_;
    ScalarKind kind_ = ScalarKind::complex;
    std::vector<cplx> c_;
};

inline CliffordElement operator*(cplx s, const CliffordElement &a) { return a * s; }

CliffordElement clifford_product(const CliffordElement &a, const CliffordElement &b);

/// omega = i^m e_1...e_n with omega^2 = 1; real exactly when
/// r + n(n-1)/2 is even. `orientation` = -1 negates it.
CliffordElement volume_element(Signature sig, int orientation = +1);
std::pair<CliffordElement, CliffordElement> idempotents(Signature sig, int orientation = +1);

/// Product of vectors with q(v) = +/-1; carries its factor list so group
/// structure (Pin/Spin membership, parity) stays explicit.
struct PinElement {
    Signature sig;
    std::vector<CVec> factors;
    CliffordElement value;

    bool even() const { return factors.size() % 2 == 0; }
};

PinElement pin_from_vectors(Signature sig, const std::vector<CVec> &factors,
                            double tol = 1e-9);

/// Twisted adjoint alpha(phi) w phi^-1; the result must land back in V.
CVec twisted_adjoint(const CliffordElement &phi, const CVec &w,
                     double *nonvector_residue = nullptr);
CVec reflect(Signature sig, const CVec &v, const CVec &w);  // w - 2 beta(w,v)/q(v) v

Matrix pin_to_orthogonal(const CliffordElement &phi);
bool double_cover_check(const CliffordElement &phi, double tol = 1e-10);

/// Concrete generator matrices gamma_1..gamma_n for Cl(r,s).
struct MatrixRep {
    Signature sig;
    std::vector<Matrix> gamma;
    std::string tag;  // "pauli" | "constructed" | "left-regular"

    Matrix act(const CliffordElement &a) const;  // algebra action of a full element
};

MatrixRep pauli_rep();                        // Cl(0,3), generators sigma^1..sigma^3
MatrixRep constructed_gamma_rep(Signature sig);  // Kronecker products of Paulis, n <= 8
MatrixRep left_regular_rep(Signature sig);       // 2^n-dimensional, always faithful

/// Max residual of gamma_i gamma_j + gamma_j gamma_i + 2 beta(e_i,e_j) I.
double rep_relations_residual(const MatrixRep &rep);

/// Group-average of a seed hermitian form over the finite group of
/// signed basis blades. Definite signatures only.
Matrix invariant_inner_product(const MatrixRep &rep, const Matrix &seed);

} // namespace gaugekit

#pragma once

#include "gaugekit/algebra.hpp"
#include "gaugekit/forms.hpp"

namespace gaugekit {

using SectionField = std::function<CVec(const Vec &)>;  // fiber-valued field
using GroupField = MatrixField;                         // group-valued field

enum class AlgebraTag { general, anti_hermitian, real_antisymmetric };

double algebra_tag_residual(AlgebraTag tag, const Matrix &value);

/// Lie-algebra-valued 1-form on a chart: n matrix components A_i(x).
struct GaugePotential {
    Chart chart;
    int fiber_dim = 0;
    std::vector<MatrixField> comp;
    AlgebraTag tag = AlgebraTag::general;

    Matrix at(const Vec &x, int i) const { return comp[i](x); }
    /// Contraction A(xi) = sum_i A_i xi^i.
    Matrix contract(const Vec &x, const Vec &xi) const;
    double tag_residual(const std::vector<Vec> &samples) const;
};

/// End(F)-valued connection 1-form; same layout as a gauge potential.
using LinearConnection = GaugePotential;

/// General (possibly nonlinear-in-the-fiber) connection: Gamma(x,f) is
/// the m x n matrix of the linear map T_x U -> T_f F.
struct GeneralConnection {
    Chart chart;
    int fiber_dim = 0;
    std::function<Matrix(const Vec &x, const Vec &f)> gamma;
};

GeneralConnection linear_as_general(const LinearConnection &lc);

/// Antisymmetric matrix-valued 2-form: components F_{ij} for i < j.
struct CurvatureForm {
    Chart chart;
    int fiber_dim = 0;
    std::map<std::pair<int, int>, MatrixField> comp;  // i < j

    Matrix at(const Vec &x, int i, int j) const;  // antisymmetric lookup
    double antisymmetry_residual(const std::vector<Vec> &samples) const;
};

/// Matrix-valued p-form over blade masks; the wedge multiplies values as
/// matrices (the Yang-Mills convention).
struct MatrixForm {
    Chart chart;
    int n = 0;
    int degree = 0;
    int fiber_dim = 0;
    std::map<std::uint32_t, MatrixField> comps;

    Matrix value(std::uint32_t mask, const Vec &x) const;
};

MatrixForm mwedge(const MatrixForm &a, const MatrixForm &b);
MatrixForm mext_d(const MatrixForm &a, double step = 0.0);
MatrixForm mstar(const MatrixForm &a, const MetricField &g, int orientation = +1);
MatrixForm potential_as_form(const GaugePotential &a);
MatrixForm curvature_as_form(const CurvatureForm &f);
double msup_norm(const MatrixForm &a, const std::vector<Vec> &points);

// --- transition laws and gauge transformations ---

/// Fiber map h(x)(f) with its inverse; both supplied by the caller.
struct FiberMap {
    std::function<Vec(const Vec &x, const Vec &f)> map;
    std::function<Vec(const Vec &x, const Vec &f)> inv;
};

/// Gamma_V(x,f) = d2 h(x, h^-1(f)) Gamma_U(x, h^-1(f)) - d1 h(x, h^-1(f))
GeneralConnection transition_general(const GeneralConnection &g, const FiberMap &h,
                                     double step = 0.0);

/// Ad_g A - dg g^-1, the shared functional form of the transition law
/// and a gauge transformation.
GaugePotential transition_potential(const GaugePotential &a, const GroupField &g,
                                    double step = 0.0);
GaugePotential gauge_transform(const GaugePotential &a, const GroupField &phi,
                               double step = 0.0);

/// delta A = [theta, A] - d theta
GaugePotential infinitesimal_gauge(const GaugePotential &a, const MatrixField &theta,
                                   double step = 0.0);

// --- curvature ---

/// F_ij = d_i A_j - d_j A_i + [A_i, A_j]
CurvatureForm curvature_principal(const GaugePotential &a, double step = 0.0);
CurvatureForm curvature_linear(const LinearConnection &g, double step = 0.0);

/// Full generality of R^a_ij(x,f) including the fiber derivatives.
Matrix curvature_general_at(const GeneralConnection &g, const Vec &x, const Vec &f,
                            int i, int j, double step = 0.0);

/// Max over samples of |F'(x) - phi F phi^-1| where F' is the curvature
/// of the transformed potential.
double curvature_covariance_residual(const GaugePotential &a, const GroupField &phi,
                                     const std::vector<Vec> &samples, double step = 0.0);

// --- covariant derivatives ---

SectionField covariant_derivative(const SectionField &s, const LinearConnection &conn,
                                  const RVecField &X, double step = 0.0);

/// Induced connection through a representation: X(s) + r(A(X)) s.
SectionField covariant_derivative_rep(const SectionField &s, const GaugePotential &a,
                                      const std::function<Matrix(const Matrix &)> &rep_deriv,
                                      const RVecField &X, double step = 0.0);

/// Vector-valued covariant exterior derivative in a trivialization:
/// d_Gamma a = d a + sum_l (+/-) Gamma_{j_l} a_{J minus j_l}.
PForm cov_ext_d(const PForm &a, const LinearConnection &conn, double step = 0.0);

/// Adjoint-valued version d_A w = d w + A ^ w - (-1)^p w ^ A.
MatrixForm cov_ext_d_ad(const MatrixForm &w, const GaugePotential &a, double step = 0.0);

/// Max norm of (d_A F)_{ijk} over the sample grid.
double bianchi_residual(const GaugePotential &a, const std::vector<Vec> &samples,
                        double step = 0.0);

/// Bracket of vector fields by nested central differences with the
/// wider step sqrt(h) on the outer derivative.
RVecField lie_bracket(const RVecField &X, const RVecField &Y, double step);

// --- Levi-Civita ---

/// Christoffel symbols of the metric in the coordinate frame, packaged
/// as a linear connection (comp[j] has entries (Gamma_j)^i_k =
/// Gamma^i_{kj}).
LinearConnection levi_civita(const MetricField &g, double step = 0.0);
double christoffel(const LinearConnection &lc, const Vec &x, int i, int j, int k);

/// General-frame symbols from frame fields e_i (covers n-beins): the
/// structure functions C^l_{jk} are measured by finite differences.
struct FrameChristoffel {
    std::vector<RVecField> frame;
    /// Gamma^i_{jk} in the frame at x: j the differentiated vector, k
    /// the direction, nabla_{e_k} e_j = Gamma^i_{jk} e_i.
    std::function<double(const Vec &x, int i, int j, int k)> symbol;
};

FrameChristoffel levi_civita_frame(const MetricField &g,
                                   const std::vector<RVecField> &frame, double step = 0.0);

/// T(X,Y) = Gamma(X)Y - Gamma(Y)X on the tangent bundle.
SectionField torsion(const LinearConnection &conn, const RVecField &X, const RVecField &Y);

/// X(g(Y,Z)) - g(nabla_X Y, Z) - g(Y, nabla_X Z) over the samples.
double metric_compatibility_residual(const MetricField &g, const LinearConnection &conn,
                                     const std::vector<Vec> &samples, double step = 0.0);

// --- Lagrangian densities and residuals ---

/// -k Tr(F ^ *F) as a scalar n-form.
PForm yang_mills_density(const CurvatureForm &f, const MetricField &g, double k,
                         int orientation = +1);

/// *d_A*F - j as a matrix-valued 1-form; j may be empty for the
/// source-free equations.
MatrixForm ym_residual(const GaugePotential &a, const MatrixForm &j, const MetricField &g,
                       int orientation = +1, double step = 0.0);

/// k Tr(A ^ dA + 2/3 A ^ A ^ A) on a 3-dimensional chart.
PForm chern_simons_density(const GaugePotential &a, double k, double step = 0.0);

/// First-order operator psi -> sum_i L_i (d_i + A_i) psi + M psi.
std::function<SectionField(const SectionField &)> minimally_couple(
    const std::vector<Matrix> &L, const Matrix &M, const GaugePotential &a,
    double step = 0.0);

} // namespace gaugekit

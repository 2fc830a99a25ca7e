#pragma once

#include "gaugekit/blades.hpp"
#include "gaugekit/matrix.hpp"

#include <cstdint>
#include <map>

namespace gaugekit {

/// Single coordinate chart: a box in R^n plus the finite-difference step
/// used for all derivatives of fields living on it.
struct Chart {
    int dim = 0;
    Vec lo, hi;
    double fd_step = 0.0;  // 0 -> 1e-5 * diameter

    double diameter() const;
    double step() const;
    bool contains(const Vec &x, double margin = 0.0) const;
};

Chart make_chart(Vec lo, Vec hi, double fd_step = 0.0);

/// Interior sample grid, per_axis points per axis, inset from the
/// boundary so central differences stay inside the box.
std::vector<Vec> sample_grid(const Chart &chart, int per_axis);

using ScalarField = std::function<cplx(const Vec &)>;
using CompField = std::function<CVec(const Vec &)>;  // vector-valued component
using RVecField = std::function<Vec(const Vec &)>;   // tangent direction field
using CVecField = std::function<CVec(const Vec &)>;
using MatrixField = std::function<Matrix(const Vec &)>;

/// Exterior p-form on a chart. Components are indexed by n-bit masks
/// (strictly increasing index tuples); each component evaluates to a
/// value_dim-vector, with value_dim = 1 for scalar forms. The wedge
/// follows the determinant convention, no 1/p! factor.
struct PForm {
    int n = 0;
    int degree = 0;
    int value_dim = 1;
    std::map<std::uint32_t, CompField> comps;

    CVec value(std::uint32_t mask, const Vec &x) const;
    cplx scalar_value(std::uint32_t mask, const Vec &x) const;
};

PForm make_scalar_form(int n, int degree, std::map<std::uint32_t, ScalarField> comps);
PForm make_vector_form(int n, int degree, int value_dim,
                       std::map<std::uint32_t, CompField> comps);
PForm zero_form_like(const PForm &a);

/// All masks with the given popcount, ascending.
std::vector<std::uint32_t> degree_masks(int n, int p);

PForm operator+(const PForm &a, const PForm &b);
PForm operator-(const PForm &a, const PForm &b);
PForm operator*(cplx s, const PForm &a);

/// Scalar-valued wedge product (bilinear, graded-commutative, associative).
PForm wedge(const PForm &a, const PForm &b);

/// Exterior derivative by central differences; `step` defaults to the
/// chart step. Nested applications should pass distinct steps so the
/// genuine O(h^2) truncation is observable rather than cancelled.
PForm ext_d(const PForm &a, const Chart &chart, double step = 0.0);

/// Pseudo-metric on a chart: a symmetric invertible matrix field of
/// constant signature (r,s).
struct MetricField {
    Chart chart;
    std::function<Matrix(const Vec &)> g;
    int r = 0, s = 0;

    int n() const { return r + s; }
};

MetricField euclidean_metric(const Chart &chart);
MetricField minkowski_metric(const Chart &chart);  // diag(1,-1,...,-1)
MetricField constant_metric(const Chart &chart, const Matrix &g, int r, int s);

CVecField raise_index(const PForm &one_form, const MetricField &m);
PForm lower_index(const CVecField &v, int n, const MetricField &m);

/// Orthonormal coframe at a point: rows of `c` are the coframe covectors
/// in dx components, e^a = sum_i c(a,i) dx^i, with <e^a,e^a> = eta[a];
/// sigma_h is the sign of det of the inverse change of basis.
struct Coframe {
    Matrix c;
    Matrix h;  // c^-1: dx^i = sum_a h(i,a) e^a
    std::vector<int> eta;
    int sigma_h = 1;
};

Coframe orthonormal_coframe(const Matrix &g_at_x, int r, int s);

/// Pointwise Hodge star of degree-p components; used by both PForm star
/// and the matrix-valued star in the connection machinery.
std::map<std::uint32_t, cplx> star_components_at(
    const std::map<std::uint32_t, cplx> &comps, int n, int p, const Matrix &g_at_x,
    int r, int s, int orientation);

PForm hodge_star(const PForm &a, const MetricField &m, int orientation = +1);

/// Volume n-form sqrt|det g| dx^1 ^ ... ^ dx^n (times orientation).
PForm volume_form(const MetricField &m, int orientation = +1);

/// delta = *d*, taken literally with no extra sign factor.
PForm codifferential(const PForm &a, const MetricField &m, int orientation = +1,
                     double step = 0.0);

/// d delta + delta d; exposed as an operator, not studied spectrally.
PForm hodge_laplacian(const PForm &a, const MetricField &m, int orientation = +1,
                      double step = 0.0);

std::pair<PForm, PForm> self_dual_split(const PForm &a, const MetricField &m,
                                        int orientation = +1);

/// Midpoint quadrature of the single top component over the chart box.
cplx integrate_nform(const PForm &a, const Chart &chart, int cells_per_axis = 64);

/// Max |component| over a list of sample points (all components, all
/// value slots). The workhorse residual norm.
double sup_norm(const PForm &a, const std::vector<Vec> &points);

// central differences of fields
cplx partial_scalar(const ScalarField &f, const Vec &x, int i, double h);
CVec partial_comp(const CompField &f, const Vec &x, int i, double h);

} // namespace gaugekit

#pragma once

#include "gaugekit/connections.hpp"

namespace gaugekit {

using TimeDependentMatrix = std::function<Matrix(double)>;

enum class ProductFactor { exponential, euler };  // exp(A dt) vs I + A dt

/// Ordered product of factor matrices over N subintervals, later times
/// leftmost; midpoint sampling gives second-order convergence.
Matrix time_ordered_exp(const TimeDependentMatrix &A, double a, double b, int N,
                        ProductFactor factor = ProductFactor::exponential);

/// Partial sum of the iterated integrals up to the given order, realized
/// as Picard iterates on a cumulative-trapezoid grid.
Matrix picard_series(const TimeDependentMatrix &A, double a, double b, int order,
                     int quad_points = 2048);

/// |W(c,a) - W(c,b) W(b,a)|
double composition_residual(const TimeDependentMatrix &A, double a, double b, double c,
                            int N);

/// Classical RK4 for the fundamental-solution ODE dW/dt = A(t) W.
Matrix rk4_fundamental(const TimeDependentMatrix &A, double a, double b, int steps);

/// Parameterized path in a chart, t in [0,1]; the velocity is either
/// supplied or measured by central differences.
struct Path {
    Chart chart;
    std::function<Vec(double)> x;
    std::function<Vec(double)> velocity;  // optional
    int N = 256;

    Vec point(double t) const { return x(t); }
    Vec vel(double t, double dt = 1e-6) const;
};

Path make_path(const Chart &chart, std::function<Vec(double)> x, int N = 256);
Path straight_segment(const Chart &chart, const Vec &from, const Vec &to, int N = 256);

/// P exp(-int_C Gamma) and its principal-bundle counterpart; both reduce
/// to the ordered product of the pulled-back integrand.
Matrix parallel_transport_linear(const LinearConnection &conn, const Path &path,
                                 ProductFactor factor = ProductFactor::exponential);
Matrix parallel_transport_principal(const GaugePotential &a, const Path &path,
                                    ProductFactor factor = ProductFactor::exponential);

/// Loop transport around the rectangle x0 + [0,s]xi + [0,s]eta, legs
/// composed later-on-the-left.
Matrix holonomy_rectangle(const GaugePotential &a, const Vec &x0, const Vec &xi,
                          const Vec &eta, double s, int leg_N = 256);

struct HolonomyFit {
    std::vector<double> scales;
    std::vector<double> defects;  // |log T(s) - s^2 F(eta,xi)|
    double observed_order = 0.0;
};

/// Defect of log(holonomy) against s^2 F(eta,xi) over a halving sweep.
HolonomyFit holonomy_curvature_fit(const GaugePotential &a, const Vec &x0, const Vec &xi,
                                   const Vec &eta, double s0, int levels = 3,
                                   int leg_N = 256);

} // namespace gaugekit

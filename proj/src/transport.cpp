#include "gaugekit/transport.hpp"

#include <cmath>

namespace gaugekit {

Matrix time_ordered_exp(const TimeDependentMatrix &A, double a, double b, int N,
                        ProductFactor factor) {
    if (N < 1) throw std::invalid_argument("time_ordered_exp: N >= 1 required");
    const double dt = (b - a) / N;
    const std::size_t dim = A(a).rows();
    Matrix W = Matrix::identity(dim);
    for (int i = 0; i < N; ++i) {
        const double tm = a + (i + 0.5) * dt;  // midpoint sampling
        const Matrix step = A(tm) * cplx(dt);
        if (factor == ProductFactor::exponential) {
            W = mat_exp(step) * W;
        } else {
            W = (Matrix::identity(dim) + step) * W;
        }
    }
    return W;
}

Matrix picard_series(const TimeDependentMatrix &A, double a, double b, int order,
                     int quad_points) {
    if (order < 0 || order > 8)
        throw std::invalid_argument("picard_series: 0 <= order <= 8 (nested quadrature cost)");
    const int N = quad_points;
    const double dt = (b - a) / N;
    const std::size_t dim = A(a).rows();

    std::vector<Matrix> As;
    As.reserve(N + 1);
    for (int i = 0; i <= N; ++i) As.push_back(A(a + i * dt));

    // W_k(t) = I + int_a^t A(s) W_{k-1}(s) ds, cumulative trapezoid;
    // W_order equals the series of iterated integrals through that order
    std::vector<Matrix> W(N + 1, Matrix::identity(dim));
    for (int k = 1; k <= order; ++k) {
        std::vector<Matrix> next(N + 1, Matrix::identity(dim));
        Matrix acc = Matrix::zero(dim, dim);
        std::vector<Matrix> integrand;
        integrand.reserve(N + 1);
        for (int i = 0; i <= N; ++i) integrand.push_back(As[i] * W[i]);
        for (int i = 1; i <= N; ++i) {
            acc += (integrand[i - 1] + integrand[i]) * cplx(0.5 * dt);
            next[i] += acc;
        }
        W = std::move(next);
    }
    return W[N];
}

double composition_residual(const TimeDependentMatrix &A, double a, double b, double c,
                            int N) {
    const double len = c - a;
    const int nab = std::max(1, static_cast<int>(std::lround(N * (b - a) / len)));
    const int nbc = std::max(1, static_cast<int>(std::lround(N * (c - b) / len)));
    const Matrix whole = time_ordered_exp(A, a, c, N);
    const Matrix split = time_ordered_exp(A, b, c, nbc) * time_ordered_exp(A, a, b, nab);
    return distance(whole, split);
}

Matrix rk4_fundamental(const TimeDependentMatrix &A, double a, double b, int steps) {
    const double dt = (b - a) / steps;
    const std::size_t dim = A(a).rows();
    Matrix W = Matrix::identity(dim);
    for (int i = 0; i < steps; ++i) {
        const double t = a + i * dt;
        const Matrix k1 = A(t) * W;
        const Matrix k2 = A(t + 0.5 * dt) * (W + k1 * cplx(0.5 * dt));
        const Matrix k3 = A(t + 0.5 * dt) * (W + k2 * cplx(0.5 * dt));
        const Matrix k4 = A(t + dt) * (W + k3 * cplx(dt));
        W += (k1 + k2 * cplx(2.0) + k3 * cplx(2.0) + k4) * cplx(dt / 6.0);
    }
    return W;
}

Vec Path::vel(double t, double dt) const {
    if (velocity) return velocity(t);
    const Vec p = x(std::min(1.0, t + dt));
    const Vec m = x(std::max(0.0, t - dt));
    const double span = std::min(1.0, t + dt) - std::max(0.0, t - dt);
    Vec v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = (p[i] - m[i]) / span;
    return v;
}

Path make_path(const Chart &chart, std::function<Vec(double)> x, int N) {
    Path p;
    p.chart = chart;
    p.x = std::move(x);
    p.N = N;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        if (!chart.contains(p.x(t)))
            throw std::invalid_argument("make_path: path leaves the chart box");
    return p;
}

Path straight_segment(const Chart &chart, const Vec &from, const Vec &to, int N) {
    Vec d(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) d[i] = to[i] - from[i];
    Path p = make_path(
        chart,
        [from, d](double t) {
            Vec x = from;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * d[i];
            return x;
        },
        N);
    p.velocity = [d](double) { return d; };
    return p;
}

namespace {

Matrix transport_product(const GaugePotential &a, const Path &path, ProductFactor factor) {
    auto integrand = [&a, &path](double t) {
        const Vec x = path.point(t);
        const Vec v = path.vel(t);
        return -a.contract(x, v);
    };
    return time_ordered_exp(integrand, 0.0, 1.0, path.N, factor);
}

} // namespace

Matrix parallel_transport_linear(const LinearConnection &conn, const Path &path,
                                 ProductFactor factor) {
    return transport_product(conn, path, factor);
}

Matrix parallel_transport_principal(const GaugePotential &a, const Path &path,
                                    ProductFactor factor) {
    return transport_product(a, path, factor);
}

Matrix holonomy_rectangle(const GaugePotential &a, const Vec &x0, const Vec &xi,
                          const Vec &eta, double s, int leg_N) {
    auto shift = [](const Vec &base, const Vec &dir, double c) {
        Vec out = base;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * dir[i];
        return out;
    };
    const Vec p0 = x0;
    const Vec p1 = shift(x0, xi, s);
    const Vec p2 = shift(p1, eta, s);
    const Vec p3 = shift(x0, eta, s);
    Matrix T = Matrix::identity(a.fiber_dim);
    for (const auto &[from, to] :
         {std::pair{p0, p1}, std::pair{p1, p2}, std::pair{p2, p3}, std::pair{p3, p0}}) {
        T = parallel_transport_principal(a, straight_segment(a.chart, from, to, leg_N)) * T;
    }
    return T;
}

HolonomyFit holonomy_curvature_fit(const GaugePotential &a, const Vec &x0, const Vec &xi,
                                   const Vec &eta, double s0, int levels, int leg_N) {
    const CurvatureForm F = curvature_principal(a);
    const int n = a.chart.dim;
    Matrix Feta_xi = Matrix::zero(a.fiber_dim, a.fiber_dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Feta_xi += F.at(x0, i, j) * cplx(eta[i] * xi[j]);

    HolonomyFit fit;
    double s = s0;
    for (int k = 0; k < levels; ++k) {
        const Matrix hol = holonomy_rectangle(a, x0, xi, eta, s, leg_N);
        const Matrix defect = mat_log_near_identity(hol) - Feta_xi * cplx(s * s);
        fit.scales.push_back(s);
        fit.defects.push_back(defect.max_abs());
        s *= 0.5;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < fit.defects.size(); ++i)
        acc += std::log2(fit.defects[i] / std::max(1e-300, fit.defects[i + 1]));
    fit.observed_order = acc / (fit.defects.size() - 1);
    return fit;
}

} // namespace gaugekit

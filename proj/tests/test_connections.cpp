#include "gaugekit/connections.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace gaugekit;
using gaugekit::testing::observed_order;
using gaugekit::testing::random_anti_hermitian;
using gaugekit::testing::random_matrix;

namespace {

std::function<double(const Vec &)> poly2(std::mt19937_64 &rng, int n) {
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    std::vector<double> c;
    for (int k = 0; k < 1 + n + n * n; ++k) c.push_back(u(rng));
    return [c, n](const Vec &x) {
        double acc = c[0];
        int idx = 1;
        for (int i = 0; i < n; ++i) acc += c[idx++] * x[i];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += c[idx++] * x[i] * x[j];
        return acc;
    };
}

GaugePotential random_potential(std::mt19937_64 &rng, const Chart &chart, int fiber_dim) {
    GaugePotential a;
    a.chart = chart;
    a.fiber_dim = fiber_dim;
    a.tag = AlgebraTag::anti_hermitian;
    for (int i = 0; i < chart.dim; ++i) {
        std::vector<std::pair<std::function<double(const Vec &)>, Matrix>> terms;
        for (int k = 0; k < 3; ++k)
            terms.push_back({poly2(rng, chart.dim), random_anti_hermitian(rng, fiber_dim, 0.7)});
        a.comp.push_back([terms, fiber_dim](const Vec &x) {
            Matrix acc = Matrix::zero(fiber_dim, fiber_dim);
            for (const auto &[p, m] : terms) acc += m * cplx(p(x));
            return acc;
        });
    }
    return a;
}

GroupField random_group_field(std::mt19937_64 &rng, int n, int fiber_dim) {
    std::vector<std::pair<std::function<double(const Vec &)>, Matrix>> terms;
    for (int k = 0; k < 2; ++k)
        terms.push_back({poly2(rng, n), random_anti_hermitian(rng, fiber_dim, 0.5)});
    return [terms, fiber_dim](const Vec &x) {
        Matrix acc = Matrix::zero(fiber_dim, fiber_dim);
        for (const auto &[p, m] : terms) acc += m * cplx(p(x));
        return mat_exp(acc);
    };
}

GaugePotential zero_potential(const Chart &chart, int fiber_dim) {
    GaugePotential a;
    a.chart = chart;
    a.fiber_dim = fiber_dim;
    for (int i = 0; i < chart.dim; ++i)
        a.comp.push_back([fiber_dim](const Vec &) { return Matrix::zero(fiber_dim, fiber_dim); });
    return a;
}

} // namespace

TEST_CASE("transition and gauge transformation of potentials") {
    std::mt19937_64 rng(41);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
    const auto grid = sample_grid(c2, 4);

    SUBCASE("identity group field leaves A unchanged") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const auto a2 = gauge_transform(a, [](const Vec &) { return Matrix::identity(2); });
        for (const Vec &x : grid)
            for (int i = 0; i < 2; ++i) CHECK(distance(a2.at(x, i), a.at(x, i)) < 1e-9);
    }
    SUBCASE("constant phi conjugates A") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const Matrix phi = mat_exp(random_anti_hermitian(rng, 2, 0.8));
        const auto a2 = gauge_transform(a, [phi](const Vec &) { return phi; });
        for (const Vec &x : grid)
            for (int i = 0; i < 2; ++i)
                CHECK(distance(a2.at(x, i), phi * a.at(x, i) * phi.inverse()) < 1e-8);
    }
    SUBCASE("U(1): phi = exp(i Lambda) sends A to A - i dLambda") {
        GaugePotential a = zero_potential(c2, 1);
        auto lambda = poly2(rng, 2);
        GroupField phi = [lambda](const Vec &x) {
            Matrix m(1, 1);
            m(0, 0) = std::exp(cplx(0.0, lambda(x)));
            return m;
        };
        const auto a2 = gauge_transform(a, phi, 1e-5);
        for (const Vec &x : grid)
            for (int i = 0; i < 2; ++i) {
                Vec xp = x, xm = x;
                xp[i] += 1e-4;
                xm[i] -= 1e-4;
                const double dl = (lambda(xp) - lambda(xm)) / 2e-4;
                CHECK(std::abs(a2.at(x, i)(0, 0) - cplx(0.0, -dl)) < 1e-6);
            }
    }
    SUBCASE("composition: transforming by phi then psi equals psi*phi") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const GroupField phi = random_group_field(rng, 2, 2);
        const GroupField psi = random_group_field(rng, 2, 2);
        const auto two_step = gauge_transform(gauge_transform(a, phi, 1e-5), psi, 1e-5);
        const GroupField prod = [phi, psi](const Vec &x) { return psi(x) * phi(x); };
        const auto one_step = gauge_transform(a, prod, 1e-5);
        for (const Vec &x : grid)
            for (int i = 0; i < 2; ++i)
                CHECK(distance(two_step.at(x, i), one_step.at(x, i)) < 1e-6);
    }
}

TEST_CASE("infinitesimal gauge transformation") {
    std::mt19937_64 rng(43);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
    const auto grid = sample_grid(c2, 3);

    SUBCASE("constant theta on A = 0 gives zero variation") {
        const GaugePotential a = zero_potential(c2, 2);
        const Matrix th = random_anti_hermitian(rng, 2, 0.5);
        const auto da = infinitesimal_gauge(a, [th](const Vec &) { return th; });
        for (const Vec &x : grid)
            for (int i = 0; i < 2; ++i) CHECK(da.at(x, i).max_abs() < 1e-12);
    }
    SUBCASE("abelian algebra leaves only -d theta") {
        GaugePotential a = zero_potential(c2, 1);
        auto p = poly2(rng, 2);
        MatrixField theta = [p](const Vec &x) {
            Matrix m(1, 1);
            m(0, 0) = cplx(0.0, p(x));
            return m;
        };
        const auto da = infinitesimal_gauge(a, theta, 1e-5);
        for (const Vec &x : grid)
            for (int i = 0; i < 2; ++i) {
                Vec xp = x, xm = x;
                xp[i] += 1e-4;
                xm[i] -= 1e-4;
                const double dp = (p(xp) - p(xm)) / 2e-4;
                CHECK(std::abs(da.at(x, i)(0, 0) - cplx(0.0, -dp)) < 1e-6);
            }
    }
    SUBCASE("matches the finite transformation to first order, defect halves") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const Matrix th = random_anti_hermitian(rng, 2, 0.6);
        const MatrixField theta = [th](const Vec &) { return th; };
        const auto da = infinitesimal_gauge(a, theta, 1e-5);
        const Vec x{0.1, -0.2};
        std::vector<double> defects;
        for (double t : {1e-3, 5e-4}) {
            const GroupField phi = [th, t](const Vec &) { return mat_exp(th, t); };
            const auto at = gauge_transform(a, phi, 1e-5);
            double worst = 0.0;
            for (int i = 0; i < 2; ++i) {
                const Matrix fd = (at.at(x, i) - a.at(x, i)) * cplx(1.0 / t);
                worst = std::max(worst, distance(fd, da.at(x, i)));
            }
            defects.push_back(worst);
        }
        CHECK(defects[1] < 0.65 * defects[0]);
    }
}

TEST_CASE("curvature") {
    std::mt19937_64 rng(47);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
    const auto grid = sample_grid(c2, 3);

    SUBCASE("A = 0 has zero curvature") {
        const auto F = curvature_principal(zero_potential(c2, 2));
        for (const Vec &x : grid) CHECK(F.at(x, 0, 1).max_abs() < 1e-12);
    }
    SUBCASE("abelian A = x1 dx2 has F_12 = 1") {
        GaugePotential a = zero_potential(c2, 1);
        a.comp[1] = [](const Vec &x) {
            Matrix m(1, 1);
            m(0, 0) = x[0];
            return m;
        };
        const auto F = curvature_principal(a);
        for (const Vec &x : grid) CHECK(std::abs(F.at(x, 0, 1)(0, 0) - 1.0) < 1e-9);
    }
    SUBCASE("constant non-commuting components give F_12 = [A_1, A_2]") {
        const Matrix L1 = random_anti_hermitian(rng, 2, 0.8);
        const Matrix L2 = random_anti_hermitian(rng, 2, 0.8);
        GaugePotential a = zero_potential(c2, 2);
        a.comp[0] = [L1](const Vec &) { return L1; };
        a.comp[1] = [L2](const Vec &) { return L2; };
        const auto F = curvature_principal(a);
        for (const Vec &x : grid)
            CHECK(distance(F.at(x, 0, 1), commutator(L1, L2)) < 1e-10);
    }
    SUBCASE("antisymmetric lookup, zero diagonal") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const auto F = curvature_principal(a);
        for (const Vec &x : grid) CHECK(distance(F.at(x, 1, 0), -F.at(x, 0, 1)) == 0.0);
        CHECK(F.antisymmetry_residual(grid) == 0.0);
    }
    SUBCASE("general-connection curvature reduces to the linear one") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const GeneralConnection g = linear_as_general(a);
        const auto F = curvature_principal(a, 1e-4);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int k = 0; k < 5; ++k) {
            const Vec x{0.3 * u(rng), 0.3 * u(rng)};
            const Vec f{u(rng), u(rng)};
            const Matrix r = curvature_general_at(g, x, f, 0, 1, 1e-4);
            const CVec fc{f[0], f[1]};
            const CVec expect = F.at(x, 0, 1).apply(fc);
            for (int i = 0; i < 2; ++i) CHECK(std::abs(r(i, 0) - expect[i]) < 1e-6);
        }
    }
    SUBCASE("x-constant fiber-independent general connection is flat") {
        GeneralConnection g;
        g.chart = c2;
        g.fiber_dim = 2;
        const Matrix c = random_matrix(rng, 2, 0.5);
        g.gamma = [c](const Vec &, const Vec &) { return c; };
        const Matrix r = curvature_general_at(g, {0.1, 0.1}, {0.4, -0.2}, 0, 1);
        CHECK(r.max_abs() < 1e-9);
    }
    SUBCASE("gauge covariance of the curvature") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const GroupField phi = random_group_field(rng, 2, 2);
        CHECK(curvature_covariance_residual(a, phi, grid, 1e-4) < 1e-5);
        const Matrix cphi = mat_exp(random_anti_hermitian(rng, 2, 0.7));
        CHECK(curvature_covariance_residual(
                  a, [cphi](const Vec &) { return cphi; }, grid, 1e-4) < 1e-8);
    }
}

TEST_CASE("transition of general connections") {
    std::mt19937_64 rng(53);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});

    SUBCASE("identity fiber map preserves the connection") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const GeneralConnection g = linear_as_general(a);
        FiberMap id;
        id.map = [](const Vec &, const Vec &f) { return f; };
        id.inv = id.map;
        const auto g2 = transition_general(g, id, 1e-5);
        const Vec x{0.1, 0.2}, f{0.3, -0.4};
        CHECK(distance(g2.gamma(x, f), g.gamma(x, f)) < 1e-9);
    }
    SUBCASE("linear fiber map reproduces the vector-bundle law") {
        const GaugePotential a = random_potential(rng, c2, 2);
        const GeneralConnection g = linear_as_general(a);
        auto m11 = poly2(rng, 2), m12 = poly2(rng, 2), m21 = poly2(rng, 2),
             m22 = poly2(rng, 2);
        auto M = [=](const Vec &x) {
            Matrix m(2, 2);
            m(0, 0) = 2.0 + 0.3 * m11(x);
            m(0, 1) = 0.3 * m12(x);
            m(1, 0) = 0.3 * m21(x);
            m(1, 1) = 2.0 + 0.3 * m22(x);
            return m;
        };
        FiberMap h;
        h.map = [M](const Vec &x, const Vec &f) {
            const Matrix m = M(x);
            Vec out(2, 0.0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out[i] += m(i, j).real() * f[j];
            return out;
        };
        h.inv = [M](const Vec &x, const Vec &f) {
            const Matrix m = M(x).inverse();
            Vec out(2, 0.0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out[i] += m(i, j).real() * f[j];
            return out;
        };
        const auto gv = transition_general(g, h, 1e-5);
        const GaugePotential av = transition_potential(
            a, [M](const Vec &x) { return M(x); }, 1e-5);
        const GeneralConnection gv_expect = linear_as_general(av);
        const Vec x{0.15, -0.1}, f{0.5, 0.2};
        CHECK(distance(gv.gamma(x, f), gv_expect.gamma(x, f)) < 1e-5);
    }
    SUBCASE("round trip through a nonlinear fiber map") {
        const GaugePotential a = random_potential(rng, c2, 1);
        const GeneralConnection g = linear_as_general(a);
        FiberMap h;
        h.map = [](const Vec &x, const Vec &f) {
            return Vec{f[0] + 0.2 * x[0] * f[0] * f[0]};
        };
        h.inv = [](const Vec &x, const Vec &f) {
            double y = f[0];
            for (int it = 0; it < 80; ++it) y = f[0] - 0.2 * x[0] * y * y;
            return Vec{y};
        };
        const FiberMap hinv{h.inv, h.map};
        const auto round = transition_general(transition_general(g, h, 1e-5), hinv, 1e-5);
        const Vec x{0.2, -0.3}, f{0.4};
        CHECK(distance(round.gamma(x, f), g.gamma(x, f)) < 1e-6);
    }
}

TEST_CASE("covariant derivatives") {
    std::mt19937_64 rng(59);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
    const auto grid = sample_grid(c2, 3);

    SUBCASE("zero connection gives the directional derivative") {
        auto p = poly2(rng, 2);
        SectionField s = [p](const Vec &x) { return CVec{cplx(p(x)), cplx(2.0 * p(x))}; };
        RVecField X = [](const Vec &) { return Vec{1.0, 0.5}; };
        const auto ds = covariant_derivative(s, zero_potential(c2, 2), X, 1e-5);
        const Vec x{0.1, 0.1};
        Vec xp = x, xm = x;
        xp[0] += 1e-4; xp[1] += 0.5e-4;
        xm[0] -= 1e-4; xm[1] -= 0.5e-4;
        const double expect = (p(xp) - p(xm)) / 2e-4;
        CHECK(std::abs(ds(x)[0] - expect) < 1e-6);
    }
    SUBCASE("constant section feels only Gamma(X)") {
        GaugePotential conn = zero_potential(c2, 2);
        const Matrix M = random_matrix(rng, 2, 0.7);
        conn.comp[0] = [M](const Vec &) { return M; };
        SectionField s = [](const Vec &) { return CVec{1.0, -0.5}; };
        RVecField X = [](const Vec &) { return Vec{1.0, 0.0}; };
        const auto ds = covariant_derivative(s, conn, X);
        const CVec expect = M.apply(CVec{1.0, -0.5});
        const CVec got = ds({0.0, 0.0});
        for (int i = 0; i < 2; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-10);
    }
    SUBCASE("Leibniz rule over scalar functions") {
        const GaugePotential conn = random_potential(rng, c2, 2);
        auto f = poly2(rng, 2);
        auto s0 = poly2(rng, 2), s1 = poly2(rng, 2);
        SectionField s = [s0, s1](const Vec &x) { return CVec{cplx(s0(x)), cplx(s1(x))}; };
        SectionField fs = [f, s](const Vec &x) { return cvec_scale(f(x), s(x)); };
        RVecField X = [](const Vec &x) { return Vec{0.7 + x[1], 0.2 - x[0]}; };
        const auto d_fs = covariant_derivative(fs, conn, X, 1e-4);
        const auto d_s = covariant_derivative(s, conn, X, 1e-4);
        const Vec x{0.1, -0.15};
        const Vec xi = X(x);
        Vec xp = x, xm = x;
        for (int i = 0; i < 2; ++i) { xp[i] += 1e-4 * xi[i]; xm[i] -= 1e-4 * xi[i]; }
        const double Xf = (f(xp) - f(xm)) / 2e-4;
        const CVec expect = cvec_add(cvec_scale(Xf, s(x)), cvec_scale(f(x), d_s(x)));
        const CVec got = d_fs(x);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-5);
    }
    SUBCASE("commutator of covariant derivatives reproduces the curvature") {
        const GaugePotential conn = random_potential(rng, c2, 2);
        auto s0 = poly2(rng, 2), s1 = poly2(rng, 2);
        SectionField s = [s0, s1](const Vec &x) { return CVec{cplx(s0(x)), cplx(s1(x))}; };
        RVecField X = [](const Vec &) { return Vec{1.0, 0.0}; };
        RVecField Y = [](const Vec &) { return Vec{0.0, 1.0}; };
        const double h = 1e-4;
        const auto dX = covariant_derivative(s, conn, X, h);
        const auto dY = covariant_derivative(s, conn, Y, h);
        const auto dXY = covariant_derivative(dY, conn, X, h);
        const auto dYX = covariant_derivative(dX, conn, Y, h);
        const auto F = curvature_principal(conn, h);
        double worst = 0.0;
        for (const Vec &x : grid) {
            const CVec lhs = cvec_sub(dXY(x), dYX(x));
            const CVec rhs = F.at(x, 0, 1).apply(s(x));
            worst = std::max(worst, cvec_max_abs(cvec_sub(lhs, rhs)));
        }
        CHECK(worst < 1e-4);
    }
    SUBCASE("full commutator identity with varying vector fields") {
        const GaugePotential conn = random_potential(rng, c2, 2);
        auto s0 = poly2(rng, 2), s1 = poly2(rng, 2);
        SectionField s = [s0, s1](const Vec &x) { return CVec{cplx(s0(x)), cplx(s1(x))}; };
        RVecField X = [](const Vec &x) { return Vec{1.0 + 0.4 * x[1], 0.3 * x[0]}; };
        RVecField Y = [](const Vec &x) { return Vec{0.2 * x[1], 0.8 - 0.3 * x[0]}; };
        const double h = 1e-4;
        const RVecField XY = lie_bracket(X, Y, h);
        const auto dX = covariant_derivative(s, conn, X, h);
        const auto dY = covariant_derivative(s, conn, Y, h);
        const auto dXY = covariant_derivative(dY, conn, X, h);
        const auto dYX = covariant_derivative(dX, conn, Y, h);
        const auto dBr = covariant_derivative(s, conn, XY, h);
        const auto F = curvature_principal(conn, h);
        double worst = 0.0;
        for (const Vec &x : grid) {
            const Vec xv = X(x), yv = Y(x);
            const CVec lhs = cvec_sub(cvec_sub(dXY(x), dYX(x)), dBr(x));
            Matrix fxy = Matrix::zero(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) fxy += F.at(x, i, j) * cplx(xv[i] * yv[j]);
            const CVec rhs = fxy.apply(s(x));
            worst = std::max(worst, cvec_max_abs(cvec_sub(lhs, rhs)));
        }
        CHECK(worst < 1e-3);  // bracket uses the wider sqrt(h) step
    }
    SUBCASE("rep-induced derivative uses the algebra representation") {
        const GaugePotential a = random_potential(rng, c2, 2);
        auto rder = [](const Matrix &L) {
            return kron(L, Matrix::identity(2)) + kron(Matrix::identity(2), L);
        };
        SectionField s = [](const Vec &) { return CVec{1.0, 0.0, 0.0, 1.0}; };
        RVecField X = [](const Vec &) { return Vec{1.0, 0.0}; };
        const auto ds = covariant_derivative_rep(s, a, rder, X);
        const Vec x{0.05, 0.05};
        const CVec expect = rder(a.at(x, 0)).apply(CVec{1.0, 0.0, 0.0, 1.0});
        const CVec got = ds(x);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-9);
    }
}

TEST_CASE("covariant exterior derivative and Bianchi") {
    std::mt19937_64 rng(61);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
    const Chart c3 = make_chart({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5});

    SUBCASE("zero connection reduces to the plain exterior derivative") {
        auto f = poly2(rng, 2);
        const PForm a =
            make_scalar_form(2, 1, {{0b01, [f](const Vec &x) { return cplx(f(x)); }}});
        const PForm lhs = cov_ext_d(a, zero_potential(c2, 1), 1e-5);
        const PForm rhs = ext_d(a, c2, 1e-5);
        CHECK(sup_norm(lhs - rhs, sample_grid(c2, 3)) < 1e-12);
    }
    SUBCASE("d_gamma^2 on a 0-form is curvature action") {
        const GaugePotential conn = random_potential(rng, c2, 2);
        auto s0 = poly2(rng, 2), s1 = poly2(rng, 2);
        const PForm s = make_vector_form(
            2, 0, 2,
            {{0u, [s0, s1](const Vec &x) { return CVec{cplx(s0(x)), cplx(s1(x))}; }}});
        const double h = 1e-4;
        const PForm dds = cov_ext_d(cov_ext_d(s, conn, h), conn, 2.0 * h);
        const auto F = curvature_principal(conn, h);
        double worst = 0.0;
        for (const Vec &x : sample_grid(c2, 3)) {
            const CVec lhs = dds.value(0b11, x);
            const CVec rhs = F.at(x, 0, 1).apply(s.value(0u, x));
            worst = std::max(worst, cvec_max_abs(cvec_sub(lhs, rhs)));
        }
        CHECK(worst < 1e-4);
    }
    SUBCASE("Bianchi residual is small and shrinks at order >= 2") {
        const GaugePotential a = random_potential(rng, c3, 2);
        const auto grid = sample_grid(c3, 3);
        CHECK(bianchi_residual(a, grid, 1e-4) < 1e-4);
        std::vector<double> defects;
        for (double h : {1e-3, 5e-4, 2.5e-4}) defects.push_back(bianchi_residual(a, grid, h));
        CHECK(observed_order(defects) >= 1.9);
    }
}

TEST_CASE("levi-civita") {
    std::mt19937_64 rng(67);
    const double pi = std::numbers::pi;

    SUBCASE("flat identity metric has vanishing symbols") {
        const Chart c2 = make_chart({-1.0, -1.0}, {1.0, 1.0});
        const auto conn = levi_civita(euclidean_metric(c2));
        for (const Vec &x : sample_grid(c2, 3))
            for (int j = 0; j < 2; ++j) CHECK(conn.comp[j](x).max_abs() < 1e-10);
    }
    SUBCASE("sphere chart matches the hand-derived symbols") {
        const Chart sph = make_chart({0.2 * pi, -2.0}, {0.8 * pi, 2.0});
        MetricField g;
        g.chart = sph;
        g.r = 2;
        g.s = 0;
        g.g = [](const Vec &x) {
            Matrix m(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::sin(x[0]) * std::sin(x[0]);
            return m;
        };
        const auto conn = levi_civita(g);
        for (const Vec &x : sample_grid(sph, 4)) {
            const double th = x[0];
            CHECK(std::abs(christoffel(conn, x, 0, 1, 1) + std::sin(th) * std::cos(th)) <
                  1e-7);
            CHECK(std::abs(christoffel(conn, x, 1, 0, 1) - std::cos(th) / std::sin(th)) <
                  1e-7);
            CHECK(std::abs(christoffel(conn, x, 1, 1, 0) - std::cos(th) / std::sin(th)) <
                  1e-7);
        }
    }
    SUBCASE("random polynomial metric: compatibility and torsion") {
        const Chart c2 = make_chart({-0.4, -0.4}, {0.4, 0.4});
        auto p1 = poly2(rng, 2), p2 = poly2(rng, 2), p3 = poly2(rng, 2);
        MetricField g;
        g.chart = c2;
        g.r = 2;
        g.s = 0;
        g.g = [p1, p2, p3](const Vec &x) {
            Matrix m(2, 2);
            m(0, 0) = 2.0 + 0.3 * p1(x);
            m(1, 1) = 2.0 + 0.3 * p2(x);
            m(0, 1) = m(1, 0) = 0.2 * p3(x);
            return m;
        };
        const auto conn = levi_civita(g);
        const auto grid = sample_grid(c2, 4);
        CHECK(metric_compatibility_residual(g, conn, grid, 1e-4) < 1e-6);
        RVecField X = [](const Vec &x) { return Vec{1.0 + x[1], 0.3}; };
        RVecField Y = [](const Vec &x) { return Vec{-0.2, 0.8 + x[0]}; };
        const auto T = torsion(conn, X, Y);
        const auto T2 = torsion(conn, Y, X);
        for (const Vec &x : grid) {
            CHECK(cvec_max_abs(T(x)) < 1e-10);
            CHECK(cvec_max_abs(cvec_add(T(x), T2(x))) < 1e-10);  // antisymmetry
        }
    }
    SUBCASE("explicitly asymmetric symbols produce a unit torsion component") {
        const Chart c2 = make_chart({-1.0, -1.0}, {1.0, 1.0});
        GaugePotential conn = zero_potential(c2, 2);
        conn.comp[1] = [](const Vec &) {
            Matrix m(2, 2);
            m(0, 0) = 1.0;
            return m;
        };
        RVecField X = [](const Vec &) { return Vec{1.0, 0.0}; };
        RVecField Y = [](const Vec &) { return Vec{0.0, 1.0}; };
        // T(X,Y) = Gamma(X)Y - Gamma(Y)X = -comp[1] X
        const auto T = torsion(conn, X, Y);
        CHECK(std::abs(T({0.0, 0.0})[0] + 1.0) < 1e-14);
    }
    SUBCASE("m != n is rejected") {
        const Chart c2 = make_chart({-1.0, -1.0}, {1.0, 1.0});
        const auto conn3 = zero_potential(c2, 3);
        RVecField X = [](const Vec &) { return Vec{1.0, 0.0}; };
        CHECK_THROWS(torsion(conn3, X, X));
    }
    SUBCASE("n-bein symbols on the sphere match the frame geometry") {
        const Chart sph = make_chart({0.2 * pi, -2.0}, {0.8 * pi, 2.0});
        MetricField g;
        g.chart = sph;
        g.r = 2;
        g.s = 0;
        g.g = [](const Vec &x) {
            Matrix m(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::sin(x[0]) * std::sin(x[0]);
            return m;
        };
        const std::vector<RVecField> frame = {
            [](const Vec &) { return Vec{1.0, 0.0}; },
            [](const Vec &x) { return Vec{0.0, 1.0 / std::sin(x[0])}; }};
        const auto fc = levi_civita_frame(g, frame, 1e-5);
        for (const Vec &x : sample_grid(sph, 3)) {
            const double cot = std::cos(x[0]) / std::sin(x[0]);
            CHECK(std::abs(fc.symbol(x, 0, 1, 1) + cot) < 1e-5);  // nabla_phi e_phi
            CHECK(std::abs(fc.symbol(x, 1, 0, 1) - cot) < 1e-5);  // nabla_phi e_theta
            CHECK(std::abs(fc.symbol(x, 1, 1, 0)) < 1e-5);        // meridians parallel
            CHECK(std::abs(fc.symbol(x, 0, 0, 0)) < 1e-5);
            // orthonormal frame: lowered symbols antisymmetric in (i,j)
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        CHECK(std::abs(fc.symbol(x, i, j, k) + fc.symbol(x, j, i, k)) <
                              1e-5);
        }
    }
}

TEST_CASE("yang-mills and chern-simons densities") {
    std::mt19937_64 rng(71);

    SUBCASE("F = 0 gives zero density and residual -j") {
        const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
        const auto a = zero_potential(c2, 2);
        const MetricField m = euclidean_metric(c2);
        const auto F = curvature_principal(a);
        const PForm dens = yang_mills_density(F, m, 1.0);
        CHECK(sup_norm(dens, sample_grid(c2, 3)) < 1e-12);

        MatrixForm j;
        j.chart = c2;
        j.n = 2;
        j.degree = 1;
        j.fiber_dim = 2;
        const Matrix j0 = random_matrix(rng, 2, 1.0);
        j.comps[0b01] = [j0](const Vec &) { return j0; };
        const MatrixForm r = ym_residual(a, j, m);
        CHECK(distance(r.value(0b01, {0.0, 0.0}), -j0) < 1e-10);
    }
    SUBCASE("density is invariant under constant conjugation") {
        const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
        const MetricField m = euclidean_metric(c2);
        const GaugePotential a = random_potential(rng, c2, 2);
        const Matrix phi = mat_exp(random_anti_hermitian(rng, 2, 0.8));
        const auto a2 = gauge_transform(a, [phi](const Vec &) { return phi; }, 1e-5);
        const PForm d1 = yang_mills_density(curvature_principal(a, 1e-5), m, 0.5);
        const PForm d2 = yang_mills_density(curvature_principal(a2, 1e-5), m, 0.5);
        CHECK(sup_norm(d1 - d2, sample_grid(c2, 3)) < 1e-8);
    }
    SUBCASE("self-dual curvature satisfies the source-free equations") {
        const Chart c4 = make_chart(Vec(4, -0.5), Vec(4, 0.5));
        const MetricField m = euclidean_metric(c4);
        // A = -x2 dx1 + x1 dx2 - x4 dx3 + x3 dx4: F = 2(dx1^dx2 + dx3^dx4)
        GaugePotential a = zero_potential(c4, 1);
        auto set = [&](int i, auto f) {
            a.comp[i] = [f](const Vec &x) {
                Matrix mm(1, 1);
                mm(0, 0) = f(x);
                return mm;
            };
        };
        set(0, [](const Vec &x) { return -x[1]; });
        set(1, [](const Vec &x) { return x[0]; });
        set(2, [](const Vec &x) { return -x[3]; });
        set(3, [](const Vec &x) { return x[2]; });
        MatrixForm no_j;
        const MatrixForm r = ym_residual(a, no_j, m, +1, 1e-4);
        CHECK(msup_norm(r, sample_grid(c4, 2)) < 1e-8);
    }
    SUBCASE("plane-wave abelian potential satisfies the vacuum equations") {
        const Chart c4 = make_chart(Vec(4, -0.5), Vec(4, 0.5));
        const MetricField mink = minkowski_metric(c4);
        GaugePotential a = zero_potential(c4, 1);
        a.comp[1] = [](const Vec &x) {
            Matrix m(1, 1);
            m(0, 0) = std::cos(x[0] - x[3]);
            return m;
        };
        MatrixForm no_j;
        const MatrixForm r = ym_residual(a, no_j, mink, +1, 1e-4);
        CHECK(msup_norm(r, sample_grid(c4, 2)) < 1e-5);
    }
    SUBCASE("chern-simons density against a hand expansion") {
        const Chart c3 = make_chart(Vec(3, -0.5), Vec(3, 0.5));
        // A = x2 dx1 + x3 dx2:
        // dA = dx2^dx1 + dx3^dx2, A ^ dA = x2 dx1^dx3^dx2 = -x2 dx1^dx2^dx3
        GaugePotential a = zero_potential(c3, 1);
        a.comp[0] = [](const Vec &x) {
            Matrix m(1, 1);
            m(0, 0) = x[1];
            return m;
        };
        a.comp[1] = [](const Vec &x) {
            Matrix m(1, 1);
            m(0, 0) = x[2];
            return m;
        };
        const PForm cs = chern_simons_density(a, 2.0, 1e-5);
        for (const Vec &x : sample_grid(c3, 3))
            CHECK(std::abs(cs.scalar_value(0b111, x) - cplx(-2.0 * x[1])) < 1e-8);
        const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
        CHECK_THROWS(chern_simons_density(zero_potential(c2, 1), 1.0));
    }
}

TEST_CASE("minimal coupling") {
    std::mt19937_64 rng(73);
    const Chart c2 = make_chart({-0.5, -0.5}, {0.5, 0.5});
    const auto grid = sample_grid(c2, 3);

    Matrix L1(2, 2), L2(2, 2), M(2, 2);
    L1(0, 1) = 1.0;
    L1(1, 0) = 1.0;
    L2(0, 1) = cplx(0.0, -1.0);
    L2(1, 0) = cplx(0.0, 1.0);
    M(0, 0) = 0.4;
    M(1, 1) = 0.4;

    auto p = poly2(rng, 2), q = poly2(rng, 2);
    SectionField psi = [p, q](const Vec &x) { return CVec{cplx(p(x)), cplx(q(x))}; };

    SUBCASE("A = 0 reduces to the uncoupled operator") {
        const auto op = minimally_couple({L1, L2}, M, zero_potential(c2, 2), 1e-5);
        const auto out = op(psi);
        const Vec x{0.1, -0.1};
        CVec expect = M.apply(psi(x));
        for (int i = 0; i < 2; ++i) {
            Vec xp = x, xm = x;
            xp[i] += 1e-5;
            xm[i] -= 1e-5;
            const CVec d = cvec_scale(1.0 / 2e-5, cvec_sub(psi(xp), psi(xm)));
            expect = cvec_add(expect, (i == 0 ? L1 : L2).apply(d));
        }
        const CVec got = out(x);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-8);
    }
    SUBCASE("covariance under a local U(1) phase") {
        GaugePotential a = zero_potential(c2, 2);
        auto a0 = poly2(rng, 2), a1 = poly2(rng, 2);
        a.comp[0] = [a0](const Vec &x) { return Matrix::identity(2) * cplx(0.0, a0(x)); };
        a.comp[1] = [a1](const Vec &x) { return Matrix::identity(2) * cplx(0.0, a1(x)); };
        auto lam = poly2(rng, 2);
        GroupField Lambda = [lam](const Vec &x) {
            return Matrix::identity(2) * std::exp(cplx(0.0, lam(x)));
        };
        const auto a_t = gauge_transform(a, Lambda, 1e-5);
        const auto op = minimally_couple({L1, L2}, M, a, 1e-5);
        const auto op_t = minimally_couple({L1, L2}, M, a_t, 1e-5);
        SectionField psi_t = [Lambda, psi](const Vec &x) { return Lambda(x).apply(psi(x)); };
        const auto lhs = op_t(psi_t);
        const auto rhs_base = op(psi);
        double worst = 0.0;
        for (const Vec &x : grid) {
            const CVec rhs = Lambda(x).apply(rhs_base(x));
            worst = std::max(worst, cvec_max_abs(cvec_sub(lhs(x), rhs)));
        }
        CHECK(worst < 1e-5);
    }
    SUBCASE("constant Lambda commuting with L_i and M is an exact symmetry") {
        const auto op = minimally_couple({L1, L2}, M, zero_potential(c2, 2), 1e-5);
        const Matrix Lam = Matrix::identity(2) * std::exp(cplx(0.0, 0.8));
        SectionField psi_t = [Lam, psi](const Vec &x) { return Lam.apply(psi(x)); };
        const auto lhs = op(psi_t);
        const auto rhs_base = op(psi);
        const Vec x{0.2, 0.1};
        const CVec rhs = Lam.apply(rhs_base(x));
        for (int i = 0; i < 2; ++i) CHECK(std::abs(lhs(x)[i] - rhs[i]) < 1e-10);
    }
    SUBCASE("size mismatch is rejected") {
        CHECK_THROWS(minimally_couple({L1}, M, zero_potential(c2, 2)));
        CHECK_THROWS(minimally_couple({L1, L2}, Matrix::identity(3), zero_potential(c2, 2)));
    }
}

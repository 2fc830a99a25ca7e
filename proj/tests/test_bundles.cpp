#include "gaugekit/bundles.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace gaugekit;

namespace {

Cocycle identity_cocycle() {
    Cocycle c = double_cover_cocycle();
    c.tfin = [](int, int, const Vec &) { return 0; };
    return c;
}

std::vector<Vec> overlap_samples(const Cocycle &c, int a, int b) {
    std::vector<Vec> pts;
    for (const auto &comp : c.cover.components(a, b))
        for (const auto &x : comp.samples) pts.push_back(x);
    return pts;
}

} // namespace

TEST_CASE("cocycle validation") {
    SUBCASE("identity transitions are a valid, trivial cocycle") {
        const auto rep = validate_cocycle(identity_cocycle());
        CHECK(rep.max_residual() == 0.0);
        CHECK(rep.checked_points > 0);
    }
    SUBCASE("the Z2 double cover over the circle validates") {
        CHECK(validate_cocycle(double_cover_cocycle()).max_residual() == 0.0);
    }
    SUBCASE("the Moebius gluing data validates") {
        CHECK(validate_cocycle(moebius_cocycle()).max_residual() == 0.0);
    }
    SUBCASE("jacobian cartesian<->polar cocycle residual <= 1e-6") {
        const auto rep = validate_cocycle(jacobian_polar_cocycle());
        CHECK(rep.max_residual() <= 1e-6);
        CHECK(rep.checked_points == 24);
    }
    SUBCASE("a broken triple product is caught") {
        Cocycle c;
        c.kind = GroupKind::finite;
        c.group = cyclic_group(2);
        c.cover.charts = {"A", "B", "C"};
        OverlapComponent w{"w", {{0.0}}};
        c.cover.overlaps[{0, 1}] = {w};
        c.cover.overlaps[{1, 2}] = {w};
        c.cover.overlaps[{0, 2}] = {w};
        c.cover.triples[{0, 1, 2}] = {{0.0}};
        // g_AB = g_BC = g_CA = -1: product is -1 != e
        c.tfin = [](int, int, const Vec &) { return 1; };
        const auto rep = validate_cocycle(c);
        CHECK(rep.inverse_residual == 0.0);
        CHECK(rep.triple_residual == 1.0);
        // repaired: g_AC = +1 makes the triple product close
        c.tfin = [](int a, int b, const Vec &) {
            if ((a == 0 && b == 2) || (a == 2 && b == 0)) return 0;
            return 1;
        };
        CHECK(validate_cocycle(c).max_residual() == 0.0);
    }
}

TEST_CASE("coboundary decision by exhaustive enumeration") {
    SUBCASE("constant -1 cocycle is a coboundary") {
        const auto r = is_coboundary(constant_minus_cocycle());
        REQUIRE(r.status == CoboundaryStatus::coboundary);
        // witness satisfies g_1 g_2^-1 = -1
        CHECK(r.witness[0] != r.witness[1]);
    }
    SUBCASE("double-cover cocycle is not a coboundary") {
        const auto r = is_coboundary(double_cover_cocycle());
        CHECK(r.status == CoboundaryStatus::not_coboundary);
        CHECK(r.assignments_tried == 4);
    }
    SUBCASE("identity cocycle is a coboundary with the trivial witness") {
        const auto r = is_coboundary(identity_cocycle());
        REQUIRE(r.status == CoboundaryStatus::coboundary);
        CHECK(r.witness == std::vector<int>{0, 0});
    }
    SUBCASE("matrix cocycles report unsupported") {
        CHECK(is_coboundary(jacobian_polar_cocycle()).status ==
              CoboundaryStatus::unsupported);
    }
}

TEST_CASE("gauge cochains") {
    SUBCASE("identity cochain leaves the cocycle unchanged") {
        const auto c = double_cover_cocycle();
        Cochain phi;
        phi.kind = GroupKind::finite;
        phi.fin = {0, 0};
        const auto c2 = apply_gauge_cochain(c, phi);
        for (const Vec &x : overlap_samples(c, 0, 1))
            CHECK(c2.label_at(0, 1, x) == c.label_at(0, 1, x));
    }
    SUBCASE("no cochain maps the double cover to the trivial cocycle") {
        const auto c = double_cover_cocycle();
        for (int g1 = 0; g1 < 2; ++g1)
            for (int g2 = 0; g2 < 2; ++g2) {
                Cochain phi;
                phi.kind = GroupKind::finite;
                phi.fin = {g1, g2};
                const auto c2 = apply_gauge_cochain(c, phi);
                bool trivial = true;
                for (const Vec &x : overlap_samples(c, 0, 1))
                    trivial = trivial && c2.label_at(0, 1, x) == 0;
                CHECK(!trivial);
            }
    }
    SUBCASE("random matrix cochains produce valid cocycles") {
        std::mt19937_64 rng(19);
        const auto c = jacobian_polar_cocycle();
        for (int k = 0; k < 5; ++k) {
            Cochain phi;
            phi.kind = GroupKind::matrix;
            for (int i = 0; i < 2; ++i) {
                const Matrix m =
                    gaugekit::testing::random_matrix(rng, 2, 0.4, false) +
                    Matrix::identity(2) * cplx(1.5);
                phi.mat.push_back([m](const Vec &) { return m; });
            }
            const auto c2 = apply_gauge_cochain(c, phi);
            CHECK(validate_cocycle(c2).max_residual() <= 1e-5);
        }
    }
    SUBCASE("applying a cochain then its inverse restores the original") {
        std::mt19937_64 rng(21);
        const auto c = jacobian_polar_cocycle();
        const Matrix m = gaugekit::testing::random_matrix(rng, 2, 0.4, false) +
                         Matrix::identity(2) * cplx(1.5);
        Cochain phi, phi_inv;
        phi.kind = phi_inv.kind = GroupKind::matrix;
        for (int i = 0; i < 2; ++i) {
            phi.mat.push_back([m](const Vec &) { return m; });
            phi_inv.mat.push_back([m](const Vec &) { return m.inverse(); });
        }
        const auto back = apply_gauge_cochain(apply_gauge_cochain(c, phi), phi_inv);
        for (const Vec &x : overlap_samples(c, 0, 1))
            CHECK(distance(back.matrix_at(0, 1, x), c.matrix_at(0, 1, x)) < 1e-10);
    }
    SUBCASE("cochain equivalence partitions the Z2 cocycles into two classes") {
        // all four constant-per-component Z2 cocycles on the two-arc cover
        auto make = [](int w1, int w2) {
            Cocycle c = double_cover_cocycle();
            c.tfin = [w1, w2](int, int, const Vec &x) { return x[0] > 0 ? w1 : w2; };
            return c;
        };
        auto equivalent = [&](const Cocycle &a, const Cocycle &b) {
            for (int g1 = 0; g1 < 2; ++g1)
                for (int g2 = 0; g2 < 2; ++g2) {
                    Cochain phi;
                    phi.kind = GroupKind::finite;
                    phi.fin = {g1, g2};
                    const auto t = apply_gauge_cochain(a, phi);
                    bool same = true;
                    for (const Vec &x : overlap_samples(a, 0, 1))
                        same = same && t.label_at(0, 1, x) == b.label_at(0, 1, x);
                    if (same) return true;
                }
            return false;
        };
        const std::vector<std::pair<int, int>> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        for (auto [a1, a2] : all) {
            CHECK(equivalent(make(a1, a2), make(a1, a2)));  // reflexive
            for (auto [b1, b2] : all) {
                const bool ab = equivalent(make(a1, a2), make(b1, b2));
                const bool ba = equivalent(make(b1, b2), make(a1, a2));
                CHECK(ab == ba);  // symmetric
                // classes are decided by the component-label difference
                CHECK(ab == ((a1 + a2) % 2 == (b1 + b2) % 2));
            }
        }
    }
}

TEST_CASE("derived cocycles") {
    const auto c = jacobian_polar_cocycle();
    const auto pts = overlap_samples(c, 0, 1);

    SUBCASE("dual of dual is the original") {
        const auto dd = dual_cocycle(dual_cocycle(c));
        for (const Vec &x : pts)
            CHECK(distance(dd.matrix_at(0, 1, x), c.matrix_at(0, 1, x)) < 1e-8);
    }
    SUBCASE("dual of an orthogonal cocycle equals the original") {
        Cocycle rot = c;
        rot.tmat = [](int a, int b, const Vec &x) {
            const double t = 0.3 * x[0] + 0.7 * x[1];
            const double s = (a < b) ? t : -t;
            Matrix m(2, 2);
            m(0, 0) = std::cos(s); m(0, 1) = -std::sin(s);
            m(1, 0) = std::sin(s); m(1, 1) = std::cos(s);
            return m;
        };
        const auto d = dual_cocycle(rot);
        for (const Vec &x : pts)
            CHECK(distance(d.matrix_at(0, 1, x), rot.matrix_at(0, 1, x)) < 1e-12);
    }
    SUBCASE("derived families still validate") {
        CHECK(validate_cocycle(dual_cocycle(c)).max_residual() <= 1e-5);
        CHECK(validate_cocycle(tensor_cocycle(c, c)).max_residual() <= 1e-5);
        CHECK(validate_cocycle(exterior_power_cocycle(c, 2)).max_residual() <= 1e-5);
        CHECK(validate_cocycle(density_cocycle(c, 1.0)).max_residual() <= 1e-5);
    }
    SUBCASE("representation-derived cocycles stay cocycles") {
        // g -> g (x) g agrees with the tensor square and validates
        const auto rep = representation_cocycle(
            c, [](const Matrix &g) { return kron(g, g); }, 4);
        CHECK(validate_cocycle(rep).max_residual() <= 1e-5);
        const auto square = tensor_cocycle(c, c);
        for (const Vec &x : pts)
            CHECK(distance(rep.matrix_at(0, 1, x), square.matrix_at(0, 1, x)) < 1e-12);
        // a non-homomorphism is caught by validation
        const auto broken = representation_cocycle(
            c, [](const Matrix &g) { return g + Matrix::identity(2); }, 2);
        CHECK(validate_cocycle(broken).max_residual() > 0.5);
    }
    SUBCASE("compound matrices satisfy Cauchy-Binet") {
        std::mt19937_64 rng(23);
        const Matrix a = gaugekit::testing::random_matrix(rng, 3, 1.0);
        const Matrix b = gaugekit::testing::random_matrix(rng, 3, 1.0);
        for (int p = 0; p <= 3; ++p) {
            const Matrix lhs = exterior_power_matrix(a * b, p);
            const Matrix rhs = exterior_power_matrix(a, p) * exterior_power_matrix(b, p);
            CHECK(distance(lhs, rhs) < 1e-12);
        }
        CHECK(std::abs(exterior_power_matrix(a, 3)(0, 0) - a.determinant()) < 1e-12);
    }
}

TEST_CASE("section transitions") {
    const auto c = jacobian_polar_cocycle();

    SUBCASE("tangent components at (1,0): (0,1) cartesian -> (0,1) polar") {
        CompField s = [](const Vec &) { return CVec{0.0, 1.0}; };
        const auto sp = section_transition(s, c, 0, 1);
        const CVec v = sp({1.0, 0.0});
        CHECK(std::abs(v[0]) < 1e-8);
        CHECK(std::abs(v[1] - 1.0) < 1e-8);
    }
    SUBCASE("round trip restores the representative") {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const cplx a{u(rng), 0.0}, b{u(rng), 0.0};
        CompField s = [a, b](const Vec &x) { return CVec{a * x[0], b + x[1]}; };
        const auto round = section_transition(section_transition(s, c, 0, 1), c, 1, 0);
        for (const Vec &x : overlap_samples(c, 0, 1)) {
            const CVec lhs = round(x), rhs = s(x);
            CHECK(std::abs(lhs[0] - rhs[0]) < 1e-10);
            CHECK(std::abs(lhs[1] - rhs[1]) < 1e-10);
        }
    }
    SUBCASE("charts without an overlap are rejected") {
        Cocycle c2 = c;
        c2.cover.charts.push_back("far");
        CompField s = [](const Vec &) { return CVec{0.0, 0.0}; };
        CHECK_THROWS(section_transition(s, c2, 0, 2));
    }
}

TEST_CASE("connection bundle group") {
    std::mt19937_64 rng(31);

    auto random_so3 = [&]() {
        Matrix a = gaugekit::testing::random_matrix(rng, 3, 0.5, false);
        return mat_exp((a - a.transpose()) * cplx(0.5));
    };
    auto random_gl2 = [&]() {
        return gaugekit::testing::random_matrix(rng, 2, 0.4, false) +
               Matrix::identity(2) * cplx(1.3);
    };
    auto random_element = [&]() {
        CbgElement e;
        e.J = random_gl2();
        e.g = random_so3();
        e.L = {gaugekit::testing::random_matrix(rng, 3, 0.5, false),
               gaugekit::testing::random_matrix(rng, 3, 0.5, false)};
        return e;
    };

    SUBCASE("identity element acts trivially") {
        const auto e = cbg_identity(2, 3);
        const std::vector<Matrix> K = {gaugekit::testing::random_matrix(rng, 3, 1.0, false),
                                       gaugekit::testing::random_matrix(rng, 3, 1.0, false)};
        const auto K2 = cbg_act(e, K);
        CHECK(distance(K2[0], K[0]) < 1e-14);
        CHECK(distance(K2[1], K[1]) < 1e-14);
    }
    SUBCASE("multiplication is associative on 200 random triples") {
        for (int k = 0; k < 200; ++k) {
            const auto a = random_element(), b = random_element(), c = random_element();
            const auto lhs = cbg_mul(cbg_mul(a, b), c);
            const auto rhs = cbg_mul(a, cbg_mul(b, c));
            CHECK(distance(lhs.J, rhs.J) < 1e-12);
            CHECK(distance(lhs.g, rhs.g) < 1e-12);
            for (int i = 0; i < 2; ++i) CHECK(distance(lhs.L[i], rhs.L[i]) < 1e-11);
        }
    }
    SUBCASE("the action is a left action") {
        for (int k = 0; k < 50; ++k) {
            const auto a = random_element(), b = random_element();
            const std::vector<Matrix> K = {
                gaugekit::testing::random_matrix(rng, 3, 1.0, false),
                gaugekit::testing::random_matrix(rng, 3, 1.0, false)};
            const auto lhs = cbg_act(cbg_mul(a, b), K);
            const auto rhs = cbg_act(a, cbg_act(b, K));
            for (int i = 0; i < 2; ++i) CHECK(distance(lhs[i], rhs[i]) < 1e-10);
        }
    }
    SUBCASE("pure translations compose additively") {
        auto translation = [&](const Matrix &l0, const Matrix &l1) {
            CbgElement e = cbg_identity(2, 3);
            e.L = {l0, l1};
            return e;
        };
        const Matrix l0 = gaugekit::testing::random_matrix(rng, 3, 1.0, false);
        const Matrix l1 = gaugekit::testing::random_matrix(rng, 3, 1.0, false);
        const Matrix m0 = gaugekit::testing::random_matrix(rng, 3, 1.0, false);
        const Matrix m1 = gaugekit::testing::random_matrix(rng, 3, 1.0, false);
        const auto prod = cbg_mul(translation(l0, l1), translation(m0, m1));
        CHECK(distance(prod.L[0], l0 + m0) < 1e-14);
        CHECK(distance(prod.L[1], l1 + m1) < 1e-14);
        CHECK(distance(prod.J, Matrix::identity(2)) == 0.0);
    }
    SUBCASE("singular J is rejected on use") {
        CbgElement e = cbg_identity(2, 3);
        e.J = Matrix::zero(2, 2);
        const std::vector<Matrix> K = {Matrix::zero(3, 3), Matrix::zero(3, 3)};
        CHECK_THROWS(cbg_act(e, K));
    }
}

TEST_CASE("json fixtures") {
    SUBCASE("double cover file round trip") {
        const auto c = load_cocycle_file(std::string(GAUGEKIT_FIXTURES) +
                                         "/double_cover_s1.json");
        CHECK(validate_cocycle(c).max_residual() == 0.0);
        CHECK(is_coboundary(c).status == CoboundaryStatus::not_coboundary);
    }
    SUBCASE("constant -1 file is a coboundary") {
        const auto c = load_cocycle_file(std::string(GAUGEKIT_FIXTURES) +
                                         "/const_minus_one.json");
        CHECK(validate_cocycle(c).max_residual() == 0.0);
        CHECK(is_coboundary(c).status == CoboundaryStatus::coboundary);
    }
    SUBCASE("matrix fixture with explicit reverse values") {
        const std::string text = R"({
          "group": {"kind": "matrix", "dim": 2},
          "charts": ["A", "B"],
          "overlaps": [{
            "pair": ["A", "B"],
            "components": [{
              "name": "w",
              "samples": [[0.0, 0.0]],
              "matrix": [2.0, 0.0, 0.0, 0.5],
              "reverse_matrix": [0.5, 0.0, 0.0, 2.0]
            }]
          }]
        })";
        const auto c = load_cocycle_json(text);
        CHECK(validate_cocycle(c).max_residual() < 1e-14);
    }
    SUBCASE("three-chart file exercises the triple condition") {
        const auto c = load_cocycle_file(std::string(GAUGEKIT_FIXTURES) +
                                         "/three_arc_z2.json");
        const auto rep = validate_cocycle(c);
        CHECK(rep.triple_residual == 0.0);
        CHECK(rep.max_residual() == 0.0);
    }
}

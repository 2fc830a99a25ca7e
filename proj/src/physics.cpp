#include "gaugekit/physics.hpp"


#include <cmath>
#include <numbers>

namespace gaugekit {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

CVec partial_spinor(const SpinorField &s, const Vec &x, int i, double h) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return cvec_scale(1.0 / (2.0 * h), cvec_sub(s(xp), s(xm)));
}

double real_partial(const std::function<double(const Vec &)> &f, const Vec &x, int i,
                    double h) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
}

} // namespace

EMField em_from_potentials(const Chart &chart, const ScalarField &V, const R3Field &Avec,
                           double step) {
    const double h = step > 0.0 ? step : chart.step();
    EMField em;
    em.chart = chart;
    em.has_potentials = true;
    em.V = V;
    em.Avec = Avec;
    em.B = [Avec, h](const Vec &x) {
        auto Ac = [&](int c) {
            return std::function<double(const Vec &)>(
                [Avec, c](const Vec &p) { return Avec(p)[c]; });
        };
        // spatial coordinates are slots 1..3 of (t,x,y,z)
        return Vec{real_partial(Ac(2), x, 2, h) - real_partial(Ac(1), x, 3, h),
                   real_partial(Ac(0), x, 3, h) - real_partial(Ac(2), x, 1, h),
                   real_partial(Ac(1), x, 1, h) - real_partial(Ac(0), x, 2, h)};
    };
    em.E = [V, Avec, h](const Vec &x) {
        auto Ac = [&](int c) {
            return std::function<double(const Vec &)>(
                [Avec, c](const Vec &p) { return Avec(p)[c]; });
        };
        std::function<double(const Vec &)> Vr = [V](const Vec &p) { return V(p).real(); };
        Vec e(3);
        for (int c = 0; c < 3; ++c)
            e[c] = -real_partial(Vr, x, c + 1, h) - real_partial(Ac(c), x, 0, h);
        return e;
    };
    return em;
}

double em_potential_consistency(const EMField &em, const std::vector<Vec> &samples,
                                double step) {
    if (!em.has_potentials)
        throw std::invalid_argument("em_potential_consistency: no potentials present");
    // rebuild E and B from the potentials at a different step and compare
    const double h = step > 0.0 ? step : 0.5 * em.chart.step();
    const EMField derived = em_from_potentials(em.chart, em.V, em.Avec, h);
    double worst = 0.0;
    for (const Vec &x : samples) {
        const Vec e1 = em.E(x), e2 = derived.E(x);
        const Vec b1 = em.B(x), b2 = derived.B(x);
        for (int c = 0; c < 3; ++c) {
            worst = std::max(worst, std::abs(e1[c] - e2[c]));
            worst = std::max(worst, std::abs(b1[c] - b2[c]));
        }
    }
    return worst;
}

PForm assemble_F(const EMField &em) {
    // index order (t,x,y,z) = (0,1,2,3)
    auto Ec = [em](int c) {
        return [em, c](const Vec &x) { return cplx(em.E(x)[c]); };
    };
    auto Bc = [em](int c) {
        return [em, c](const Vec &x) { return cplx(em.B(x)[c]); };
    };
    std::map<std::uint32_t, ScalarField> comps;
    comps[0b0011] = [f = Ec(0)](const Vec &x) { return -f(x); };  // dt^dx: -E_x
    comps[0b0101] = [f = Ec(1)](const Vec &x) { return -f(x); };  // dt^dy: -E_y
    comps[0b1001] = [f = Ec(2)](const Vec &x) { return -f(x); };  // dt^dz: -E_z
    comps[0b1100] = Bc(0);                                        // dy^dz: +B_x
    comps[0b1010] = [f = Bc(1)](const Vec &x) { return -f(x); };  // dx^dz: -B_y
    comps[0b0110] = Bc(2);                                        // dx^dy: +B_z
    return make_scalar_form(4, 2, std::move(comps));
}

MaxwellResiduals maxwell_residuals(const PForm &F, const PForm &j, const MetricField &m,
                                   const std::vector<Vec> &samples, double step) {
    if (m.r != 1 || m.s != 3)
        throw std::invalid_argument("maxwell_residuals: metric signature (1,3) required");
    const double h = step > 0.0 ? step : m.chart.step();
    MaxwellResiduals out;
    out.dF = sup_norm(ext_d(F, m.chart, h), samples);
    const PForm deltaF = codifferential(F, m, +1, h);
    out.deltaF_minus_j = sup_norm(deltaF - j, samples);
    out.delta_j = sup_norm(codifferential(j, m, +1, h), samples);
    return out;
}

EMField plane_wave_fixture(double step) {
    const Chart chart = make_chart({-1.0, -1.0, -1.0, -1.0}, {1.0, 1.0, 1.0, 1.0},
                                   step > 0.0 ? step : 1e-4);
    return em_from_potentials(
        chart, [](const Vec &) { return cplx(0.0); },
        [](const Vec &x) {
            return Vec{std::cos(x[0] - x[3]), 0.0, 0.0};
        });
}

EMField uniform_b_fixture(double b0) {
    EMField em;
    em.chart = make_chart({-1.0, -1.0, -1.0, -1.0}, {1.0, 1.0, 1.0, 1.0});
    em.E = [](const Vec &) { return Vec{0.0, 0.0, 0.0}; };
    em.B = [b0](const Vec &) { return Vec{0.0, 0.0, b0}; };
    return em;
}

// --- monopole ---

MonopoleCharts monopole_fixture(double g) {
    MonopoleCharts mc;
    mc.g = g;
    mc.chart = make_chart({-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}, 1e-6);
    // A_s =  g y/(r(r-z)) dx - g x/(r(r-z)) dy   (string on z > 0)
    // A_n = -g y/(r(r+z)) dx + g x/(r(r+z)) dy   (string on z < 0)
    std::map<std::uint32_t, ScalarField> south, north;
    south[0b001] = [g](const Vec &p) {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        return cplx(g * p[1] / (r * (r - p[2])));
    };
    south[0b010] = [g](const Vec &p) {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        return cplx(-g * p[0] / (r * (r - p[2])));
    };
    north[0b001] = [g](const Vec &p) {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        return cplx(-g * p[1] / (r * (r + p[2])));
    };
    north[0b010] = [g](const Vec &p) {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        return cplx(g * p[0] / (r * (r + p[2])));
    };
    mc.A_s = make_scalar_form(3, 1, std::move(south));
    mc.A_n = make_scalar_form(3, 1, std::move(north));
    return mc;
}

PForm monopole_two_form(double g) {
    std::map<std::uint32_t, ScalarField> comps;
    auto coef = [g](int c) {
        return [g, c](const Vec &p) {
            const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            return cplx(g * p[c] / (r * r * r));
        };
    };
    comps[0b110] = coef(0);                                        // B_x dy^dz
    comps[0b101] = [f = coef(1)](const Vec &p) { return -f(p); };  // -B_y dx^dz
    comps[0b011] = coef(2);                                        // B_z dx^dy
    return make_scalar_form(3, 2, std::move(comps));
}

std::vector<Vec> monopole_samples() {
    std::vector<Vec> pts;
    const double pi = std::numbers::pi;
    for (double r : {0.7, 1.0, 1.4})
        for (double th : {0.1 * pi, 0.3 * pi, 0.5 * pi, 0.7 * pi, 0.9 * pi})
            for (double ph : {0.3, 1.4, 2.5, -2.4, -1.2}) {
                pts.push_back({r * std::sin(th) * std::cos(ph),
                               r * std::sin(th) * std::sin(ph), r * std::cos(th)});
            }
    return pts;
}

double monopole_flux(const MonopoleCharts &mc, int cells, double step) {
    const double pi = std::numbers::pi;
    const PForm dAs = ext_d(mc.A_s, mc.chart, step);
    const PForm dAn = ext_d(mc.A_n, mc.chart, step);

    auto flux_patch = [&](const PForm &F, double th0, double th1) {
        const double dth = (th1 - th0) / cells;
        const double dph = 2.0 * pi / cells;
        double acc = 0.0;
        for (int a = 0; a < cells; ++a)
            for (int b = 0; b < cells; ++b) {
                const double th = th0 + (a + 0.5) * dth;
                const double ph = -pi + (b + 0.5) * dph;
                const double st = std::sin(th), ct = std::cos(th);
                const double cp = std::cos(ph), sp = std::sin(ph);
                const Vec x{st * cp, st * sp, ct};
                const Vec xt{ct * cp, ct * sp, -st};       // d/dtheta
                const Vec xp{-st * sp, st * cp, 0.0};      // d/dphi
                double val = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int k = i + 1; k < 3; ++k) {
                        const cplx Fik =
                            F.scalar_value((std::uint32_t(1) << i) | (std::uint32_t(1) << k), x);
                        val += Fik.real() * (xt[i] * xp[k] - xt[k] * xp[i]);
                    }
                acc += val * dth * dph;
            }
        return acc;
    };
    // north hemisphere with A_n (string at theta = pi), south with A_s
    return flux_patch(dAn, 0.0, 0.5 * pi) + flux_patch(dAs, 0.5 * pi, pi);
}

MonopoleReport monopole_checks(const MonopoleCharts &mc, int cells, double step) {
    MonopoleReport rep;
    const double pi = std::numbers::pi;
    const double g = mc.g;
    const auto samples = monopole_samples();

    const PForm Fm = monopole_two_form(g);
    rep.dA_s_err = sup_norm(ext_d(mc.A_s, mc.chart, step) - Fm, samples);
    rep.dA_n_err = sup_norm(ext_d(mc.A_n, mc.chart, step) - Fm, samples);

    // A_n - A_s = 2g dtheta = -2g y/(x^2+y^2) dx + 2g x/(x^2+y^2) dy
    std::map<std::uint32_t, ScalarField> gam;
    gam[0b001] = [g](const Vec &p) {
        return cplx(-2.0 * g * p[1] / (p[0] * p[0] + p[1] * p[1]));
    };
    gam[0b010] = [g](const Vec &p) {
        return cplx(2.0 * g * p[0] / (p[0] * p[0] + p[1] * p[1]));
    };
    const PForm gamon = make_scalar_form(3, 1, std::move(gam));
    rep.gamon_err = sup_norm(mc.A_n - mc.A_s - gamon, samples);

    // i(A_n - A_s) = -dphi phi^-1 with phi = exp(-2 i g theta); checked
    // away from the atan2 branch cut on the negative-x half plane
    auto phi = [g](const Vec &p) {
        return std::exp(-I_UNIT * 2.0 * g * std::atan2(p[1], p[0]));
    };
    for (const Vec &x : samples) {
        if (x[0] < 0.0 && std::abs(x[1]) < 0.05) continue;
        for (int i = 0; i < 3; ++i) {
            Vec xp = x, xm = x;
            xp[i] += step;
            xm[i] -= step;
            const cplx dphi = (phi(xp) - phi(xm)) / (2.0 * step);
            const cplx lhs = I_UNIT * (mc.A_n.scalar_value(std::uint32_t(1) << i, x) -
                                       mc.A_s.scalar_value(std::uint32_t(1) << i, x));
            rep.transition_err = std::max(rep.transition_err, std::abs(lhs + dphi / phi(x)));
        }
    }

    // single-valuedness around the equator by loop continuity
    const int loop_n = 720;
    double gap = 0.0;
    cplx prev = phi({std::cos(-pi + 1e-3), std::sin(-pi + 1e-3), 0.0});
    for (int k = 1; k <= loop_n; ++k) {
        const double th = -pi + 1e-3 + (2.0 * pi - 2e-3) * k / loop_n;
        const cplx cur = phi({std::cos(th), std::sin(th), 0.0});
        gap = std::max(gap, std::abs(cur - prev));
        prev = cur;
    }
    // closing step across the cut
    gap = std::max(gap, std::abs(phi({std::cos(pi - 1e-3), std::sin(pi - 1e-3), 0.0}) -
                                 phi({std::cos(-pi + 1e-3), std::sin(-pi + 1e-3), 0.0})));
    rep.loop_gap = gap;
    rep.quantized = gap < 0.1;

    rep.flux = monopole_flux(mc, cells, step);
    rep.flux_expected = 4.0 * pi * g;
    return rep;
}

// --- Dirac operators ---

SpinorField pauli_dirac(const SpinorField &psi, double step) {
    const auto rep = pauli_rep();
    return [psi, rep, step](const Vec &x) {
        CVec out(2, cplx(0.0));
        for (int j = 0; j < 3; ++j)
            out = cvec_add(out, rep.gamma[j].apply(partial_spinor(psi, x, j, step)));
        return out;
    };
}

double dirac_square_residual(const SpinorField &psi, const std::vector<Vec> &samples,
                             double step) {
    const SpinorField dpsi = pauli_dirac(psi, step);
    const SpinorField ddpsi = pauli_dirac(dpsi, step);
    double worst = 0.0;
    for (const Vec &x : samples) {
        // discrete Laplacian at the same step
        CVec lap(2, cplx(0.0));
        const CVec centre = cvec_scale(2.0, psi(x));
        for (int j = 0; j < 3; ++j) {
            Vec xp = x, xm = x;
            xp[j] += step;
            xm[j] -= step;
            lap = cvec_add(lap, cvec_scale(1.0 / (step * step),
                                           cvec_sub(cvec_add(psi(xp), psi(xm)), centre)));
        }
        worst = std::max(worst, cvec_max_abs(cvec_sub(ddpsi(x), lap)));
    }
    return worst;
}

Matrix Dirac4::gamma_coord(int mu) const { return rep.gamma[gen_of_coord[mu]]; }

Matrix Dirac4::gamma_upper(int mu) const {
    return mu == 0 ? gamma_coord(0) : -gamma_coord(mu);
}

Dirac4 make_dirac4(const Chart &chart) {
    if (chart.dim != 4) throw std::invalid_argument("make_dirac4: 4-dimensional chart");
    Dirac4 d;
    d.chart = chart;
    d.rep = constructed_gamma_rep(Signature{3, 1});
    d.gen_of_coord = {3, 0, 1, 2};  // time rides the q = -1 generator
    d.omega = d.rep.act(volume_element(Signature{3, 1}));
    d.p_plus = (Matrix::identity(4) + d.omega) * cplx(0.5);
    d.p_minus = (Matrix::identity(4) - d.omega) * cplx(0.5);
    return d;
}

SpinorField dirac4_residual(const Dirac4 &d, const SpinorField &psi, double mass,
                            double charge, const PForm &A_em, double step) {
    const double h = step > 0.0 ? step : d.chart.step();
    const Dirac4 dd = d;
    const bool has_a = !A_em.comps.empty();
    PForm A = has_a ? A_em : PForm{};
    return [dd, psi, mass, charge, A, has_a, h](const Vec &x) {
        CVec out(4, cplx(0.0));
        for (int mu = 0; mu < 4; ++mu) {
            const CVec dmu = partial_spinor(psi, x, mu, h);
            out = cvec_add(out, cvec_scale(I_UNIT, dd.gamma_upper(mu).apply(dmu)));
        }
        if (has_a && charge != 0.0) {
            // Clifford action of the raised covector: v^mu = g^{mu mu} A_mu
            Matrix act = Matrix::zero(4, 4);
            for (int mu = 0; mu < 4; ++mu) {
                const cplx a_mu = A.scalar_value(std::uint32_t(1) << mu, x);
                act += dd.gamma_coord(mu) * (mu == 0 ? a_mu : -a_mu);
            }
            out = cvec_add(out, cvec_scale(charge, act.apply(psi(x))));
        }
        out = cvec_sub(out, cvec_scale(mass, psi(x)));
        return out;
    };
}

std::pair<SpinorField, SpinorField> helicity_split(const Dirac4 &d, const SpinorField &psi) {
    const Matrix pp = d.p_plus, pm = d.p_minus;
    SpinorField plus = [pp, psi](const Vec &x) { return pp.apply(psi(x)); };
    SpinorField minus = [pm, psi](const Vec &x) { return pm.apply(psi(x)); };
    return {plus, minus};
}

CVec plane_wave_spinor(const Dirac4 &d, const Vec &k_lower) {
    Matrix symbol = Matrix::zero(4, 4);
    for (int mu = 0; mu < 4; ++mu) symbol += d.gamma_upper(mu) * cplx(k_lower[mu]);
    const auto kernel = null_space(symbol, 1e-8);
    if (kernel.empty())
        throw std::invalid_argument("plane_wave_spinor: symbol has trivial kernel "
                                    "(momentum not null?)");
    CVec u = kernel.front();
    double norm = 0.0;
    for (const auto &c : u) norm += std::norm(c);
    return cvec_scale(1.0 / std::sqrt(norm), u);
}

Matrix charge_conjugation_matrix(const Dirac4 &d) {
    return d.rep.gamma[1] * d.omega;
}

SpinorField charge_conjugate(const Dirac4 &d, const SpinorField &psi) {
    const Matrix C = charge_conjugation_matrix(d);
    return [C, psi](const Vec &x) {
        CVec v = psi(x);
        for (auto &c : v) c = std::conj(c);
        return C.apply(v);
    };
}

const MatrixRep &pairing_rep() {
    static const MatrixRep rep = constructed_gamma_rep(Signature{1, 3});
    return rep;
}

cplx indefinite_pairing(const CVec &a, const CVec &b) {
    // H = i e0_hat: hermitian and squares to I, so the pairing is
    // hermitian, non-degenerate, and indefinite
    static const Matrix H = pairing_rep().gamma[0] * I_UNIT;
    const CVec hb = H.apply(b);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * hb[i];
    return acc;
}

// --- Seiberg-Witten ---

SpinC4 make_spinc4() {
    SpinC4 sc;
    sc.rep = constructed_gamma_rep(Signature{4, 0});
    // orientation chosen so that sigma(psi) is self-dual on p+ spinors
    sc.omega = sc.rep.act(volume_element(Signature{4, 0}, -1));
    sc.p_plus = (Matrix::identity(4) + sc.omega) * cplx(0.5);
    sc.p_minus = (Matrix::identity(4) - sc.omega) * cplx(0.5);
    return sc;
}

std::map<std::uint32_t, cplx> sw_sigma_at(const SpinC4 &sc, const CVec &psi,
                                          const Matrix &frame) {
    // Clifford action of the frame vectors
    std::vector<CVec> epsi;
    for (int a = 0; a < 4; ++a) {
        Matrix act = Matrix::zero(4, 4);
        for (int i = 0; i < 4; ++i) act += sc.rep.gamma[i] * frame(a, i);
        epsi.push_back(act.apply(psi));
    }
    auto herm = [](const CVec &u, const CVec &v) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
        return acc;
    };
    // sum_ab (e_a psi, e_b psi) e^a ^ e^b, pushed to coordinate components
    std::map<std::uint32_t, cplx> out;
    for (std::uint32_t mask : degree_masks(4, 2)) out[mask] = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            const cplx coef = herm(epsi[a], epsi[b]);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    const double wedge_ij =
                        (frame(a, i) * frame(b, j) - frame(a, j) * frame(b, i)).real();
                    out[(std::uint32_t(1) << i) | (std::uint32_t(1) << j)] += coef * wedge_ij;
                }
        }
    return out;
}

PForm sw_sigma(const SpinC4 &sc, const SpinorField &psi, const Chart &) {
    std::map<std::uint32_t, ScalarField> comps;
    const Matrix frame = Matrix::identity(4);
    const SpinC4 scc = sc;
    for (std::uint32_t mask : degree_masks(4, 2)) {
        comps[mask] = [scc, psi, frame, mask](const Vec &x) {
            auto s = sw_sigma_at(scc, psi(x), frame);
            return s[mask];
        };
    }
    return make_scalar_form(4, 2, std::move(comps));
}

SwResiduals sw_residuals(const SpinC4 &sc, const PForm &A_u1, const SpinorField &psi,
                         const Chart &chart, const std::vector<Vec> &samples, double step) {
    const double h = step > 0.0 ? step : chart.step();
    SwResiduals out;
    const MetricField metric = euclidean_metric(chart);

    // F+ = self-dual part of i dA
    const PForm F = I_UNIT * ext_d(A_u1, chart, h);
    const auto [Fp, Fm] = self_dual_split(F, metric);
    const PForm sigma = sw_sigma(sc, psi, chart);
    const PForm eq1 = Fp - cplx(0.25) * I_UNIT * sigma;
    out.curvature_eq = sup_norm(eq1, samples);

    // D_A psi = sum_j e_j (d_j + i A_j) psi
    const SpinC4 scc = sc;
    const PForm A = A_u1;
    SpinorField dpsi = [scc, psi, A, h](const Vec &x) {
        CVec acc(4, cplx(0.0));
        for (int j = 0; j < 4; ++j) {
            CVec term = partial_spinor(psi, x, j, h);
            const cplx aj = A.scalar_value(std::uint32_t(1) << j, x);
            term = cvec_add(term, cvec_scale(I_UNIT * aj, psi(x)));
            acc = cvec_add(acc, scc.rep.gamma[j].apply(term));
        }
        return acc;
    };
    for (const Vec &x : samples) {
        out.dirac_eq = std::max(out.dirac_eq, cvec_max_abs(dpsi(x)));
        out.projection = std::max(out.projection, cvec_max_abs(sc.p_minus.apply(psi(x))));
    }
    return out;
}

} // namespace gaugekit

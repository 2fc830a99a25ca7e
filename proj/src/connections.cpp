#include "gaugekit/connections.hpp"

#include <algorithm>
#include <cmath>

namespace gaugekit {

namespace {

Matrix partial_matrix(const MatrixField &f, const Vec &x, int i, double h) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return (f(xp) - f(xm)) * cplx(1.0 / (2.0 * h));
}

CVec partial_section(const SectionField &s, const Vec &x, int i, double h) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return cvec_scale(1.0 / (2.0 * h), cvec_sub(s(xp), s(xm)));
}

} // namespace

double algebra_tag_residual(AlgebraTag tag, const Matrix &value) {
    switch (tag) {
        case AlgebraTag::general:
            return 0.0;
        case AlgebraTag::anti_hermitian:
            return anti_hermitian_residual(value);
        case AlgebraTag::real_antisymmetric: {
            double imag = 0.0;
            for (std::size_t i = 0; i < value.rows(); ++i)
                for (std::size_t j = 0; j < value.cols(); ++j)
                    imag = std::max(imag, std::abs(value(i, j).imag()));
            return std::max(imag, (value + value.transpose()).max_abs());
        }
    }
    return 0.0;
}

Matrix GaugePotential::contract(const Vec &x, const Vec &xi) const {
    Matrix acc = Matrix::zero(fiber_dim, fiber_dim);
    for (std::size_t i = 0; i < comp.size(); ++i) acc += comp[i](x) * cplx(xi[i]);
    return acc;
}

double GaugePotential::tag_residual(const std::vector<Vec> &samples) const {
    double worst = 0.0;
    for (const Vec &x : samples)
        for (const auto &c : comp)
            worst = std::max(worst, algebra_tag_residual(tag, c(x)));
    return worst;
}

GeneralConnection linear_as_general(const LinearConnection &lc) {
    GeneralConnection g;
    g.chart = lc.chart;
    g.fiber_dim = lc.fiber_dim;
    auto comp = lc.comp;
    const int m = lc.fiber_dim;
    g.gamma = [comp, m](const Vec &x, const Vec &f) {
        const int n = static_cast<int>(comp.size());
        Matrix out(m, n);
        for (int i = 0; i < n; ++i) {
            const Matrix gi = comp[i](x);
            for (int a = 0; a < m; ++a) {
                cplx acc = 0.0;
                for (int b = 0; b < m; ++b) acc += gi(a, b) * f[b];
                out(a, i) = acc;
            }
        }
        return out;
    };
    return g;
}

Matrix CurvatureForm::at(const Vec &x, int i, int j) const {
    if (i == j) return Matrix::zero(fiber_dim, fiber_dim);
    if (i < j) {
        auto it = comp.find({i, j});
        if (it == comp.end()) return Matrix::zero(fiber_dim, fiber_dim);
        return it->second(x);
    }
    return -at(x, j, i);
}

double CurvatureForm::antisymmetry_residual(const std::vector<Vec> &samples) const {
    // F_ij = -F_ji holds by construction of the lookup; report the
    // diagonal, which must vanish identically
    double worst = 0.0;
    const int n = chart.dim;
    for (const Vec &x : samples)
        for (int i = 0; i < n; ++i) worst = std::max(worst, at(x, i, i).max_abs());
    return worst;
}

Matrix MatrixForm::value(std::uint32_t mask, const Vec &x) const {
    auto it = comps.find(mask);
    if (it == comps.end()) return Matrix::zero(fiber_dim, fiber_dim);
    return it->second(x);
}

MatrixForm mwedge(const MatrixForm &a, const MatrixForm &b) {
    if (a.n != b.n || a.fiber_dim != b.fiber_dim)
        throw std::invalid_argument("mwedge: shape mismatch");
    if (a.degree + b.degree > a.n) throw std::invalid_argument("mwedge: degree overflow");
    MatrixForm r;
    r.chart = a.chart;
    r.n = a.n;
    r.degree = a.degree + b.degree;
    r.fiber_dim = a.fiber_dim;
    std::map<std::uint32_t, std::vector<std::tuple<double, MatrixField, MatrixField>>> terms;
    for (const auto &[ma, fa] : a.comps)
        for (const auto &[mb, fb] : b.comps) {
            if (ma & mb) continue;
            terms[ma | mb].push_back({double(reorder_sign(ma, mb)), fa, fb});
        }
    const int fd = a.fiber_dim;
    for (auto &[mask, list] : terms)
        r.comps[mask] = [list, fd](const Vec &x) {
            Matrix acc = Matrix::zero(fd, fd);
            for (const auto &[sign, fa, fb] : list) acc += fa(x) * fb(x) * cplx(sign);
            return acc;
        };
    return r;
}

MatrixForm mext_d(const MatrixForm &a, double step) {
    const double h = step > 0.0 ? step : a.chart.step();
    MatrixForm r;
    r.chart = a.chart;
    r.n = a.n;
    r.degree = a.degree + 1;
    r.fiber_dim = a.fiber_dim;
    const int fd = a.fiber_dim;
    for (std::uint32_t mask : degree_masks(a.n, a.degree + 1)) {
        std::vector<std::tuple<double, int, MatrixField>> terms;
        int pos = 0;
        for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++pos) {
            const int l = std::countr_zero(rest);
            auto it = a.comps.find(mask & ~(std::uint32_t(1) << l));
            if (it != a.comps.end())
                terms.push_back({(pos % 2 == 0) ? 1.0 : -1.0, l, it->second});
        }
        if (terms.empty()) continue;
        r.comps[mask] = [terms, h, fd](const Vec &x) {
            Matrix acc = Matrix::zero(fd, fd);
            for (const auto &[sign, dir, f] : terms)
                acc += partial_matrix(f, x, dir, h) * cplx(sign);
            return acc;
        };
    }
    return r;
}

MatrixForm mstar(const MatrixForm &a, const MetricField &g, int orientation) {
    MatrixForm r;
    r.chart = a.chart;
    r.n = a.n;
    r.degree = a.n - a.degree;
    r.fiber_dim = a.fiber_dim;
    auto gfn = g.g;
    const int rr = g.r, ss = g.s, n = a.n, p = a.degree, fd = a.fiber_dim;
    auto comps = a.comps;
    for (std::uint32_t J : degree_masks(n, n - p)) {
        r.comps[J] = [comps, gfn, rr, ss, orientation, J, n, p, fd](const Vec &x) {
            Matrix out(fd, fd);
            const Matrix gx = gfn(x);
            for (int row = 0; row < fd; ++row)
                for (int col = 0; col < fd; ++col) {
                    std::map<std::uint32_t, cplx> entry;
                    for (const auto &[mask, f] : comps) entry[mask] = f(x)(row, col);
                    auto starred = star_components_at(entry, n, p, gx, rr, ss, orientation);
                    out(row, col) = starred.count(J) ? starred[J] : cplx(0.0);
                }
            return out;
        };
    }
    return r;
}

MatrixForm potential_as_form(const GaugePotential &a) {
    MatrixForm r;
    r.chart = a.chart;
    r.n = a.chart.dim;
    r.degree = 1;
    r.fiber_dim = a.fiber_dim;
    for (int i = 0; i < r.n; ++i) r.comps[std::uint32_t(1) << i] = a.comp[i];
    return r;
}

MatrixForm curvature_as_form(const CurvatureForm &f) {
    MatrixForm r;
    r.chart = f.chart;
    r.n = f.chart.dim;
    r.degree = 2;
    r.fiber_dim = f.fiber_dim;
    for (const auto &[ij, field] : f.comp) {
        const auto [i, j] = ij;
        r.comps[(std::uint32_t(1) << i) | (std::uint32_t(1) << j)] = field;
    }
    return r;
}

double msup_norm(const MatrixForm &a, const std::vector<Vec> &points) {
    double worst = 0.0;
    for (const Vec &x : points)
        for (const auto &[mask, f] : a.comps) worst = std::max(worst, f(x).max_abs());
    return worst;
}

GeneralConnection transition_general(const GeneralConnection &g, const FiberMap &h,
                                     double step) {
    GeneralConnection out;
    out.chart = g.chart;
    out.fiber_dim = g.fiber_dim;
    const double hh = step > 0.0 ? step : g.chart.step();
    auto gamma = g.gamma;
    const int m = g.fiber_dim;
    const int n = g.chart.dim;
    auto hmap = h.map;
    auto hinv = h.inv;
    out.gamma = [gamma, hmap, hinv, hh, m, n](const Vec &x, const Vec &f) {
        const Vec f0 = hinv(x, f);  // upstairs fiber point
        // d2 h: derivative in the fiber argument at (x, f0)
        Matrix d2(m, m);
        for (int b = 0; b < m; ++b) {
            Vec fp = f0, fm = f0;
            fp[b] += hh;
            fm[b] -= hh;
            const Vec hp = hmap(x, fp), hm = hmap(x, fm);
            for (int a = 0; a < m; ++a) d2(a, b) = (hp[a] - hm[a]) / (2.0 * hh);
        }
        // d1 h: derivative in the base argument at (x, f0)
        Matrix d1(m, n);
        for (int i = 0; i < n; ++i) {
            Vec xp = x, xm = x;
            xp[i] += hh;
            xm[i] -= hh;
            const Vec hp = hmap(xp, f0), hm = hmap(xm, f0);
            for (int a = 0; a < m; ++a) d1(a, i) = (hp[a] - hm[a]) / (2.0 * hh);
        }
        return d2 * gamma(x, f0) - d1;
    };
    return out;
}

GaugePotential transition_potential(const GaugePotential &a, const GroupField &g,
                                    double step) {
    const double h = step > 0.0 ? step : a.chart.step();
    GaugePotential out = a;
    for (std::size_t i = 0; i < a.comp.size(); ++i) {
        auto ai = a.comp[i];
        const int dir = static_cast<int>(i);
        out.comp[i] = [ai, g, dir, h](const Vec &x) {
            const Matrix gx = g(x);
            const Matrix ginv = gx.inverse();
            return gx * ai(x) * ginv - partial_matrix(g, x, dir, h) * ginv;
        };
    }
    return out;
}

GaugePotential gauge_transform(const GaugePotential &a, const GroupField &phi,
                               double step) {
    // identical functional form as the chart transition law
    return transition_potential(a, phi, step);
}

GaugePotential infinitesimal_gauge(const GaugePotential &a, const MatrixField &theta,
                                   double step) {
    const double h = step > 0.0 ? step : a.chart.step();
    GaugePotential out = a;
    for (std::size_t i = 0; i < a.comp.size(); ++i) {
        auto ai = a.comp[i];
        const int dir = static_cast<int>(i);
        out.comp[i] = [ai, theta, dir, h](const Vec &x) {
            return commutator(theta(x), ai(x)) - partial_matrix(theta, x, dir, h);
        };
    }
    return out;
}

CurvatureForm curvature_principal(const GaugePotential &a, double step) {
    const double h = step > 0.0 ? step : a.chart.step();
    CurvatureForm f;
    f.chart = a.chart;
    f.fiber_dim = a.fiber_dim;
    const int n = a.chart.dim;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto ai = a.comp[i], aj = a.comp[j];
            f.comp[{i, j}] = [ai, aj, i, j, h](const Vec &x) {
                return partial_matrix(aj, x, i, h) - partial_matrix(ai, x, j, h) +
                       commutator(ai(x), aj(x));
            };
        }
    return f;
}

CurvatureForm curvature_linear(const LinearConnection &g, double step) {
    return curvature_principal(g, step);
}

Matrix curvature_general_at(const GeneralConnection &g, const Vec &x, const Vec &f,
                            int i, int j, double step) {
    const double h = step > 0.0 ? step : g.chart.step();
    const int m = g.fiber_dim;
    auto col = [&](const Matrix &gm, int c) {
        CVec v(m);
        for (int a = 0; a < m; ++a) v[a] = gm(a, c);
        return v;
    };
    // x-derivatives of the columns Gamma_i, Gamma_j
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const CVec dGj_dxi =
        cvec_scale(1.0 / (2.0 * h), cvec_sub(col(g.gamma(xp, f), j), col(g.gamma(xm, f), j)));
    xp = x; xm = x;
    xp[j] += h;
    xm[j] -= h;
    const CVec dGi_dxj =
        cvec_scale(1.0 / (2.0 * h), cvec_sub(col(g.gamma(xp, f), i), col(g.gamma(xm, f), i)));
    // fiber derivatives contracted with the opposite column
    const Matrix g0 = g.gamma(x, f);
    CVec cross_ij(m, cplx(0.0)), cross_ji(m, cplx(0.0));
    for (int b = 0; b < m; ++b) {
        Vec fp = f, fm = f;
        fp[b] += h;
        fm[b] -= h;
        const CVec dGi_dfb =
            cvec_scale(1.0 / (2.0 * h), cvec_sub(col(g.gamma(x, fp), i), col(g.gamma(x, fm), i)));
        const CVec dGj_dfb =
            cvec_scale(1.0 / (2.0 * h), cvec_sub(col(g.gamma(x, fp), j), col(g.gamma(x, fm), j)));
        cross_ij = cvec_add(cross_ij, cvec_scale(g0(b, j), dGi_dfb));
        cross_ji = cvec_add(cross_ji, cvec_scale(g0(b, i), dGj_dfb));
    }
    // R^a_ij = d_i Gamma^a_j - d_j Gamma^a_i + dGamma^a_i/df^b Gamma^b_j
    //          - dGamma^a_j/df^b Gamma^b_i
    Matrix out(m, 1);
    for (int a = 0; a < m; ++a)
        out(a, 0) = dGj_dxi[a] - dGi_dxj[a] + cross_ij[a] - cross_ji[a];
    return out;
}

double curvature_covariance_residual(const GaugePotential &a, const GroupField &phi,
                                     const std::vector<Vec> &samples, double step) {
    const CurvatureForm f = curvature_principal(a, step);
    const CurvatureForm ft = curvature_principal(gauge_transform(a, phi, step), step);
    const int n = a.chart.dim;
    double worst = 0.0;
    for (const Vec &x : samples) {
        const Matrix p = phi(x);
        const Matrix pinv = p.inverse();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                worst = std::max(worst,
                                 distance(ft.at(x, i, j), p * f.at(x, i, j) * pinv));
    }
    return worst;
}

SectionField covariant_derivative(const SectionField &s, const LinearConnection &conn,
                                  const RVecField &X, double step) {
    const double h = step > 0.0 ? step : conn.chart.step();
    auto comp = conn.comp;
    const int n = conn.chart.dim;
    return [s, comp, X, h, n](const Vec &x) {
        const Vec xi = X(x);
        const CVec sx = s(x);
        CVec out(sx.size(), cplx(0.0));
        for (int i = 0; i < n; ++i) {
            out = cvec_add(out, cvec_scale(xi[i], partial_section(s, x, i, h)));
            out = cvec_add(out, cvec_scale(xi[i], comp[i](x).apply(sx)));
        }
        return out;
    };
}

SectionField covariant_derivative_rep(const SectionField &s, const GaugePotential &a,
                                      const std::function<Matrix(const Matrix &)> &rep_deriv,
                                      const RVecField &X, double step) {
    const double h = step > 0.0 ? step : a.chart.step();
    auto comp = a.comp;
    const int n = a.chart.dim;
    return [s, comp, rep_deriv, X, h, n](const Vec &x) {
        const Vec xi = X(x);
        const CVec sx = s(x);
        CVec out(sx.size(), cplx(0.0));
        for (int i = 0; i < n; ++i) {
            out = cvec_add(out, cvec_scale(xi[i], partial_section(s, x, i, h)));
            out = cvec_add(out, cvec_scale(xi[i], rep_deriv(comp[i](x)).apply(sx)));
        }
        return out;
    };
}

PForm cov_ext_d(const PForm &a, const LinearConnection &conn, double step) {
    const double h = step > 0.0 ? step : conn.chart.step();
    PForm da = ext_d(a, conn.chart, h);
    PForm r;
    r.n = a.n;
    r.degree = a.degree + 1;
    r.value_dim = a.value_dim;
    auto comp = conn.comp;
    for (std::uint32_t mask : degree_masks(a.n, a.degree + 1)) {
        std::vector<std::tuple<double, int, CompField>> gamma_terms;
        int pos = 0;
        for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++pos) {
            const int l = std::countr_zero(rest);
            auto it = a.comps.find(mask & ~(std::uint32_t(1) << l));
            if (it != a.comps.end())
                gamma_terms.push_back({(pos % 2 == 0) ? 1.0 : -1.0, l, it->second});
        }
        auto dit = da.comps.find(mask);
        const bool has_d = dit != da.comps.end();
        if (gamma_terms.empty() && !has_d) continue;
        CompField dpart = has_d ? dit->second : CompField();
        const int vd = a.value_dim;
        r.comps[mask] = [dpart, gamma_terms, comp, vd](const Vec &x) {
            CVec out(vd, cplx(0.0));
            if (dpart) out = dpart(x);
            for (const auto &[sign, dir, f] : gamma_terms)
                out = cvec_add(out, cvec_scale(sign, comp[dir](x).apply(f(x))));
            return out;
        };
    }
    return r;
}

MatrixForm cov_ext_d_ad(const MatrixForm &w, const GaugePotential &a, double step) {
    MatrixForm aform = potential_as_form(a);
    MatrixForm dw = mext_d(w, step);
    MatrixForm aw = mwedge(aform, w);
    MatrixForm wa = mwedge(w, aform);
    const double sign = (w.degree % 2 == 0) ? -1.0 : 1.0;  // -(-1)^p
    MatrixForm r;
    r.chart = w.chart;
    r.n = w.n;
    r.degree = w.degree + 1;
    r.fiber_dim = w.fiber_dim;
    const int fd = w.fiber_dim;
    for (std::uint32_t mask : degree_masks(w.n, w.degree + 1)) {
        auto d = dw.comps.count(mask) ? dw.comps[mask] : MatrixField();
        auto p = aw.comps.count(mask) ? aw.comps[mask] : MatrixField();
        auto q = wa.comps.count(mask) ? wa.comps[mask] : MatrixField();
        if (!d && !p && !q) continue;
        r.comps[mask] = [d, p, q, sign, fd](const Vec &x) {
            Matrix acc = Matrix::zero(fd, fd);
            if (d) acc += d(x);
            if (p) acc += p(x);
            if (q) acc += q(x) * cplx(sign);
            return acc;
        };
    }
    return r;
}

double bianchi_residual(const GaugePotential &a, const std::vector<Vec> &samples,
                        double step) {
    const MatrixForm f = curvature_as_form(curvature_principal(a, step));
    const MatrixForm df = cov_ext_d_ad(f, a, step);
    return msup_norm(df, samples);
}

RVecField lie_bracket(const RVecField &X, const RVecField &Y, double step) {
    const double h = std::sqrt(step);
    return [X, Y, h](const Vec &x) {
        const int n = static_cast<int>(x.size());
        Vec out(n, 0.0);
        const Vec xv = X(x), yv = Y(x);
        for (int i = 0; i < n; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const Vec yp = Y(xp), ym = Y(xm);
            const Vec xpv = X(xp), xmv = X(xm);
            for (int a = 0; a < n; ++a) {
                out[a] += xv[i] * (yp[a] - ym[a]) / (2.0 * h);
                out[a] -= yv[i] * (xpv[a] - xmv[a]) / (2.0 * h);
            }
        }
        return out;
    };
}

LinearConnection levi_civita(const MetricField &g, double step) {
    const double h = step > 0.0 ? step : g.chart.step();
    LinearConnection conn;
    conn.chart = g.chart;
    conn.fiber_dim = g.chart.dim;
    conn.tag = AlgebraTag::general;
    const int n = g.chart.dim;
    auto gfn = g.g;
    for (int j = 0; j < n; ++j) {
        conn.comp.push_back([gfn, j, h, n](const Vec &x) {
            const Matrix gx = gfn(x);
            const Matrix ginv = gx.inverse();
            std::vector<Matrix> dg;
            dg.reserve(n);
            for (int l = 0; l < n; ++l) {
                Vec xp = x, xm = x;
                xp[l] += h;
                xm[l] -= h;
                dg.push_back((gfn(xp) - gfn(xm)) * cplx(1.0 / (2.0 * h)));
            }
            // (Gamma_j)^i_k = Gamma^i_{kj}
            //             = 1/2 g^{il} (d_k g_{jl} + d_j g_{kl} - d_l g_{kj})
            Matrix out(n, n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    cplx acc = 0.0;
                    for (int l = 0; l < n; ++l)
                        acc += ginv(i, l) *
                               (dg[k](j, l) + dg[j](k, l) - dg[l](k, j)) * 0.5;
                    out(i, k) = acc;
                }
            return out;
        });
    }
    return conn;
}

double christoffel(const LinearConnection &lc, const Vec &x, int i, int j, int k) {
    // Gamma^i_{jk}: fiber index j, direction k
    return lc.comp[k](x)(i, j).real();
}

FrameChristoffel levi_civita_frame(const MetricField &g,
                                   const std::vector<RVecField> &frame, double step) {
    const double h = step > 0.0 ? step : g.chart.step();
    FrameChristoffel fc;
    fc.frame = frame;
    const int n = g.chart.dim;
    auto gfn = g.g;
    fc.symbol = [gfn, frame, h, n](const Vec &x, int i, int j, int k) {
        // frame metric g_{ab} = g(e_a, e_b) and its frame-directional
        // derivatives e_c(g_{ab})
        auto frame_metric = [&](const Vec &pt) {
            const Matrix gx = gfn(pt);
            Matrix fg(n, n);
            std::vector<Vec> e;
            for (int a = 0; a < n; ++a) e.push_back(frame[a](pt));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    cplx acc = 0.0;
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q) acc += gx(p, q) * e[a][p] * e[b][q];
                    fg(a, b) = acc;
                }
            return fg;
        };
        auto dir_deriv_metric = [&](int c) {
            const Vec ec = frame[c](x);
            Vec xp = x, xm = x;
            for (int p = 0; p < n; ++p) {
                xp[p] += h * ec[p];
                xm[p] -= h * ec[p];
            }
            return (frame_metric(xp) - frame_metric(xm)) * cplx(1.0 / (2.0 * h));
        };
        // structure functions C^l_{ab} from [e_a, e_b] expanded in the frame
        auto structure = [&](int a, int b) {
            const Vec br = lie_bracket(frame[a], frame[b], h * h)(x);
            Matrix frame_cols(n, n);
            for (int c = 0; c < n; ++c) {
                const Vec ec = frame[c](x);
                for (int p = 0; p < n; ++p) frame_cols(p, c) = ec[p];
            }
            const Matrix inv = frame_cols.inverse();
            CVec brc(n);
            for (int p = 0; p < n; ++p) brc[p] = br[p];
            return inv.apply(brc);
        };
        const Matrix fg = frame_metric(x);
        const Matrix fginv = fg.inverse();
        std::vector<Matrix> dgf;
        for (int c = 0; c < n; ++c) dgf.push_back(dir_deriv_metric(c));
        // C_{a,bc} = g(e_a, [e_b, e_c])
        auto c_low = [&](int a, int b, int c) {
            const CVec cm = structure(b, c);
            cplx acc = 0.0;
            for (int m = 0; m < n; ++m) acc += fg(a, m) * cm[m];
            return acc;
        };
        // Koszul: 2 g(nabla_{e_k} e_j, e_l) = e_k(g_{jl}) + e_j(g_{kl})
        //   - e_l(g_{kj}) + C_{l,kj} - C_{k,jl} + C_{j,lk}
        cplx acc = 0.0;
        for (int l = 0; l < n; ++l)
            acc += fginv(i, l) * 0.5 *
                   (dgf[k](j, l) + dgf[j](k, l) - dgf[l](k, j) + c_low(l, k, j) -
                    c_low(k, j, l) + c_low(j, l, k));
        return acc.real();
    };
    return fc;
}

SectionField torsion(const LinearConnection &conn, const RVecField &X, const RVecField &Y) {
    if (conn.fiber_dim != conn.chart.dim)
        throw std::invalid_argument("torsion: tangent-bundle connection required (m = n)");
    auto comp = conn.comp;
    const int n = conn.chart.dim;
    return [comp, X, Y, n](const Vec &x) {
        const Vec xv = X(x), yv = Y(x);
        CVec cx(n), cy(n);
        for (int i = 0; i < n; ++i) { cx[i] = xv[i]; cy[i] = yv[i]; }
        Matrix gx = Matrix::zero(n, n), gy = Matrix::zero(n, n);
        for (int i = 0; i < n; ++i) {
            gx += comp[i](x) * cplx(xv[i]);
            gy += comp[i](x) * cplx(yv[i]);
        }
        return cvec_sub(gx.apply(cy), gy.apply(cx));
    };
}

double metric_compatibility_residual(const MetricField &g, const LinearConnection &conn,
                                     const std::vector<Vec> &samples, double step) {
    const double h = step > 0.0 ? step : g.chart.step();
    const int n = g.chart.dim;
    auto gfn = g.g;
    double worst = 0.0;
    // coordinate fields as X, Y, Z probes
    for (const Vec &x : samples)
        for (int i = 0; i < n; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const Matrix dg = (gfn(xp) - gfn(xm)) * cplx(1.0 / (2.0 * h));
            const Matrix gi = conn.comp[i](x);  // (Gamma_i)^a_b = Gamma^a_{b i}
            const Matrix gx = gfn(x);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    // X = d_i, Y = d_j, Z = d_k:
                    // d_i g_{jk} - g(Gamma^a_{ji} e_a, e_k) - g(e_j, Gamma^a_{ki} e_a)
                    cplx acc = dg(j, k);
                    for (int a = 0; a < n; ++a)
                        acc -= gi(a, j) * gx(a, k) + gi(a, k) * gx(j, a);
                    worst = std::max(worst, std::abs(acc));
                }
        }
    return worst;
}

PForm yang_mills_density(const CurvatureForm &f, const MetricField &g, double k,
                         int orientation) {
    const MatrixForm F = curvature_as_form(f);
    const MatrixForm sF = mstar(F, g, orientation);
    const MatrixForm prod = mwedge(F, sF);
    const int n = f.chart.dim;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    auto top = prod.comps.count(full) ? prod.comps.at(full) : MatrixField();
    std::map<std::uint32_t, ScalarField> comps;
    comps[full] = [top, k](const Vec &x) {
        if (!top) return cplx(0.0);
        return cplx(-k) * top(x).trace();
    };
    return make_scalar_form(n, n, std::move(comps));
}

MatrixForm ym_residual(const GaugePotential &a, const MatrixForm &j, const MetricField &g,
                       int orientation, double step) {
    const MatrixForm F = curvature_as_form(curvature_principal(a, step));
    const MatrixForm sF = mstar(F, g, orientation);
    const MatrixForm dAsF = cov_ext_d_ad(sF, a, step);
    MatrixForm lhs = mstar(dAsF, g, orientation);
    if (j.comps.empty()) return lhs;
    if (j.degree != 1) throw std::invalid_argument("ym_residual: current must be a 1-form");
    MatrixForm r = lhs;
    for (std::uint32_t mask : degree_masks(lhs.n, 1)) {
        auto l = lhs.comps.count(mask) ? lhs.comps.at(mask) : MatrixField();
        auto jj = j.comps.count(mask) ? j.comps.at(mask) : MatrixField();
        if (!l && !jj) continue;
        const int fd = lhs.fiber_dim;
        r.comps[mask] = [l, jj, fd](const Vec &x) {
            Matrix acc = Matrix::zero(fd, fd);
            if (l) acc += l(x);
            if (jj) acc -= jj(x);
            return acc;
        };
    }
    return r;
}

PForm chern_simons_density(const GaugePotential &a, double k, double step) {
    if (a.chart.dim != 3)
        throw std::invalid_argument("chern_simons_density: 3-dimensional chart required");
    const MatrixForm A = potential_as_form(a);
    const MatrixForm dA = mext_d(A, step);
    const MatrixForm AdA = mwedge(A, dA);
    const MatrixForm AAA = mwedge(mwedge(A, A), A);
    const std::uint32_t full = 0b111;
    auto t1 = AdA.comps.count(full) ? AdA.comps.at(full) : MatrixField();
    auto t2 = AAA.comps.count(full) ? AAA.comps.at(full) : MatrixField();
    std::map<std::uint32_t, ScalarField> comps;
    comps[full] = [t1, t2, k](const Vec &x) {
        cplx acc = 0.0;
        if (t1) acc += t1(x).trace();
        if (t2) acc += cplx(2.0 / 3.0) * t2(x).trace();
        return cplx(k) * acc;
    };
    return make_scalar_form(3, 3, std::move(comps));
}

std::function<SectionField(const SectionField &)> minimally_couple(
    const std::vector<Matrix> &L, const Matrix &M, const GaugePotential &a, double step) {
    const double h = step > 0.0 ? step : a.chart.step();
    if (L.size() != a.comp.size())
        throw std::invalid_argument("minimally_couple: one L per chart direction required");
    for (const auto &l : L)
        if (l.rows() != M.rows() || l.rows() != static_cast<std::size_t>(a.fiber_dim))
            throw std::invalid_argument("minimally_couple: size mismatch");
    auto comp = a.comp;
    return [L, M, comp, h](const SectionField &psi) -> SectionField {
        return [L, M, comp, h, psi](const Vec &x) {
            CVec out = M.apply(psi(x));
            for (std::size_t i = 0; i < L.size(); ++i) {
                const CVec dpsi = partial_section(psi, x, static_cast<int>(i), h);
                const CVec apsi = comp[i](x).apply(psi(x));
                out = cvec_add(out, L[i].apply(cvec_add(dpsi, apsi)));
            }
            return out;
        };
    };
}

} // namespace gaugekit

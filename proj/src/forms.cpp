#include "gaugekit/forms.hpp"

#include <algorithm>
#include <cmath>

namespace gaugekit {

double Chart::diameter() const {
    double d2 = 0.0;
    for (int i = 0; i < dim; ++i) d2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(d2);
}

double Chart::step() const { return fd_step > 0.0 ? fd_step : 1e-5 * diameter(); }

bool Chart::contains(const Vec &x, double margin) const {
    for (int i = 0; i < dim; ++i)
        if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
}

Chart make_chart(Vec lo, Vec hi, double fd_step) {
    Chart c;
    c.dim = static_cast<int>(lo.size());
    if (lo.size() != hi.size() || lo.empty())
        throw std::invalid_argument("make_chart: bad box");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("make_chart: empty box");
    c.lo = std::move(lo);
    c.hi = std::move(hi);
    c.fd_step = fd_step;
    if (fd_step > 0.0 && fd_step > 0.1 * c.diameter())
        throw std::invalid_argument("make_chart: step too large for box");
    return c;
}

std::vector<Vec> sample_grid(const Chart &chart, int per_axis) {
    std::vector<Vec> pts;
    std::vector<int> idx(chart.dim, 0);
    const long total = static_cast<long>(std::pow(per_axis, chart.dim));
    pts.reserve(total);
    for (long k = 0; k < total; ++k) {
        long rem = k;
        Vec x(chart.dim);
        for (int i = 0; i < chart.dim; ++i) {
            const int ci = rem % per_axis;
            rem /= per_axis;
            const double f = (ci + 1.0) / (per_axis + 1.0);
            x[i] = chart.lo[i] + f * (chart.hi[i] - chart.lo[i]);
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

CVec PForm::value(std::uint32_t mask, const Vec &x) const {
    auto it = comps.find(mask);
    if (it == comps.end()) return CVec(value_dim, cplx(0.0));
    return it->second(x);
}

cplx PForm::scalar_value(std::uint32_t mask, const Vec &x) const {
    return value(mask, x)[0];
}

PForm make_scalar_form(int n, int degree, std::map<std::uint32_t, ScalarField> comps) {
    PForm f;
    f.n = n;
    f.degree = degree;
    f.value_dim = 1;
    if (degree < 0 || degree > n) throw std::invalid_argument("make_scalar_form: bad degree");
    for (auto &[mask, field] : comps) {
        if (bit_count(mask) != degree)
            throw std::invalid_argument("make_scalar_form: mask/degree mismatch");
        f.comps[mask] = [field = std::move(field)](const Vec &x) { return CVec{field(x)}; };
    }
    return f;
}

PForm make_vector_form(int n, int degree, int value_dim,
                       std::map<std::uint32_t, CompField> comps) {
    PForm f;
    f.n = n;
    f.degree = degree;
    f.value_dim = value_dim;
    if (degree < 0 || degree > n) throw std::invalid_argument("make_vector_form: bad degree");
    for (auto &[mask, field] : comps) {
        if (bit_count(mask) != degree)
            throw std::invalid_argument("make_vector_form: mask/degree mismatch");
        f.comps[mask] = field;
    }
    return f;
}

PForm zero_form_like(const PForm &a) {
    PForm f;
    f.n = a.n;
    f.degree = a.degree;
    f.value_dim = a.value_dim;
    return f;
}

std::vector<std::uint32_t> degree_masks(int n, int p) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (std::uint32_t(1) << n); ++m)
        if (bit_count(m) == p) out.push_back(m);
    return out;
}

PForm operator+(const PForm &a, const PForm &b) {
    if (a.n != b.n || a.degree != b.degree || a.value_dim != b.value_dim)
        throw std::invalid_argument("PForm+: shape mismatch");
    PForm r = a;
    for (const auto &[mask, fb] : b.comps) {
        auto it = r.comps.find(mask);
        if (it == r.comps.end()) {
            r.comps[mask] = fb;
        } else {
            auto fa = it->second;
            r.comps[mask] = [fa, fb](const Vec &x) { return cvec_add(fa(x), fb(x)); };
        }
    }
    return r;
}

PForm operator-(const PForm &a, const PForm &b) { return a + (cplx(-1.0) * b); }

PForm operator*(cplx s, const PForm &a) {
    PForm r = zero_form_like(a);
    for (const auto &[mask, f] : a.comps)
        r.comps[mask] = [s, f](const Vec &x) { return cvec_scale(s, f(x)); };
    return r;
}

PForm wedge(const PForm &a, const PForm &b) {
    if (a.n != b.n) throw std::invalid_argument("wedge: different charts");
    if (a.value_dim != 1 || b.value_dim != 1)
        throw std::invalid_argument("wedge: scalar-valued forms only");
    if (a.degree + b.degree > a.n) throw std::invalid_argument("wedge: degree overflow");
    PForm r;
    r.n = a.n;
    r.degree = a.degree + b.degree;
    r.value_dim = 1;
    std::map<std::uint32_t, std::vector<std::tuple<double, CompField, CompField>>> terms;
    for (const auto &[ma, fa] : a.comps)
        for (const auto &[mb, fb] : b.comps) {
            if (ma & mb) continue;
            terms[ma | mb].push_back({double(reorder_sign(ma, mb)), fa, fb});
        }
    for (auto &[mask, list] : terms) {
        r.comps[mask] = [list](const Vec &x) {
            cplx s = 0.0;
            for (const auto &[sign, fa, fb] : list) s += sign * fa(x)[0] * fb(x)[0];
            return CVec{s};
        };
    }
    return r;
}

cplx partial_scalar(const ScalarField &f, const Vec &x, int i, double h) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
}

CVec partial_comp(const CompField &f, const Vec &x, int i, double h) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return cvec_scale(1.0 / (2.0 * h), cvec_sub(f(xp), f(xm)));
}

PForm ext_d(const PForm &a, const Chart &chart, double step) {
    if (a.degree >= a.n) {
        PForm r;
        r.n = a.n;
        r.degree = a.degree + 1;
        r.value_dim = a.value_dim;
        return r;
    }
    const double h = step > 0.0 ? step : chart.step();
    PForm r;
    r.n = a.n;
    r.degree = a.degree + 1;
    r.value_dim = a.value_dim;
    for (std::uint32_t mask : degree_masks(a.n, a.degree + 1)) {
        // (d a)_J = sum_l (-1)^{pos(l in J)} d_l a_{J \ l}
        std::vector<std::pair<double, int>> entries;  // sign, direction
        std::vector<std::uint32_t> sub;
        int pos = 0;
        std::uint32_t rest = mask;
        while (rest) {
            const int l = std::countr_zero(rest);
            entries.push_back({(pos % 2 == 0) ? 1.0 : -1.0, l});
            sub.push_back(mask & ~(std::uint32_t(1) << l));
            ++pos;
            rest &= rest - 1;
        }
        std::vector<std::tuple<double, int, CompField>> terms;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            auto it = a.comps.find(sub[k]);
            if (it == a.comps.end()) continue;
            terms.push_back({entries[k].first, entries[k].second, it->second});
        }
        if (terms.empty()) continue;
        const int vd = a.value_dim;
        r.comps[mask] = [terms, h, vd](const Vec &x) {
            CVec out(vd, cplx(0.0));
            for (const auto &[sign, dir, f] : terms)
                out = cvec_add(out, cvec_scale(sign, partial_comp(f, x, dir, h)));
            return out;
        };
    }
    return r;
}

MetricField euclidean_metric(const Chart &chart) {
    return constant_metric(chart, Matrix::identity(chart.dim), chart.dim, 0);
}

MetricField minkowski_metric(const Chart &chart) {
    Matrix g(chart.dim, chart.dim);
    g(0, 0) = 1.0;
    for (int i = 1; i < chart.dim; ++i) g(i, i) = -1.0;
    return constant_metric(chart, g, 1, chart.dim - 1);
}

MetricField constant_metric(const Chart &chart, const Matrix &g, int r, int s) {
    if (r + s != chart.dim) throw std::invalid_argument("constant_metric: signature mismatch");
    MetricField m;
    m.chart = chart;
    m.g = [g](const Vec &) { return g; };
    m.r = r;
    m.s = s;
    return m;
}

CVecField raise_index(const PForm &one_form, const MetricField &m) {
    if (one_form.degree != 1) throw std::invalid_argument("raise_index: 1-form required");
    const int n = one_form.n;
    PForm alpha = one_form;
    auto gfn = m.g;
    return [alpha, gfn, n](const Vec &x) {
        const Matrix ginv = gfn(x).inverse();
        CVec comp(n);
        for (int j = 0; j < n; ++j) comp[j] = alpha.scalar_value(std::uint32_t(1) << j, x);
        CVec out(n, cplx(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += ginv(i, j) * comp[j];
        return out;
    };
}

PForm lower_index(const CVecField &v, int n, const MetricField &m) {
    std::map<std::uint32_t, ScalarField> comps;
    auto gfn = m.g;
    for (int i = 0; i < n; ++i) {
        comps[std::uint32_t(1) << i] = [v, gfn, i](const Vec &x) {
            const Matrix g = gfn(x);
            const CVec vv = v(x);
            cplx s = 0.0;
            for (std::size_t j = 0; j < vv.size(); ++j) s += g(i, j) * vv[j];
            return s;
        };
    }
    return make_scalar_form(n, 1, std::move(comps));
}

Coframe orthonormal_coframe(const Matrix &g_at_x, int r, int s) {
    const int n = r + s;
    const Matrix ginv = g_at_x.inverse();
    auto ip = [&](const CVec &u, const CVec &v) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += u[i] * ginv(i, j) * v[j];
        return acc.real();
    };
    // modified Gram-Schmidt on the coordinate covectors in index order
    std::vector<CVec> e;
    std::vector<int> eta;
    for (int i = 0; i < n; ++i) {
        CVec u(n, cplx(0.0));
        u[i] = 1.0;
        for (std::size_t a = 0; a < e.size(); ++a) {
            const double proj = ip(u, e[a]) * eta[a];
            for (int k = 0; k < n; ++k) u[k] -= proj * e[a][k];
        }
        const double nn = ip(u, u);
        if (std::abs(nn) < 1e-12)
            throw std::runtime_error("orthonormal_coframe: degenerate pivot");
        const double scale = 1.0 / std::sqrt(std::abs(nn));
        for (int k = 0; k < n; ++k) u[k] *= scale;
        e.push_back(u);
        eta.push_back(nn > 0 ? 1 : -1);
    }
    // positive-norm covectors first (stable), per the fixed convention
    std::vector<int> order;
    for (int a = 0; a < n; ++a)
        if (eta[a] > 0) order.push_back(a);
    for (int a = 0; a < n; ++a)
        if (eta[a] < 0) order.push_back(a);
    if (static_cast<int>(order.size()) != n ||
        static_cast<int>(std::count(eta.begin(), eta.end(), 1)) != r)
        throw std::runtime_error("orthonormal_coframe: signature mismatch");

    Coframe cf;
    cf.c = Matrix(n, n);
    cf.eta.resize(n);
    for (int a = 0; a < n; ++a) {
        cf.eta[a] = eta[order[a]];
        for (int i = 0; i < n; ++i) cf.c(a, i) = e[order[a]][i];
    }
    cf.h = cf.c.inverse();
    cf.sigma_h = cf.h.determinant().real() > 0 ? 1 : -1;
    return cf;
}

namespace {

/// Determinant of the submatrix of `m` with rows from maskR and columns
/// from maskC (both ascending).
cplx submatrix_det(const Matrix &m, std::uint32_t maskR, std::uint32_t maskC) {
    std::vector<int> rows, cols;
    for (std::uint32_t t = maskR; t; t &= t - 1) rows.push_back(std::countr_zero(t));
    for (std::uint32_t t = maskC; t; t &= t - 1) cols.push_back(std::countr_zero(t));
    const std::size_t p = rows.size();
    Matrix sub(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) sub(i, j) = m(rows[i], cols[j]);
    if (p == 0) return 1.0;
    return sub.determinant();
}

} // namespace

std::map<std::uint32_t, cplx> star_components_at(
    const std::map<std::uint32_t, cplx> &comps, int n, int p, const Matrix &g_at_x,
    int r, int s, int orientation) {
    const Coframe cf = orthonormal_coframe(g_at_x, r, s);
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;

    // input components in the orthonormal coframe: psi_A = sum_I psi_I det(h[I,A])
    std::map<std::uint32_t, cplx> in_frame;
    for (std::uint32_t A : degree_masks(n, p)) {
        cplx acc = 0.0;
        for (const auto &[I, v] : comps)
            if (v != cplx(0.0)) acc += v * submatrix_det(cf.h, I, A);
        if (acc != cplx(0.0)) in_frame[A] = acc;
    }

    // *(e^A) = sign(A,Ac) * sigma_h * prod_{a in A} eta_a * e^{Ac}
    std::map<std::uint32_t, cplx> out_frame;
    for (const auto &[A, v] : in_frame) {
        const std::uint32_t Ac = full & ~A;
        double factor = reorder_sign(A, Ac) * cf.sigma_h * orientation;
        for (std::uint32_t t = A; t; t &= t - 1) factor *= cf.eta[std::countr_zero(t)];
        out_frame[Ac] += v * factor;
    }

    // back to coordinate components: e^B expands with det(c[B,J])
    std::map<std::uint32_t, cplx> out;
    for (std::uint32_t J : degree_masks(n, n - p)) {
        cplx acc = 0.0;
        for (const auto &[B, v] : out_frame)
            if (v != cplx(0.0)) acc += v * submatrix_det(cf.c, B, J);
        out[J] = acc;
    }
    return out;
}

PForm hodge_star(const PForm &a, const MetricField &m, int orientation) {
    const int n = a.n;
    const int p = a.degree;
    if (p < 0 || p > n) throw std::invalid_argument("hodge_star: degree out of range");
    PForm r;
    r.n = n;
    r.degree = n - p;
    r.value_dim = a.value_dim;
    auto gfn = m.g;
    const int rr = m.r, ss = m.s;
    for (std::uint32_t J : degree_masks(n, n - p)) {
        PForm acopy = a;
        const int vd = a.value_dim;
        r.comps[J] = [acopy, gfn, rr, ss, orientation, J, n, p, vd](const Vec &x) {
            CVec out(vd, cplx(0.0));
            for (int slot = 0; slot < vd; ++slot) {
                std::map<std::uint32_t, cplx> comps_at;
                for (const auto &[mask, f] : acopy.comps) comps_at[mask] = f(x)[slot];
                auto starred = star_components_at(comps_at, n, p, gfn(x), rr, ss, orientation);
                out[slot] = starred.count(J) ? starred[J] : cplx(0.0);
            }
            return out;
        };
    }
    return r;
}

PForm volume_form(const MetricField &m, int orientation) {
    const int n = m.chart.dim;
    auto gfn = m.g;
    std::map<std::uint32_t, ScalarField> comps;
    comps[(std::uint32_t(1) << n) - 1] = [gfn, orientation](const Vec &x) {
        return cplx(orientation * std::sqrt(std::abs(gfn(x).determinant().real())));
    };
    return make_scalar_form(n, n, std::move(comps));
}

PForm codifferential(const PForm &a, const MetricField &m, int orientation, double step) {
    if (a.degree < 1)
        throw std::invalid_argument("codifferential: degree >= 1 required");
    return hodge_star(ext_d(hodge_star(a, m, orientation), m.chart, step), m, orientation);
}

PForm hodge_laplacian(const PForm &a, const MetricField &m, int orientation, double step) {
    const double h = step > 0.0 ? step : m.chart.step();
    // nested derivative layers take a 2:1 step split; delta vanishes on
    // 0-forms so only delta d survives there
    const PForm delta_d = codifferential(ext_d(a, m.chart, h), m, orientation, 2.0 * h);
    if (a.degree == 0) return delta_d;
    const PForm d_delta = ext_d(codifferential(a, m, orientation, h), m.chart, 2.0 * h);
    return d_delta + delta_d;
}

std::pair<PForm, PForm> self_dual_split(const PForm &a, const MetricField &m,
                                        int orientation) {
    const int n = a.n;
    if (n % 2 != 0 || a.degree != n / 2)
        throw std::invalid_argument("self_dual_split: middle-degree form on even n required");
    const int mdeg = n / 2;
    const int sign = ((m.s + mdeg) % 2 == 0) ? 1 : -1;
    if (sign != 1)
        throw std::invalid_argument("self_dual_split: ** = -1 on this degree/signature");
    const PForm sa = hodge_star(a, m, orientation);
    return {cplx(0.5) * (a + sa), cplx(0.5) * (a - sa)};
}

cplx integrate_nform(const PForm &a, const Chart &chart, int cells_per_axis) {
    if (a.degree != chart.dim)
        throw std::invalid_argument("integrate_nform: top-degree form required");
    const std::uint32_t full = (std::uint32_t(1) << chart.dim) - 1;
    auto it = a.comps.find(full);
    if (it == a.comps.end()) return 0.0;
    const auto &f = it->second;

    double cell_vol = 1.0;
    for (int i = 0; i < chart.dim; ++i)
        cell_vol *= (chart.hi[i] - chart.lo[i]) / cells_per_axis;

    cplx acc = 0.0;
    const long total = static_cast<long>(std::pow(cells_per_axis, chart.dim));
    for (long k = 0; k < total; ++k) {
        long rem = k;
        Vec x(chart.dim);
        for (int i = 0; i < chart.dim; ++i) {
            const int ci = rem % cells_per_axis;
            rem /= cells_per_axis;
            x[i] = chart.lo[i] + (ci + 0.5) * (chart.hi[i] - chart.lo[i]) / cells_per_axis;
        }
        acc += f(x)[0];
    }
    return acc * cell_vol;
}

double sup_norm(const PForm &a, const std::vector<Vec> &points) {
    double m = 0.0;
    for (const auto &x : points)
        for (const auto &[mask, f] : a.comps) m = std::max(m, cvec_max_abs(f(x)));
    return m;
}

} // namespace gaugekit

#include "gaugekit/bundles.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <memory>

namespace gaugekit {

int Cover::index_of(const std::string &name) const {
    for (std::size_t i = 0; i < charts.size(); ++i)
        if (charts[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("Cover: unknown chart " + name);
}

bool Cover::has_overlap(int a, int b) const {
    return overlaps.count({std::min(a, b), std::max(a, b)}) > 0;
}

const std::vector<OverlapComponent> &Cover::components(int a, int b) const {
    auto it = overlaps.find({std::min(a, b), std::max(a, b)});
    if (it == overlaps.end())
        throw std::invalid_argument("Cover: charts do not overlap");
    return it->second;
}

Matrix Cocycle::matrix_at(int a, int b, const Vec &x) const {
    if (kind != GroupKind::matrix)
        throw std::invalid_argument("Cocycle: matrix value requested from finite cocycle");
    if (a == b) return Matrix::identity(dim);
    return tmat(a, b, x);
}

int Cocycle::label_at(int a, int b, const Vec &x) const {
    if (kind != GroupKind::finite)
        throw std::invalid_argument("Cocycle: label requested from matrix cocycle");
    if (a == b) return group->identity;
    return tfin(a, b, x);
}

CocycleReport validate_cocycle(const Cocycle &c) {
    CocycleReport rep;
    const int nch = static_cast<int>(c.cover.charts.size());
    for (int a = 0; a < nch; ++a)
        for (int b = a + 1; b < nch; ++b) {
            if (!c.cover.has_overlap(a, b)) continue;
            for (const auto &comp : c.cover.components(a, b))
                for (const Vec &x : comp.samples) {
                    ++rep.checked_points;
                    if (c.kind == GroupKind::finite) {
                        const int ab = c.label_at(a, b, x);
                        const int ba = c.label_at(b, a, x);
                        if (c.group->mul(ba, ab) != c.group->identity)
                            rep.inverse_residual = 1.0;
                    } else {
                        const Matrix prod = c.matrix_at(b, a, x) * c.matrix_at(a, b, x);
                        rep.inverse_residual = std::max(
                            rep.inverse_residual,
                            distance(prod, Matrix::identity(c.dim)));
                    }
                }
        }
    for (const auto &[key, samples] : c.cover.triples) {
        const auto [a, b, g] = key;
        for (const Vec &x : samples) {
            ++rep.checked_points;
            if (c.kind == GroupKind::finite) {
                const int prod = c.group->mul(
                    c.group->mul(c.label_at(a, b, x), c.label_at(b, g, x)),
                    c.label_at(g, a, x));
                if (prod != c.group->identity) rep.triple_residual = 1.0;
            } else {
                const Matrix prod =
                    c.matrix_at(a, b, x) * c.matrix_at(b, g, x) * c.matrix_at(g, a, x);
                rep.triple_residual = std::max(
                    rep.triple_residual, distance(prod, Matrix::identity(c.dim)));
            }
        }
    }
    return rep;
}

CoboundaryResult is_coboundary(const Cocycle &c) {
    CoboundaryResult r;
    if (c.kind != GroupKind::finite) {
        r.status = CoboundaryStatus::unsupported;
        return r;
    }
    const int nch = static_cast<int>(c.cover.charts.size());
    const int order = c.group->order;
    std::vector<int> assign(nch, 0);

    auto matches = [&]() {
        for (int a = 0; a < nch; ++a)
            for (int b = 0; b < nch; ++b) {
                if (a == b || !c.cover.has_overlap(a, b)) continue;
                const int expected = c.group->mul(assign[a], c.group->inv(assign[b]));
                for (const auto &comp : c.cover.components(a, b))
                    for (const Vec &x : comp.samples)
                        if (c.label_at(a, b, x) != expected) return false;
            }
        return true;
    };

    long long total = 1;
    for (int i = 0; i < nch; ++i) total *= order;
    for (long long k = 0; k < total; ++k) {
        long long rem = k;
        for (int i = 0; i < nch; ++i) {
            assign[i] = static_cast<int>(rem % order);
            rem /= order;
        }
        ++r.assignments_tried;
        if (matches()) {
            r.status = CoboundaryStatus::coboundary;
            r.witness = assign;
            return r;
        }
    }
    r.status = CoboundaryStatus::not_coboundary;
    return r;
}

Cocycle apply_gauge_cochain(const Cocycle &c, const Cochain &phi) {
    if (phi.kind != c.kind)
        throw std::invalid_argument("apply_gauge_cochain: group kind mismatch");
    Cocycle out = c;
    if (c.kind == GroupKind::finite) {
        if (phi.fin.size() != c.cover.charts.size())
            throw std::invalid_argument("apply_gauge_cochain: one label per chart required");
        const FiniteGroup g = *c.group;
        auto base = c.tfin;
        auto labels = phi.fin;
        out.tfin = [g, base, labels](int a, int b, const Vec &x) {
            return g.mul(g.mul(labels[a], base(a, b, x)), g.inv(labels[b]));
        };
    } else {
        if (phi.mat.size() != c.cover.charts.size())
            throw std::invalid_argument("apply_gauge_cochain: one field per chart required");
        auto base = c.tmat;
        auto fields = phi.mat;
        out.tmat = [base, fields](int a, int b, const Vec &x) {
            return fields[a](x) * base(a, b, x) * fields[b](x).inverse();
        };
    }
    return out;
}

namespace {

Cocycle derive(const Cocycle &c, std::function<Matrix(const Matrix &)> f, int new_dim) {
    if (c.kind != GroupKind::matrix)
        throw std::invalid_argument("derived cocycle: matrix cocycle required");
    Cocycle out = c;
    out.dim = new_dim;
    auto base = c.tmat;
    out.tmat = [base, f](int a, int b, const Vec &x) { return f(base(a, b, x)); };
    return out;
}

} // namespace

Cocycle dual_cocycle(const Cocycle &c) {
    return derive(c, [](const Matrix &m) { return m.inverse().transpose(); }, c.dim);
}

Cocycle tensor_cocycle(const Cocycle &c1, const Cocycle &c2) {
    if (c1.kind != GroupKind::matrix || c2.kind != GroupKind::matrix)
        throw std::invalid_argument("tensor_cocycle: matrix cocycles required");
    Cocycle out = c1;
    out.dim = c1.dim * c2.dim;
    auto t1 = c1.tmat, t2 = c2.tmat;
    out.tmat = [t1, t2](int a, int b, const Vec &x) {
        return kron(t1(a, b, x), t2(a, b, x));
    };
    return out;
}

Matrix exterior_power_matrix(const Matrix &m, int p) {
    const int n = static_cast<int>(m.rows());
    const auto masks = degree_masks(n, p);
    Matrix out(masks.size(), masks.size());
    for (std::size_t I = 0; I < masks.size(); ++I)
        for (std::size_t J = 0; J < masks.size(); ++J) {
            std::vector<int> rows, cols;
            for (std::uint32_t t = masks[I]; t; t &= t - 1)
                rows.push_back(std::countr_zero(t));
            for (std::uint32_t t = masks[J]; t; t &= t - 1)
                cols.push_back(std::countr_zero(t));
            Matrix sub(p, p);
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) sub(i, j) = m(rows[i], cols[j]);
            out(I, J) = (p == 0) ? cplx(1.0) : sub.determinant();
        }
    return out;
}

Cocycle exterior_power_cocycle(const Cocycle &c, int p) {
    const auto masks = degree_masks(c.dim, p);
    return derive(c, [p](const Matrix &m) { return exterior_power_matrix(m, p); },
                  static_cast<int>(masks.size()));
}

Cocycle density_cocycle(const Cocycle &c, double weight) {
    return derive(c,
                  [weight](const Matrix &m) {
                      Matrix r(1, 1);
                      r(0, 0) = std::pow(std::abs(m.determinant()), -weight);
                      return r;
                  },
                  1);
}

Cocycle representation_cocycle(const Cocycle &c, std::function<Matrix(const Matrix &)> R,
                               int rep_dim) {
    return derive(c, std::move(R), rep_dim);
}

CompField section_transition(const CompField &s, const Cocycle &c, int from, int to) {
    if (c.kind != GroupKind::matrix)
        throw std::invalid_argument("section_transition: matrix cocycle required");
    if (from != to && !c.cover.has_overlap(from, to))
        throw std::invalid_argument("section_transition: charts do not overlap");
    auto t = c.tmat;
    const int dim = c.dim;
    return [s, t, from, to, dim](const Vec &x) {
        if (from == to) return s(x);
        const CVec v = s(x);
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("section_transition: fiber dimension mismatch");
        return t(to, from, x).apply(v);
    };
}

CbgElement cbg_identity(std::size_t base_dim, std::size_t fiber_dim) {
    CbgElement e;
    e.J = Matrix::identity(base_dim);
    e.g = Matrix::identity(fiber_dim);
    e.L.assign(base_dim, Matrix::zero(fiber_dim, fiber_dim));
    return e;
}

CbgElement cbg_mul(const CbgElement &a, const CbgElement &b) {
    const std::size_t n = a.L.size();
    if (b.L.size() != n) throw std::invalid_argument("cbg_mul: base dimension mismatch");
    CbgElement r;
    r.J = a.J * b.J;
    r.g = a.g * b.g;
    const Matrix ginv = a.g.inverse();
    r.L.reserve(n);
    // L''_i = Ad_{g_a} L'_i + sum_j (J_b)^j_i L_j ; the J_b mixing keeps
    // cbg_act(ab, K) = cbg_act(a, cbg_act(b, K)) exact
    for (std::size_t i = 0; i < n; ++i) {
        Matrix term = a.g * b.L[i] * ginv;
        for (std::size_t j = 0; j < n; ++j) term += b.J(j, i) * a.L[j];
        r.L.push_back(term);
    }
    return r;
}

std::vector<Matrix> cbg_act(const CbgElement &a, const std::vector<Matrix> &K) {
    const std::size_t n = a.L.size();
    if (K.size() != n) throw std::invalid_argument("cbg_act: base dimension mismatch");
    const Matrix ginv = a.g.inverse();
    const Matrix Jinv = a.J.inverse();
    std::vector<Matrix> M;
    M.reserve(n);
    for (std::size_t j = 0; j < n; ++j) M.push_back(a.g * K[j] * ginv + a.L[j]);
    std::vector<Matrix> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix acc = Matrix::zero(a.g.rows(), a.g.cols());
        for (std::size_t j = 0; j < n; ++j) acc += Jinv(j, i) * M[j];
        out.push_back(acc);
    }
    return out;
}

// --- fixtures ---

namespace {

/// Two arcs over the circle with overlap components around +-pi/2,
/// sampled in the angle coordinate of the first chart.
Cover circle_two_arc_cover() {
    Cover cov;
    cov.charts = {"U1", "U2"};
    OverlapComponent w1{"W1", {{1.3}, {1.5708}, {1.8}}};
    OverlapComponent w2{"W2", {{-1.3}, {-1.5708}, {-1.8}}};
    cov.overlaps[{0, 1}] = {w1, w2};
    return cov;
}

int z2_double_cover_label(int, int, const Vec &x) {
    // +1 on the component around +pi/2, -1 on the one around -pi/2
    return x[0] > 0 ? 0 : 1;
}

} // namespace

Cocycle double_cover_cocycle() {
    Cocycle c;
    c.kind = GroupKind::finite;
    c.cover = circle_two_arc_cover();
    c.group = cyclic_group(2);
    c.tfin = z2_double_cover_label;
    return c;
}

Cocycle constant_minus_cocycle() {
    Cocycle c = double_cover_cocycle();
    c.tfin = [](int, int, const Vec &) { return 1; };
    return c;
}

Cocycle moebius_cocycle() {
    // same gluing data as the double cover, read as acting by +-1 on [-1,1]
    Cocycle c = double_cover_cocycle();
    for (auto &comp : c.cover.overlaps[{0, 1}]) comp.name = "moebius-" + comp.name;
    return c;
}

Cocycle jacobian_polar_cocycle() {
    Cocycle c;
    c.kind = GroupKind::matrix;
    c.dim = 2;
    c.cover.charts = {"cart", "polar"};
    OverlapComponent sector{"annulus", {}};
    for (double r : {0.8, 1.0, 1.3, 1.7})
        for (double th : {-2.0, -1.0, -0.3, 0.4, 1.2, 2.2})
            sector.samples.push_back({r * std::cos(th), r * std::sin(th)});
    c.cover.overlaps[{0, 1}] = {sector};

    // sample points carry cartesian coordinates; Jacobians by
    // Richardson-extrapolated central differences
    const double h = 1e-4;
    auto jac = [h](const std::function<std::array<double, 2>(double, double)> &f, double u,
                   double v) {
        Matrix j(2, 2);
        auto central = [&](int col, double step) {
            const double du = col == 0 ? step : 0.0, dv = col == 1 ? step : 0.0;
            const auto p = f(u + du, v + dv);
            const auto m = f(u - du, v - dv);
            return std::array<double, 2>{(p[0] - m[0]) / (2.0 * step),
                                         (p[1] - m[1]) / (2.0 * step)};
        };
        for (int col = 0; col < 2; ++col) {
            const auto d1 = central(col, h);
            const auto d2 = central(col, h / 2.0);
            for (int row = 0; row < 2; ++row)
                j(row, col) = (4.0 * d2[row] - d1[row]) / 3.0;
        }
        return j;
    };
    c.tmat = [jac](int a, int b, const Vec &x) {
        if (a == 1 && b == 0) {
            // d(r,theta)/d(x,y)
            return jac(
                [](double X, double Y) {
                    return std::array<double, 2>{std::hypot(X, Y), std::atan2(Y, X)};
                },
                x[0], x[1]);
        }
        if (a == 0 && b == 1) {
            // d(x,y)/d(r,theta) at the same base point
            const double r = std::hypot(x[0], x[1]), th = std::atan2(x[1], x[0]);
            return jac(
                [](double R, double T) {
                    return std::array<double, 2>{R * std::cos(T), R * std::sin(T)};
                },
                r, th);
        }
        throw std::invalid_argument("jacobian_polar_cocycle: unknown pair");
    };
    return c;
}

// --- JSON fixtures ---

namespace {

using nlohmann::json;

Vec to_vec(const json &arr) {
    Vec v;
    for (const auto &x : arr) v.push_back(x.get<double>());
    return v;
}

Matrix to_matrix(const json &arr, int dim) {
    if (static_cast<int>(arr.size()) != dim * dim)
        throw std::invalid_argument("cocycle json: matrix entry count != dim^2");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = arr[i * dim + j].get<double>();
    return m;
}

struct FileEntry {
    int a, b;
    std::vector<std::vector<Vec>> samples;  // per component
    std::vector<int> labels;
    std::vector<Matrix> mats;
    std::vector<int> rev_labels;
    std::vector<Matrix> rev_mats;
};

} // namespace

Cocycle load_cocycle_json(const std::string &text) {
    const json j = json::parse(text);
    Cocycle c;

    const auto &grp = j.at("group");
    const std::string kind = grp.at("kind").get<std::string>();
    if (kind == "cyclic") {
        c.kind = GroupKind::finite;
        c.group = cyclic_group(grp.at("order").get<int>());
    } else if (kind == "finite") {
        c.kind = GroupKind::finite;
        c.group = make_group(grp.at("cayley").get<std::vector<std::vector<int>>>());
    } else if (kind == "matrix") {
        c.kind = GroupKind::matrix;
        c.dim = grp.at("dim").get<int>();
    } else {
        throw std::invalid_argument("cocycle json: unknown group kind " + kind);
    }

    for (const auto &name : j.at("charts")) c.cover.charts.push_back(name.get<std::string>());

    auto entries = std::make_shared<std::vector<FileEntry>>();

    for (const auto &ov : j.at("overlaps")) {
        FileEntry e;
        e.a = c.cover.index_of(ov.at("pair")[0].get<std::string>());
        e.b = c.cover.index_of(ov.at("pair")[1].get<std::string>());
        std::vector<OverlapComponent> comps;
        for (const auto &comp : ov.at("components")) {
            OverlapComponent oc;
            oc.name = comp.value("name", "");
            for (const auto &s : comp.at("samples")) oc.samples.push_back(to_vec(s));
            comps.push_back(oc);
            e.samples.push_back(comps.back().samples);
            if (c.kind == GroupKind::finite) {
                const int v = comp.at("value").get<int>();
                e.labels.push_back(v);
                e.rev_labels.push_back(comp.contains("reverse_value")
                                           ? comp.at("reverse_value").get<int>()
                                           : c.group->inv(v));
            } else {
                const Matrix m = to_matrix(comp.at("matrix"), c.dim);
                e.mats.push_back(m);
                e.rev_mats.push_back(comp.contains("reverse_matrix")
                                         ? to_matrix(comp.at("reverse_matrix"), c.dim)
                                         : m.inverse());
            }
        }
        c.cover.overlaps[{std::min(e.a, e.b), std::max(e.a, e.b)}] = comps;
        entries->push_back(std::move(e));
    }

    if (j.contains("triples"))
        for (const auto &t : j.at("triples")) {
            const int a = c.cover.index_of(t.at("charts")[0].get<std::string>());
            const int b = c.cover.index_of(t.at("charts")[1].get<std::string>());
            const int g = c.cover.index_of(t.at("charts")[2].get<std::string>());
            std::vector<Vec> samples;
            for (const auto &s : t.at("samples")) samples.push_back(to_vec(s));
            c.cover.triples[{a, b, g}] = samples;
        }

    // piecewise constant: the nearest declared sample decides the component
    auto locate = [entries](int a, int b,
                            const Vec &x) -> std::tuple<const FileEntry *, int, bool> {
        for (const auto &e : *entries) {
            const bool fwd = (e.a == a && e.b == b);
            const bool rev = (e.a == b && e.b == a);
            if (!fwd && !rev) continue;
            int best_comp = -1;
            double best_d = std::numeric_limits<double>::max();
            for (std::size_t k = 0; k < e.samples.size(); ++k)
                for (const Vec &s : e.samples[k]) {
                    double d = 0.0;
                    for (std::size_t i = 0; i < s.size() && i < x.size(); ++i)
                        d += (s[i] - x[i]) * (s[i] - x[i]);
                    if (d < best_d) { best_d = d; best_comp = static_cast<int>(k); }
                }
            return {&e, best_comp, fwd};
        }
        throw std::invalid_argument("cocycle json: pair has no overlap entry");
    };

    if (c.kind == GroupKind::finite) {
        c.tfin = [locate](int a, int b, const Vec &x) {
            const auto [e, comp, fwd] = locate(a, b, x);
            return fwd ? e->labels[comp] : e->rev_labels[comp];
        };
    } else {
        c.tmat = [locate](int a, int b, const Vec &x) {
            const auto [e, comp, fwd] = locate(a, b, x);
            return fwd ? e->mats[comp] : e->rev_mats[comp];
        };
    }
    return c;
}

Cocycle load_cocycle_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_cocycle_file: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_cocycle_json(text);
}

} // namespace gaugekit

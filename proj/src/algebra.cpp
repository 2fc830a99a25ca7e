#include "gaugekit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace gaugekit {

FiniteGroup make_group(std::vector<std::vector<int>> cayley) {
    FiniteGroup g;
    g.order = static_cast<int>(cayley.size());
    g.cayley = std::move(cayley);
    const int n = g.order;
    if (n == 0) throw std::invalid_argument("make_group: empty table");
    for (const auto &row : g.cayley) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("make_group: table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw std::invalid_argument("make_group: index out of range");
    }
    // identity
    g.identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = g.cayley[e][x] == x && g.cayley[x][e] == x;
        if (ok) { g.identity = e; break; }
    }
    if (g.identity < 0) throw std::invalid_argument("make_group: no identity element");
    // inverses
    g.inverse.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (g.cayley[x][y] == g.identity && g.cayley[y][x] == g.identity) {
                g.inverse[x] = y;
                break;
            }
        if (g.inverse[x] < 0) throw std::invalid_argument("make_group: missing inverse");
    }
    // associativity on all triples
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.cayley[g.cayley[a][b]][c] != g.cayley[a][g.cayley[b][c]])
                    throw std::invalid_argument("make_group: not associative");
    return g;
}

FiniteGroup cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return make_group(std::move(t));
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric_group: 1 <= n <= 5");
    const auto perms = all_permutations(n);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    const int m = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> ab(n);
            for (int x = 0; x < n; ++x) ab[x] = perms[a][perms[b][x]];
            t[a][b] = index[ab];
        }
    return make_group(std::move(t));
}

FiniteAction make_action(FiniteGroup group, std::vector<std::vector<int>> table) {
    FiniteAction a;
    a.group = std::move(group);
    a.table = std::move(table);
    if (static_cast<int>(a.table.size()) != a.group.order)
        throw std::invalid_argument("make_action: one row per group element required");
    a.num_points = a.table.empty() ? 0 : static_cast<int>(a.table[0].size());
    for (const auto &row : a.table) {
        if (static_cast<int>(row.size()) != a.num_points)
            throw std::invalid_argument("make_action: ragged table");
        for (int v : row)
            if (v < 0 || v >= a.num_points)
                throw std::invalid_argument("make_action: point out of range");
    }
    for (int x = 0; x < a.num_points; ++x)
        if (a.act(a.group.identity, x) != x)
            throw std::invalid_argument("make_action: identity does not fix points");
    for (int g = 0; g < a.group.order; ++g)
        for (int h = 0; h < a.group.order; ++h)
            for (int x = 0; x < a.num_points; ++x)
                if (a.act(g, a.act(h, x)) != a.act(a.group.mul(g, h), x))
                    throw std::invalid_argument("make_action: composition axiom fails");
    return a;
}

FiniteAction natural_action(const FiniteGroup &sym_group, int n) {
    const auto perms = all_permutations(n);
    if (static_cast<int>(perms.size()) != sym_group.order)
        throw std::invalid_argument("natural_action: group order != n!");
    std::vector<std::vector<int>> t(perms.size());
    for (std::size_t g = 0; g < perms.size(); ++g) t[g] = perms[g];
    return make_action(sym_group, std::move(t));
}

FiniteAction trivial_action(const FiniteGroup &g, int num_points) {
    std::vector<std::vector<int>> t(g.order, std::vector<int>(num_points));
    for (auto &row : t) std::iota(row.begin(), row.end(), 0);
    return make_action(g, std::move(t));
}

std::vector<std::vector<int>> orbits(const FiniteAction &a) {
    std::vector<bool> seen(a.num_points, false);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < a.num_points; ++x) {
        if (seen[x]) continue;
        std::vector<int> orbit;
        for (int g = 0; g < a.group.order; ++g) {
            const int y = a.act(g, x);
            if (!seen[y]) { seen[y] = true; orbit.push_back(y); }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

std::vector<int> stabilizer(const FiniteAction &a, int x) {
    if (x < 0 || x >= a.num_points) throw std::invalid_argument("stabilizer: bad point");
    std::vector<int> k;
    for (int g = 0; g < a.group.order; ++g)
        if (a.act(g, x) == x) k.push_back(g);
    return k;
}

bool conjugacy_check(const FiniteAction &a, int x, int g) {
    // K_{g.x} = g K_x g^-1, element by element
    const auto kx = stabilizer(a, x);
    const auto ky = stabilizer(a, a.act(g, x));
    std::vector<int> conj;
    conj.reserve(kx.size());
    for (int h : kx) conj.push_back(a.group.mul(a.group.mul(g, h), a.group.inv(g)));
    std::sort(conj.begin(), conj.end());
    return conj == ky;
}

CosetEquivalence coset_action_equivalence(const FiniteAction &a, int x) {
    CosetEquivalence r;
    r.stabilizer = stabilizer(a, x);
    const int n = a.group.order;

    auto coset_of = [&](int g) {
        std::vector<int> c;
        c.reserve(r.stabilizer.size());
        for (int k : r.stabilizer) c.push_back(a.group.mul(g, k));
        std::sort(c.begin(), c.end());
        return c;
    };

    std::map<std::vector<int>, int> coset_index;
    std::vector<int> rep_of_coset;
    for (int g = 0; g < n; ++g) {
        auto c = coset_of(g);
        if (!coset_index.count(c)) {
            coset_index[c] = static_cast<int>(r.cosets.size());
            r.cosets.push_back(c);
            rep_of_coset.push_back(g);
        }
    }

    // f(a.x) = aK_x must be independent of the representative
    r.coset_of_point.assign(a.num_points, -1);
    for (int g = 0; g < n; ++g) {
        const int y = a.act(g, x);
        const int c = coset_index[coset_of(g)];
        if (r.coset_of_point[y] == -1) {
            r.coset_of_point[y] = c;
        } else if (r.coset_of_point[y] != c) {
            r.failure = "map a.x -> aK not well defined at point " + std::to_string(y);
            return r;
        }
    }

    // equivariance f(g.y) = g.f(y) over the entire orbit
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int y = a.act(h, x);
            const int lhs = r.coset_of_point[a.act(g, y)];
            const int rep = rep_of_coset[r.coset_of_point[y]];
            const int rhs = coset_index[coset_of(a.group.mul(g, rep))];
            if (lhs != rhs) {
                r.failure = "equivariance fails at (g,y)=(" + std::to_string(g) + "," +
                            std::to_string(y) + ")";
                return r;
            }
        }
    r.ok = true;
    return r;
}

Matrix mat_exp(const Matrix &L, double t) {
    if (!L.is_finite()) throw std::invalid_argument("mat_exp: non-finite entries");
    if (L.rows() != L.cols()) throw std::invalid_argument("mat_exp: square matrix required");
    Matrix X = L * cplx(t);
    int squarings = 0;
    double nrm = X.max_abs() * static_cast<double>(X.rows());
    while (nrm > 0.5) {
        X = X * cplx(0.5);
        nrm *= 0.5;
        ++squarings;
    }
    // degree-13 Taylor: remainder < 1e-14 once the scaled norm is <= 1/2
    Matrix term = Matrix::identity(X.rows());
    Matrix sum = term;
    for (int k = 1; k <= 13; ++k) {
        term = term * X * cplx(1.0 / k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

Matrix mat_log_near_identity(const Matrix &T) {
    const Matrix X = T - Matrix::identity(T.rows());
    if (X.max_abs() * static_cast<double>(T.rows()) > 0.5)
        throw std::invalid_argument("mat_log_near_identity: operator too far from identity");
    Matrix term = X;
    Matrix sum = X;
    for (int k = 2; k <= 40; ++k) {
        term = term * X;
        sum += term * cplx(((k % 2) ? 1.0 : -1.0) / k);
        if (term.max_abs() / k < 1e-17) break;
    }
    return sum;
}

Matrix adjoint(const Matrix &g, const Matrix &L) { return g * L * g.inverse(); }

Matrix bracket(const Matrix &L, const Matrix &K) { return commutator(L, K); }

Matrix bch3(const Matrix &a, const Matrix &b) {
    const Matrix ab = bracket(a, b);
    return a + b + ab * cplx(0.5) +
           (bracket(a, ab) + bracket(b, bracket(b, a))) * cplx(1.0 / 12.0);
}

Matrix rep_derivative(const Representation &R, const Matrix &L, double h, bool richardson) {
    if (!(h > 1e-300)) throw std::invalid_argument("rep_derivative: step underflow");
    auto central = [&](double step) {
        return (R(mat_exp(L, step)) - R(mat_exp(L, -step))) * cplx(1.0 / (2.0 * step));
    };
    if (!richardson) return central(h);
    const Matrix d1 = central(h);
    const Matrix d2 = central(h / 2.0);
    return d2 * cplx(4.0 / 3.0) - d1 * cplx(1.0 / 3.0);
}

Matrix signature_eta(int r, int s) {
    Matrix eta(r + s, r + s);
    for (int i = 0; i < r + s; ++i) eta(i, i) = (i < r) ? 1.0 : -1.0;
    return eta;
}

double orthogonal_residual(const Matrix &lambda, int r, int s) {
    const Matrix eta = signature_eta(r, s);
    return (lambda * eta * lambda.transpose() - eta).max_abs();
}

double anti_hermitian_residual(const Matrix &L) {
    return (L + L.adjoint()).max_abs();
}

} // namespace gaugekit

#include "gaugekit/clifford.hpp"

#include <algorithm>
#include <cmath>

namespace gaugekit {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

/// Product of basis blades a and b: resulting mask is a^b, sign from the
/// transposition count plus one factor e_i^2 = -q(e_i) per common index.
std::pair<std::uint32_t, cplx> blade_mul(Signature sig, std::uint32_t a, std::uint32_t b) {
    cplx coeff = reorder_sign(a, b);
    std::uint32_t common = a & b;
    while (common) {
        const int i = std::countr_zero(common);
        coeff *= -sig.q(i);
        common &= common - 1;
    }
    return {a ^ b, coeff};
}

} // namespace

CliffordElement::CliffordElement(Signature sig, ScalarKind kind)
    : sig_(sig), kind_(kind), c_(std::size_t(1) << sig.n(), cplx(0.0)) {
    if (sig.r < 0 || sig.s < 0 || sig.n() > 12)
        throw std::invalid_argument("CliffordElement: signature out of range (n <= 12)");
}

CliffordElement CliffordElement::scalar(Signature sig, cplx c) {
    CliffordElement e(sig);
    e.set(0, c);
    return e;
}

CliffordElement CliffordElement::basis_vector(Signature sig, int i) {
    if (i < 0 || i >= sig.n()) throw std::invalid_argument("basis_vector: index out of range");
    return blade(sig, std::uint32_t(1) << i);
}

CliffordElement CliffordElement::blade(Signature sig, std::uint32_t mask, cplx c) {
    CliffordElement e(sig);
    if (mask >= (std::uint32_t(1) << sig.n()))
        throw std::invalid_argument("blade: mask out of range");
    e.set(mask, c);
    return e;
}

CliffordElement CliffordElement::from_vector(Signature sig, const CVec &v) {
    if (static_cast<int>(v.size()) != sig.n())
        throw std::invalid_argument("from_vector: size mismatch");
    CliffordElement e(sig);
    for (int i = 0; i < sig.n(); ++i) e.set(std::uint32_t(1) << i, v[i]);
    return e;
}

CliffordElement CliffordElement::operator+(const CliffordElement &o) const {
    if (!(sig_ == o.sig_)) throw std::invalid_argument("Clifford+: signature mismatch");
    CliffordElement r = *this;
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] += o.c_[m];
    return r;
}

CliffordElement CliffordElement::operator-(const CliffordElement &o) const {
    if (!(sig_ == o.sig_)) throw std::invalid_argument("Clifford-: signature mismatch");
    CliffordElement r = *this;
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] -= o.c_[m];
    return r;
}

CliffordElement CliffordElement::operator*(const CliffordElement &o) const {
    return clifford_product(*this, o);
}

CliffordElement CliffordElement::operator*(cplx s) const {
    CliffordElement r = *this;
    for (auto &x : r.c_) x *= s;
    return r;
}

CliffordElement CliffordElement::alpha() const {
    CliffordElement r = *this;
    for (std::uint32_t m = 0; m < c_.size(); ++m)
        if (bit_count(m) & 1) r.c_[m] = -r.c_[m];
    return r;
}

CliffordElement CliffordElement::reverse() const {
    CliffordElement r = *this;
    for (std::uint32_t m = 0; m < c_.size(); ++m) {
        const int p = bit_count(m);
        if (((p * (p - 1)) / 2) & 1) r.c_[m] = -r.c_[m];
    }
    return r;
}

CliffordElement CliffordElement::grade_part(int p) const {
    CliffordElement r(sig_, kind_);
    for (std::uint32_t m = 0; m < c_.size(); ++m)
        if (bit_count(m) == p) r.c_[m] = c_[m];
    return r;
}

std::pair<CliffordElement, CliffordElement> CliffordElement::even_odd() const {
    CliffordElement even(sig_, kind_), odd(sig_, kind_);
    for (std::uint32_t m = 0; m < c_.size(); ++m)
        ((bit_count(m) & 1) ? odd : even).c_[m] = c_[m];
    return {even, odd};
}

CliffordElement CliffordElement::inverse(double tol) const {
    const CliffordElement prod = *this * reverse();
    const cplx c = prod.coeff(0);
    double residue = 0.0;
    for (std::uint32_t m = 1; m < c_.size(); ++m)
        residue = std::max(residue, std::abs(prod.coeff(m)));
    if (std::abs(c) < tol || residue > tol * std::abs(c))
        throw std::runtime_error("CliffordElement::inverse: not an invertible versor");
    return reverse() * (cplx(1.0) / c);
}

CVec CliffordElement::vector_part() const {
    CVec v(sig_.n());
    for (int i = 0; i < sig_.n(); ++i) v[i] = c_[std::uint32_t(1) << i];
    return v;
}

double CliffordElement::max_abs() const {
    double m = 0.0;
    for (const auto &x : c_) m = std::max(m, std::abs(x));
    return m;
}

double CliffordElement::nonvector_residue() const {
    double m = 0.0;
    for (std::uint32_t k = 0; k < c_.size(); ++k)
        if (bit_count(k) != 1) m = std::max(m, std::abs(c_[k]));
    return m;
}

bool CliffordElement::is_real(double tol) const {
    for (const auto &x : c_)
        if (std::abs(x.imag()) > tol) return false;
    return true;
}

CliffordElement clifford_product(const CliffordElement &a, const CliffordElement &b) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("clifford_product: signature mismatch");
    if (a.kind() != b.kind())
        throw std::invalid_argument("clifford_product: scalar kind mismatch");
    CliffordElement r(a.signature(), a.kind());
    const std::uint32_t dim = a.dim();
    for (std::uint32_t ma = 0; ma < dim; ++ma) {
        const cplx ca = a.coeff(ma);
        if (ca == cplx(0.0)) continue;
        for (std::uint32_t mb = 0; mb < dim; ++mb) {
            const cplx cb = b.coeff(mb);
            if (cb == cplx(0.0)) continue;
            const auto [mask, sign] = blade_mul(a.signature(), ma, mb);
            r.set(mask, r.coeff(mask) + sign * ca * cb);
        }
    }
    return r;
}

CliffordElement volume_element(Signature sig, int orientation) {
    const int n = sig.n();
    const int expo = sig.r + (n * (n - 1)) / 2;
    // eta^2 = (-1)^expo; pick the i-power that squares that away
    cplx factor = (expo % 2 == 0) ? cplx(1.0) : I_UNIT;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    CliffordElement omega = CliffordElement::blade(sig, full, factor);
    if (orientation < 0) omega = -omega;
    return omega;
}

std::pair<CliffordElement, CliffordElement> idempotents(Signature sig, int orientation) {
    const CliffordElement omega = volume_element(sig, orientation);
    const CliffordElement one = CliffordElement::scalar(sig, 1.0);
    return {(one + omega) * cplx(0.5), (one - omega) * cplx(0.5)};
}

PinElement pin_from_vectors(Signature sig, const std::vector<CVec> &factors, double tol) {
    PinElement p;
    p.sig = sig;
    p.factors = factors;
    p.value = CliffordElement::scalar(sig, 1.0);
    for (const auto &v : factors) {
        const CliffordElement ev = CliffordElement::from_vector(sig, v);
        const cplx q = -(ev * ev).coeff(0);  // q(v) = -v^2
        if (std::abs(std::abs(q) - 1.0) > tol)
            throw std::invalid_argument("pin_from_vectors: factor with q(v) != +/-1");
        p.value = p.value * ev;
    }
    return p;
}

CVec reflect(Signature sig, const CVec &v, const CVec &w) {
    cplx beta_wv = 0.0, qv = 0.0;
    for (int i = 0; i < sig.n(); ++i) {
        beta_wv += sig.q(i) * w[i] * v[i];
        qv += sig.q(i) * v[i] * v[i];
    }
    CVec r = w;
    const cplx f = 2.0 * beta_wv / qv;
    for (int i = 0; i < sig.n(); ++i) r[i] -= f * v[i];
    return r;
}

CVec twisted_adjoint(const CliffordElement &phi, const CVec &w, double *nonvector_residue) {
    const CliffordElement ew = CliffordElement::from_vector(phi.signature(), w);
    const CliffordElement out = phi.alpha() * ew * phi.inverse();
    if (nonvector_residue) *nonvector_residue = out.nonvector_residue();
    return out.vector_part();
}

Matrix pin_to_orthogonal(const CliffordElement &phi) {
    const int n = phi.signature().n();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        CVec e(n, cplx(0.0));
        e[i] = 1.0;
        const CVec img = twisted_adjoint(phi, e);
        for (int j = 0; j < n; ++j) m(j, i) = img[j];
    }
    return m;
}

bool double_cover_check(const CliffordElement &phi, double tol) {
    return distance(pin_to_orthogonal(phi), pin_to_orthogonal(-phi)) <= tol;
}

Matrix MatrixRep::act(const CliffordElement &a) const {
    if (!(a.signature() == sig)) throw std::invalid_argument("MatrixRep::act: signature mismatch");
    const std::size_t d = gamma.empty() ? 1 : gamma[0].rows();
    Matrix out(d, d);
    for (std::uint32_t m = 0; m < std::uint32_t(a.dim()); ++m) {
        const cplx c = a.coeff(m);
        if (c == cplx(0.0)) continue;
        Matrix blade = Matrix::identity(d);
        std::uint32_t rest = m;
        while (rest) {
            const int i = std::countr_zero(rest);
            blade = blade * gamma[i];
            rest &= rest - 1;
        }
        out += blade * c;
    }
    return out;
}

namespace {

Matrix sigma(int k) {
    Matrix m(2, 2);
    switch (k) {
        case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 2: m(0, 1) = -I_UNIT; m(1, 0) = I_UNIT; break;
        case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw std::invalid_argument("sigma: k in 1..3");
    }
    return m;
}

/// Hermitian anticommuting generators g_1..g_n with g_i^2 = I, as
/// Kronecker words in the Pauli matrices on floor(n/2) slots. For odd n
/// the last generator is the full sigma^3 word, so n = 3 lands exactly
/// on sigma^1, sigma^2, sigma^3.
std::vector<Matrix> hermitian_generators(int n) {
    const int m = n / 2;
    std::vector<Matrix> g;
    for (int k = 1; k <= 2 * m; ++k) {
        Matrix word(1, 1);
        word(0, 0) = 1.0;
        const int slot = (k - 1) / 2;
        for (int j = 0; j < m; ++j) {
            Matrix factor;
            if (j < slot) factor = sigma(3);
            else if (j == slot) factor = (k % 2 == 1) ? sigma(1) : sigma(2);
            else factor = Matrix::identity(2);
            word = kron(word, factor);
        }
        g.push_back(word);
    }
    if (n % 2 == 1) {
        Matrix word(1, 1);
        word(0, 0) = 1.0;
        for (int j = 0; j < m; ++j) word = kron(word, sigma(3));
        g.push_back(word);
    }
    return g;
}

} // namespace

MatrixRep pauli_rep() {
    MatrixRep rep;
    rep.sig = Signature{0, 3};
    rep.gamma = {sigma(1), sigma(2), sigma(3)};
    rep.tag = "pauli";
    return rep;
}

MatrixRep constructed_gamma_rep(Signature sig) {
    const int n = sig.n();
    if (n < 1 || n > 8)
        throw std::invalid_argument("constructed_gamma_rep: 1 <= n <= 8");
    MatrixRep rep;
    rep.sig = sig;
    rep.tag = "constructed";
    const auto g = hermitian_generators(n);
    for (int i = 0; i < n; ++i)
        rep.gamma.push_back(sig.q(i) > 0 ? g[i] * I_UNIT : g[i]);
    return rep;
}

MatrixRep left_regular_rep(Signature sig) {
    const int n = sig.n();
    if (n > 6) throw std::invalid_argument("left_regular_rep: n <= 6");
    MatrixRep rep;
    rep.sig = sig;
    rep.tag = "left-regular";
    const std::uint32_t dim = std::uint32_t(1) << n;
    for (int i = 0; i < n; ++i) {
        Matrix m(dim, dim);
        const CliffordElement ei = CliffordElement::basis_vector(sig, i);
        for (std::uint32_t col = 0; col < dim; ++col) {
            const CliffordElement img = ei * CliffordElement::blade(sig, col);
            for (std::uint32_t row = 0; row < dim; ++row) m(row, col) = img.coeff(row);
        }
        rep.gamma.push_back(m);
    }
    return rep;
}

double rep_relations_residual(const MatrixRep &rep) {
    const int n = rep.sig.n();
    const std::size_t d = rep.gamma[0].rows();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double beta = (i == j) ? rep.sig.q(i) : 0.0;
            const Matrix lhs = rep.gamma[i] * rep.gamma[j] + rep.gamma[j] * rep.gamma[i] +
                               Matrix::identity(d) * cplx(2.0 * beta);
            worst = std::max(worst, lhs.max_abs());
        }
    return worst;
}

Matrix invariant_inner_product(const MatrixRep &rep, const Matrix &seed) {
    if (rep.sig.r != 0 && rep.sig.s != 0)
        throw std::invalid_argument(
            "invariant_inner_product: indefinite signature; use the e0-twisted pairing");
    const int n = rep.sig.n();
    const std::uint32_t count = std::uint32_t(1) << n;
    Matrix acc(seed.rows(), seed.cols());
    for (std::uint32_t m = 0; m < count; ++m) {
        const Matrix g = rep.act(CliffordElement::blade(rep.sig, m));
        acc += g.adjoint() * seed * g;
    }
    // the +/- pairs of the order-2^{n+1} group contribute equally
    return acc * cplx(1.0 / count);
}

} // namespace gaugekit

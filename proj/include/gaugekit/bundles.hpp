#pragma once

#include "gaugekit/algebra.hpp"
#include "gaugekit/forms.hpp"

#include <map>
#include <optional>
#include <string>

namespace gaugekit {

/// Overlaps are explicit sample-point sets: the cocycle laws are
/// pointwise, so sampling is the verification surface.
struct OverlapComponent {
    std::string name;
    std::vector<Vec> samples;
};

struct Cover {
    std::vector<std::string> charts;
    // components of overlap(i,j), stored once for i < j
    std::map<std::pair<int, int>, std::vector<OverlapComponent>> overlaps;
    // optional triple-overlap samples for the 1-cocycle condition
    std::map<std::tuple<int, int, int>, std::vector<Vec>> triples;

    int index_of(const std::string &name) const;
    bool has_overlap(int a, int b) const;
    const std::vector<OverlapComponent> &components(int a, int b) const;
};

enum class GroupKind { finite, matrix };

/// Transition data g_{ab} for every ordered chart pair with an overlap;
/// s_a = g_{ab} s_b on the overlap. The diagonal is the identity.
struct Cocycle {
    GroupKind kind = GroupKind::matrix;
    Cover cover;
    std::optional<FiniteGroup> group;  // finite kind
    int dim = 0;                       // matrix kind
    std::function<int(int a, int b, const Vec &)> tfin;
    std::function<Matrix(int a, int b, const Vec &)> tmat;

    Matrix matrix_at(int a, int b, const Vec &x) const;
    int label_at(int a, int b, const Vec &x) const;
};

struct CocycleReport {
    double inverse_residual = 0.0;  // g_{ba} g_{ab} = e over all overlap samples
    double triple_residual = 0.0;   // g_{ab} g_{bc} g_{ca} = e over triple samples
    long checked_points = 0;

    double max_residual() const { return std::max(inverse_residual, triple_residual); }
    bool pass(double tol) const { return max_residual() <= tol; }
};

CocycleReport validate_cocycle(const Cocycle &c);

enum class CoboundaryStatus { coboundary, not_coboundary, unsupported };

struct CoboundaryResult {
    CoboundaryStatus status = CoboundaryStatus::unsupported;
    std::vector<int> witness;  // per-chart constant labels when status == coboundary
    long long assignments_tried = 0;
};

/// Exhaustive search over per-chart constant assignments (continuous
/// maps from a connected chart to a discrete group are constant). Matrix
/// cocycles are reported unsupported.
CoboundaryResult is_coboundary(const Cocycle &c);

/// Per-chart gauge cochain.
struct Cochain {
    GroupKind kind = GroupKind::matrix;
    std::vector<int> fin;
    std::vector<MatrixField> mat;
};

/// g'_{ab} = phi_a g_{ab} phi_b^-1
Cocycle apply_gauge_cochain(const Cocycle &c, const Cochain &phi);

// derived matrix cocycles
Cocycle dual_cocycle(const Cocycle &c);                       // inverse transpose
Cocycle tensor_cocycle(const Cocycle &c1, const Cocycle &c2); // Kronecker product
Cocycle exterior_power_cocycle(const Cocycle &c, int p);      // p-th compound matrix
Cocycle density_cocycle(const Cocycle &c, double weight);     // |det|^-w, 1x1

/// Associated cocycle through an arbitrary matrix representation R: the
/// transitions become R(g_ab). R must be a homomorphism for the result
/// to stay a cocycle; validate_cocycle checks that on the samples.
Cocycle representation_cocycle(const Cocycle &c, std::function<Matrix(const Matrix &)> R,
                               int rep_dim);

/// p-th compound matrix: entries are the p x p minors over ascending
/// index tuples.
Matrix exterior_power_matrix(const Matrix &m, int p);

/// Transition of a local representative field between charts.
CompField section_transition(const CompField &s, const Cocycle &c, int from, int to);

// --- connection bundle group ---

/// Element (J, g, L_1..L_n) acting affinely on n-tuples of algebra
/// elements; J* denotes the inverse transpose.
struct CbgElement {
    Matrix J;
    Matrix g;
    std::vector<Matrix> L;
};

CbgElement cbg_identity(std::size_t base_dim, std::size_t fiber_dim);
CbgElement cbg_mul(const CbgElement &a, const CbgElement &b);
std::vector<Matrix> cbg_act(const CbgElement &a, const std::vector<Matrix> &K);

// --- fixtures ---

/// Two arcs over the circle with Z2 transition +1 / -1 on the two
/// overlap components: the nontrivial double cover.
Cocycle double_cover_cocycle();
/// Same cover with the constant -1 transition: a coboundary.
Cocycle constant_minus_cocycle();
/// Same gluing data with fiber [-1,1]: the Moebius strip.
Cocycle moebius_cocycle();
/// Cartesian and polar charts on an annulus sector, transitions given by
/// the Jacobians of the coordinate change (finite differences).
Cocycle jacobian_polar_cocycle();

/// JSON fixture I/O; the schema is documented in docs/fixtures.md.
Cocycle load_cocycle_json(const std::string &text);
Cocycle load_cocycle_file(const std::string &path);

} // namespace gaugekit

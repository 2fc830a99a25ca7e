#pragma once

#include "gaugekit/clifford.hpp"
#include "gaugekit/connections.hpp"

#include <array>

namespace gaugekit {

// --- Maxwell theory on (t,x,y,z) with metric diag(1,-1,-1,-1) and
// --- orientation dt ^ dx ^ dy ^ dz ---

using SpinorField = SectionField;
using R3Field = std::function<Vec(const Vec &)>;  // R^4 -> R^3

struct EMField {
    Chart chart;  // coordinates (t, x, y, z)
    R3Field E, B;
    bool has_potentials = false;
    ScalarField V;
    R3Field Avec;
};

EMField em_from_potentials(const Chart &chart, const ScalarField &V, const R3Field &Avec,
                           double step = 0.0);

/// Max residual of B = curl A and E = -grad V - dA/dt over the samples.
double em_potential_consistency(const EMField &em, const std::vector<Vec> &samples,
                                double step = 0.0);

/// F = -E_x dt^dx - E_y dt^dy - E_z dt^dz
///     + B_x dy^dz + B_y dz^dx + B_z dx^dy
PForm assemble_F(const EMField &em);

struct MaxwellResiduals {
    double dF = 0.0;
    double deltaF_minus_j = 0.0;
    double delta_j = 0.0;
};

MaxwellResiduals maxwell_residuals(const PForm &F, const PForm &j, const MetricField &m,
                                   const std::vector<Vec> &samples, double step = 0.0);

/// Plane-wave vacuum fixture 𝐀 = (cos(t - z), 0, 0), V = 0.
EMField plane_wave_fixture(double step = 0.0);
/// Static uniform magnetic field (0, 0, B0).
EMField uniform_b_fixture(double b0);

// --- Dirac monopole on two charts of R^3 minus the origin ---

struct MonopoleCharts {
    double g = 0.5;
    Chart chart;  // cartesian box around the unit shells, origin excluded by sampling
    PForm A_s, A_n;
};

MonopoleCharts monopole_fixture(double g);

/// Closed-form monopole field g r / r^3 as a 2-form.
PForm monopole_two_form(double g);

/// Sample shells with polar angle in [0.1 pi, 0.9 pi], off both strings.
std::vector<Vec> monopole_samples();

struct MonopoleReport {
    double dA_s_err = 0.0;       // dA_s vs the monopole 2-form
    double dA_n_err = 0.0;
    double gamon_err = 0.0;      // A_n - A_s vs the closed form
    double transition_err = 0.0; // i(A_n - A_s) = -dphi phi^-1
    double loop_gap = 0.0;       // single-valuedness of phi around the equator
    bool quantized = false;
    double flux = 0.0;
    double flux_expected = 0.0;
};

MonopoleReport monopole_checks(const MonopoleCharts &mc, int cells = 128,
                               double step = 1e-6);
double monopole_flux(const MonopoleCharts &mc, int cells, double step = 1e-6);

// --- Dirac operators ---

/// D = sum_j sigma^j d_j acting on 2-spinor fields over R^3.
SpinorField pauli_dirac(const SpinorField &psi, double step);
/// sup |D^2 psi - Laplacian psi| over the samples, both at the given step.
double dirac_square_residual(const SpinorField &psi, const std::vector<Vec> &samples,
                             double step);

/// Constructed Cl(3,1) machinery on the chart (t,x,y,z); the time
/// coordinate is carried by the q = -1 generator.
struct Dirac4 {
    Chart chart;
    MatrixRep rep;                       // constructed (3,1), 4 x 4
    std::array<int, 4> gen_of_coord;     // {3, 0, 1, 2}
    Matrix omega;                        // volume element in the representation
    Matrix p_plus, p_minus;

    Matrix gamma_coord(int mu) const;    // Clifford action of d_mu
    Matrix gamma_upper(int mu) const;    // index raised with diag(1,-1,-1,-1)
};

Dirac4 make_dirac4(const Chart &chart);

/// Residual field of (iD + q A - m) psi; A_em is a real 1-form acting by
/// Clifford multiplication of its raised vector.
SpinorField dirac4_residual(const Dirac4 &d, const SpinorField &psi, double mass,
                            double charge, const PForm &A_em, double step = 0.0);

std::pair<SpinorField, SpinorField> helicity_split(const Dirac4 &d, const SpinorField &psi);

/// Kernel spinor of the momentum-space symbol sum_mu k_mu gamma^mu for a
/// null covector k; the oracle behind the free plane-wave test.
CVec plane_wave_spinor(const Dirac4 &d, const Vec &k_lower);

/// psi_c = C conj(psi); C is validated only through the defining
/// property that it maps +q residuals to -q residuals.
SpinorField charge_conjugate(const Dirac4 &d, const SpinorField &psi);
Matrix charge_conjugation_matrix(const Dirac4 &d);

/// Pairing <a,b> = (a, i e0 b) on the constructed Cl(1,3) module:
/// hermitian, non-degenerate, indefinite, Spin-invariant.
cplx indefinite_pairing(const CVec &a, const CVec &b);
const MatrixRep &pairing_rep();  // constructed (1,3)

// --- Seiberg-Witten on flat Riemannian R^4 ---

struct SpinC4 {
    MatrixRep rep;  // constructed (4,0)
    Matrix omega;   // oriented so sigma(psi) is self-dual on p+ spinors
    Matrix p_plus, p_minus;
};

SpinC4 make_spinc4();

/// sigma(psi) components (i<j masks) in the orthonormal frame whose rows
/// are the frame vectors in chart coordinates.
std::map<std::uint32_t, cplx> sw_sigma_at(const SpinC4 &sc, const CVec &psi,
                                          const Matrix &frame);

/// sigma as a 2-form field in the coordinate frame.
PForm sw_sigma(const SpinC4 &sc, const SpinorField &psi, const Chart &chart);

struct SwResiduals {
    double curvature_eq = 0.0;  // |F+ - (i/4) sigma(psi)|
    double dirac_eq = 0.0;      // |D_A psi|
    double projection = 0.0;    // |p- psi|
};

SwResiduals sw_residuals(const SpinC4 &sc, const PForm &A_u1, const SpinorField &psi,
                         const Chart &chart, const std::vector<Vec> &samples,
                         double step = 0.0);

} // namespace gaugekit

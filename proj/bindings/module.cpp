#include "gaugekit/bundles.hpp"
#include "gaugekit/physics.hpp"
#include "gaugekit/transport.hpp"
#include "gaugekit/runner.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gaugekit;

namespace {

Matrix to_matrix(const py::array_t<cplx> &arr) {
    const auto buf = arr.request();
    if (buf.ndim != 2) throw std::invalid_argument("expected a 2d array");
    Matrix m(buf.shape[0], buf.shape[1]);
    const auto r = arr.unchecked<2>();
    for (py::ssize_t i = 0; i < buf.shape[0]; ++i)
        for (py::ssize_t j = 0; j < buf.shape[1]; ++j) m(i, j) = r(i, j);
    return m;
}

py::array_t<cplx> from_matrix(const Matrix &m) {
    py::array_t<cplx> arr({m.rows(), m.cols()});
    auto w = arr.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
    return arr;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "gaugekit core operations";

    // --- matrix Lie kernels ---
    m.def(
        "mat_exp",
        [](const py::array_t<cplx> &L, double t) { return from_matrix(mat_exp(to_matrix(L), t)); },
        py::arg("L"), py::arg("t") = 1.0);
    m.def("bracket", [](const py::array_t<cplx> &a, const py::array_t<cplx> &b) {
        return from_matrix(bracket(to_matrix(a), to_matrix(b)));
    });
    m.def("adjoint", [](const py::array_t<cplx> &g, const py::array_t<cplx> &L) {
        return from_matrix(adjoint(to_matrix(g), to_matrix(L)));
    });
    m.def("bch3", [](const py::array_t<cplx> &a, const py::array_t<cplx> &b) {
        return from_matrix(bch3(to_matrix(a), to_matrix(b)));
    });

    // --- clifford algebra ---
    py::class_<Signature>(m, "Signature")
        .def(py::init<int, int>(), py::arg("r"), py::arg("s"))
        .def_readonly("r", &Signature::r)
        .def_readonly("s", &Signature::s)
        .def_property_readonly("n", &Signature::n);

    py::class_<CliffordElement>(m, "CliffordElement")
        .def_static("scalar", &CliffordElement::scalar)
        .def_static("basis_vector", &CliffordElement::basis_vector)
        .def_static("blade", &CliffordElement::blade, py::arg("sig"), py::arg("mask"),
                    py::arg("coeff") = cplx(1.0))
        .def("coeff", &CliffordElement::coeff)
        .def("coeffs",
             [](const CliffordElement &a) {
                 std::map<std::uint32_t, cplx> out;
                 for (int mask = 0; mask < a.dim(); ++mask)
                     if (a.coeff(mask) != cplx(0.0)) out[mask] = a.coeff(mask);
                 return out;
             })
        .def("alpha", &CliffordElement::alpha)
        .def("reverse", &CliffordElement::reverse)
        .def("grade_part", &CliffordElement::grade_part)
        .def("inverse", &CliffordElement::inverse, py::arg("tol") = 1e-10)
        .def("max_abs", &CliffordElement::max_abs)
        .def("__add__", [](const CliffordElement &a, const CliffordElement &b) { return a + b; })
        .def("__sub__", [](const CliffordElement &a, const CliffordElement &b) { return a - b; })
        .def("__mul__", [](const CliffordElement &a, const CliffordElement &b) { return a * b; })
        .def("__rmul__", [](const CliffordElement &a, cplx s) { return a * s; })
        .def("__neg__", [](const CliffordElement &a) { return -a; });

    m.def("volume_element", &volume_element, py::arg("sig"), py::arg("orientation") = 1);
    m.def("idempotents", &idempotents, py::arg("sig"), py::arg("orientation") = 1);
    m.def("twisted_adjoint",
          [](const CliffordElement &phi, const CVec &w) { return twisted_adjoint(phi, w); });
    m.def("pin_to_orthogonal",
          [](const CliffordElement &phi) { return from_matrix(pin_to_orthogonal(phi)); });
    m.def("pauli_matrices", []() {
        py::list out;
        for (const auto &g : pauli_rep().gamma) out.append(from_matrix(g));
        return out;
    });
    m.def("gamma_matrices", [](int r, int s) {
        py::list out;
        for (const auto &g : constructed_gamma_rep(Signature{r, s}).gamma)
            out.append(from_matrix(g));
        return out;
    });

    // --- transport ---
    m.def(
        "time_ordered_exp",
        [](const std::function<py::array_t<cplx>(double)> &A, double a, double b, int N) {
            auto wrapped = [&A](double t) { return to_matrix(A(t)); };
            return from_matrix(time_ordered_exp(wrapped, a, b, N));
        },
        py::arg("A"), py::arg("a"), py::arg("b"), py::arg("N") = 256);
    m.def(
        "rk4_fundamental",
        [](const std::function<py::array_t<cplx>(double)> &A, double a, double b, int steps) {
            auto wrapped = [&A](double t) { return to_matrix(A(t)); };
            return from_matrix(rk4_fundamental(wrapped, a, b, steps));
        },
        py::arg("A"), py::arg("a"), py::arg("b"), py::arg("steps") = 2048);

    // --- worked fixtures ---
    m.def(
        "monopole_flux",
        [](double g, int cells) { return monopole_flux(monopole_fixture(g), cells); },
        py::arg("g"), py::arg("cells") = 128);
    m.def(
        "monopole_loop_gap",
        [](double g, int cells) { return monopole_checks(monopole_fixture(g), cells).loop_gap; },
        py::arg("g"), py::arg("cells") = 32);
    m.def(
        "plane_wave_maxwell_residuals",
        [](double h) {
            const EMField wave = plane_wave_fixture(h);
            PForm zj;
            zj.n = 4;
            zj.degree = 1;
            const auto r = maxwell_residuals(assemble_F(wave), zj,
                                             minkowski_metric(wave.chart),
                                             sample_grid(wave.chart, 2), h);
            return py::make_tuple(r.dF, r.deltaF_minus_j, r.delta_j);
        },
        py::arg("h") = 1e-4);
    m.def("sphere_christoffel", [](double theta, double phi) {
        const Chart sph = make_chart({0.05, -3.2}, {3.1, 3.2});
        MetricField g;
        g.chart = sph;
        g.r = 2;
        g.s = 0;
        g.g = [](const Vec &x) {
            Matrix mm(2, 2);
            mm(0, 0) = 1.0;
            mm(1, 1) = std::sin(x[0]) * std::sin(x[0]);
            return mm;
        };
        const auto conn = levi_civita(g);
        py::array_t<double> out({2, 2, 2});
        auto w = out.mutable_unchecked<3>();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    w(i, j, k) = christoffel(conn, {theta, phi}, i, j, k);
        return out;
    });

    // --- cocycles ---
    m.def("double_cover_is_coboundary", []() {
        return is_coboundary(double_cover_cocycle()).status == CoboundaryStatus::coboundary;
    });
    m.def("constant_minus_is_coboundary", []() {
        return is_coboundary(constant_minus_cocycle()).status == CoboundaryStatus::coboundary;
    });
    m.def("validate_cocycle_file", [](const std::string &path) {
        return validate_cocycle(load_cocycle_file(path)).max_residual();
    });

    // --- report runner ---
    m.def(
        "run_command",
        [](const std::string &name, std::uint64_t seed) {
            const Command *cmd = find_command(name);
            if (!cmd) throw std::invalid_argument("unknown command " + name);
            RunConfig cfg;
            cfg.seed = seed;
            const Report rep = cmd->run(cfg);
            py::list rows;
            for (const auto &r : rep.rows)
                rows.append(py::make_tuple(r.name, r.value, r.tol, r.pass));
            return rows;
        },
        py::arg("name"), py::arg("seed") = 42);
    m.def("command_names", []() {
        py::list out;
        for (const auto &c : commands()) out.append(c.name);
        return out;
    });
}

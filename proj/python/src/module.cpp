#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <lemnmap/analysis.hpp>
#include <lemnmap/error.hpp>
#include <lemnmap/io.hpp>
#include <lemnmap/lemniscatic.hpp>
#include <lemnmap/special_fn.hpp>

namespace py = pybind11;
using namespace lemnmap;

namespace
{

py::dict report_dict(const verification_report &r)
{
    py::list checks;
    for (const auto &c : r.checks) {
        py::dict d;
        d["name"] = c.name;
        d["residual"] = c.residual;
        d["tolerance"] = c.tolerance;
        d["pass"] = c.pass;
        d["note"] = c.note;
        checks.append(d);
    }
    py::dict out;
    out["family"] = r.family;
    out["parameters"] = r.parameters;
    out["checks"] = checks;
    out["passed"] = r.passed();
    return out;
}

rectangle to_rect(const std::array<double, 4> &w)
{
    return {w[0], w[1], w[2], w[3]};
}

using complex_array = py::array_t<complex, py::array::c_style | py::array::forcecast>;

// Elementwise map over an array of complex numbers; the GIL is released
// while the loop runs.
py::array_t<complex> apply(const lemniscatic_map &m, const complex_array &z, bool inverse)
{
    py::array_t<complex> out(std::vector<py::ssize_t>(z.shape(), z.shape() + z.ndim()));
    const auto n = z.size();
    const complex *src = z.data();
    complex *dst = out.mutable_data();
    {
        py::gil_scoped_release release;
        for (py::ssize_t i = 0; i < n; ++i) {
            dst[i] = inverse ? m.inverse(src[i]) : m.forward(src[i]);
        }
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_lemnmap, m)
{
    m.doc() = "Lemniscatic conformal maps";

    auto base = py::register_exception<error>(m, "Error", PyExc_RuntimeError);
    auto dom_err = py::register_exception<domain_error>(m, "DomainError", base.ptr());
    py::register_exception<boundary_error>(m, "BoundaryError", dom_err.ptr());
    py::register_exception<pole_error>(m, "PoleError", dom_err.ptr());
    py::register_exception<numerical_error>(m, "NumericalError", base.ptr());
    py::register_exception<construction_error>(m, "ConstructionError", base.ptr());
    py::register_exception<contract_error>(m, "ContractError", base.ptr());

    // special functions
    m.def("agm", &agm, py::arg("a"), py::arg("b"));
    m.def("complete_elliptic_k", &complete_elliptic_k, py::arg("k"));
    m.def("jacobi_sn", py::overload_cast<complex, double>(&jacobi_sn), py::arg("z"), py::arg("k"));
    m.def("lemniscate_modulus", &lemniscate_modulus, py::arg("rho"));

    py::class_<elliptic_parameters>(m, "EllipticParameters")
        .def_static("from_rho", &elliptic_parameters::from_rho, py::arg("rho"))
        .def_readonly("rho", &elliptic_parameters::rho)
        .def_readonly("L", &elliptic_parameters::L)
        .def_readonly("k", &elliptic_parameters::k)
        .def_readonly("K", &elliptic_parameters::K)
        .def_readonly("Kprime", &elliptic_parameters::Kprime);
    m.def("annulus_to_slit", &annulus_to_slit, py::arg("z"), py::arg("params"));
    m.def("annulus_to_slit_inverse", &annulus_to_slit_inverse, py::arg("w"), py::arg("params"));
    m.def("annulus_to_slit_derivative_at_minus_one", &annulus_to_slit_derivative_at_minus_one, py::arg("params"));

    py::class_<lemniscatic_domain>(m, "LemniscaticDomain")
        .def(py::init<std::vector<complex>, std::vector<double>, double>(), py::arg("centers"), py::arg("exponents"),
             py::arg("mu"))
        .def_property_readonly("centers", &lemniscatic_domain::centers)
        .def_property_readonly("exponents", &lemniscatic_domain::exponents)
        .def_property_readonly("mu", &lemniscatic_domain::mu)
        .def_property_readonly("symmetric_form",
                               [](const lemniscatic_domain &d) -> py::object {
                                   if (!d.form()) {
                                       return py::none();
                                   }
                                   return py::make_tuple(d.form()->n, d.form()->c);
                               })
        .def("abs_U", &lemniscatic_domain::abs_U, py::arg("w"))
        .def("contains", &lemniscatic_domain::contains, py::arg("w"))
        .def("__repr__", [](const lemniscatic_domain &d) {
            return "<LemniscaticDomain mu=" + io::format_number(d.mu()) + " centers=" +
                   std::to_string(d.centers().size()) + ">";
        });

    py::class_<lemniscatic_map>(m, "LemniscaticMap")
        .def("forward", &lemniscatic_map::forward, py::arg("z"))
        .def("inverse", &lemniscatic_map::inverse, py::arg("w"))
        .def(
            "forward_array",
            [](const lemniscatic_map &self, const complex_array &z) { return apply(self, z, false); },
            py::arg("z"))
        .def(
            "inverse_array",
            [](const lemniscatic_map &self, const complex_array &w) { return apply(self, w, true); },
            py::arg("w"))
        .def("in_set", &lemniscatic_map::in_set, py::arg("z"))
        .def_property_readonly("domain", &lemniscatic_map::domain)
        .def_property_readonly("scale", &lemniscatic_map::scale)
        .def_property_readonly("family", [](const lemniscatic_map &self) { return self.source().family; })
        .def_property_readonly("parameters", [](const lemniscatic_map &self) { return self.source().parameters; });

    m.def("radial_slit_map", [](int n, double C, double D) { return radial_slit_map({n, C, D}); }, py::arg("n"),
          py::arg("C"), py::arg("D"));
    m.def("two_disk_map", [](double z0, double r) { return two_disk_map({z0, r}); }, py::arg("z0"), py::arg("r"));
    m.def(
        "interval_preimage_map",
        [](double lo, double hi, int n, double alpha, double alpha0) {
            return from_polynomial_preimage({interval_exterior_map({lo, hi}), alpha, alpha0, n});
        },
        py::arg("lo"), py::arg("hi"), py::arg("n"), py::arg("alpha") = 1.0, py::arg("alpha0") = 0.0);
    m.def(
        "rational_preimage_map",
        [](int n, double alpha, double alpha0) {
            return from_polynomial_preimage({make_rational_map({}), alpha, alpha0, n});
        },
        py::arg("n") = 3, py::arg("alpha") = 1.0, py::arg("alpha0") = 0.0);
    m.def(
        "doubly_connected_from_annulus",
        [](std::function<complex(complex)> h, complex a1, double rho, std::function<complex(complex)> h_inverse,
           std::function<bool(complex)> in_set, double scale) {
            annulus_map_input in;
            in.h = std::move(h);
            in.a1 = a1;
            in.rho = rho;
            in.h_inverse = std::move(h_inverse);
            in.in_set = std::move(in_set);
            in.scale = scale;
            return doubly_connected_from_annulus(in);
        },
        py::arg("h"), py::arg("a1"), py::arg("rho"), py::arg("h_inverse") = nullptr, py::arg("in_set") = nullptr,
        py::arg("scale") = 0.0);
    m.def("apply_linear_transform", &apply_linear_transform, py::arg("map"), py::arg("a"), py::arg("b"));
    m.def("conjugate_map", &conjugate_map, py::arg("map"));
    m.def("rotate_map", &rotate_map, py::arg("map"), py::arg("theta"));
    m.def("green_value", &green_value, py::arg("map"), py::arg("z"));
    m.def("normalization_probe", &normalization_probe, py::arg("map"), py::arg("radius"), py::arg("samples") = 256);

    m.def(
        "make_family",
        [](const std::string &family, const std::vector<double> &params) { return make_family(family, params).map; },
        py::arg("family"), py::arg("parameters") = std::vector<double>{});
    m.def(
        "run_verification",
        [](const std::string &family, const std::vector<double> &params) {
            verification_report r;
            {
                py::gil_scoped_release release;
                r = run_verification(family, params);
            }
            return report_dict(r);
        },
        py::arg("family"), py::arg("parameters") = std::vector<double>{});

    m.def(
        "trace_level_curve",
        [](const std::string &family, const std::vector<double> &params, double sigma, int resolution, bool lemniscatic) {
            const auto inst = make_family(family, params);
            level_curve_options opt;
            opt.resolution = resolution;
            opt.components = inst.components;
            const auto map = inst.map;
            std::vector<curve> curves;
            {
                py::gil_scoped_release release;
                if (lemniscatic) {
                    const auto &dom = map.domain();
                    opt.components = component_check{opt.components ? opt.components->center : complex{}, dom.centers()};
                    curves = trace_level_curve([&dom](complex w) { return lemniscatic_green(dom, w); }, sigma,
                                               inst.default_window, opt);
                } else {
                    curves = trace_level_curve([&map](complex z) { return green_value(map, z); }, sigma,
                                               inst.default_window, opt);
                }
            }
            py::list out;
            for (const auto &c : curves) {
                out.append(py::make_tuple(py::array_t<complex>(static_cast<py::ssize_t>(c.points.size()), c.points.data()),
                                          c.closed));
            }
            return out;
        },
        py::arg("family"), py::arg("parameters"), py::arg("sigma"), py::arg("resolution") = 400,
        py::arg("lemniscatic") = false,
        "Level curves g = log(sigma) as a list of (points, closed) over the family's default window.");

    m.def(
        "phase_portrait",
        [](const lemniscatic_map &map, bool inverse, std::array<double, 4> window, int width, int height) {
            phase_grid grid;
            {
                py::gil_scoped_release release;
                if (inverse) {
                    grid = render_phase_portrait([&map](complex w) { return map.inverse_unchecked(w); }, to_rect(window),
                                                 width, height, [&map](complex w) { return !map.domain().contains(w); });
                } else {
                    grid = render_phase_portrait([&map](complex z) { return map.forward_unchecked(z); }, to_rect(window),
                                                 width, height, [&map](complex z) { return map.in_set(z); });
                }
            }
            py::array_t<complex> values({height, width});
            py::array_t<std::uint8_t> flags({height, width});
            std::copy(grid.values.begin(), grid.values.end(), values.mutable_data());
            std::transform(grid.flags.begin(), grid.flags.end(), flags.mutable_data(),
                           [](pixel_flag f) { return static_cast<std::uint8_t>(f); });
            py::list sing;
            for (const auto &s : find_phase_singularities(grid)) {
                sing.append(py::make_tuple(s.location, s.winding));
            }
            return py::make_tuple(values, flags, sing);
        },
        py::arg("map"), py::arg("inverse"), py::arg("window"), py::arg("width"), py::arg("height"),
        "Returns (values, flags, singularities); rows run from the top of the window. Flags: 0 ok, 1 interior, "
        "2 invalid.");
}

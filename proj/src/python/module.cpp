#include "hmortar/config_io.hpp"
#include "hmortar/diagnostics.hpp"
#include "hmortar/errors.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hmortar;

namespace {

MachineConfig config_from_json(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "<string>");
}

py::dict solve_at(const MachineConfig& cfg, double alpha) {
    const AssembledSystem sys = assemble_system(cfg);
    const SchurPrecomputation pre = precompute_schur(sys);
    const Eigen::VectorXd lambda = solve_interface(pre, alpha);
    const SolutionState state = reconstruct(pre, lambda, alpha);
    py::dict out;
    out["alpha"] = alpha;
    out["energy"] = compute_energy(sys, state);
    out["torque"] = compute_torque(sys, state);
    out["lambda"] = to_fourier_coeffs(lambda);
    return out;
}

py::dict sweep(const MachineConfig& cfg, double start, double stop, int count) {
    const AssembledSystem sys = assemble_system(cfg);
    const SchurPrecomputation pre = precompute_schur(sys);
    const TorqueCurve curve = sweep_torque(sys, pre, start, stop, count);
    py::dict out;
    out["alphas"] = curve.alphas;
    out["torques"] = curve.torques;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "2D magnetostatic machine simulation with harmonic mortar coupling";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<InstabilityError>(m, "InstabilityError");

    py::class_<MachineConfig>(m, "MachineConfig")
        .def(py::init<>())
        .def_readwrite("r_rotor_in", &MachineConfig::r_rotor_in)
        .def_readwrite("r_rotor_out", &MachineConfig::r_rotor_out)
        .def_readwrite("r_stator_in", &MachineConfig::r_stator_in)
        .def_readwrite("r_stator_out", &MachineConfig::r_stator_out)
        .def_readwrite("r_gamma", &MachineConfig::r_gamma)
        .def_readwrite("pole_pairs", &MachineConfig::pole_pairs)
        .def_readwrite("slots", &MachineConfig::slots)
        .def_readwrite("mu_r_iron", &MachineConfig::mu_r_iron)
        .def_readwrite("mu_r_copper", &MachineConfig::mu_r_copper)
        .def_readwrite("mu_r_magnet", &MachineConfig::mu_r_magnet)
        .def_readwrite("b_remanence", &MachineConfig::b_remanence)
        .def_readwrite("axial_length", &MachineConfig::axial_length)
        .def_readwrite("multiplier_degree", &MachineConfig::multiplier_degree)
        .def_readwrite("angular_divisions_rotor", &MachineConfig::angular_divisions_rotor)
        .def_readwrite("angular_divisions_stator", &MachineConfig::angular_divisions_stator)
        .def_readwrite("radial_layers", &MachineConfig::radial_layers)
        .def_readwrite("current_density", &MachineConfig::current_density)
        .def("validate", &MachineConfig::validate);

    m.def("default_config", &default_config);
    m.def("config_from_json", &config_from_json, py::arg("text"),
          "Parse a JSON config string (unknown keys are errors)");
    m.def("rotate_point", [](double x, double y, double alpha) {
        const Eigen::Vector2d p = rotate_point({x, y}, alpha);
        return std::make_pair(p.x(), p.y());
    });
    m.def("solve_at", &solve_at, py::arg("config"), py::arg("alpha"),
          "Solve at one rotation angle (rad); returns energy, torque, multiplier");
    m.def("sweep", &sweep, py::arg("config"), py::arg("start"), py::arg("stop"),
          py::arg("count"), "Torque curve over a uniform angle grid (rad)");
    m.def("cogging_order", &cogging_order);
}

// Python bindings for the magnobattery core.

#include "magnobattery/error.hpp"
#include "magnobattery/metrics.hpp"
#include "magnobattery/model.hpp"
#include "magnobattery/propagator.hpp"
#include "magnobattery/states.hpp"
#include "magnobattery/sweeps.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace magnobattery;

namespace {

// Column arrays keyed like the dynamics CSV header.
py::dict samples_to_columns(const std::vector<MetricsSample>& samples) {
    const auto n = static_cast<py::ssize_t>(samples.size());
    py::array_t<double> t(n), coherence(n), energy(n), erg(n), pur(n), norm(n);
    auto tt = t.mutable_unchecked<1>();
    auto cc = coherence.mutable_unchecked<1>();
    auto ee = energy.mutable_unchecked<1>();
    auto gg = erg.mutable_unchecked<1>();
    auto pp = pur.mutable_unchecked<1>();
    auto nn = norm.mutable_unchecked<1>();
    for (py::ssize_t k = 0; k < n; ++k) {
        const MetricsSample& s = samples[static_cast<std::size_t>(k)];
        tt(k) = s.t;
        cc(k) = s.coherence;
        ee(k) = s.energy;
        gg(k) = s.ergotropy;
        pp(k) = s.purity;
        nn(k) = s.norm;
    }
    py::dict out;
    out["t"] = t;
    out["coherence"] = coherence;
    out["energy"] = energy;
    out["ergotropy"] = erg;
    out["purity"] = pur;
    out["norm"] = norm;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Single-excitation dynamics of a cavity-magnomechanical quantum battery";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<InconsistentState>(m, "InconsistentState", PyExc_ArithmeticError);

    py::enum_<AccountingMode>(m, "AccountingMode")
        .value("paper", AccountingMode::paper)
        .value("trace_repaired", AccountingMode::trace_repaired);
    m.def("parse_accounting_mode", &parse_accounting_mode, py::arg("text"));

    py::enum_<SweepParameter>(m, "SweepParameter")
        .value("lambda_", SweepParameter::lambda)
        .value("g_a", SweepParameter::g_a)
        .value("g_b", SweepParameter::g_b)
        .value("delta_1", SweepParameter::delta_1)
        .value("delta_2", SweepParameter::delta_2)
        .value("delta_3", SweepParameter::delta_3)
        .value("gamma", SweepParameter::gamma)
        .value("kappa_all", SweepParameter::kappa_all)
        .value("kappa_a", SweepParameter::kappa_a)
        .value("kappa_b", SweepParameter::kappa_b)
        .value("kappa_m", SweepParameter::kappa_m);
    m.def("parse_sweep_parameter", &parse_sweep_parameter, py::arg("name"));

    py::class_<Detunings>(m, "Detunings")
        .def(py::init<>())
        .def(py::init([](double d1, double d2, double d3) { return Detunings{d1, d2, d3}; }),
             py::arg("delta_1"), py::arg("delta_2"), py::arg("delta_3"))
        .def_readwrite("delta_1", &Detunings::delta_1)
        .def_readwrite("delta_2", &Detunings::delta_2)
        .def_readwrite("delta_3", &Detunings::delta_3)
        .def("__eq__", [](const Detunings& a, const Detunings& b) { return a == b; })
        .def("__repr__", [](const Detunings& d) {
            return "Detunings(" + std::to_string(d.delta_1) + ", " + std::to_string(d.delta_2) +
                   ", " + std::to_string(d.delta_3) + ")";
        });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("omega_a", &SystemParams::omega_a)
        .def_readwrite("omega_b", &SystemParams::omega_b)
        .def_readwrite("omega_m", &SystemParams::omega_m)
        .def_readwrite("omega_q", &SystemParams::omega_q)
        .def_readwrite("g_a", &SystemParams::g_a)
        .def_readwrite("g_b", &SystemParams::g_b)
        .def_readwrite("lambda_", &SystemParams::lambda)
        .def_readwrite("kappa_a", &SystemParams::kappa_a)
        .def_readwrite("kappa_b", &SystemParams::kappa_b)
        .def_readwrite("kappa_m", &SystemParams::kappa_m)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("detunings", &SystemParams::detunings)
        .def("__eq__", [](const SystemParams& a, const SystemParams& b) { return a == b; });
    m.def("validate", &validate, py::arg("params"));
    m.def("with_parameter", &with_parameter, py::arg("params"), py::arg("parameter"), py::arg("value"));

    py::class_<FrameShifts>(m, "FrameShifts")
        .def_readonly("Delta_1", &FrameShifts::Delta_1)
        .def_readonly("Delta_2", &FrameShifts::Delta_2)
        .def_readonly("Delta_3", &FrameShifts::Delta_3)
        .def_readonly("Delta_4", &FrameShifts::Delta_4)
        .def("as_vector", &FrameShifts::as_vector);

    m.def("derive_detunings", &derive_detunings, py::arg("params"));
    m.def("derive_frame_shifts", &derive_frame_shifts, py::arg("detunings"));
    m.def("evolution_matrix",
          [](const SystemParams& p) { return Eigen::Matrix4cd(build_evolution_matrix(p).entries); },
          py::arg("params"));
    m.def("matrix_exponential", &matrix_exponential, py::arg("m"));

    py::class_<AmplitudeState>(m, "AmplitudeState")
        .def(py::init([](double t, const Amplitudes& c) { return AmplitudeState{t, c}; }),
             py::arg("t"), py::arg("c"))
        .def_readonly("t", &AmplitudeState::t)
        .def_readonly("c", &AmplitudeState::c)
        .def("norm", &AmplitudeState::norm);

    m.def("initial_amplitudes", &initial_amplitudes);
    m.def("make_time_grid", &make_time_grid, py::arg("t_max"), py::arg("dt"));
    m.def(
        "evolve",
        [](const SystemParams& p, const std::vector<double>& grid, const Amplitudes& c0) {
            return evolve(p, grid, c0);
        },
        py::arg("params"), py::arg("t_grid"), py::arg("c0") = initial_amplitudes());
    m.def(
        "oracle_integrate",
        [](const SystemParams& p, const std::vector<double>& grid, const Amplitudes& c0,
           double max_step) { return oracle_integrate(p, grid, c0, max_step); },
        py::arg("params"), py::arg("t_grid"), py::arg("c0") = initial_amplitudes(),
        py::arg("max_step") = 1e-3);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_readonly("entries", &DensityMatrix::entries)
        .def_readonly("basis_labels", &DensityMatrix::basis_labels)
        .def("trace", &DensityMatrix::trace)
        .def("is_hermitian", &DensityMatrix::is_hermitian, py::arg("tol") = 1e-12);
    m.def("battery_density", &battery_density, py::arg("state"),
          py::arg("mode") = AccountingMode::paper);
    m.def("charger_density", &charger_density, py::arg("state"),
          py::arg("mode") = AccountingMode::paper);
    m.def(
        "density_matrix",
        [](const Eigen::MatrixXcd& entries) { return DensityMatrix{entries, {}}; },
        py::arg("entries"));

    py::class_<BatteryHamiltonian>(m, "BatteryHamiltonian")
        .def(py::init([](double omega_q) { return BatteryHamiltonian{omega_q}; }),
             py::arg("omega_q") = 1.0)
        .def_readwrite("omega_q", &BatteryHamiltonian::omega_q)
        .def("energies", &BatteryHamiltonian::energies)
        .def("matrix", &BatteryHamiltonian::matrix);

    py::class_<MetricsSample>(m, "MetricsSample")
        .def_readonly("t", &MetricsSample::t)
        .def_readonly("coherence", &MetricsSample::coherence)
        .def_readonly("energy", &MetricsSample::energy)
        .def_readonly("ergotropy", &MetricsSample::ergotropy)
        .def_readonly("purity", &MetricsSample::purity)
        .def_readonly("norm", &MetricsSample::norm);

    m.def("coherence_l1", &coherence_l1, py::arg("state"));
    m.def("stored_energy", &stored_energy, py::arg("state"), py::arg("omega_q") = 1.0,
          py::arg("mode") = AccountingMode::paper);
    m.def("passive_state", &passive_state, py::arg("rho"), py::arg("h") = BatteryHamiltonian{});
    m.def("ergotropy", &ergotropy, py::arg("rho"), py::arg("h") = BatteryHamiltonian{});
    m.def("purity", &purity, py::arg("rho"));
    m.def("sample_metrics", &sample_metrics, py::arg("state"), py::arg("params"),
          py::arg("mode") = AccountingMode::paper);

    py::class_<VarySpec>(m, "VarySpec")
        .def(py::init([](SweepParameter p, std::vector<double> values) {
                 return VarySpec{p, std::move(values)};
             }),
             py::arg("parameter"), py::arg("values"))
        .def_static("linear", &VarySpec::linear, py::arg("parameter"), py::arg("min"),
                    py::arg("max"), py::arg("count"))
        .def_readonly("parameter", &VarySpec::parameter)
        .def_readonly("values", &VarySpec::values);

    py::class_<GridResult>(m, "GridResult")
        .def_readonly("x_values", &GridResult::x_values)
        .def_readonly("y_values", &GridResult::y_values)
        .def_readonly("x_parameter", &GridResult::x_parameter)
        .def_readonly("y_parameter", &GridResult::y_parameter)
        .def_readonly("metric", &GridResult::metric)
        .def_readonly("time_points", &GridResult::time_points)
        .def_property_readonly("z", [](const GridResult& r) {
            py::array_t<double> z({r.y_values.size(), r.x_values.size()});
            std::copy(r.z.begin(), r.z.end(), z.mutable_data());
            return z;
        });

    py::class_<ChargingTime>(m, "ChargingTime")
        .def_readonly("tau", &ChargingTime::tau)
        .def_readonly("e_max", &ChargingTime::e_max);

    py::class_<ChargingTimePoint>(m, "ChargingTimePoint")
        .def_readonly("value", &ChargingTimePoint::value)
        .def_readonly("tau", &ChargingTimePoint::tau)
        .def_readonly("e_max", &ChargingTimePoint::e_max);

    m.def(
        "time_series",
        [](const SystemParams& p, const std::vector<double>& grid, AccountingMode mode) {
            return samples_to_columns(time_series(p, grid, mode));
        },
        py::arg("params"), py::arg("t_grid"), py::arg("mode") = AccountingMode::paper,
        "Metric columns t, coherence, energy, ergotropy, purity, norm as arrays.");
    m.def(
        "panel_sweep",
        [](const SystemParams& base, const VarySpec& vary, const std::vector<double>& grid,
           AccountingMode mode, std::size_t threads) {
            py::list out;
            const auto curves = [&] {
                py::gil_scoped_release release;
                return panel_sweep(base, vary, grid, mode, threads);
            }();
            for (const SweepCurve& c : curves) {
                out.append(py::make_tuple(c.value, samples_to_columns(c.series)));
            }
            return out;
        },
        py::arg("base"), py::arg("vary"), py::arg("t_grid"), py::arg("mode") = AccountingMode::paper,
        py::arg("threads") = 1, "List of (value, columns) pairs.");
    m.def("max_ergotropy_grid",
          [](const SystemParams& base, const VarySpec& vx, const VarySpec& vy,
             const std::vector<double>& grid, AccountingMode mode, std::size_t threads) {
              py::gil_scoped_release release;
              return max_ergotropy_grid(base, vx, vy, grid, mode, threads);
          },
          py::arg("base"), py::arg("vary_x"), py::arg("vary_y"), py::arg("t_grid"),
          py::arg("mode") = AccountingMode::paper, py::arg("threads") = 1);
    m.def(
        "optimal_charging_time",
        [](const SystemParams& p, const std::vector<double>& grid, AccountingMode mode) {
            return optimal_charging_time(p, grid, mode);
        },
        py::arg("params"), py::arg("t_grid"), py::arg("mode") = AccountingMode::paper);
    m.def("optimal_time_sweep",
          [](const SystemParams& base, const VarySpec& vary, const std::vector<double>& grid,
             AccountingMode mode, std::size_t threads) {
              py::gil_scoped_release release;
              return optimal_time_sweep(base, vary, grid, mode, threads);
          },
          py::arg("base"), py::arg("vary"), py::arg("t_grid"), py::arg("mode") = AccountingMode::paper,
          py::arg("threads") = 1);
}

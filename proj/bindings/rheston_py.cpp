#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rheston/config.hpp"
#include "rheston/diagnostics.hpp"
#include "rheston/kernels.hpp"
#include "rheston/monte_carlo.hpp"
#include "rheston/payoffs.hpp"
#include "rheston/reference_pricers.hpp"
#include "rheston/scheme_v.hpp"
#include "rheston/scheme_x.hpp"

namespace py = pybind11;
using namespace rheston;

PYBIND11_MODULE(_core, m) {
    m.doc() = "rough Heston simulation and pricing engine";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double s0, double v0, double theta, double lambda, double nu, double rho,
                         double horizon) {
                 return make_params(s0, v0, theta, lambda, nu, rho, horizon);
             }),
             py::arg("s0") = 1.0, py::arg("v0") = 0.02, py::arg("theta") = 0.02,
             py::arg("lambda_") = 0.3, py::arg("nu") = 0.3, py::arg("rho") = -0.7,
             py::arg("horizon") = 1.0)
        .def_readonly("s0", &ModelParams::s0)
        .def_readonly("v0", &ModelParams::v0)
        .def_readonly("theta", &ModelParams::theta)
        .def_readonly("lambda_", &ModelParams::lambda)
        .def_readonly("nu", &ModelParams::nu)
        .def_readonly("rho", &ModelParams::rho)
        .def_readonly("horizon", &ModelParams::horizon);

    py::class_<Kernel>(m, "Kernel")
        .def_static("power_law", &Kernel::power_law, py::arg("c"), py::arg("h"))
        .def_static("gamma_power_law", &Kernel::gamma_power_law, py::arg("h"))
        .def_static("exp_damped", &Kernel::exp_damped, py::arg("c"), py::arg("beta"), py::arg("h"))
        .def_static("log_kernel", &Kernel::log_kernel)
        .def_static("sum", &Kernel::sum, py::arg("terms"))
        .def_static("product", &Kernel::product, py::arg("lhs"), py::arg("rhs"))
        .def("evaluate", &Kernel::evaluate, py::arg("t"))
        .def("__call__", &Kernel::evaluate, py::arg("t"))
        .def_property_readonly("hurst", &Kernel::hurst);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def_static("uniform", &TimeGrid::uniform, py::arg("num_steps"), py::arg("horizon"))
        .def_property_readonly("num_steps", &TimeGrid::num_steps)
        .def_property_readonly("horizon", &TimeGrid::horizon)
        .def("node", &TimeGrid::node)
        .def("eta", &TimeGrid::eta)
        .def("nodes", [](const TimeGrid& g) {
            return std::vector<double>(g.nodes().begin(), g.nodes().end());
        });

    py::class_<Payoff>(m, "Payoff")
        .def_static("european_call", &Payoff::european_call, py::arg("strike"))
        .def_static("asian_call", &Payoff::asian_call, py::arg("strike"))
        .def_static("lookback_call", &Payoff::lookback_call, py::arg("strike"))
        .def_static("variance_swap", &Payoff::variance_swap)
        .def_static("variance_call", &Payoff::variance_call, py::arg("initial_variance"))
        .def_readonly("strike", &Payoff::strike)
        .def_property_readonly("name", &Payoff::name);

    py::enum_<SchemeKind>(m, "SchemeKind")
        .value("volterra", SchemeKind::Volterra)
        .value("integrated", SchemeKind::Integrated);

    py::class_<SchemeOptions>(m, "SchemeOptions")
        .def(py::init<>())
        .def_readwrite("clip_variance_in_x", &SchemeOptions::clip_variance_in_x)
        .def_readwrite("exact_theta_drift", &SchemeOptions::exact_theta_drift);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("num_paths", &McConfig::num_paths)
        .def_readwrite("master_seed", &McConfig::master_seed)
        .def_readwrite("scheme", &McConfig::scheme)
        .def_readwrite("num_steps", &McConfig::num_steps)
        .def_readwrite("workers", &McConfig::workers)
        .def_readwrite("options", &McConfig::options);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("stat_error", &McEstimate::stat_error)
        .def_readonly("ci_low", &McEstimate::ci_low)
        .def_readonly("ci_high", &McEstimate::ci_high)
        .def_readonly("num_paths", &McEstimate::num_paths)
        .def_readonly("wall_time_seconds", &McEstimate::wall_time_seconds)
        .def_readonly("fault_count", &McEstimate::fault_count)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) +
                   ", stat_error=" + std::to_string(e.stat_error) + ")";
        });

    m.def("price", &price, py::arg("params"), py::arg("kernel"), py::arg("payoff"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "simulate_v_path",
        [](const ModelParams& params, const Kernel& kernel, int n, std::uint64_t seed,
           std::int64_t path_index, const SchemeOptions& options) {
            const TimeGrid grid = TimeGrid::uniform(n, params.horizon);
            const KernelWeights weights(kernel, grid);
            const IncrementStream stream(seed, path_index, grid);
            VPath path = simulate_v_path(params, weights, stream, options);
            return py::dict(py::arg("y") = path.y, py::arg("v") = path.v, py::arg("s") = path.s,
                            py::arg("x") = path.x);
        },
        py::arg("params"), py::arg("kernel"), py::arg("n"), py::arg("seed") = 0,
        py::arg("path_index") = 0, py::arg("options") = SchemeOptions{});

    m.def(
        "simulate_x_path",
        [](const ModelParams& params, const Kernel& kernel, int n, std::uint64_t seed,
           std::int64_t path_index, const SchemeOptions& options) {
            const TimeGrid grid = TimeGrid::uniform(n, params.horizon);
            const KernelWeights weights(kernel, grid);
            const IncrementStream stream(seed, path_index, grid);
            XPath path = simulate_x_path(params, weights, stream, options);
            return py::dict(py::arg("y") = path.y, py::arg("x") = path.x,
                            py::arg("xbar") = path.xbar, py::arg("m") = path.m,
                            py::arg("m_perp") = path.m_perp, py::arg("s") = path.s);
        },
        py::arg("params"), py::arg("kernel"), py::arg("n"), py::arg("seed") = 0,
        py::arg("path_index") = 0, py::arg("options") = SchemeOptions{});

    m.def("expected_integrated_variance", &expected_integrated_variance, py::arg("params"),
          py::arg("kernel"), py::arg("t"), py::arg("resolution") = 2000,
          py::call_guard<py::gil_scoped_release>());
    m.def("char_fn_logS", &char_fn_logS, py::arg("params"), py::arg("kernel"), py::arg("u"),
          py::arg("resolution") = 1600, py::call_guard<py::gil_scoped_release>());
    m.def("char_fn_X", &char_fn_X, py::arg("params"), py::arg("kernel"), py::arg("u"),
          py::arg("resolution") = 1600, py::call_guard<py::gil_scoped_release>());
    m.def("reference_european_call", &reference_european_call, py::arg("params"),
          py::arg("kernel"), py::arg("strike") = 1.0, py::arg("damping") = 1.5,
          py::arg("resolution") = 1600, py::arg("tolerance") = 1e-5,
          py::call_guard<py::gil_scoped_release>());
    m.def("reference_variance_call", &reference_variance_call, py::arg("params"),
          py::arg("kernel"), py::arg("damping") = 50.0, py::arg("resolution") = 800,
          py::arg("tolerance") = 1e-5, py::call_guard<py::gil_scoped_release>());

    py::class_<HolderReport>(m, "HolderReport")
        .def_readonly("lags", &HolderReport::lags)
        .def_readonly("empirical_moments", &HolderReport::empirical_moments)
        .def_readonly("fitted_slope", &HolderReport::fitted_slope)
        .def_readonly("target", &HolderReport::target);
    py::class_<InvariantSweep>(m, "InvariantSweep")
        .def_readonly("xbar_monotonicity_violations", &InvariantSweep::xbar_monotonicity_violations)
        .def_readonly("negative_sqrt_arguments", &InvariantSweep::negative_sqrt_arguments)
        .def_readonly("negative_v_count", &InvariantSweep::negative_v_count)
        .def_readonly("total_samples", &InvariantSweep::total_samples)
        .def_readonly("negative_v_frequency", &InvariantSweep::negative_v_frequency);
    py::class_<MartingaleCheck>(m, "MartingaleCheck")
        .def_readonly("mean", &MartingaleCheck::mean)
        .def_readonly("standard_error", &MartingaleCheck::standard_error)
        .def_readonly("z_score", &MartingaleCheck::z_score)
        .def_readonly("pass_", &MartingaleCheck::pass);

    m.def("holder_scaling_report", &holder_scaling_report, py::arg("scheme"), py::arg("params"),
          py::arg("kernel"), py::arg("num_steps"), py::arg("num_paths"), py::arg("p") = 2,
          py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("structural_invariant_sweep", &structural_invariant_sweep, py::arg("scheme"),
          py::arg("params"), py::arg("kernel"), py::arg("num_steps"), py::arg("num_paths"),
          py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("martingale_mean_check", &martingale_mean_check, py::arg("params"), py::arg("kernel"),
          py::arg("num_steps"), py::arg("num_paths"), py::arg("seed") = 0,
          py::arg("z_bias") = 0.0, py::call_guard<py::gil_scoped_release>());

    m.def("verify_regularity",
          [](const Kernel& kernel, int grid_n, double horizon, double hurst) {
              const TimeGrid grid = TimeGrid::uniform(grid_n, horizon);
              const auto report = verify_regularity(kernel, grid, hurst);
              return py::dict(py::arg("a2_sup_ratio") = report.a2_sup_ratio,
                              py::arg("a3_sup_ratio") = report.a3_sup_ratio,
                              py::arg("diverged") = report.diverged);
          },
          py::arg("kernel"), py::arg("grid_n"), py::arg("horizon"), py::arg("hurst"));

    m.def("load_config_prices", [](const std::string& path) {
        const ExperimentConfig cfg = load_config(path);
        return price(cfg.model, cfg.kernel, cfg.payoff, cfg.mc);
    });

    py::register_exception<PathFaultError>(m, "PathFaultError");
    py::register_exception<SolverError>(m, "SolverError");
    py::register_exception<ConfigError>(m, "ConfigError");
}

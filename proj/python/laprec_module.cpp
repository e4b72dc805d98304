#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>

#include "laprec/examples.hpp"
#include "laprec/io.hpp"
#include "laprec/kernel.hpp"
#include "laprec/solve.hpp"

namespace py = pybind11;
using namespace laprec;

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Adapter so any Python callable p -> F_delta(p) can drive the inversion.
class CallableSource final : public TransformSource {
  public:
    CallableSource(std::function<double(double)> fn, double delta, double d)
        : fn_(std::move(fn)), delta_(delta), d_(d) {}
    double value(double p) const override { return fn_(p); }
    double noise_level() const override { return delta_; }
    double interval_end() const override { return d_; }

  private:
    std::function<double(double)> fn_;
    double delta_;
    double d_;
};

InversionConfig make_config(double delta, double d, double b, double a0,
                            std::optional<double> q, std::optional<double> kappa,
                            std::optional<double> stop_constant, double stop_exponent,
                            int max_iter, int m_cap, bool legacy_stop_update) {
    InversionConfig config;
    config.delta = delta;
    config.d = d;
    config.b = b;
    config.a0 = a0;
    config.q = q;
    config.kappa = kappa;
    config.stop_constant = stop_constant;
    config.stop_exponent = stop_exponent;
    config.max_iter = max_iter;
    config.m_cap = m_cap;
    config.legacy_stop_update = legacy_stop_update;
    return config;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stable Laplace transform inversion from noisy real-axis samples";

    py::class_<SimpsonGrid>(m, "SimpsonGrid")
        .def_readonly("m", &SimpsonGrid::m)
        .def_readonly("d", &SimpsonGrid::d)
        .def_readonly("h", &SimpsonGrid::h)
        .def_property_readonly("nodes", [](const SimpsonGrid& g) { return to_std(g.nodes); })
        .def_property_readonly("weights", [](const SimpsonGrid& g) { return to_std(g.weights); });

    m.def("build_grid", &build_grid, py::arg("m"), py::arg("d"));
    m.def(
        "integrate_sampled",
        [](const SimpsonGrid& grid, const std::vector<double>& values) {
            return integrate_sampled(grid, to_eigen(values));
        },
        py::arg("grid"), py::arg("values"));
    m.def(
        "wm_norm",
        [](const SimpsonGrid& grid, const std::vector<double>& u) {
            return wm_norm(grid, to_eigen(u));
        },
        py::arg("grid"), py::arg("u"));

    py::class_<KernelMatrix>(m, "KernelMatrix")
        .def_readonly("b", &KernelMatrix::b)
        .def_property_readonly("grid", [](const KernelMatrix& k) { return k.grid; })
        .def_property_readonly("H", [](const KernelMatrix& k) {
            std::vector<std::vector<double>> rows(k.size());
            for (int i = 0; i < k.size(); ++i) {
                rows[i].assign(k.H.row(i).begin(), k.H.row(i).end());
            }
            return rows;
        });
    m.def("build_kernel", &build_kernel, py::arg("grid"), py::arg("b"));

    py::class_<RegularizedSolve>(m, "RegularizedSolve")
        .def_readonly("a", &RegularizedSolve::a)
        .def_readonly("residual_inf", &RegularizedSolve::residual_inf)
        .def_readonly("used_fallback", &RegularizedSolve::used_fallback)
        .def_readonly("condition_warning", &RegularizedSolve::condition_warning)
        .def_property_readonly("c", [](const RegularizedSolve& s) { return to_std(s.c); });
    m.def(
        "solve_regularized",
        [](const KernelMatrix& kernel, double a, const std::vector<double>& rhs) {
            return solve_regularized(kernel, a, to_eigen(rhs));
        },
        py::arg("kernel"), py::arg("a"), py::arg("rhs"));

    py::enum_<StopReason>(m, "StopReason")
        .value("threshold_met", StopReason::threshold_met)
        .value("max_iterations", StopReason::max_iterations)
        .value("a_underflow", StopReason::a_underflow);

    py::class_<InversionConfig>(m, "InversionConfig")
        .def(py::init(&make_config), py::arg("delta") = 0.0, py::arg("d") = 5.0,
             py::arg("b") = 10.0, py::arg("a0") = 0.1, py::arg("q") = py::none(),
             py::arg("kappa") = py::none(), py::arg("stop_constant") = py::none(),
             py::arg("stop_exponent") = 0.99, py::arg("max_iter") = 50, py::arg("m_cap") = 300,
             py::arg("legacy_stop_update") = false)
        .def_readwrite("delta", &InversionConfig::delta)
        .def_readwrite("d", &InversionConfig::d)
        .def_readwrite("b", &InversionConfig::b)
        .def_readwrite("a0", &InversionConfig::a0)
        .def_readwrite("stop_exponent", &InversionConfig::stop_exponent)
        .def_readwrite("max_iter", &InversionConfig::max_iter)
        .def_readwrite("m_cap", &InversionConfig::m_cap)
        .def_readwrite("legacy_stop_update", &InversionConfig::legacy_stop_update)
        .def("resolved_q", &InversionConfig::resolved_q)
        .def("resolved_kappa", &InversionConfig::resolved_kappa)
        .def("resolved_stop_constant", &InversionConfig::resolved_stop_constant)
        .def("threshold", &InversionConfig::threshold);

    py::class_<ExpTerm>(m, "ExpTerm")
        .def_readonly("amplitude", &ExpTerm::amplitude)
        .def_readonly("rate", &ExpTerm::rate);

    py::class_<Reconstruction>(m, "Reconstruction")
        .def_readonly("terms", &Reconstruction::terms)
        .def("evaluate", &Reconstruction::evaluate, py::arg("t"))
        .def("evaluate_grid", &Reconstruction::evaluate_grid, py::arg("ts"));

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("n", &IterationRecord::n)
        .def_readonly("a", &IterationRecord::a)
        .def_readonly("m", &IterationRecord::m)
        .def_readonly("G", &IterationRecord::G)
        .def_readonly("coeff_norm", &IterationRecord::coeff_norm)
        .def_readonly("solve_residual", &IterationRecord::solve_residual);

    py::class_<InversionReport>(m, "InversionReport")
        .def_readonly("n_delta", &InversionReport::n_delta)
        .def_readonly("iterations", &InversionReport::iterations)
        .def_readonly("stop_reason", &InversionReport::stop_reason)
        .def_readonly("threshold", &InversionReport::threshold)
        .def_readonly("wall_time_ms", &InversionReport::wall_time_ms)
        .def_readonly("condition_warning", &InversionReport::condition_warning)
        .def("a_final", &InversionReport::a_final)
        .def("m_final", &InversionReport::m_final)
        .def("G_final", &InversionReport::G_final);

    m.def("choose_m", &choose_m, py::arg("kappa"), py::arg("a0"), py::arg("a_n"),
          py::arg("m_cap"));

    m.def(
        "invert_callable",
        [](const std::function<double(double)>& fn, const InversionConfig& config) {
            const CallableSource source(fn, config.delta, config.d);
            return run_inversion(source, config);
        },
        py::arg("value"), py::arg("config"),
        "Run the adaptive inversion against a callable p -> F_delta(p)");

    m.def(
        "invert_example",
        [](int id, double delta, std::uint64_t seed, InversionConfig config) {
            config.delta = delta;
            const NoisySource source(example_by_id(id), delta, seed, config.d);
            return run_inversion(source, config);
        },
        py::arg("id"), py::arg("delta"), py::arg("seed"), py::arg("config"),
        "Run the adaptive inversion against a stock problem with seeded noise");

    m.def(
        "invert_tabulated",
        [](const std::vector<double>& ps, const std::vector<double>& Fs,
           const InversionConfig& config) {
            const SampledTransform source(ps, Fs, config.delta);
            return run_inversion(source, config);
        },
        py::arg("p"), py::arg("F"), py::arg("config"),
        "Run the adaptive inversion against tabulated samples (linear interpolation)");

    m.def(
        "exact_function", [](int id, double t) { return exact_function(example_by_id(id), t); },
        py::arg("id"), py::arg("t"));
    m.def(
        "exact_transform", [](int id, double p) { return exact_transform(example_by_id(id), p); },
        py::arg("id"), py::arg("p"));
    m.def("mae_grid", [] { return mae_grid(); });
    m.def(
        "mae", [](int id, const Reconstruction& recon) { return mae(example_by_id(id), recon); },
        py::arg("id"), py::arg("recon"));

    py::class_<BenchRow>(m, "BenchRow")
        .def_readonly("example_id", &BenchRow::example_id)
        .def_readonly("delta", &BenchRow::delta)
        .def_readonly("seed", &BenchRow::seed)
        .def_readonly("mae", &BenchRow::mae)
        .def_readonly("m_final", &BenchRow::m_final)
        .def_readonly("iterations", &BenchRow::iterations)
        .def_readonly("a_final", &BenchRow::a_final)
        .def_readonly("cpu_seconds", &BenchRow::cpu_seconds)
        .def_readonly("stop_reason", &BenchRow::stop_reason);

    m.def(
        "run_benchmark",
        [](int id, double delta, std::uint64_t seed) {
            return run_benchmark(example_by_id(id), delta, seed);
        },
        py::arg("id"), py::arg("delta"), py::arg("seed"));
    m.def("run_example13", &run_example13, py::arg("b"));

    m.def(
        "load_transform",
        [](const std::string& path, double delta) {
            auto src = std::make_unique<SampledTransform>(load_transform(path, delta));
            return src;
        },
        py::arg("path"), py::arg("delta") = 0.0);
    py::class_<SampledTransform>(m, "SampledTransform")
        .def("value", &SampledTransform::value, py::arg("p"))
        .def_property_readonly("delta", &SampledTransform::noise_level)
        .def_property_readonly("d", &SampledTransform::interval_end);
}

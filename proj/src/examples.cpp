#include "laprec/examples.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "laprec/expfun.hpp"

namespace laprec {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

std::vector<ExamplePair> make_catalog() {
    std::vector<ExamplePair> catalog;
    catalog.reserve(13);

    // 1: unit box on [1/2, 3/2].
    catalog.push_back({1, 10.0,
                       [](double t) { return (t >= 0.5 && t <= 1.5) ? 1.0 : 0.0; },
                       [](double p) { return std::exp(-0.5 * p) * phi1(p); },
                       {0.5, 1.5},
                       "box pulse"});

    // 2: unit step on (1, 10), value 1/2 at the jump t = 1.
    catalog.push_back({2, 10.0,
                       [](double t) {
                           if (t == 1.0) {
                               return 0.5;
                           }
                           return (t > 1.0 && t < 10.0) ? 1.0 : 0.0;
                       },
                       [](double p) { return 9.0 * std::exp(-p) * phi1(9.0 * p); },
                       {1.0},
                       "step with midpoint value at the jump"});

    // 3: t e^{-t} on [0, 10).
    catalog.push_back({3, 10.0,
                       [](double t) { return (t >= 0.0 && t < 10.0) ? t * std::exp(-t) : 0.0; },
                       [](double p) {
                           const double s = p + 1.0;
                           return 100.0 * phi2(10.0 * s);
                       },
                       {},
                       "smooth unimodal decay"});

    // 4: 1 - e^{-t/2} on [0, 10).
    catalog.push_back({4, 10.0,
                       [](double t) {
                           return (t >= 0.0 && t < 10.0) ? 1.0 - std::exp(-0.5 * t) : 0.0;
                       },
                       [](double p) { return 10.0 * (phi1(10.0 * p) - phi1(10.0 * (p + 0.5))); },
                       {},
                       "saturating rise"});

    // 5: damped sine (2/sqrt3) e^{-t/2} sin(sqrt3 t / 2) on [0, 10).
    catalog.push_back({5, 10.0,
                       [](double t) {
                           if (t < 0.0 || t >= 10.0) {
                               return 0.0;
                           }
                           return 2.0 / kSqrt3 * std::exp(-0.5 * t) * std::sin(kSqrt3 * t / 2.0);
                       },
                       [](double p) {
                           const double s = p + 0.5;
                           const double den = s * s + 0.75;
                           const double decay = std::exp(-10.0 * s);
                           const double phase = 10.0 * kSqrt3 / 2.0;
                           return (1.0 - std::cos(phase) * decay) / den -
                                  2.0 * s * decay * std::sin(phase) / (kSqrt3 * den);
                       },
                       {},
                       "damped sine"});

    // 6: hat ramp, t on [0,1) then (3 - t)/2 on [1, 3).
    catalog.push_back({6, 10.0,
                       [](double t) {
                           if (t < 0.0) {
                               return 0.0;
                           }
                           if (t < 1.0) {
                               return t;
                           }
                           if (t < 3.0) {
                               return 1.5 - 0.5 * t;
                           }
                           return 0.0;
                       },
                       [](double p) {
                           // integral_0^1 t e^{-pt} + integral_1^3 (3-t)/2 e^{-pt},
                           // assembled from phi1/phi2 so small p stays stable. A
                           // widely circulated closed form for this hat carries an
                           // e^{2p} factor, which cannot appear in the transform of
                           // a bounded compactly supported function; the term is
                           // e^{-p} (2p - 1) when re-derived.
                           return phi2(p) + 2.0 * std::exp(-p) * (phi1(2.0 * p) - phi2(2.0 * p));
                       },
                       {1.0, 3.0},
                       "piecewise linear hat"});

    // 7: 1 - e^{-t} - t e^{-t} on [0,1), constant 1 - 2/e on [1, 10).
    catalog.push_back({7, 10.0,
                       [](double t) {
                           if (t < 0.0) {
                               return 0.0;
                           }
                           if (t < 1.0) {
                               return 1.0 - std::exp(-t) - t * std::exp(-t);
                           }
                           if (t < 10.0) {
                               return 1.0 - 2.0 / std::exp(1.0);
                           }
                           return 0.0;
                       },
                       [](double p) {
                           const double plateau = 1.0 - 2.0 / std::exp(1.0);
                           return phi1(p) - phi1(1.0 + p) - phi2(1.0 + p) +
                                  plateau * 9.0 * std::exp(-p) * phi1(9.0 * p);
                       },
                       {1.0},
                       "smooth rise to a plateau"});

    // 8: 4 t^2 e^{-2t} on [0, 10).
    catalog.push_back({8, 10.0,
                       [](double t) {
                           return (t >= 0.0 && t < 10.0) ? 4.0 * t * t * std::exp(-2.0 * t) : 0.0;
                       },
                       [](double p) {
                           const double s = 2.0 + p;
                           const double decay = std::exp(-10.0 * s);
                           return (8.0 - 4.0 * decay * (100.0 * s * s + 20.0 * s + 2.0)) /
                                  (s * s * s);
                       },
                       {},
                       "squared-time decay"});

    // 9: descending ramp 5 - t on [0, 5).
    catalog.push_back({9, 10.0,
                       [](double t) { return (t >= 0.0 && t < 5.0) ? 5.0 - t : 0.0; },
                       [](double p) { return 25.0 * (phi1(5.0 * p) - phi2(5.0 * p)); },
                       {5.0},
                       "descending ramp"});

    // 10: t on [0, 10).
    catalog.push_back({10, 10.0,
                       [](double t) { return (t >= 0.0 && t < 10.0) ? t : 0.0; },
                       [](double p) { return 100.0 * phi2(10.0 * p); },
                       {},
                       "linear growth"});

    // 11: sin t on [0, 10).
    catalog.push_back({11, 10.0,
                       [](double t) { return (t >= 0.0 && t < 10.0) ? std::sin(t) : 0.0; },
                       [](double p) {
                           const double decay = std::exp(-10.0 * p);
                           return (1.0 - decay * (p * std::sin(10.0) + std::cos(10.0))) /
                                  (1.0 + p * p);
                       },
                       {},
                       "periodic"});

    // 12: t cos t on [0, 10).
    catalog.push_back({12, 10.0,
                       [](double t) { return (t >= 0.0 && t < 10.0) ? t * std::cos(t) : 0.0; },
                       [](double p) {
                           const double p2 = p * p;
                           const double den = (1.0 + p2) * (1.0 + p2);
                           const double decay = std::exp(-10.0 * p);
                           const double c = std::cos(10.0);
                           const double s = std::sin(10.0);
                           return ((p2 - 1.0) - decay * (-1.0 + p2 + 10.0 * p + 10.0 * p2 * p) * c +
                                   decay * (2.0 * p + 10.0 + 10.0 * p2) * s) /
                                  den;
                       },
                       {},
                       "growing oscillation"});

    // 13: e^{-t} on the whole half line.
    catalog.push_back({13, 10.0,
                       [](double t) { return std::exp(-t); },
                       [](double p) { return 1.0 / (1.0 + p); },
                       {},
                       "unbounded support, truncation treated as noise"});

    return catalog;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

const std::vector<ExamplePair>& example_catalog() {
    static const std::vector<ExamplePair> catalog = make_catalog();
    return catalog;
}

const ExamplePair& example_by_id(int id) {
    const auto& catalog = example_catalog();
    if (id < 1 || id > static_cast<int>(catalog.size())) {
        throw std::invalid_argument("unknown example id " + std::to_string(id) +
                                    " (valid: 1..13)");
    }
    return catalog[id - 1];
}

double exact_function(const ExamplePair& example, double t) {
    return example.f(t);
}

double exact_transform(const ExamplePair& example, double p) {
    return example.F(p);
}

NoisySource::NoisySource(const ExamplePair& example, double delta, std::uint64_t seed, double d)
    : example_(&example), delta_(delta), seed_(seed), d_(d) {
    if (delta < 0.0) {
        throw std::invalid_argument("NoisySource: delta must be nonnegative");
    }
}

double NoisySource::perturbation(double p) const {
    if (delta_ == 0.0) {
        return 0.0;
    }
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(p));
    std::memcpy(&bits, &p, sizeof(bits));
    auto it = memo_.find(bits);
    if (it != memo_.end()) {
        return it->second;
    }
    const std::uint64_t z = splitmix64(seed_ ^ splitmix64(bits));
    const double u01 = static_cast<double>(z >> 11) * 0x1.0p-53; // [0, 1)
    const double draw = (2.0 * u01 - 1.0) * delta_;
    memo_.emplace(bits, draw);
    return draw;
}

double NoisySource::value(double p) const {
    return example_->F(p) + perturbation(p);
}

NoisySource perturb_source(const ExamplePair& example, double delta, std::uint64_t seed,
                           double d) {
    return NoisySource(example, delta, seed, d);
}

const std::vector<double>& mae_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> ts(100);
        for (int j = 1; j <= 100; ++j) {
            ts[j - 1] = 0.01 + 0.1 * (j - 1);
        }
        return ts;
    }();
    return grid;
}

double mae(const ExamplePair& example, const Reconstruction& recon) {
    const auto& ts = mae_grid();
    double sum = 0.0;
    for (double t : ts) {
        const double diff = example.f(t) - recon.evaluate(t);
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(ts.size()));
}

InversionConfig benchmark_config(const ExamplePair& example, double delta,
                                 const ConfigOverrides& overrides) {
    InversionConfig config;
    config.delta = delta;
    config.b = example.b_default;
    if (overrides.a0) config.a0 = *overrides.a0;
    if (overrides.q) config.q = overrides.q;
    if (overrides.kappa) config.kappa = overrides.kappa;
    if (overrides.stop_constant) config.stop_constant = overrides.stop_constant;
    if (overrides.stop_exponent) config.stop_exponent = *overrides.stop_exponent;
    if (overrides.d) config.d = *overrides.d;
    if (overrides.b) config.b = *overrides.b;
    if (overrides.max_iter) config.max_iter = *overrides.max_iter;
    if (overrides.m_cap) config.m_cap = *overrides.m_cap;
    if (overrides.legacy_stop_update) config.legacy_stop_update = *overrides.legacy_stop_update;
    return config;
}

BenchRow run_benchmark(const ExamplePair& example, double delta, std::uint64_t seed,
                       const ConfigOverrides& overrides) {
    const InversionConfig config = benchmark_config(example, delta, overrides);
    const NoisySource source(example, delta, seed, config.d);

    const auto start = std::chrono::steady_clock::now();
    const auto [recon, report] = run_inversion(source, config);
    const auto end = std::chrono::steady_clock::now();

    BenchRow row;
    row.example_id = example.id;
    row.delta = delta;
    row.seed = seed;
    row.mae = mae(example, recon);
    row.m_final = report.m_final();
    row.iterations = report.n_delta;
    row.a_final = report.a_final();
    row.cpu_seconds = std::chrono::duration<double>(end - start).count();
    row.stop_reason = report.stop_reason;
    return row;
}

namespace {

// Data for the truncation study: the exact transform of e^{-t} minus the
// constant tail bound e^{-b}.
class TruncatedExpSource final : public TransformSource {
  public:
    TruncatedExpSource(double b, double d) : b_(b), d_(d) {}
    double value(double p) const override { return 1.0 / (1.0 + p) - std::exp(-b_); }
    double noise_level() const override { return std::exp(-b_); }
    double interval_end() const override { return d_; }

  private:
    double b_;
    double d_;
};

} // namespace

BenchRow run_example13(double b) {
    if (!(b > 0.0)) {
        throw std::invalid_argument("run_example13: b must be positive");
    }
    const ExamplePair& example = example_by_id(13);

    InversionConfig config;
    config.d = 2.0;
    config.b = b;
    config.delta = std::exp(-b);
    config.kappa = b <= 5.0 ? 1e-1 : 1e-5;

    const TruncatedExpSource source(b, config.d);

    const auto start = std::chrono::steady_clock::now();
    const auto [recon, report] = run_inversion(source, config);
    const auto end = std::chrono::steady_clock::now();

    BenchRow row;
    row.example_id = 13;
    row.delta = config.delta;
    row.seed = 0;
    row.mae = mae(example, recon);
    row.m_final = report.m_final();
    row.iterations = report.n_delta;
    row.a_final = report.a_final();
    row.cpu_seconds = std::chrono::duration<double>(end - start).count();
    row.stop_reason = report.stop_reason;
    return row;
}

} // namespace laprec

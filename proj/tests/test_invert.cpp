#include <doctest.h>

#include <cmath>

#include "laprec/examples.hpp"
#include "laprec/invert.hpp"

using namespace laprec;

namespace {

// Constant-zero data with a declared noise level.
class ZeroSource final : public TransformSource {
  public:
    ZeroSource(double delta, double d) : delta_(delta), d_(d) {}
    double value(double) const override { return 0.0; }
    double noise_level() const override { return delta_; }
    double interval_end() const override { return d_; }

  private:
    double delta_;
    double d_;
};

class ThrowingSource final : public TransformSource {
  public:
    double value(double p) const override {
        if (p > 2.0) {
            throw std::runtime_error("sensor gap");
        }
        return 1.0;
    }
    double noise_level() const override { return 1e-2; }
    double interval_end() const override { return 5.0; }
};

} // namespace

TEST_CASE("choose_m: pinned values and limits") {
    CHECK(choose_m(1.0, 0.1, 0.1, 300) == 2);
    CHECK(choose_m(1.0, 0.1, 1e-4, 300) == 6);
    CHECK(choose_m(0.3, 0.1, 2e-10, 300) == 46);
    CHECK(choose_m(1.0, 0.1, 1e-9, 300) == 100);
    CHECK(choose_m(1.0, 0.1, 1e-12, 300) == 300); // capped
    CHECK(choose_m(1.0, 0.1, 1e-12, 40) == 40);

    CHECK_THROWS_AS(choose_m(1.0, 0.1, 0.2, 300), std::invalid_argument);  // a_n > a0
    CHECK_THROWS_AS(choose_m(0.0, 0.1, 0.1, 300), std::invalid_argument);
    CHECK_THROWS_AS(choose_m(1.0, 0.1, 0.0, 300), std::invalid_argument);
    CHECK_THROWS_AS(choose_m(1.0, 0.1, 0.1, 301), std::invalid_argument); // odd cap
}

TEST_CASE("config resolution and validation") {
    InversionConfig config;
    config.delta = 1e-4;
    CHECK(config.resolved_q() == doctest::Approx(1e-2).epsilon(1e-12));
    CHECK(config.resolved_kappa() == 3.0);
    config.delta = 1e-6;
    CHECK(config.resolved_kappa() == 0.3);
    config.delta = 0.0;
    CHECK(config.resolved_q() == doctest::Approx(1e-8).epsilon(1e-12));

    config.delta = 1e-2;
    config.d = 5.0;
    CHECK(config.resolved_stop_constant() == doctest::Approx(std::sqrt(5.0) + 0.01));
    CHECK(config.threshold() == doctest::Approx(0.023519).epsilon(1e-4));
    CHECK_NOTHROW(config.validate());

    InversionConfig bad = config;
    bad.q = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.stop_constant = 1.0; // below sqrt(5)
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.stop_exponent = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.m_cap = 31;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.a0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("reconstruction evaluation basics") {
    Reconstruction recon;
    recon.terms = {{2.0, 0.0}};
    for (double t : {0.0, 0.5, 7.0}) {
        CHECK(recon.evaluate(t) == 2.0);
    }
    recon.terms = {{1.0, 1.0}};
    CHECK(recon.evaluate(0.0) == 1.0);
    recon.terms = {{1.0, 1.0}, {-1.0, 1.0}};
    for (double t : {0.0, 1.0, 4.0}) {
        CHECK(recon.evaluate(t) == 0.0);
    }

    CHECK(recon.evaluate_grid({}).empty());
    CHECK(recon.evaluate_grid({2.0}) == std::vector<double>{recon.evaluate(2.0)});
    CHECK(recon.evaluate_grid(mae_grid()).size() == 100);
}

TEST_CASE("zero data stops immediately with a zero reconstruction") {
    InversionConfig config;
    config.delta = 1e-3;
    const ZeroSource source(1e-3, config.d);
    const auto [recon, report] = run_inversion(source, config);

    CHECK(report.stop_reason == StopReason::threshold_met);
    CHECK(report.n_delta == 1);
    REQUIRE(report.iterations.size() == 1);
    CHECK(report.iterations[0].G == 0.0);
    CHECK(report.iterations[0].coeff_norm == 0.0);
    for (double t : {0.0, 1.0, 9.91}) {
        CHECK(recon.evaluate(t) == 0.0);
    }
}

TEST_CASE("source and config interval ends must agree") {
    InversionConfig config;
    config.delta = 1e-3;
    config.d = 4.0;
    const ZeroSource source(1e-3, 5.0);
    CHECK_THROWS_AS(run_inversion(source, config), std::invalid_argument);
}

TEST_CASE("source failures carry the node position") {
    InversionConfig config;
    config.delta = 1e-2;
    config.q = 0.5;
    config.kappa = 4.0; // forces m >= 4 so a node beyond p = 2 is sampled
    try {
        run_inversion(ThrowingSource(), config);
        FAIL("expected a runtime_error");
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        CHECK(what.find("node") != std::string::npos);
        CHECK(what.find("sensor gap") != std::string::npos);
    }
}

TEST_CASE("trace is self-consistent: schedule, m rule, G recursion, term count") {
    const ExamplePair& example = example_by_id(3);
    for (double delta : {1e-2, 1e-4}) {
        InversionConfig config;
        config.delta = delta;
        const NoisySource source(example, delta, 42, config.d);
        const auto [recon, report] = run_inversion(source, config);

        REQUIRE(!report.iterations.empty());
        const double q = config.resolved_q();
        double G_prev = 0.0;
        int m_prev = 0;
        std::size_t expected_terms = 0;
        for (const IterationRecord& it : report.iterations) {
            CHECK(it.a == config.a0 * std::pow(q, it.n));
            CHECK(it.m == choose_m(config.resolved_kappa(), config.a0, it.a, config.m_cap));
            CHECK(it.m >= m_prev);
            CHECK(it.G == q * G_prev + (1.0 - q) * it.a * it.coeff_norm);
            G_prev = it.G;
            m_prev = it.m;
            expected_terms += static_cast<std::size_t>(it.m) + 1;
        }
        CHECK(recon.terms.size() == expected_terms);
        for (const ExpTerm& term : recon.terms) {
            CHECK(term.rate >= 0.0);
            CHECK(std::isfinite(term.amplitude));
        }

        // Stopping rule bracketing: strictly above the threshold before
        // the stop, at or below at the stop.
        if (report.stop_reason == StopReason::threshold_met) {
            for (std::size_t i = 0; i + 1 < report.iterations.size(); ++i) {
                CHECK(report.iterations[i].G > report.threshold);
            }
            CHECK(report.iterations.back().G <= report.threshold);
        }
    }
}

TEST_CASE("legacy stop update drops the 1-q factor") {
    const ExamplePair& example = example_by_id(4);
    InversionConfig config;
    config.delta = 1e-2;
    config.legacy_stop_update = true;
    const NoisySource source(example, 1e-2, 3, config.d);
    const auto [recon, report] = run_inversion(source, config);
    (void)recon;
    const double q = config.resolved_q();
    double G_prev = 0.0;
    for (const IterationRecord& it : report.iterations) {
        CHECK(it.G == q * G_prev + it.a * it.coeff_norm);
        G_prev = it.G;
    }
}

TEST_CASE("noise-free data exhausts the schedule down to underflow") {
    InversionConfig config;
    config.delta = 0.0; // threshold 0, q resolves to 1e-8
    config.m_cap = 20;
    const NoisySource source(example_by_id(3), 0.0, 1, config.d);
    const auto [recon, report] = run_inversion(source, config);
    (void)recon;
    CHECK(report.stop_reason == StopReason::a_underflow);
    // a_n = 0.1 * 10^{-8n} drops below 1e-300 at n = 38.
    CHECK(report.n_delta == 37);
}

TEST_CASE("max_iter is honored") {
    InversionConfig config;
    config.delta = 0.0;
    config.max_iter = 5;
    config.m_cap = 20;
    const NoisySource source(example_by_id(3), 0.0, 1, config.d);
    const auto [recon, report] = run_inversion(source, config);
    (void)recon;
    CHECK(report.stop_reason == StopReason::max_iterations);
    CHECK(report.n_delta == 5);
    CHECK(report.iterations.size() == 5);
}

TEST_CASE("smooth problem at delta = 1e-4 recovers to 1e-2") {
    const ExamplePair& example = example_by_id(3);
    InversionConfig config;
    config.delta = 1e-4;
    const NoisySource source(example, 1e-4, 11, config.d);
    const auto [recon, report] = run_inversion(source, config);
    CHECK(report.stop_reason == StopReason::threshold_met);
    CHECK(report.n_delta <= 10);
    CHECK(mae(example, recon) <= 1e-2);
}

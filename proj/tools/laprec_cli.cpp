// Command-line front end: `laprec invert` runs one inversion from file
// data or a stock problem and writes the reconstruction artifacts;
// `laprec benchmark` reproduces the accuracy tables.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "laprec/examples.hpp"
#include "laprec/io.hpp"

namespace fs = std::filesystem;
using namespace laprec;

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "cannot parse '" + item + "' as a number");
        }
    }
    if (values.empty()) {
        throw CLI::ValidationError(what, "empty list");
    }
    return values;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            seeds.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--seeds", "cannot parse '" + item + "' as a seed");
        }
    }
    if (seeds.empty()) {
        throw CLI::ValidationError("--seeds", "empty list");
    }
    return seeds;
}

std::vector<double> parse_eval_grid(const std::string& text) {
    double start = 0.0;
    double step = 0.0;
    int count = 0;
    char sep1 = 0;
    char sep2 = 0;
    std::istringstream stream(text);
    if (!(stream >> start >> sep1 >> step >> sep2 >> count) || sep1 != ':' || sep2 != ':' ||
        count < 1) {
        throw CLI::ValidationError("--eval-grid", "expected start:step:count");
    }
    std::vector<double> ts(count);
    for (int i = 0; i < count; ++i) {
        ts[i] = start + step * i;
    }
    return ts;
}

struct InvertOptions {
    std::string data_path;
    int example_id = 0;
    double delta = 0.0;
    double support = 10.0;
    double d = 5.0;
    bool d_given = false;
    std::uint64_t seed = 1;
    std::string out_dir = "laprec_out";
    std::string eval_grid_spec;
    ConfigOverrides overrides;
};

int run_invert(const InvertOptions& opt) {
    std::unique_ptr<TransformSource> source;
    double d = opt.d;
    if (!opt.data_path.empty()) {
        auto sampled = std::make_unique<SampledTransform>(load_transform(opt.data_path, opt.delta));
        if (opt.d_given && std::abs(sampled->interval_end() - opt.d) > 1e-12) {
            std::cerr << "error: --d " << opt.d << " conflicts with data range [0, "
                      << sampled->interval_end() << "]\n";
            return 1;
        }
        d = sampled->interval_end();
        source = std::move(sampled);
    } else {
        const ExamplePair& example = example_by_id(opt.example_id);
        source = std::make_unique<NoisySource>(example, opt.delta, opt.seed, d);
    }

    InversionConfig config;
    config.delta = opt.delta;
    config.d = d;
    config.b = opt.support;
    if (opt.overrides.a0) config.a0 = *opt.overrides.a0;
    if (opt.overrides.q) config.q = opt.overrides.q;
    if (opt.overrides.kappa) config.kappa = opt.overrides.kappa;
    if (opt.overrides.stop_constant) config.stop_constant = opt.overrides.stop_constant;
    if (opt.overrides.stop_exponent) config.stop_exponent = *opt.overrides.stop_exponent;
    if (opt.overrides.max_iter) config.max_iter = *opt.overrides.max_iter;
    if (opt.overrides.m_cap) config.m_cap = *opt.overrides.m_cap;
    config.validate();

    const auto [recon, report] = run_inversion(*source, config);

    const std::vector<double> ts =
        opt.eval_grid_spec.empty() ? mae_grid() : parse_eval_grid(opt.eval_grid_spec);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    write_terms_csv((dir / "terms.csv").string(), recon);
    write_samples_csv((dir / "samples.csv").string(), ts, recon.evaluate_grid(ts));
    write_report_kv((dir / "report.txt").string(), report);

    std::vector<std::pair<std::string, std::string>> manifest;
    manifest.emplace_back("tool_version", kVersion);
    if (!opt.data_path.empty()) {
        manifest.emplace_back("data", opt.data_path);
    } else {
        manifest.emplace_back("example", std::to_string(opt.example_id));
    }
    manifest.emplace_back("delta", format_double(config.delta));
    manifest.emplace_back("d", format_double(config.d));
    manifest.emplace_back("b", format_double(config.b));
    manifest.emplace_back("a0", format_double(config.a0));
    manifest.emplace_back("q", format_double(config.resolved_q()));
    manifest.emplace_back("kappa", format_double(config.resolved_kappa()));
    manifest.emplace_back("C", format_double(config.resolved_stop_constant()));
    manifest.emplace_back("epsilon", format_double(config.stop_exponent));
    manifest.emplace_back("max_iter", std::to_string(config.max_iter));
    manifest.emplace_back("m_cap", std::to_string(config.m_cap));
    manifest.emplace_back("seed", std::to_string(opt.seed));
    manifest.emplace_back("eval_grid",
                          opt.eval_grid_spec.empty() ? "0.01:0.1:100" : opt.eval_grid_spec);
    manifest.emplace_back("out", opt.out_dir);
    manifest.emplace_back("files", "terms.csv,samples.csv,report.txt,manifest.txt");
    write_manifest_kv((dir / "manifest.txt").string(), manifest);

    std::cout << "stop_reason=" << to_string(report.stop_reason) << " n_delta=" << report.n_delta
              << " m_final=" << report.m_final() << " a_final=" << format_double(report.a_final())
              << "\noutputs written to " << opt.out_dir << "\n";

    return report.stop_reason == StopReason::threshold_met ? 0 : 2;
}

struct BenchmarkOptions {
    bool all = false;
    int example_id = 0;
    std::string deltas = "1e-2,1e-4,1e-6";
    std::string seeds = "1,2,3,4,5";
    std::string b_values = "5,8,20,30";
    std::string out_dir = "laprec_bench";
};

void write_bench_table(const fs::path& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path.string() + ": cannot open for writing");
    }
    out << "delta,seed,mae,m_n_delta,iterations,cpu_seconds,a_n_delta,stop_reason\n";
    for (const BenchRow& row : rows) {
        out << format_double(row.delta) << ',' << row.seed << ',' << format_double(row.mae) << ','
            << row.m_final << ',' << row.iterations << ',' << format_double(row.cpu_seconds) << ','
            << format_double(row.a_final) << ',' << to_string(row.stop_reason) << '\n';
    }
}

void write_truncation_table(const fs::path& path, const std::vector<BenchRow>& rows,
                            const std::vector<double>& bs) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path.string() + ": cannot open for writing");
    }
    out << "b,mae,m_n_delta,iterations,cpu_seconds,a_n_delta,stop_reason\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BenchRow& row = rows[i];
        out << format_double(bs[i]) << ',' << format_double(row.mae) << ',' << row.m_final << ','
            << row.iterations << ',' << format_double(row.cpu_seconds) << ','
            << format_double(row.a_final) << ',' << to_string(row.stop_reason) << '\n';
    }
}

int run_benchmark_cmd(const BenchmarkOptions& opt) {
    const std::vector<double> deltas = parse_number_list(opt.deltas, "--deltas");
    const std::vector<std::uint64_t> seeds = parse_seed_list(opt.seeds);

    std::vector<int> ids;
    if (opt.all) {
        for (int id = 1; id <= 13; ++id) {
            ids.push_back(id);
        }
    } else {
        ids.push_back(opt.example_id);
    }

    fs::create_directories(opt.out_dir);
    for (int id : ids) {
        const ExamplePair& example = example_by_id(id);
        char name[32];
        std::snprintf(name, sizeof(name), "example_%02d.csv", id);
        const fs::path path = fs::path(opt.out_dir) / name;

        if (id == 13) {
            const std::vector<double> bs = parse_number_list(opt.b_values, "--b-values");
            std::vector<BenchRow> rows;
            rows.reserve(bs.size());
            for (double b : bs) {
                rows.push_back(run_example13(b));
            }
            write_truncation_table(path, rows, bs);
            std::cout << name << ": " << rows.size() << " rows\n";
            continue;
        }

        std::vector<BenchRow> rows;
        rows.reserve(deltas.size() * seeds.size());
        for (double delta : deltas) {
            for (std::uint64_t seed : seeds) {
                rows.push_back(run_benchmark(example, delta, seed));
            }
        }
        write_bench_table(path, rows);
        std::cout << name << ": " << rows.size() << " rows\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace transform inversion from noisy real-axis samples"};
    app.require_subcommand(1);

    InvertOptions inv;
    double a0 = 0.0;
    double q = 0.0;
    double kappa = 0.0;
    double stop_constant = 0.0;
    double stop_exponent = 0.0;
    int max_iter = 0;

    CLI::App* invert = app.add_subcommand("invert", "Invert one transform");
    auto* data_opt = invert->add_option("--data", inv.data_path, "CSV file with header p,F");
    auto* example_opt =
        invert->add_option("--example", inv.example_id, "Stock problem id (1..13)");
    data_opt->excludes(example_opt);
    example_opt->excludes(data_opt);
    invert->add_option("--delta", inv.delta, "Noise level of the data")->capture_default_str();
    invert->add_option("--support", inv.support, "Support bound b of the unknown function")
        ->capture_default_str();
    auto* d_opt = invert->add_option("--d", inv.d, "Right end of the data interval [0, d]");
    invert->add_option("--seed", inv.seed, "Noise seed for --example runs")
        ->capture_default_str();
    invert->add_option("--out", inv.out_dir, "Output directory")->capture_default_str();
    invert->add_option("--eval-grid", inv.eval_grid_spec,
                       "Reconstruction sampling grid start:step:count");
    auto* a0_opt = invert->add_option("--a0", a0, "Initial regularization parameter");
    auto* q_opt = invert->add_option("--q", q, "Geometric ratio of the schedule, in (0,1)");
    auto* kappa_opt = invert->add_option("--kappa", kappa, "Grid growth gain");
    auto* c_opt = invert->add_option("--C", stop_constant, "Stop constant, must exceed sqrt(d)");
    auto* eps_opt = invert->add_option("--epsilon", stop_exponent, "Stop exponent, in (0,1)");
    auto* iter_opt = invert->add_option("--max-iter", max_iter, "Iteration cap");

    BenchmarkOptions bench;
    CLI::App* benchmark = app.add_subcommand("benchmark", "Reproduce the accuracy tables");
    auto* all_opt = benchmark->add_flag("--all", bench.all, "Run every stock problem");
    auto* bench_example =
        benchmark->add_option("--example", bench.example_id, "Stock problem id (1..13)");
    all_opt->excludes(bench_example);
    bench_example->excludes(all_opt);
    benchmark->add_option("--deltas", bench.deltas, "Comma-separated noise levels")
        ->capture_default_str();
    benchmark->add_option("--seeds", bench.seeds, "Comma-separated seeds")->capture_default_str();
    benchmark->add_option("--b-values", bench.b_values,
                          "Comma-separated support bounds for problem 13")
        ->capture_default_str();
    benchmark->add_option("--out", bench.out_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (invert->parsed()) {
            if (data_opt->count() == 0 && example_opt->count() == 0) {
                std::cerr << "error: one of --data or --example is required\n";
                return 1;
            }
            inv.d_given = d_opt->count() > 0;
            if (a0_opt->count() > 0) inv.overrides.a0 = a0;
            if (q_opt->count() > 0) inv.overrides.q = q;
            if (kappa_opt->count() > 0) inv.overrides.kappa = kappa;
            if (c_opt->count() > 0) inv.overrides.stop_constant = stop_constant;
            if (eps_opt->count() > 0) inv.overrides.stop_exponent = stop_exponent;
            if (iter_opt->count() > 0) inv.overrides.max_iter = max_iter;
            return run_invert(inv);
        }
        if (benchmark->parsed()) {
            if (!bench.all && bench_example->count() == 0) {
                std::cerr << "error: one of --all or --example is required\n";
                return 1;
            }
            return run_benchmark_cmd(bench);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

#include "laprec/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace laprec {

SampledTransform::SampledTransform(std::vector<double> ps, std::vector<double> Fs, double delta)
    : ps_(std::move(ps)), Fs_(std::move(Fs)), delta_(delta) {
    if (ps_.size() != Fs_.size()) {
        throw std::invalid_argument("SampledTransform: p and F lengths differ");
    }
    if (ps_.size() < 3) {
        throw std::invalid_argument("SampledTransform: at least 3 points required");
    }
    if (ps_.front() != 0.0) {
        throw std::invalid_argument("SampledTransform: first p must be 0");
    }
    for (std::size_t i = 1; i < ps_.size(); ++i) {
        if (!(ps_[i] > ps_[i - 1])) {
            throw std::invalid_argument("SampledTransform: p values must be strictly increasing");
        }
    }
    if (delta_ < 0.0) {
        throw std::invalid_argument("SampledTransform: delta must be nonnegative");
    }
}

double SampledTransform::value(double p) const {
    if (p < 0.0 || p > ps_.back()) {
        throw std::out_of_range("SampledTransform: query p = " + std::to_string(p) +
                                " outside data range [0, " + std::to_string(ps_.back()) + "]");
    }
    const auto it = std::lower_bound(ps_.begin(), ps_.end(), p);
    const std::size_t idx = static_cast<std::size_t>(it - ps_.begin());
    if (it != ps_.end() && *it == p) {
        return Fs_[idx];
    }
    const double p0 = ps_[idx - 1];
    const double p1 = ps_[idx];
    const double u = (p - p0) / (p1 - p0);
    return (1.0 - u) * Fs_[idx - 1] + u * Fs_[idx];
}

double transform_value(const SampledTransform& src, double p) {
    return src.value(p);
}

namespace {

bool parse_number(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) {
        ++begin;
    }
    while (end != begin && std::isspace(static_cast<unsigned char>(end[-1]))) {
        --end;
    }
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end && begin != end;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& message) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

} // namespace

SampledTransform load_transform(const std::string& path, double delta) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open file");
    }

    std::vector<double> ps;
    std::vector<double> Fs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line_no == 1) {
            // Header row; accept "p,F" with optional whitespace.
            std::string compact;
            for (char ch : line) {
                if (!std::isspace(static_cast<unsigned char>(ch))) {
                    compact += ch;
                }
            }
            if (compact != "p,F") {
                parse_fail(path, line_no, "expected header \"p,F\", got \"" + line + "\"");
            }
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            parse_fail(path, line_no, "expected two comma-separated values");
        }
        double p = 0.0;
        double F = 0.0;
        if (!parse_number(line.substr(0, comma), p) || !parse_number(line.substr(comma + 1), F)) {
            parse_fail(path, line_no, "malformed row \"" + line + "\"");
        }
        if (ps.empty() && p != 0.0) {
            parse_fail(path, line_no, "first sample must have p = 0");
        }
        if (!ps.empty() && !(p > ps.back())) {
            parse_fail(path, line_no, "p values must be strictly increasing");
        }
        ps.push_back(p);
        Fs.push_back(F);
    }
    if (ps.size() < 3) {
        throw std::runtime_error(path + ": at least 3 points required, got " +
                                 std::to_string(ps.size()));
    }
    return SampledTransform(std::move(ps), std::move(Fs), delta);
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_terms_csv(const std::string& path, const Reconstruction& recon) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << "amplitude,rate\n";
    for (const ExpTerm& term : recon.terms) {
        out << format_double(term.amplitude) << ',' << format_double(term.rate) << '\n';
    }
}

void write_samples_csv(const std::string& path, const std::vector<double>& ts,
                       const std::vector<double>& values) {
    if (ts.size() != values.size()) {
        throw std::invalid_argument("write_samples_csv: length mismatch");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << "t,f_approx\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << format_double(ts[i]) << ',' << format_double(values[i]) << '\n';
    }
}

void write_report_kv(const std::string& path, const InversionReport& report) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << "n_delta=" << report.n_delta << '\n';
    out << "a_final=" << format_double(report.a_final()) << '\n';
    out << "m_final=" << report.m_final() << '\n';
    out << "G_final=" << format_double(report.G_final()) << '\n';
    out << "threshold=" << format_double(report.threshold) << '\n';
    out << "stop_reason=" << to_string(report.stop_reason) << '\n';
    out << "wall_time_ms=" << format_double(report.wall_time_ms) << '\n';
    out << "condition_warning=" << (report.condition_warning ? 1 : 0) << '\n';
    for (const IterationRecord& it : report.iterations) {
        out << "iter_" << it.n << "=a:" << format_double(it.a) << ",m:" << it.m
            << ",G:" << format_double(it.G) << ",coeff_norm:" << format_double(it.coeff_norm)
            << ",solve_residual:" << format_double(it.solve_residual) << '\n';
    }
}

void write_manifest_kv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    for (const auto& [key, value] : entries) {
        out << key << '=' << value << '\n';
    }
}

} // namespace laprec

#pragma once

#include <map>
#include <string>
#include <vector>

#include "laprec/invert.hpp"

namespace laprec {

// Transform data given as a table of strictly increasing (p, F) samples
// starting at p = 0. Queries between samples interpolate linearly;
// queries outside [0, p_max] are refused rather than extrapolated.
class SampledTransform final : public TransformSource {
  public:
    SampledTransform(std::vector<double> ps, std::vector<double> Fs, double delta);

    double value(double p) const override;
    double noise_level() const override { return delta_; }
    double interval_end() const override { return ps_.back(); }

    std::size_t size() const { return ps_.size(); }

  private:
    std::vector<double> ps_;
    std::vector<double> Fs_;
    double delta_;
};

// Parses a comma-separated file with header "p,F" and one sample per
// line. Throws std::runtime_error naming the offending line for missing
// files, malformed rows, non-increasing p, a first p other than 0, or
// fewer than 3 samples.
SampledTransform load_transform(const std::string& path, double delta);

// Same as src.value(p); named form of the interpolation contract.
double transform_value(const SampledTransform& src, double p);

// Writers for the run artifacts. All emit plain comma-separated or
// key=value text with stable formatting, so identical inputs yield
// byte-identical files.
void write_terms_csv(const std::string& path, const Reconstruction& recon);
void write_samples_csv(const std::string& path, const std::vector<double>& ts,
                       const std::vector<double>& values);
void write_report_kv(const std::string& path, const InversionReport& report);
void write_manifest_kv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& entries);

// Shortest round-trip decimal form of x, used by every writer.
std::string format_double(double x);

} // namespace laprec

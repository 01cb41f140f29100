// Copyright 2026 The gridsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gridsplit/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace gridsplit {

namespace {

constexpr double kLowerLimit = -60.0;

void check_alpha(const GumbelParams &params) {
    if (!(params.alpha > 0) || !std::isfinite(params.alpha)) {
        throw std::invalid_argument("Gumbel alpha must be positive");
    }
}

double integrate_pdf(double a, double b, const GumbelParams &params) {
    using boost::math::quadrature::gauss;
    return gauss<double, 20>::integrate([&](double z) { return gumbel_pdf(z, params); }, a, b);
}

// Mass of the raw density on [a, b], split into unit-width panels.
double panel_integral(double a, double b, const GumbelParams &params) {
    if (b <= a) {
        return 0;
    }
    double total = 0;
    const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; k++) {
        total += integrate_pdf(a + k * h, a + (k + 1) * h, params);
    }
    return total;
}

}  // namespace

double gumbel_pdf(double z, const GumbelParams &params) {
    check_alpha(params);
    const double a = params.alpha;
    if (z > 700) {
        return 0;
    }
    return std::exp(z - (std::exp(z) + a - 1) / a) / a;
}

double gumbel_total_mass(const GumbelParams &params) {
    check_alpha(params);
    return std::exp(1 / params.alpha - 1);
}

double gumbel_cdf(double z, const GumbelParams &params) {
    check_alpha(params);
    if (z <= kLowerLimit) {
        return 0;
    }
    // The density is negligible beyond e^z > 800 alpha.
    const double upper = std::log(800 * params.alpha);
    if (z >= upper) {
        return 1;
    }
    return std::min(1.0, panel_integral(kLowerLimit, z, params) / gumbel_total_mass(params));
}

LogProbSample log_transform(std::span<const double> probabilities, uint32_t num_qubits) {
    LogProbSample out;
    out.num_qubits = num_qubits;
    out.dimension = std::ldexp(1.0, static_cast<int>(num_qubits));
    out.z.reserve(probabilities.size());
    for (double p : probabilities) {
        if (!(p >= 0) || !std::isfinite(p)) {
            throw std::invalid_argument("probabilities must be finite and non-negative");
        }
        if (p == 0) {
            out.zero_count++;
        } else {
            out.z.push_back(std::log(out.dimension * p));
        }
    }
    return out;
}

double ks_distance(std::span<const double> z, const GumbelParams &params) {
    check_alpha(params);
    if (z.empty()) {
        throw std::invalid_argument("KS distance needs at least one sample");
    }
    std::vector<double> sorted(z.begin(), z.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const double mass = gumbel_total_mass(params);
    const double upper = std::log(800 * params.alpha);

    // Integrate the density between consecutive sorted points.
    double integral = 0;
    double prev = kLowerLimit;
    double worst = 0;
    for (size_t k = 0; k < sorted.size(); k++) {
        const double x = sorted[k];
        double cdf;
        if (x <= kLowerLimit) {
            cdf = 0;
        } else if (x >= upper) {
            cdf = 1;
        } else {
            integral += panel_integral(std::max(prev, kLowerLimit), x, params);
            prev = x;
            cdf = std::min(1.0, integral / mass);
        }
        worst = std::max(worst, std::max(static_cast<double>(k + 1) / n - cdf, cdf - static_cast<double>(k) / n));
    }
    return worst;
}

FitReport histogram_and_fit(const LogProbSample &sample, const HistogramOptions &options) {
    check_alpha(options.params);
    if (options.bins == 0 || !(options.z_max > options.z_min)) {
        throw std::invalid_argument("histogram needs at least one bin and z_max > z_min");
    }
    FitReport report;
    report.alpha = options.params.alpha;
    report.dimension = sample.dimension;
    report.num_qubits = sample.num_qubits;
    report.sample_count = sample.z.size();
    report.zero_count = sample.zero_count;
    report.bin_width = (options.z_max - options.z_min) / options.bins;

    std::vector<uint64_t> counts(options.bins, 0);
    for (double z : sample.z) {
        double pos = (z - options.z_min) / report.bin_width;
        int64_t k = static_cast<int64_t>(std::floor(pos));
        k = std::clamp<int64_t>(k, 0, options.bins - 1);
        counts[static_cast<size_t>(k)]++;
    }
    const double total = static_cast<double>(std::max<uint64_t>(sample.total(), 1));
    for (uint32_t k = 0; k < options.bins; k++) {
        HistogramBin bin;
        bin.z_mid = options.z_min + (k + 0.5) * report.bin_width;
        bin.empirical_density = static_cast<double>(counts[k]) / (total * report.bin_width);
        bin.theory_density = gumbel_pdf(bin.z_mid, options.params);
        report.bins.push_back(bin);
    }
    if (report.sample_count >= options.min_samples_for_fit) {
        report.ks = ks_distance(sample.z, options.params);
        report.porter_thomas_consistent = *report.ks < options.ks_threshold;
    }
    return report;
}

}  // namespace gridsplit

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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gridsplit {

struct GumbelParams {
    double alpha = 1.0;
};

/// f(z) = (1/alpha) exp(z - (e^z + alpha - 1) / alpha).
double gumbel_pdf(double z, const GumbelParams &params = {});

/// Total mass of gumbel_pdf over the real line, exp(1/alpha - 1). Equal to 1 only at alpha = 1.
double gumbel_total_mass(const GumbelParams &params = {});

/// CDF of the normalised density, by Gauss-Legendre quadrature from -60.
double gumbel_cdf(double z, const GumbelParams &params = {});

/// z = ln(N p) with N = 2^num_qubits. Zero probabilities are counted, not transformed.
struct LogProbSample {
    std::vector<double> z;
    uint64_t zero_count = 0;
    uint32_t num_qubits = 0;
    double dimension = 0;  // N

    uint64_t total() const {
        return z.size() + zero_count;
    }
};

/// Throws std::invalid_argument for negative or non-finite probabilities.
LogProbSample log_transform(std::span<const double> probabilities, uint32_t num_qubits);

/// sup |F_n - F| between the empirical CDF of `z` and the normalised Gumbel CDF.
double ks_distance(std::span<const double> z, const GumbelParams &params = {});

struct HistogramOptions {
    uint32_t bins = 50;
    double z_min = -12;
    double z_max = 4;
    GumbelParams params;
    /// Fewer nonzero samples than this: no KS statistic.
    uint64_t min_samples_for_fit = 1000;
    /// KS below this counts as consistent with Porter-Thomas.
    double ks_threshold = 0.02;
};

struct HistogramBin {
    double z_mid = 0;
    double empirical_density = 0;
    double theory_density = 0;
};

struct FitReport {
    std::vector<HistogramBin> bins;
    double bin_width = 0;
    uint64_t sample_count = 0;  // nonzero samples
    uint64_t zero_count = 0;
    std::optional<double> ks;
    double alpha = 1;
    double dimension = 0;
    uint32_t num_qubits = 0;
    /// KS computed and below the threshold.
    bool porter_thomas_consistent = false;
};

/// Empirical densities are normalised by the total sample count (zeros included),
/// so they sum (times the bin width) to the nonzero fraction. Values outside
/// [z_min, z_max] land in the edge bins.
FitReport histogram_and_fit(const LogProbSample &sample, const HistogramOptions &options = {});

}  // namespace gridsplit

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bandlab/band_matrix.hpp"
#include "bandlab/statistics.hpp"
#include "bandlab/theory.hpp"

namespace bandlab {

// Bandwidth either given explicitly or derived as c * n^theta.
struct BandwidthRule {
    bool explicit_b = true;
    double b = 32.0;
    double c = 1.0;
    double theta = 0.5;

    double resolve(int n) const;
};

struct TestFunctionSpec {
    TestFunction fn;
    std::string name;
};

struct ExperimentConfig {
    int n = 2048;
    BandwidthRule bandwidth;
    BandProfile profile{ProfileFamily::box};
    EntryDistribution distribution = EntryDistribution::gaussian();
    std::vector<TestFunctionSpec> test_functions;
    int replicas = 100;
    std::uint64_t master_seed = 1;
    std::optional<double> eta;  // when set, statistics are Poisson-smoothed
    int worker_count = 1;
    double sobolev_s = 2.5;

    double b() const { return bandwidth.resolve(n); }
    void validate() const;
    // FNV-1a over the canonical serialization; identifies a report's config.
    std::uint64_t digest() const;
    std::string canonical_text() const;
};

struct NormalityDiagnostics {
    double skewness;
    double excess_kurtosis;
    double ks_statistic;
    double ks_p_value;
};

struct CharFnDeviation {
    double t;
    double deviation;  // |Z_R(t) - e^{-t^2 V / 2}|
};

struct PhiReport {
    std::string phi_name;
    int sample_count;
    double mean_les;             // mean of the raw N_n[phi] across replicas
    double empirical_variance;   // Bessel-corrected, of the fluctuation samples
    bool degenerate;             // zero-variance samples; diagnostics omitted
    NormalityDiagnostics diagnostics;
    std::vector<CharFnDeviation> char_function_grid;
    VarianceBreakdown theory;
    std::vector<double> samples;  // fluctuation values in replica order
};

struct ExperimentReport {
    std::uint64_t config_digest;
    std::string code_version;
    int n;
    double b;
    int replicas;
    std::vector<PhiReport> per_phi;
};

// skewness, excess kurtosis and the Kolmogorov-Smirnov statistic against
// Normal(0, s^2) with Bessel-corrected s^2, standard asymptotic p-value.
// Needs >= 100 samples; throws on zero variance.
NormalityDiagnostics normality_tests(const std::vector<double>& samples);

// |Z_R(t) - e^{-t^2 V/2}| with Z_R(t) = R^{-1} sum e^{i t x_r}.
std::vector<CharFnDeviation> char_function_compare(const std::vector<double>& samples,
                                                   double v,
                                                   const std::vector<double>& t_grid);

// Default grid: 21 points spanning [-3/sqrt(V), 3/sqrt(V)].
std::vector<double> default_t_grid(double v);

// Replicated experiment: per replica sample the band matrix, compute the
// spectrum once, evaluate every phi; then center, scale and attach
// diagnostics and the theoretical variance. Deterministic given config,
// whatever the worker count. A replica failure aborts with its id.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct SweepRow {
    int n;
    double b;
    std::string phi_name;
    double var_emp;
    double var_theory;
    double rel_gap;
    double stderr_emp;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    // per phi: "monotone", "one-inversion-within-band" or "violated",
    // with band 2 sqrt(2/R)
    std::vector<std::pair<std::string, std::string>> trend_summary;
};

SweepTable sweep(const ExperimentConfig& base, const std::vector<std::pair<int, double>>& grid);

struct TruncationRow {
    double b;
    double estimate_total;   // n^{-1} E Tr (M_full - M_per)^2, Monte Carlo
    double estimate_band;    // band truncation part
    double estimate_corner;  // corner part
    double stderr_total;
};

struct TruncationReport {
    std::vector<TruncationRow> rows;
    double fitted_decay_exponent;  // least-squares slope of log total vs log b
};

TruncationReport truncation_effect(const ExperimentConfig& config,
                                   const std::vector<double>& bandwidths);

}  // namespace bandlab

#include "bandlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bandlab/quadrature.hpp"
#include "bandlab/rng.hpp"
#include "bandlab/version.hpp"

namespace bandlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double BandwidthRule::resolve(int n) const {
    if (explicit_b) return b;
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("BandwidthRule: theta must lie in (0,1)");
    return c * std::pow(static_cast<double>(n), theta);
}

void ExperimentConfig::validate() const {
    BandMatrixSpec spec{n, b(), profile, distribution, master_seed};
    spec.validate();
    if (replicas < 2) throw std::invalid_argument("ExperimentConfig: replicas >= 2 required");
    if (worker_count < 1) throw std::invalid_argument("ExperimentConfig: worker_count >= 1");
    if (test_functions.empty())
        throw std::invalid_argument("ExperimentConfig: at least one test function");
    if (eta && !(*eta > 0.0)) throw std::invalid_argument("ExperimentConfig: eta > 0");
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << n << ";b=" << b() << ";profile=" << profile.name()
       << ";distribution=" << distribution.name() << ";replicas=" << replicas
       << ";seed=" << master_seed << ";eta=" << (eta ? *eta : -1.0)
       << ";sobolev_s=" << sobolev_s << ";phi=[";
    for (const auto& t : test_functions) os << t.fn.describe() << ";";
    os << "]";
    return os.str();
}

std::uint64_t ExperimentConfig::digest() const {
    const std::string text = canonical_text();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

struct Moments {
    double mean, m2, m3, m4;  // central sample moments (1/R normalization)
};

Moments central_moments(const std::vector<double>& xs) {
    const double r = static_cast<double>(xs.size());
    KahanSum s1;
    for (double x : xs) s1.add(x);
    const double mean = s1.value() / r;
    KahanSum s2, s3, s4;
    for (double x : xs) {
        const double d = x - mean;
        s2.add(d * d);
        s3.add(d * d * d);
        s4.add(d * d * d * d);
    }
    return {mean, s2.value() / r, s3.value() / r, s4.value() / r};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}
double kolmogorov_q(double lambda) {
    if (lambda < 0.1) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace

NormalityDiagnostics normality_tests(const std::vector<double>& samples) {
    if (samples.size() < 100)
        throw std::invalid_argument("normality_tests: need at least 100 samples");
    const auto mom = central_moments(samples);
    if (!(mom.m2 > 0.0)) throw std::invalid_argument("normality_tests: degenerate samples");
    NormalityDiagnostics d;
    d.skewness = mom.m3 / std::pow(mom.m2, 1.5);
    d.excess_kurtosis = mom.m4 / (mom.m2 * mom.m2) - 3.0;

    const double r = static_cast<double>(samples.size());
    const double sd = std::sqrt(mom.m2 * r / (r - 1.0));  // Bessel
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    double dmax = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf((sorted[i] - mom.mean) / sd);
        const double lo = static_cast<double>(i) / r;
        const double hi = static_cast<double>(i + 1) / r;
        dmax = std::max(dmax, std::max(std::abs(f - lo), std::abs(hi - f)));
    }
    d.ks_statistic = dmax;
    const double lam = (std::sqrt(r) + 0.12 + 0.11 / std::sqrt(r)) * dmax;
    d.ks_p_value = kolmogorov_q(lam);
    return d;
}

std::vector<double> default_t_grid(double v) {
    std::vector<double> grid;
    if (!(v > 0.0)) return grid;
    const double tmax = 3.0 / std::sqrt(v);
    for (int j = -10; j <= 10; ++j) grid.push_back(tmax * j / 10.0);
    return grid;
}

std::vector<CharFnDeviation> char_function_compare(const std::vector<double>& samples,
                                                   double v,
                                                   const std::vector<double>& t_grid) {
    if (v < 0.0) throw std::invalid_argument("char_function_compare: V >= 0 required");
    std::vector<CharFnDeviation> out;
    out.reserve(t_grid.size());
    const double r = static_cast<double>(samples.size());
    for (double t : t_grid) {
        KahanSum re, im;
        for (double x : samples) {
            re.add(std::cos(t * x));
            im.add(std::sin(t * x));
        }
        const std::complex<double> z(re.value() / r, im.value() / r);
        out.push_back({t, std::abs(z - std::exp(std::complex<double>(-0.5 * t * t * v, 0.0)))});
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const double b = config.b();

    // smoothed-statistic runs convolve every phi first
    std::vector<TestFunctionSpec> phis = config.test_functions;
    if (config.eta) {
        for (auto& p : phis) {
            p.fn = poisson_smooth(p.fn, *config.eta);
            p.name += "_eta";
        }
    }

    const int r_total = config.replicas;
    std::vector<std::vector<double>> les(phis.size(), std::vector<double>(r_total, 0.0));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= r_total || failed.load()) break;
            try {
                BandMatrixSpec spec{config.n, b, config.profile, config.distribution,
                                    replica_seed(config.master_seed, static_cast<std::uint64_t>(r))};
                const BandMatrix m = sample_band_matrix(spec);
                const Spectrum s = eigenvalues(m);
                for (size_t k = 0; k < phis.size(); ++k) les[k][r] = evaluate_les(s, phis[k].fn);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure_message = "replica " + std::to_string(r) + ": " + e.what();
            }
        }
    };

    const int workers = std::min(config.worker_count, r_total);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("run_experiment: " + failure_message);

    ExperimentReport report;
    report.config_digest = config.digest();
    report.code_version = kVersion;
    report.n = config.n;
    report.b = b;
    report.replicas = r_total;

    for (size_t k = 0; k < phis.size(); ++k) {
        PhiReport pr;
        pr.phi_name = phis[k].name;
        pr.sample_count = r_total;
        const auto fluct = center_scale(les[k], b, config.n);
        pr.samples.resize(fluct.size());
        for (size_t i = 0; i < fluct.size(); ++i) pr.samples[i] = fluct[i].value;

        KahanSum raw;
        for (double v : les[k]) raw.add(v);
        pr.mean_les = raw.value() / r_total;

        KahanSum ss;
        for (double v : pr.samples) ss.add(v * v);
        pr.empirical_variance = ss.value() / (r_total - 1);

        pr.theory = clt_variance(phis[k].fn, config.profile, config.distribution.kappa4());

        pr.degenerate = !(pr.empirical_variance > 0.0);
        if (!pr.degenerate && r_total >= 100) {
            pr.diagnostics = normality_tests(pr.samples);
        } else {
            pr.diagnostics = {std::nan(""), std::nan(""), std::nan(""), std::nan("")};
        }
        const double v_for_grid = pr.theory.total > 0.0 ? pr.theory.total : pr.empirical_variance;
        pr.char_function_grid =
            char_function_compare(pr.samples, pr.theory.total > 0 ? pr.theory.total : 0.0,
                                  default_t_grid(v_for_grid));
        report.per_phi.push_back(std::move(pr));
    }
    return report;
}

SweepTable sweep(const ExperimentConfig& base, const std::vector<std::pair<int, double>>& grid) {
    SweepTable table;
    std::vector<std::vector<double>> gaps(base.test_functions.size());
    for (const auto& [n, b] : grid) {
        ExperimentConfig cfg = base;
        cfg.n = n;
        cfg.bandwidth.explicit_b = true;
        cfg.bandwidth.b = b;
        const ExperimentReport rep = run_experiment(cfg);
        for (size_t k = 0; k < rep.per_phi.size(); ++k) {
            const auto& pr = rep.per_phi[k];
            SweepRow row;
            row.n = n;
            row.b = b;
            row.phi_name = pr.phi_name;
            row.var_emp = pr.empirical_variance;
            row.var_theory = pr.theory.total;
            row.rel_gap = pr.theory.total != 0.0
                              ? std::abs(pr.empirical_variance - pr.theory.total) /
                                    std::abs(pr.theory.total)
                              : std::abs(pr.empirical_variance);
            row.stderr_emp = pr.empirical_variance *
                             std::sqrt(2.0 / std::max(1, pr.sample_count - 1));
            gaps[k].push_back(row.rel_gap);
            table.rows.push_back(std::move(row));
        }
    }
    const double band = 2.0 * std::sqrt(2.0 / std::max(2, base.replicas));
    for (size_t k = 0; k < gaps.size(); ++k) {
        int inversions = 0;
        bool within = true;
        for (size_t i = 1; i < gaps[k].size(); ++i) {
            if (gaps[k][i] > gaps[k][i - 1]) {
                ++inversions;
                if (gaps[k][i] - gaps[k][i - 1] > band) within = false;
            }
        }
        std::string verdict = inversions == 0 ? "monotone"
                              : (inversions == 1 && within) ? "one-inversion-within-band"
                                                            : "violated";
        table.trend_summary.emplace_back(base.test_functions[k].name, verdict);
    }
    return table;
}

TruncationReport truncation_effect(const ExperimentConfig& config,
                                   const std::vector<double>& bandwidths) {
    if (bandwidths.empty()) return {{}, 0.0};
    TruncationReport report;
    for (double b : bandwidths) {
        std::vector<double> totals(config.replicas);
        double band_acc = 0.0, corner_acc = 0.0;
        for (int r = 0; r < config.replicas; ++r) {
            BandMatrixSpec spec{config.n, b, config.profile, config.distribution,
                                replica_seed(config.master_seed, static_cast<std::uint64_t>(r))};
            const BandMatrix full = sample_band_matrix(spec);
            const PeriodicBandMatrix per = sample_periodized(spec);
            const TruncationDistance d = truncation_distance_sq(full, per);
            totals[r] = d.total();
            band_acc += d.band;
            corner_acc += d.corner;
        }
        const auto mom = central_moments(totals);
        TruncationRow row;
        row.b = b;
        row.estimate_total = mom.mean;
        row.estimate_band = band_acc / config.replicas;
        row.estimate_corner = corner_acc / config.replicas;
        row.stderr_total = std::sqrt(mom.m2 / std::max<size_t>(1, totals.size() - 1));
        report.rows.push_back(row);
    }
    // least-squares slope of log(total) vs log(b)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : report.rows) {
        if (row.estimate_total <= 0.0) continue;
        const double x = std::log(row.b);
        const double y = std::log(row.estimate_total);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    report.fitted_decay_exponent =
        cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    return report;
}

}  // namespace bandlab

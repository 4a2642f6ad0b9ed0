// bandlab: sample random band matrices, compute linear eigenvalue
// statistics, and compare their fluctuations against the closed-form
// limiting variance. Subcommands: simulate, theory, sweep, check, spectrum.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "bandlab/bandeig.hpp"
#include "bandlab/config.hpp"
#include "bandlab/montecarlo.hpp"
#include "bandlab/quadrature.hpp"
#include "bandlab/report_io.hpp"
#include "bandlab/rng.hpp"
#include "bandlab/theory.hpp"
#include "bandlab/version.hpp"

namespace {

using namespace bandlab;
using cd = std::complex<double>;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitOracle = 4;

int resolve_workers(const FullConfig& cfg, bool from_config) {
    if (from_config) return cfg.experiment.worker_count;
    if (const char* env = std::getenv("BANDLAB_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

int cmd_simulate(const std::string& config_path) {
    FullConfig cfg = parse_config_file(config_path);
    cfg.experiment.worker_count = resolve_workers(cfg, cfg.worker_count_set);
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport report = run_experiment(cfg.experiment);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::filesystem::create_directories(cfg.output.directory);
    const std::filesystem::path dir(cfg.output.directory);
    write_text_file(dir / "report.txt", serialize_report(report));
    if (cfg.output.dump_samples) {
        for (size_t k = 0; k < report.per_phi.size(); ++k) {
            std::ostringstream os;
            for (double v : report.per_phi[k].samples) os << format_g17(v) << "\n";
            write_text_file(dir / ("samples_phi" + std::to_string(k) + ".txt"), os.str());
        }
    }
    if (cfg.output.dump_spectra) {
        for (int r = 0; r < cfg.experiment.replicas; ++r) {
            BandMatrixSpec spec{cfg.experiment.n, cfg.experiment.b(), cfg.experiment.profile,
                                cfg.experiment.distribution,
                                replica_seed(cfg.experiment.master_seed, r)};
            const Spectrum s = eigenvalues(sample_band_matrix(spec));
            std::ostringstream os;
            for (double lam : s.eigenvalues) os << format_g17(lam) << "\n";
            write_text_file(dir / ("spectrum_r" + std::to_string(r) + ".txt"), os.str());
        }
    }
    std::cout << "report written: " << (dir / "report.txt").string() << "\n";
    for (const auto& pr : report.per_phi) {
        std::cout << pr.phi_name << ": var_emp = " << format_g17(pr.empirical_variance)
                  << ", var_theory = " << format_g17(pr.theory.total) << "\n";
    }
    std::cerr << "wall_time_seconds " << secs << "\n";
    return 0;
}

int cmd_theory(const std::string& profile_name, double kappa4, const std::string& phi_text,
               const std::vector<double>& covariance_args,
               const std::vector<double>& finite_n_args) {
    const BandProfile profile(profile_family_from_string(profile_name));
    const TestFunctionSpec phi = parse_test_function_string(phi_text);
    const VarianceBreakdown vb = clt_variance(phi.fn, profile, kappa4);
    std::cout << "phi = " << phi.name << "\n";
    std::cout << "kernel_term = " << format_g17(vb.kernel_term) << "\n";
    std::cout << "kappa4_term = " << format_g17(vb.kappa4_term) << "\n";
    std::cout << "u0_term = " << format_g17(vb.u0_term) << "\n";
    std::cout << "total = " << format_g17(vb.total) << "\n";

    if (!covariance_args.empty()) {
        if (covariance_args.size() != 4)
            throw ConfigError("--covariance takes re1 im1 re2 im2");
        const cd z1(covariance_args[0], covariance_args[1]);
        const cd z2(covariance_args[2], covariance_args[3]);
        const cd c = covariance_resolvents(z1, z2, profile, kappa4);
        std::cout << "covariance.re = " << format_g17(c.real()) << "\n";
        std::cout << "covariance.im = " << format_g17(c.imag()) << "\n";
    }
    if (!finite_n_args.empty()) {
        if (finite_n_args.size() != 3 && finite_n_args.size() != 4)
            throw ConfigError("--finite-n takes n b zeta_re [zeta_im]");
        FiniteNOperator op{static_cast<int>(finite_n_args[0]), finite_n_args[1], profile};
        const cd zeta(finite_n_args[2], finite_n_args.size() == 4 ? finite_n_args[3] : 0.0);
        const FiniteNSigma fs = finite_n_sigma(op, zeta);
        std::cout << "finite_n.lhs.re = " << format_g17(fs.lhs.real()) << "\n";
        std::cout << "finite_n.lhs.im = " << format_g17(fs.lhs.imag()) << "\n";
        std::cout << "finite_n.rhs.re = " << format_g17(fs.rhs.real()) << "\n";
        std::cout << "finite_n.rhs.im = " << format_g17(fs.rhs.imag()) << "\n";
        std::cout << "finite_n.limit.re = " << format_g17(fs.limit.real()) << "\n";
        std::cout << "finite_n.limit.im = " << format_g17(fs.limit.imag()) << "\n";
        std::cout << "finite_n.lhs_rhs_gap = " << format_g17(std::abs(fs.lhs - fs.rhs)) << "\n";
    }
    return 0;
}

std::vector<std::pair<int, double>> parse_grid(const std::string& text) {
    std::vector<std::pair<int, double>> grid;
    if (text.empty()) return grid;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("grid items must look like n:b, got \"" + item + "\"");
        grid.emplace_back(std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    }
    return grid;
}

int cmd_sweep(const std::string& config_path, const std::string& grid_text,
              const std::string& out_path) {
    FullConfig cfg = parse_config_file(config_path);
    cfg.experiment.worker_count = resolve_workers(cfg, cfg.worker_count_set);
    const auto grid = parse_grid(grid_text);
    const SweepTable table = sweep(cfg.experiment, grid);
    const std::string csv = sweep_csv(table);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_text_file(out_path, csv);
    }
    for (const auto& [phi, verdict] : table.trend_summary)
        std::cerr << "trend " << phi << ": " << verdict << "\n";
    return 0;
}

int cmd_spectrum(const std::string& config_path, int replica, bool periodized) {
    FullConfig cfg = parse_config_file(config_path);
    BandMatrixSpec spec{cfg.experiment.n, cfg.experiment.b(), cfg.experiment.profile,
                        cfg.experiment.distribution,
                        replica_seed(cfg.experiment.master_seed, replica)};
    const Spectrum s = periodized ? eigenvalues(sample_periodized(spec))
                                  : eigenvalues(sample_band_matrix(spec));
    for (double lam : s.eigenvalues) std::cout << format_g17(lam) << "\n";
    return 0;
}

// ---- self-check oracle suite ----

struct CheckResult {
    bool ok = true;
    void report(const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        ok = ok && pass;
    }
};

std::vector<double> jacobi_reference(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// The covariance bracket by direct (tail-subtracted) quadrature; independent
// of the moment series used by covariance_resolvents.
cd covariance_bracket(cd z1, cd z2, const BandProfile& profile, double kappa4) {
    const cd p = stieltjes_g(z1) * stieltjes_g(z2);
    const auto f = [&](double k) -> cd {
        const double a = profile.fourier(k);
        const cd pa = p * a;
        return std::log(1.0 - pa) + pa + 0.5 * pa * pa + pa * pa * pa / 3.0;
    };
    constexpr double pi = 3.14159265358979323846;
    const double kmax = profile.family() == ProfileFamily::box ? 4000.0 : 128.0;
    const int panels = static_cast<int>(kmax / pi);
    cd acc = 0.0;
    const auto& rule = gauss_legendre(15);
    for (int pn = 0; pn < panels; ++pn) {
        const double a0 = pn * pi;
        for (int i = 0; i < 15; ++i) {
            const double k = a0 + 0.5 * pi * (rule.nodes[i] + 1.0);
            acc += rule.weights[i] * 0.5 * pi * f(k);
        }
    }
    const double c1 = profile.convolution_moment(1);
    const double c2 = profile.convolution_moment(2);
    const double c3 = profile.convolution_moment(3);
    const cd logint = -2.0 * acc / pi + 2.0 * (p * c1 + 0.5 * p * p * c2 +
                                               p * p * p * c3 / 3.0);
    return logint - profile.u0() * p + kappa4 * p * p;
}

int cmd_check() {
    CheckResult res;
    std::mt19937_64 rng(20240915);
    std::normal_distribution<double> nd;

    {  // banded pipeline vs dense Jacobi
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 63);
            int w = static_cast<int>(rng() % 9);
            if (w >= n) w = n - 1;
            BandMatrix m(n, w);
            for (int d = 0; d <= w; ++d)
                for (int i = 0; i + d < n; ++i) m.diagonal(d)[i] = nd(rng);
            const Spectrum s = eigenvalues(m);
            const auto ref = jacobi_reference(m.densify());
            const double scale =
                std::max({std::abs(ref.front()), std::abs(ref.back()), 1e-12});
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(s.eigenvalues[i] - ref[i]) / scale);
        }
        res.report("dense-eigensolver-equivalence", worst <= 1e-10,
                   "max rel err " + format_g17(worst));
    }

    {  // g identity, branch, pinned value
        double worst_res = 0.0;
        double worst_mag = 0.0;
        std::uniform_real_distribution<double> ur(-5.0, 5.0);
        for (int i = 0; i < 1000; ++i) {
            double im = ur(rng);
            if (std::abs(im) < 0.1) im = std::copysign(0.1, im == 0.0 ? 1.0 : im);
            const cd z(ur(rng), im);
            const cd g = stieltjes_g(z);
            worst_res = std::max(worst_res, std::abs(g * g + z * g + 1.0));
            worst_mag = std::max(worst_mag, std::abs(g));
        }
        const double pin = std::abs(stieltjes_g(cd(0, 2)) - cd(0, std::sqrt(2.0) - 1.0));
        res.report("g-identity",
                   worst_res <= 1e-13 && worst_mag < 1.0 && pin <= 1e-12,
                   "max residual " + format_g17(worst_res) + ", g(2i) err " + format_g17(pin));
    }

    {  // kernel closed form vs finite differences of the log-modulus
        double worst = 0.0;
        const double h = 1e-4;
        for (ProfileFamily fam :
             {ProfileFamily::box, ProfileFamily::triangle, ProfileFamily::epanechnikov}) {
            const BandProfile prof(fam);
            for (double x : {0.8, 1.7, 2.6}) {
                for (double y : {0.5, 1.3, 2.2}) {
                    const double fd =
                        (log_modulus_integral(x + h, y + h, prof) -
                         log_modulus_integral(x + h, y - h, prof) -
                         log_modulus_integral(x - h, y + h, prof) +
                         log_modulus_integral(x - h, y - h, prof)) /
                        (4.0 * h * h);
                    const double cf = variance_kernel(x, y, prof);
                    worst = std::max(worst, std::abs(fd - cf) / std::max(1e-12, std::abs(cf)));
                }
            }
        }
        res.report("variance-kernel-mixed-partial", worst <= 1e-6,
                   "max rel err " + format_g17(worst));
    }

    {  // derivative formula for g and the covariance bracket derivative
        double worst = 0.0;
        const double h = 1e-5;
        std::uniform_real_distribution<double> ur(-4.0, 4.0);
        for (int i = 0; i < 100; ++i) {
            double im = ur(rng);
            if (std::abs(im) < 0.5) im = std::copysign(0.5, im == 0.0 ? 1.0 : im);
            const cd z(ur(rng), im);
            const cd fd = (stieltjes_g(z + h) - stieltjes_g(z - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - stieltjes_g_prime(z)) /
                                        std::abs(stieltjes_g_prime(z)));
        }
        const BandProfile box(ProfileFamily::box);
        const cd z1(0, 2), z2(0, 3);
        const double hh = 1e-4;
        const cd fd2 = (covariance_bracket(z1 + hh, z2 + hh, box, 0.0) -
                        covariance_bracket(z1 + hh, z2 - hh, box, 0.0) -
                        covariance_bracket(z1 - hh, z2 + hh, box, 0.0) +
                        covariance_bracket(z1 - hh, z2 - hh, box, 0.0)) /
                       (4.0 * hh * hh);
        const cd cv = covariance_resolvents(z1, z2, box, 0.0);
        const double cov_err = std::abs(fd2 - cv);
        res.report("derivative-oracles", worst <= 1e-10 && cov_err <= 1e-8,
                   "g' rel " + format_g17(worst) + ", covariance abs " + format_g17(cov_err));
    }

    {  // normality diagnostics against their own null
        std::mt19937_64 nrng(77);
        std::vector<double> samples(10000);
        const double v = 1.7;
        for (auto& x : samples) x = std::sqrt(v) * nd(nrng);
        const auto d = normality_tests(samples);
        const auto devs = char_function_compare(samples, v, default_t_grid(v));
        double maxdev = 0.0;
        for (const auto& c : devs) maxdev = std::max(maxdev, c.deviation);
        res.report("normality-null-selftest",
                   std::abs(d.skewness) <= 0.08 && std::abs(d.excess_kurtosis) <= 0.15 &&
                       d.ks_p_value > 0.01 && maxdev <= 0.05,
                   "skew " + format_g17(d.skewness) + ", exkurt " +
                       format_g17(d.excess_kurtosis) + ", ks_p " + format_g17(d.ks_p_value) +
                       ", charfn " + format_g17(maxdev));
    }

    return res.ok ? 0 : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random band matrix spectral statistics laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path, grid_text, out_path, profile_name = "box", phi_text = "poly:0,0,1";
    double kappa4 = 0.0;
    int replica = 0;
    bool periodized = false;
    std::vector<double> covariance_args, finite_n_args;

    auto* sim = app.add_subcommand("simulate", "run a replicated experiment from a config file");
    sim->add_option("config", config_path, "JSON config file")->required();

    auto* theo = app.add_subcommand("theory", "evaluate the limiting variance and covariances");
    theo->add_option("--profile", profile_name, "box|triangle|epanechnikov");
    theo->add_option("--kappa4", kappa4, "fourth-cumulant excess of the entry law");
    theo->add_option("--phi", phi_text,
                     "test function: constant:c | poly:c0,c1,... | gaussian_bump:c,w | "
                     "smooth_bump:c,r");
    theo->add_option("--covariance", covariance_args,
                     "re1 im1 re2 im2: print C(z1,z2)")->expected(4);
    theo->add_option("--finite-n", finite_n_args,
                     "n b zeta_re [zeta_im]: print the finite-n operator triple")
        ->expected(3, 4);

    auto* swp = app.add_subcommand("sweep", "run an (n,b) grid and tabulate gaps (CSV)");
    swp->add_option("config", config_path, "JSON config file")->required();
    swp->add_option("--grid", grid_text, "comma list of n:b points, e.g. 1024:16,2048:32");
    swp->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* chk = app.add_subcommand("check", "run the numerical oracle self-test suite");
    (void)chk;

    auto* spec_cmd = app.add_subcommand("spectrum", "dump eigenvalues of one seeded matrix");
    spec_cmd->add_option("config", config_path, "JSON config file")->required();
    spec_cmd->add_option("--replica", replica, "replica id (default 0)");
    spec_cmd->add_flag("--periodized", periodized, "use the truncated/periodized model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (app.got_subcommand(sim)) return cmd_simulate(config_path);
        if (app.got_subcommand(theo))
            return cmd_theory(profile_name, kappa4, phi_text, covariance_args, finite_n_args);
        if (app.got_subcommand(swp)) return cmd_sweep(config_path, grid_text, out_path);
        if (app.got_subcommand(chk)) return cmd_check();
        if (app.got_subcommand(spec_cmd)) return cmd_spectrum(config_path, replica, periodized);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}

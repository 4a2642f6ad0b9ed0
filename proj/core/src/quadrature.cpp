#include "bandlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bandlab {

namespace {

// 15-point Kronrod abscissae/weights on [-1,1] with the embedded 7-point
// Gauss rule (quadpack dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

double gk_recurse(const std::function<double(double)>& f, double a, double b,
                  double tol, int depth, int max_depth) {
    const PanelResult r = gk15_panel(f, a, b);
    if (r.err <= tol || b - a < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) return r.kronrod;
    if (depth >= max_depth)
        throw std::runtime_error("gk_integrate: subdivision cap reached");
    const double c = 0.5 * (a + b);
    return gk_recurse(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           gk_recurse(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

GaussLegendreRule make_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    KahanSum acc;
    for (int i = 0; i < order; ++i) acc.add(rule.weights[i] * f(c + h * rule.nodes[i]));
    return acc.value() * h;
}

double gk_integrate(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("gk_integrate: tol must be positive");
    if (a == b) return 0.0;
    if (a > b) return -gk_integrate(f, b, a, abs_tol, max_depth);
    return gk_recurse(f, a, b, abs_tol, 0, max_depth);
}

std::vector<double> cosine_coefficients(const std::function<double(double)>& g,
                                        int mmax, int n_samples) {
    if (mmax < 1 || n_samples < 2 * mmax)
        throw std::invalid_argument("cosine_coefficients: need n_samples >= 2*mmax");
    const double h = std::numbers::pi / n_samples;
    std::vector<double> gs(n_samples);
    for (int j = 0; j < n_samples; ++j) gs[j] = g((j + 0.5) * h);
    std::vector<double> out(mmax);
    for (int m = 1; m <= mmax; ++m) {
        KahanSum acc;
        for (int j = 0; j < n_samples; ++j) acc.add(gs[j] * std::cos(m * (j + 0.5) * h));
        out[m - 1] = acc.value() * h;
    }
    return out;
}

}  // namespace bandlab

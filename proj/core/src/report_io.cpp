#include "bandlab/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bandlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string serialize_report(const ExperimentReport& report) {
    std::map<std::string, std::string> rec;
    rec["meta.config_digest"] = std::to_string(report.config_digest);
    rec["meta.code_version"] = report.code_version;
    rec["meta.n"] = std::to_string(report.n);
    rec["meta.b"] = format_g17(report.b);
    rec["meta.replicas"] = std::to_string(report.replicas);
    for (size_t k = 0; k < report.per_phi.size(); ++k) {
        const auto& pr = report.per_phi[k];
        const std::string p = "phi" + std::to_string(k) + ".";
        rec[p + "name"] = pr.phi_name;
        rec[p + "sample_count"] = std::to_string(pr.sample_count);
        rec[p + "mean_les"] = format_g17(pr.mean_les);
        rec[p + "empirical_variance"] = format_g17(pr.empirical_variance);
        rec[p + "degenerate"] = pr.degenerate ? "true" : "false";
        rec[p + "skewness"] = format_g17(pr.diagnostics.skewness);
        rec[p + "excess_kurtosis"] = format_g17(pr.diagnostics.excess_kurtosis);
        rec[p + "ks_statistic"] = format_g17(pr.diagnostics.ks_statistic);
        rec[p + "ks_p_value"] = format_g17(pr.diagnostics.ks_p_value);
        rec[p + "theory.kernel_term"] = format_g17(pr.theory.kernel_term);
        rec[p + "theory.kappa4_term"] = format_g17(pr.theory.kappa4_term);
        rec[p + "theory.u0_term"] = format_g17(pr.theory.u0_term);
        rec[p + "theory.total"] = format_g17(pr.theory.total);
        for (size_t j = 0; j < pr.char_function_grid.size(); ++j) {
            const auto& c = pr.char_function_grid[j];
            rec[p + "charfn." + std::to_string(j)] =
                format_g17(c.t) + " " + format_g17(c.deviation);
        }
    }
    return serialize_flat_record(rec);
}

std::map<std::string, std::string> parse_flat_record(const std::string& text) {
    std::map<std::string, std::string> rec;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto pos = line.find(" = ");
        if (pos == std::string::npos)
            throw std::runtime_error("bad record line " + std::to_string(lineno) + ": " + line);
        rec[line.substr(0, pos)] = line.substr(pos + 3);
    }
    return rec;
}

std::string serialize_flat_record(const std::map<std::string, std::string>& record) {
    std::ostringstream os;
    for (const auto& [k, v] : record) os << k << " = " << v << "\n";
    return os.str();
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream os;
    os << "n,b,phi,var_emp,var_theory,rel_gap,stderr\n";
    for (const auto& r : table.rows) {
        os << r.n << "," << format_g17(r.b) << "," << r.phi_name << ","
           << format_g17(r.var_emp) << "," << format_g17(r.var_theory) << ","
           << format_g17(r.rel_gap) << "," << format_g17(r.stderr_emp) << "\n";
    }
    return os.str();
}

}  // namespace bandlab

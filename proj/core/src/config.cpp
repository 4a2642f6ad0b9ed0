#include "bandlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace bandlab {

namespace {

using nlohmann::json;

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1, 0));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i)
        for (size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    return d[a.size()][b.size()];
}

[[noreturn]] void unknown_key(const std::string& section, const std::string& key,
                              const std::vector<std::string>& allowed) {
    std::string best;
    int best_d = 1000;
    for (const auto& cand : allowed) {
        const int d = edit_distance(key, cand);
        if (d < best_d) {
            best_d = d;
            best = cand;
        }
    }
    std::string msg = "unknown key \"" + key + "\" in section " + section;
    if (best_d <= 3) msg += "; did you mean \"" + best + "\"?";
    throw ConfigError(msg);
}

void check_keys(const json& obj, const std::string& section,
                const std::vector<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            unknown_key(section, it.key(), allowed);
    }
}

double num(const json& obj, const std::string& section, const std::string& key,
           double lo, double hi) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(section + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi))
        throw ConfigError(section + "." + key + ": value " + std::to_string(x) +
                          " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

TestFunctionSpec parse_phi(const json& obj, int index) {
    const std::string section = "statistics.test_functions[" + std::to_string(index) + "]";
    if (!obj.is_object()) throw ConfigError(section + ": expected an object");
    if (!obj.contains("family")) throw ConfigError(section + ": missing \"family\"");
    const std::string family = obj.at("family").get<std::string>();
    std::string name = obj.value("name", "");
    TestFunctionSpec spec{TestFunction::constant(0.0), ""};
    if (family == "polynomial") {
        check_keys(obj, section, {"family", "coefficients", "name"});
        if (!obj.contains("coefficients"))
            throw ConfigError(section + ": polynomial needs \"coefficients\"");
        std::vector<double> c = obj.at("coefficients").get<std::vector<double>>();
        spec.fn = TestFunction::polynomial(std::move(c));
    } else if (family == "gaussian_bump") {
        check_keys(obj, section, {"family", "center", "width", "name"});
        spec.fn = TestFunction::gaussian_bump(num(obj, section, "center", -100, 100),
                                              num(obj, section, "width", 1e-6, 100));
    } else if (family == "smooth_bump") {
        check_keys(obj, section, {"family", "center", "radius", "name"});
        spec.fn = TestFunction::smooth_bump(num(obj, section, "center", -100, 100),
                                            num(obj, section, "radius", 1e-6, 100));
    } else {
        throw ConfigError(section + ": unknown family \"" + family + "\"");
    }
    spec.name = name.empty() ? spec.fn.describe() : name;
    return spec;
}

}  // namespace

TestFunctionSpec parse_test_function_string(const std::string& text) {
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::istringstream is(text.substr(colon + 1));
        std::string piece;
        while (std::getline(is, piece, ',')) args.push_back(std::stod(piece));
    }
    if (family == "constant") {
        if (args.size() != 1) throw ConfigError("constant:c expects one argument");
        return {TestFunction::constant(args[0]), text};
    }
    if (family == "poly" || family == "polynomial") {
        if (args.empty()) throw ConfigError("poly:c0,c1,... expects coefficients");
        return {TestFunction::polynomial(args), text};
    }
    if (family == "gaussian_bump") {
        if (args.size() != 2) throw ConfigError("gaussian_bump:center,width");
        return {TestFunction::gaussian_bump(args[0], args[1]), text};
    }
    if (family == "smooth_bump") {
        if (args.size() != 2) throw ConfigError("smooth_bump:center,radius");
        return {TestFunction::smooth_bump(args[0], args[1]), text};
    }
    throw ConfigError("unknown test function \"" + text + "\"");
}

FullConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    check_keys(root, "(root)", {"ensemble", "statistics", "montecarlo", "output"});

    FullConfig out;
    ExperimentConfig& cfg = out.experiment;
    cfg.test_functions.clear();

    if (!root.contains("ensemble")) throw ConfigError("missing section \"ensemble\"");
    {
        const json& e = root.at("ensemble");
        check_keys(e, "ensemble", {"n", "b", "theta", "c", "profile", "distribution", "nu"});
        cfg.n = static_cast<int>(num(e, "ensemble", "n", 2, 1 << 24));
        if (e.contains("b") && e.contains("theta"))
            throw ConfigError("ensemble: give either \"b\" or \"theta\", not both");
        if (e.contains("b")) {
            cfg.bandwidth.explicit_b = true;
            cfg.bandwidth.b = num(e, "ensemble", "b", 2.0, 1e9);
        } else if (e.contains("theta")) {
            cfg.bandwidth.explicit_b = false;
            cfg.bandwidth.theta = num(e, "ensemble", "theta", 1e-6, 1.0 - 1e-9);
            cfg.bandwidth.c = e.contains("c") ? num(e, "ensemble", "c", 1e-9, 1e9) : 1.0;
        } else {
            throw ConfigError("ensemble: need \"b\" or \"theta\"");
        }
        if (e.contains("profile"))
            cfg.profile = BandProfile(profile_family_from_string(e.at("profile").get<std::string>()));
        if (e.contains("distribution")) {
            const std::string d = e.at("distribution").get<std::string>();
            try {
                const DistributionFamily fam = distribution_family_from_string(d);
                if (fam == DistributionFamily::student_t) {
                    const double nu = e.contains("nu") ? num(e, "ensemble", "nu", 5.0, 1000.0) : 9.0;
                    cfg.distribution = EntryDistribution::student_t(nu);
                } else {
                    cfg.distribution = EntryDistribution(fam);
                }
            } catch (const std::invalid_argument& ex) {
                throw ConfigError(ex.what());
            }
        }
    }

    if (root.contains("statistics")) {
        const json& s = root.at("statistics");
        check_keys(s, "statistics", {"test_functions", "eta", "sobolev_s"});
        if (s.contains("test_functions")) {
            const json& arr = s.at("test_functions");
            if (!arr.is_array()) throw ConfigError("statistics.test_functions: expected an array");
            int idx = 0;
            for (const auto& item : arr) cfg.test_functions.push_back(parse_phi(item, idx++));
        }
        if (s.contains("eta")) cfg.eta = num(s, "statistics", "eta", 1e-9, 10.0);
        if (s.contains("sobolev_s")) cfg.sobolev_s = num(s, "statistics", "sobolev_s", 1e-9, 100.0);
    }
    if (cfg.test_functions.empty())
        cfg.test_functions.push_back({TestFunction::polynomial({0.0, 0.0, 1.0}), "lambda^2"});

    if (!root.contains("montecarlo")) throw ConfigError("missing section \"montecarlo\"");
    {
        const json& m = root.at("montecarlo");
        check_keys(m, "montecarlo", {"replicas", "master_seed", "worker_count"});
        cfg.replicas = static_cast<int>(num(m, "montecarlo", "replicas", 2, 1e9));
        if (m.contains("master_seed")) {
            if (!m.at("master_seed").is_number_unsigned() && !m.at("master_seed").is_number_integer())
                throw ConfigError("montecarlo.master_seed: expected an integer");
            cfg.master_seed = m.at("master_seed").get<std::uint64_t>();
        }
        if (m.contains("worker_count")) {
            cfg.worker_count = static_cast<int>(num(m, "montecarlo", "worker_count", 1, 4096));
            out.worker_count_set = true;
        }
    }

    if (root.contains("output")) {
        const json& o = root.at("output");
        check_keys(o, "output", {"directory", "dump_samples", "dump_spectra"});
        if (o.contains("directory")) out.output.directory = o.at("directory").get<std::string>();
        if (o.contains("dump_samples")) out.output.dump_samples = o.at("dump_samples").get<bool>();
        if (o.contains("dump_spectra")) out.output.dump_spectra = o.at("dump_spectra").get<bool>();
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
    return out;
}

FullConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace bandlab

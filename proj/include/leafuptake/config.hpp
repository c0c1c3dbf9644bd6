#ifndef LEAFUPTAKE_CONFIG_HPP
#define LEAFUPTAKE_CONFIG_HPP

#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leafuptake/csv.hpp"
#include "leafuptake/geometry.hpp"
#include "leafuptake/params.hpp"
#include "leafuptake/solver.hpp"

namespace leafuptake {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complete scenario: geometry, both compounds, the active-ingredient
/// diffusion law and the solver settings. Defaults reproduce the reference
/// formulation (30 um droplet on a 4 um cuticle, mean transport estimates,
/// constant diffusion at 0.4 um^2/min).
///
/// Configuration file: INI-style sections with `key = value` pairs and
/// `#`/`;` comments. Keys follow the usual symbol names:
///
///   [geometry]  r, L, L_B                                  (um)
///   [adjuvant]  D_P, kappa_A1, kappa_B1, lambda_A, lambda_B, beta, c0
///   [active]    D_Q0, K_A1, K_B1, mu_A, mu_B, eta, c0
///   [diffusion] model = constant | saturating, alpha, sigma
///   [solver]    n_cells, dt_safety, t_end, output_times (comma list), negative_clamp
///
/// c0 entries are optional; when absent the initial droplet concentration is
/// 100 / V_A, so the initial total is exactly 100%.
struct ScenarioConfig {
    double r = 30.0;
    double L = 4.0;
    double L_B = 1000.0;

    double D_P = 0.4;
    double kappa_A1 = 1.0 / 14.80;
    double kappa_B1 = 1.0 / 14.80;
    double lambda_A = 0.858;
    double lambda_B = 0.858;
    double beta = 1.37e-2;
    double aj_c0 = -1.0;  ///< negative = derive as 100 / V_A

    double D_Q0 = 0.4;
    double K_A1 = 1.0 / 0.754;
    double K_B1 = 1.0 / 0.754;
    double mu_A = 0.533;
    double mu_B = 0.533;
    double eta = 1.26e-2;
    double ai_c0 = -1.0;

    std::string diffusion_model = "constant";  ///< constant | saturating
    double alpha = 1.5;
    double sigma = 3.0;

    SolverConfig solver{40, 0.5, 364.0, {0, 37, 79, 121, 180, 240, 300, 340, 364}, 1e-12};

    Geometry geometry() const { return derive_geometry(r, L, L_B); }

    CompoundParams adjuvant() const {
        const Geometry g = geometry();
        const double c0 = aj_c0 >= 0.0 ? aj_c0 : 100.0 / g.V_A;
        CompoundParams p{D_P, kappa_A1, kappa_B1, lambda_A, lambda_B, beta, c0};
        p.validate();
        return p;
    }

    CompoundParams active() const {
        const Geometry g = geometry();
        const double c0 = ai_c0 >= 0.0 ? ai_c0 : 100.0 / g.V_A;
        CompoundParams p{D_Q0, K_A1, K_B1, mu_A, mu_B, eta, c0};
        p.validate();
        return p;
    }

    DiffusionModel active_diffusion() const {
        if (diffusion_model == "constant") {
            return DiffusionModel::constant(D_Q0);
        }
        if (diffusion_model == "saturating") {
            return DiffusionModel::saturating(D_Q0, alpha, sigma);
        }
        throw ConfigError("diffusion model must be 'constant' or 'saturating', got '"
                          + diffusion_model + "'");
    }

    void validate() const {
        geometry().validate();
        adjuvant();
        active();
        active_diffusion();
        solver.validate();
    }
};

namespace detail {

inline std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    for (auto field : csv::split(text, ',')) {
        field = csv::trim(field);
        if (!field.empty()) {
            out.push_back(csv::parse_double(field));
        }
    }
    return out;
}

}  // namespace detail

inline ScenarioConfig load_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = csv::trim(line);
        if (s.empty() || s.front() == '#' || s.front() == ';') {
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
            }
            section = std::string(csv::trim(s.substr(1, s.size() - 2)));
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = std::string(csv::trim(s.substr(0, eq)));
        const std::string value = std::string(csv::trim(s.substr(eq + 1)));
        try {
            const std::string qualified = section + "." + key;
            if (qualified == "geometry.r") cfg.r = csv::parse_double(value);
            else if (qualified == "geometry.L") cfg.L = csv::parse_double(value);
            else if (qualified == "geometry.L_B") cfg.L_B = csv::parse_double(value);
            else if (qualified == "adjuvant.D_P") cfg.D_P = csv::parse_double(value);
            else if (qualified == "adjuvant.kappa_A1") cfg.kappa_A1 = csv::parse_double(value);
            else if (qualified == "adjuvant.kappa_B1") cfg.kappa_B1 = csv::parse_double(value);
            else if (qualified == "adjuvant.lambda_A") cfg.lambda_A = csv::parse_double(value);
            else if (qualified == "adjuvant.lambda_B") cfg.lambda_B = csv::parse_double(value);
            else if (qualified == "adjuvant.beta") cfg.beta = csv::parse_double(value);
            else if (qualified == "adjuvant.c0") cfg.aj_c0 = csv::parse_double(value);
            else if (qualified == "active.D_Q0") cfg.D_Q0 = csv::parse_double(value);
            else if (qualified == "active.K_A1") cfg.K_A1 = csv::parse_double(value);
            else if (qualified == "active.K_B1") cfg.K_B1 = csv::parse_double(value);
            else if (qualified == "active.mu_A") cfg.mu_A = csv::parse_double(value);
            else if (qualified == "active.mu_B") cfg.mu_B = csv::parse_double(value);
            else if (qualified == "active.eta") cfg.eta = csv::parse_double(value);
            else if (qualified == "active.c0") cfg.ai_c0 = csv::parse_double(value);
            else if (qualified == "diffusion.model") cfg.diffusion_model = value;
            else if (qualified == "diffusion.alpha") cfg.alpha = csv::parse_double(value);
            else if (qualified == "diffusion.sigma") cfg.sigma = csv::parse_double(value);
            else if (qualified == "solver.n_cells") cfg.solver.n_cells = static_cast<int>(csv::parse_double(value));
            else if (qualified == "solver.dt_safety") cfg.solver.dt_safety = csv::parse_double(value);
            else if (qualified == "solver.t_end") cfg.solver.t_end = csv::parse_double(value);
            else if (qualified == "solver.output_times") cfg.solver.output_times = detail::parse_double_list(value);
            else if (qualified == "solver.negative_clamp") cfg.solver.negative_clamp = csv::parse_double(value);
            else throw ConfigError("unknown key '" + qualified + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

inline ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return load_config(in);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_CONFIG_HPP

// Command-line front end: steady states, time-dependent runs, parameter
// estimation, the (alpha, sigma) feasibility sweep and the literature
// coefficient relations.
//
// Exit codes: 0 success, 1 validation or domain error, 2 solver failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leafuptake/leafuptake.hpp"

namespace {

using namespace leafuptake;

std::vector<double> parse_range(const std::string& spec) {
    // "start:stop:step", inclusive of stop up to round-off
    const auto fields = csv::split(spec, ':');
    if (fields.size() != 3) {
        throw ConfigError("range '" + spec + "' must look like start:stop:step");
    }
    const double start = csv::parse_double(csv::trim(fields[0]));
    const double stop = csv::parse_double(csv::trim(fields[1]));
    const double step = csv::parse_double(csv::trim(fields[2]));
    if (!(step > 0.0) || stop < start) {
        throw ConfigError("range '" + spec + "' must have step > 0 and stop >= start");
    }
    std::vector<double> values;
    const int count = static_cast<int>((stop - start) / step + 1e-9) + 1;
    for (int i = 0; i < count; ++i) {
        values.push_back(start + step * i);
    }
    return values;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write to '" + path.string() + "'");
    }
    return out;
}

/// Stream sink: a file when --out was given, stdout otherwise.
struct Sink {
    std::optional<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }
};

Sink make_sink(const std::string& out_path) {
    Sink sink;
    if (!out_path.empty()) {
        sink.file = open_output(out_path);
    }
    return sink;
}

int run_steady(const std::string& config_path, const std::string& vary, const std::string& grid_spec,
               const std::string& out_path) {
    const auto cfg = load_config_file(config_path);
    const auto geom = cfg.geometry();
    auto params = cfg.active();
    params.loss = 0.0;  // equilibria exist only for the conservative system
    Sink sink = make_sink(out_path);
    if (vary.empty()) {
        const auto ss = steady_state(geom, params);
        sink.stream() << "quantity,value,unit\n"
                      << "c_droplet," << csv::format_double(ss.c_drop) << ",pct/um^3\n"
                      << "m_uniform," << csv::format_double(ss.m_uniform) << ",pct/um\n"
                      << "c_leaf," << csv::format_double(ss.c_leaf) << ",pct/um^3\n"
                      << "pct_droplet," << csv::format_double(ss.pct_drop) << ",pct\n"
                      << "pct_cuticle," << csv::format_double(ss.pct_cuticle) << ",pct\n"
                      << "pct_leaf," << csv::format_double(ss.pct_leaf) << ",pct\n";
        return 0;
    }
    VaryParameter which;
    if (vary == "k") {
        which = VaryParameter::PartitionRatio;
    } else if (vary == "A") {
        which = VaryParameter::ContactArea;
    } else if (vary == "L") {
        which = VaryParameter::CuticleLength;
    } else {
        throw ConfigError("--vary must be one of k|A|L");
    }
    if (grid_spec.empty()) {
        throw ConfigError("--vary needs --grid start:stop:step");
    }
    const auto rows = steady_state_sweep(geom, params, which, parse_range(grid_spec));
    write_steady_csv(sink.stream(), rows);
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = load_config_file(config_path);
    const auto geom = cfg.geometry();
    const auto traj = simulate(geom, cfg.adjuvant(), cfg.active(), cfg.active_diffusion(), cfg.solver);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    auto tfile = open_output(dir / "trajectory.csv");
    write_trajectory_csv(tfile, traj);
    auto pfile = open_output(dir / "profiles.csv");
    write_profiles_csv(pfile, traj, Mesh::uniform(geom.L, cfg.solver.n_cells));
    std::cout << "wrote " << (dir / "trajectory.csv").string() << " and "
              << (dir / "profiles.csv").string() << '\n';
    return 0;
}

int run_estimate(const std::string& data_path, const std::string& config_path, double tlag_min,
                 double tlag_max, const std::string& out_path) {
    const auto cfg = load_config_file(config_path);
    const auto data = DatasetSeries::load_file(data_path);
    const auto [aj, ai] = estimate_all(data, cfg.geometry(), {tlag_min, tlag_max});
    Sink sink = make_sink(out_path);
    write_estimate_csv(sink.stream(), aj, ai);
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& data_path,
                  const std::string& alpha_spec, const std::string& sigma_spec,
                  const std::string& bands_spec, int jobs, const std::string& out_dir) {
    const auto cfg = load_config_file(config_path);
    const auto data = DatasetSeries::load_file(data_path);
    const auto geom = cfg.geometry();

    SweepBands bands;
    for (auto token : csv::split(bands_spec, ',')) {
        token = csv::trim(token);
        if (token.empty()) {
            continue;
        }
        const Compartment comp =
            token == "leaf" ? Compartment::LeafTissue : compartment_from(token);
        const auto [lo, hi] = data.band_at(Compound::AI, comp, cfg.solver.t_end);
        switch (comp) {
            case Compartment::Droplet: bands.droplet = Band{lo, hi}; break;
            case Compartment::Cuticle: bands.cuticle = Band{lo, hi}; break;
            case Compartment::LeafTissue: bands.leaf = Band{lo, hi}; break;
            case Compartment::Rest: bands.rest = Band{lo, hi}; break;
        }
    }

    const auto result = run_sweep(geom, cfg.adjuvant(), cfg.active(), cfg.D_Q0,
                                  parse_range(alpha_spec), parse_range(sigma_spec), bands,
                                  cfg.solver, jobs);
    const auto report = summarize_region(result);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    auto sfile = open_output(dir / "sweep.csv");
    write_sweep_csv(sfile, result);
    auto rfile = open_output(dir / "region_report.txt");
    write_region_report(rfile, report);
    write_region_report(std::cout, report);
    std::cout << "wrote " << (dir / "sweep.csv").string() << " and "
              << (dir / "region_report.txt").string() << '\n';
    return 0;
}

int run_empirical(double log_pow, double mcgowan, bool have_logpow, bool have_mcgowan,
                  const std::string& out_path) {
    Sink sink = make_sink(out_path);
    auto& out = sink.stream();
    out << "quantity,value,unit\n";
    if (have_logpow) {
        out << "K_1A_wax_water," << csv::format_double(partition_wax_water(log_pow)) << ",-\n";
        out << "K_1B_cuticle_water," << csv::format_double(partition_cuticle_water(log_pow))
            << ",-\n";
    }
    if (have_mcgowan) {
        const double d_aj = diffusion_from_mcgowan(mcgowan, McGowanRelation::Adjuvant);
        const double d_wax = diffusion_from_mcgowan(mcgowan, McGowanRelation::ActiveWax);
        const double d_cut = diffusion_from_mcgowan(mcgowan, McGowanRelation::ActiveCuticle);
        out << "D_adjuvant," << csv::format_double(d_aj) << ",m^2/s\n";
        out << "D_adjuvant," << csv::format_double(convert_m2s_to_um2min(d_aj)) << ",um^2/min\n";
        out << "D_active_wax," << csv::format_double(d_wax) << ",m^2/s\n";
        out << "D_active_wax," << csv::format_double(convert_m2s_to_um2min(d_wax)) << ",um^2/min\n";
        out << "D_active_cuticle," << csv::format_double(d_cut) << ",m^2/s\n";
        out << "D_active_cuticle," << csv::format_double(convert_m2s_to_um2min(d_cut))
            << ",um^2/min\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Droplet-cuticle-leaf pesticide uptake model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_path;
    std::string out_path;
    std::string vary;
    std::string grid_spec;
    std::string alpha_spec = "0:3:0.1";
    std::string sigma_spec = "0.1:6:0.1";
    std::string bands_spec = "droplet,leaf,rest";
    double tlag_min = 5.0;
    double tlag_max = 20.0;
    double log_pow = 0.0;
    double mcgowan = 0.0;
    int jobs = 4;

    auto* steady = app.add_subcommand(
        "steady", "closed-form equilibrium distribution of the active ingredient "
                  "(loss rates ignored: equilibria exist only for the conservative system)");
    steady->add_option("--config", config_path, "scenario configuration file")->required();
    steady->add_option("--vary", vary, "sweep knob: k (partition ratio), A (contact area), L (cuticle length)");
    steady->add_option("--grid", grid_spec, "sweep grid start:stop:step");
    steady->add_option("--out", out_path, "output CSV (default stdout)");

    auto* sim = app.add_subcommand("simulate", "time-dependent uptake of both compounds");
    sim->add_option("--config", config_path, "scenario configuration file")->required();
    sim->add_option("--out", out_path, "output directory for trajectory.csv and profiles.csv")
        ->required();

    auto* est = app.add_subcommand("estimate", "transport parameters from a measured dataset");
    est->add_option("--data", data_path, "dataset CSV")->required();
    est->add_option("--config", config_path, "scenario configuration file")->required();
    est->add_option("--tlag-min", tlag_min, "lower lag-time bound [min]");
    est->add_option("--tlag-max", tlag_max, "upper lag-time bound [min]");
    est->add_option("--out", out_path, "report CSV (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "(alpha, sigma) grid against the CI bands");
    sweep->add_option("--config", config_path, "scenario configuration file")->required();
    sweep->add_option("--data", data_path, "dataset CSV supplying the CI bands")->required();
    sweep->add_option("--alpha", alpha_spec, "alpha grid start:stop:step");
    sweep->add_option("--sigma", sigma_spec, "sigma grid start:stop:step");
    sweep->add_option("--bands", bands_spec, "compartments constraining the region");
    sweep->add_option("--jobs", jobs, "worker threads");
    sweep->add_option("--out", out_path, "output directory")->required();

    auto* emp = app.add_subcommand("empirical", "coefficients from log Pow / McGowan volume");
    auto* lp_opt = emp->add_option("--logpow", log_pow, "octanol-water log partition coefficient");
    auto* mv_opt = emp->add_option("--mcgowan", mcgowan, "McGowan volume [cm^3/mol]");
    emp->add_option("--out", out_path, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (steady->parsed()) {
            return run_steady(config_path, vary, grid_spec, out_path);
        }
        if (sim->parsed()) {
            return run_simulate(config_path, out_path);
        }
        if (est->parsed()) {
            return run_estimate(data_path, config_path, tlag_min, tlag_max, out_path);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(config_path, data_path, alpha_spec, sigma_spec, bands_spec, jobs,
                                 out_path);
        }
        if (emp->parsed()) {
            if (lp_opt->count() == 0 && mv_opt->count() == 0) {
                throw ConfigError("empirical: provide --logpow and/or --mcgowan");
            }
            return run_empirical(log_pow, mcgowan, lp_opt->count() > 0, mv_opt->count() > 0,
                                 out_path);
        }
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

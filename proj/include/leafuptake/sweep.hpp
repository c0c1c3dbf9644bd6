#ifndef LEAFUPTAKE_SWEEP_HPP
#define LEAFUPTAKE_SWEEP_HPP

#include <atomic>
#include <cstddef>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "leafuptake/csv.hpp"
#include "leafuptake/solver.hpp"

namespace leafuptake {

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-compartment feasibility bands at the final time. A missing band means
/// that compartment does not constrain the region.
struct SweepBands {
    std::optional<Band> droplet;
    std::optional<Band> cuticle;
    std::optional<Band> leaf;
    std::optional<Band> rest;
};

struct SweepCell {
    double alpha = 0.0;
    double sigma = 0.0;
    CompartmentSplit pct;  ///< final-time active-ingredient split
    bool feas_droplet = true;
    bool feas_cuticle = true;
    bool feas_leaf = true;
    bool feas_rest = true;
    bool feas_all = true;
};

/// Grid of final-time responses, row-major over (alpha, sigma):
/// cell(i, j) = cells[i * sigma_grid.size() + j].
struct SweepResult {
    std::vector<double> alpha_grid;
    std::vector<double> sigma_grid;
    std::vector<SweepCell> cells;

    const SweepCell& cell(std::size_t alpha_idx, std::size_t sigma_idx) const {
        return cells[alpha_idx * sigma_grid.size() + sigma_idx];
    }
};

/// One full simulation per (alpha, sigma) cell at fixed baseline coefficient
/// d_q0; feasibility is closed-interval containment of the final-time
/// percentages in the given bands. Cells are independent, so they are farmed
/// out to n_workers threads; the result layout does not depend on scheduling.
inline SweepResult run_sweep(const Geometry& geom, const CompoundParams& aj,
                             const CompoundParams& ai, double d_q0,
                             const std::vector<double>& alpha_grid,
                             const std::vector<double>& sigma_grid, const SweepBands& bands,
                             const SolverConfig& cfg, int n_workers = 1) {
    if (alpha_grid.empty() || sigma_grid.empty()) {
        throw std::domain_error("run_sweep: grids must be non-empty");
    }
    for (double a : alpha_grid) {
        if (!(a >= 0.0)) {
            throw std::domain_error("run_sweep: alpha values must be non-negative");
        }
    }
    for (double s : sigma_grid) {
        if (!(s > 0.0)) {
            throw std::domain_error("run_sweep: sigma values must be positive");
        }
    }
    if (n_workers < 1) {
        throw std::domain_error("run_sweep: need at least one worker");
    }

    SolverConfig cell_cfg = cfg;
    cell_cfg.output_times = {cfg.t_end};

    SweepResult result;
    result.alpha_grid = alpha_grid;
    result.sigma_grid = sigma_grid;
    result.cells.resize(alpha_grid.size() * sigma_grid.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;

    auto inside = [](const std::optional<Band>& band, double value) {
        return !band || (band->lo <= value && value <= band->hi);
    };

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= result.cells.size()) {
                return;
            }
            const std::size_t ia = idx / sigma_grid.size();
            const std::size_t is = idx % sigma_grid.size();
            SweepCell& cell = result.cells[idx];
            cell.alpha = alpha_grid[ia];
            cell.sigma = sigma_grid[is];
            try {
                CompoundParams ai_cell = ai;
                ai_cell.D = d_q0;
                const DiffusionModel model = DiffusionModel::saturating(d_q0, cell.alpha, cell.sigma);
                const Trajectory traj = simulate(geom, aj, ai_cell, model, cell_cfg);
                cell.pct = traj.snapshots.back().ai_pct;
                cell.feas_droplet = inside(bands.droplet, cell.pct.droplet);
                cell.feas_cuticle = inside(bands.cuticle, cell.pct.cuticle);
                cell.feas_leaf = inside(bands.leaf, cell.pct.leaf);
                cell.feas_rest = inside(bands.rest, cell.pct.rest);
                cell.feas_all =
                    cell.feas_droplet && cell.feas_cuticle && cell.feas_leaf && cell.feas_rest;
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "sweep cell (alpha=" + csv::format_double(cell.alpha)
                                    + ", sigma=" + csv::format_double(cell.sigma)
                                    + ") failed: " + e.what();
                }
                return;
            }
        }
    };

    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failed.load()) {
        throw SolverError(error_message);
    }
    return result;
}

/// Summary of the feasibility intersection.
struct RegionReport {
    bool non_empty = false;
    bool alpha_zero_feasible = false;  ///< any feasible cell on the alpha = 0 row
    std::size_t feasible_cells = 0;
    std::size_t total_cells = 0;
    double alpha_min = 0.0, alpha_max = 0.0;  ///< bounding box of feasible cells
    double sigma_min = 0.0, sigma_max = 0.0;
};

inline RegionReport summarize_region(const SweepResult& result) {
    RegionReport report;
    report.total_cells = result.cells.size();
    report.alpha_min = report.sigma_min = std::numeric_limits<double>::infinity();
    report.alpha_max = report.sigma_max = -std::numeric_limits<double>::infinity();
    for (const auto& cell : result.cells) {
        if (!cell.feas_all) {
            continue;
        }
        ++report.feasible_cells;
        if (cell.alpha == 0.0) {
            report.alpha_zero_feasible = true;
        }
        report.alpha_min = std::min(report.alpha_min, cell.alpha);
        report.alpha_max = std::max(report.alpha_max, cell.alpha);
        report.sigma_min = std::min(report.sigma_min, cell.sigma);
        report.sigma_max = std::max(report.sigma_max, cell.sigma);
    }
    report.non_empty = report.feasible_cells > 0;
    if (!report.non_empty) {
        report.alpha_min = report.alpha_max = 0.0;
        report.sigma_min = report.sigma_max = 0.0;
    }
    return report;
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "alpha,sigma,pct_droplet,pct_cuticle,pct_leaf,pct_rest,"
           "feas_droplet,feas_cuticle,feas_leaf,feas_rest,feas_all\n";
    for (const auto& cell : result.cells) {
        out << csv::format_double(cell.alpha) << ',' << csv::format_double(cell.sigma) << ','
            << csv::format_double(cell.pct.droplet) << ',' << csv::format_double(cell.pct.cuticle)
            << ',' << csv::format_double(cell.pct.leaf) << ',' << csv::format_double(cell.pct.rest)
            << ',' << int(cell.feas_droplet) << ',' << int(cell.feas_cuticle) << ','
            << int(cell.feas_leaf) << ',' << int(cell.feas_rest) << ',' << int(cell.feas_all)
            << '\n';
    }
}

inline void write_region_report(std::ostream& out, const RegionReport& report) {
    out << "feasible_cells: " << report.feasible_cells << " / " << report.total_cells << '\n';
    out << "intersection_non_empty: " << (report.non_empty ? "yes" : "no") << '\n';
    out << "alpha_zero_feasible: " << (report.alpha_zero_feasible ? "yes" : "no") << '\n';
    if (report.non_empty) {
        out << "alpha_range: [" << csv::format_double(report.alpha_min) << ", "
            << csv::format_double(report.alpha_max) << "]\n";
        out << "sigma_range: [" << csv::format_double(report.sigma_min) << ", "
            << csv::format_double(report.sigma_max) << "]\n";
    }
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_SWEEP_HPP

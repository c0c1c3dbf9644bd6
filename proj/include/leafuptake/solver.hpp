#ifndef LEAFUPTAKE_SOLVER_HPP
#define LEAFUPTAKE_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leafuptake/csv.hpp"
#include "leafuptake/geometry.hpp"
#include "leafuptake/mesh.hpp"
#include "leafuptake/params.hpp"

namespace leafuptake {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// State of one compound at one instant: well-mixed droplet and leaf-tissue
/// concentrations, the nodal membrane amount densities, and the cumulative
/// amount handed over to the rest of the plant.
struct SimState {
    double t = 0.0;       ///< [min]
    double c_drop = 0.0;  ///< [% um^-3]
    std::vector<double> m;  ///< nodal amount densities [% um^-1]
    double c_leaf = 0.0;  ///< [% um^-3]
    double lost = 0.0;    ///< [%]
};

struct SolverConfig {
    int n_cells = 40;
    double dt_safety = 0.5;              ///< fraction of the explicit stability limit
    double t_end = 364.0;                ///< [min]
    std::vector<double> output_times;    ///< snapshot times, each in [0, t_end]
    double negative_clamp = 1e-12;       ///< tolerated explicit-scheme round-off undershoot

    void validate() const {
        if (n_cells < 4) {
            throw std::domain_error("SolverConfig: n_cells must be at least 4");
        }
        if (!(dt_safety > 0.0 && dt_safety <= 1.0)) {
            throw std::domain_error("SolverConfig: dt_safety must be in (0, 1]");
        }
        if (!(t_end > 0.0)) {
            throw std::domain_error("SolverConfig: t_end must be positive");
        }
        for (double t : output_times) {
            if (!(t >= 0.0 && t <= t_end)) {
                throw std::domain_error("SolverConfig: output times must lie in [0, t_end]");
            }
        }
        if (!(negative_clamp >= 0.0)) {
            throw std::domain_error("SolverConfig: negative_clamp must be non-negative");
        }
    }
};

/// Percentage of a compound's initial total in each compartment.
struct CompartmentSplit {
    double droplet = 0.0;
    double cuticle = 0.0;
    double leaf = 0.0;
    double rest = 0.0;
};

struct Snapshot {
    SimState aj;
    SimState ai;
    CompartmentSplit aj_pct;
    CompartmentSplit ai_pct;
};

/// Mass-budget bookkeeping over a run, relative to the initial total.
struct ConservationStats {
    double initial_total = 0.0;
    double max_step_drift_rel = 0.0;
    double final_drift_rel = 0.0;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    ConservationStats aj_conservation;
    ConservationStats ai_conservation;
    double dt = 0.0;  ///< nominal step used away from output times [min]
};

/// Amount flow from the droplet into the membrane face at x=0 [%/min].
/// Vanishes at partition equilibrium c_drop = k_in * m0 / A.
inline double flux_in(double c_drop, double m_node0, const CompoundParams& params, double area) {
    return params.s_in * area * (c_drop - params.k_in * m_node0 / area);
}

/// Amount flow from the membrane face at x=L into the leaf tissue [%/min].
inline double flux_out(double m_nodeL, double c_leaf, const CompoundParams& params, double area) {
    return params.s_out * area * (params.k_out * m_nodeL / area - c_leaf);
}

/// Explicit stability bound dt_safety * h^2 / (2 D_worst), where D_worst is the
/// largest coefficient either compound can attain.
inline double stable_dt(const SolverConfig& cfg, const Mesh& mesh, const CompoundParams& aj,
                        const DiffusionModel& d_model_ai) {
    const double d_worst = std::max(aj.D, d_model_ai.max_coefficient());
    const double dt = cfg.dt_safety * mesh.h * mesh.h / (2.0 * d_worst);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw SolverError("stable_dt: computed step is not positive and finite");
    }
    return dt;
}

namespace detail {

struct StepWorkspace {
    std::vector<double> rate;    ///< nodal d(m)/dt scratch
    std::vector<double> d_elem;  ///< per-element AI coefficient scratch
};

/// Advance one compound by a single forward-Euler step of the mass-lumped
/// linear-FEM semi-discretisation. d_elem holds one coefficient per element
/// (nullptr means the constant coefficient d_const everywhere). The droplet
/// and tissue updates reuse the exact discrete boundary fluxes, so the
/// discrete total V_A c_drop + sum(w m) + V_B c_leaf + lost is conserved up
/// to round-off.
inline void advance_compound(SimState& s, double dt, const Geometry& geom,
                             const CompoundParams& p, const double* d_elem, double d_const,
                             const Mesh& mesh, double negative_clamp, std::vector<double>& rate) {
    const std::size_t n = mesh.n_nodes();
    const double h = mesh.h;
    const double f_in = flux_in(s.c_drop, s.m.front(), p, geom.A);
    const double f_out = flux_out(s.m.back(), s.c_leaf, p, geom.A);

    rate.assign(n, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double q = (d_elem != nullptr ? d_elem[e] : d_const) * (s.m[e + 1] - s.m[e]) / h;
        rate[e] += q;
        rate[e + 1] -= q;
    }
    rate.front() += f_in;
    rate.back() -= f_out;

    for (std::size_t i = 0; i < n; ++i) {
        s.m[i] += dt * rate[i] / mesh.lumped_weights[i];
        if (s.m[i] < -negative_clamp) {
            throw SolverError("membrane node " + std::to_string(i) + " went negative ("
                              + std::to_string(s.m[i]) + ") at t=" + std::to_string(s.t));
        }
    }
    const double drain = p.loss * geom.V_B * s.c_leaf;
    s.c_drop += dt * (-f_in / geom.V_A);
    s.c_leaf += dt * (f_out - drain) / geom.V_B;
    s.lost += dt * drain;
    s.t += dt;
    // non-finite values fall through to the budget check, which names the step
    if ((std::isfinite(s.c_drop) && s.c_drop < -negative_clamp)
        || (std::isfinite(s.c_leaf) && s.c_leaf < -negative_clamp)) {
        throw SolverError("compartment concentration went negative at t=" + std::to_string(s.t));
    }
}

}  // namespace detail

/// Single coupled step: both compounds advance from the same time level
/// with the same dt; the AJ profile at that level sets the per-element AI
/// coefficient (element means, round-off negatives clamped to zero).
inline void step(SimState& aj_state, SimState& ai_state, double dt, const Geometry& geom,
                 const CompoundParams& aj, const CompoundParams& ai,
                 const DiffusionModel& d_model_ai, const Mesh& mesh,
                 double negative_clamp, detail::StepWorkspace& ws) {
    const std::size_t n = mesh.n_nodes();
    ws.d_elem.resize(n - 1);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        double left = aj_state.m[e];
        double right = aj_state.m[e + 1];
        if (left < -negative_clamp || right < -negative_clamp) {
            throw SolverError("adjuvant profile negative beyond tolerance at element "
                              + std::to_string(e));
        }
        left = std::max(left, 0.0);
        right = std::max(right, 0.0);
        ws.d_elem[e] = eval_diffusion(d_model_ai, 0.5 * (left + right));
    }
    detail::advance_compound(aj_state, dt, geom, aj, nullptr, aj.D, mesh, negative_clamp, ws.rate);
    detail::advance_compound(ai_state, dt, geom, ai, ws.d_elem.data(), 0.0, mesh, negative_clamp,
                             ws.rate);
}

inline void step(SimState& aj_state, SimState& ai_state, double dt, const Geometry& geom,
                 const CompoundParams& aj, const CompoundParams& ai,
                 const DiffusionModel& d_model_ai, const Mesh& mesh,
                 double negative_clamp = 1e-12) {
    detail::StepWorkspace ws;
    step(aj_state, ai_state, dt, geom, aj, ai, d_model_ai, mesh, negative_clamp, ws);
}

namespace detail {

/// Neumaier-compensated total of one compound's mass budget [%].
inline double budget_total(const SimState& s, const Geometry& geom, const Mesh& mesh) {
    double sum = geom.V_A * s.c_drop;
    double comp = 0.0;
    auto add = [&](double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    };
    for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
        add(mesh.lumped_weights[i] * s.m[i]);
    }
    add(geom.V_B * s.c_leaf);
    add(s.lost);
    return sum + comp;
}

inline CompartmentSplit percentages(const SimState& s, const Geometry& geom, const Mesh& mesh,
                                    double initial_total) {
    CompartmentSplit out;
    if (initial_total <= 0.0) {
        return out;
    }
    double cut = 0.0;
    for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
        cut += mesh.lumped_weights[i] * s.m[i];
    }
    out.droplet = 100.0 * geom.V_A * s.c_drop / initial_total;
    out.cuticle = 100.0 * cut / initial_total;
    out.leaf = 100.0 * geom.V_B * s.c_leaf / initial_total;
    out.rest = 100.0 * s.lost / initial_total;
    return out;
}

}  // namespace detail

/// Integrate both compounds from the pristine initial condition (everything
/// in the droplet) to cfg.t_end, recording snapshots at cfg.output_times.
/// The adjuvant runs with its constant coefficient aj.D; the active
/// ingredient uses d_model_ai driven by the adjuvant profile.
inline Trajectory simulate(const Geometry& geom, const CompoundParams& aj,
                           const CompoundParams& ai, const DiffusionModel& d_model_ai,
                           const SolverConfig& cfg) {
    geom.validate();
    aj.validate();
    ai.validate();
    d_model_ai.validate();
    cfg.validate();

    const Mesh mesh = Mesh::uniform(geom.L, cfg.n_cells);
    const double dt_nominal = stable_dt(cfg, mesh, aj, d_model_ai);

    SimState aj_state;
    SimState ai_state;
    aj_state.c_drop = aj.c0;
    ai_state.c_drop = ai.c0;
    aj_state.m.assign(mesh.n_nodes(), 0.0);
    ai_state.m.assign(mesh.n_nodes(), 0.0);

    Trajectory traj;
    traj.dt = dt_nominal;
    traj.aj_conservation.initial_total = geom.V_A * aj.c0;
    traj.ai_conservation.initial_total = geom.V_A * ai.c0;

    std::vector<double> targets = cfg.output_times;
    std::sort(targets.begin(), targets.end());
    targets.push_back(cfg.t_end);  // always run the full horizon

    const double time_tol = 1e-9 * std::max(1.0, cfg.t_end);
    double prev_aj_total = detail::budget_total(aj_state, geom, mesh);
    double prev_ai_total = detail::budget_total(ai_state, geom, mesh);
    detail::StepWorkspace ws;
    std::size_t step_count = 0;
    std::size_t next_target = 0;

    auto emit = [&](double t_exact) {
        aj_state.t = t_exact;
        ai_state.t = t_exact;
        Snapshot snap;
        snap.aj = aj_state;
        snap.ai = ai_state;
        snap.aj_pct = detail::percentages(aj_state, geom, mesh, traj.aj_conservation.initial_total);
        snap.ai_pct = detail::percentages(ai_state, geom, mesh, traj.ai_conservation.initial_total);
        traj.snapshots.push_back(std::move(snap));
    };

    while (next_target < targets.size()) {
        const double target = targets[next_target];
        while (aj_state.t < target - time_tol) {
            const double dt = std::min(dt_nominal, target - aj_state.t);
            step(aj_state, ai_state, dt, geom, aj, ai, d_model_ai, mesh, cfg.negative_clamp, ws);
            ++step_count;

            const double aj_total = detail::budget_total(aj_state, geom, mesh);
            const double ai_total = detail::budget_total(ai_state, geom, mesh);
            if (!std::isfinite(aj_total) || !std::isfinite(ai_total)) {
                throw SolverError("non-finite state at step " + std::to_string(step_count)
                                  + " (t=" + std::to_string(aj_state.t) + ")");
            }
            if (traj.aj_conservation.initial_total > 0.0) {
                traj.aj_conservation.max_step_drift_rel = std::max(
                    traj.aj_conservation.max_step_drift_rel,
                    std::abs(aj_total - prev_aj_total) / traj.aj_conservation.initial_total);
            }
            if (traj.ai_conservation.initial_total > 0.0) {
                traj.ai_conservation.max_step_drift_rel = std::max(
                    traj.ai_conservation.max_step_drift_rel,
                    std::abs(ai_total - prev_ai_total) / traj.ai_conservation.initial_total);
            }
            prev_aj_total = aj_total;
            prev_ai_total = ai_total;
        }
        if (next_target + 1 < targets.size()) {  // a requested output time
            emit(target);
        }
        ++next_target;
    }

    if (traj.aj_conservation.initial_total > 0.0) {
        traj.aj_conservation.final_drift_rel =
            std::abs(prev_aj_total - traj.aj_conservation.initial_total)
            / traj.aj_conservation.initial_total;
    }
    if (traj.ai_conservation.initial_total > 0.0) {
        traj.ai_conservation.final_drift_rel =
            std::abs(prev_ai_total - traj.ai_conservation.initial_total)
            / traj.ai_conservation.initial_total;
    }
    return traj;
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t_min,compound,pct_droplet,pct_cuticle,pct_leaf,pct_rest\n";
    for (const auto& snap : traj.snapshots) {
        for (const auto& [name, pct] : {std::pair<const char*, const CompartmentSplit&>{"AJ", snap.aj_pct},
                                        {"AI", snap.ai_pct}}) {
            out << csv::format_double(snap.aj.t) << ',' << name << ','
                << csv::format_double(pct.droplet) << ',' << csv::format_double(pct.cuticle) << ','
                << csv::format_double(pct.leaf) << ',' << csv::format_double(pct.rest) << '\n';
        }
    }
}

inline void write_profiles_csv(std::ostream& out, const Trajectory& traj, const Mesh& mesh) {
    out << "t_min,compound,x_um,amount_density\n";
    for (const auto& snap : traj.snapshots) {
        for (const auto& [name, state] : {std::pair<const char*, const SimState&>{"AJ", snap.aj},
                                          {"AI", snap.ai}}) {
            for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
                out << csv::format_double(state.t) << ',' << name << ','
                    << csv::format_double(mesh.nodes[i]) << ','
                    << csv::format_double(state.m[i]) << '\n';
            }
        }
    }
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_SOLVER_HPP

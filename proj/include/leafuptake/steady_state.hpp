#ifndef LEAFUPTAKE_STEADY_STATE_HPP
#define LEAFUPTAKE_STEADY_STATE_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leafuptake/csv.hpp"
#include "leafuptake/geometry.hpp"
#include "leafuptake/params.hpp"

namespace leafuptake {

/// Equilibrium distribution of the conservative system (loss = 0). The
/// membrane profile is spatially uniform at equilibrium, so a single amount
/// density describes the whole cuticle.
struct SteadyState {
    double c_drop;      ///< droplet concentration [% um^-3]
    double m_uniform;   ///< membrane amount density [% um^-1]
    double c_leaf;      ///< leaf-tissue concentration [% um^-3]
    double pct_drop;
    double pct_cuticle;
    double pct_leaf;
};

/// Closed-form steady state. Requires loss = 0: with any drain the only
/// stationary point is the empty system.
inline SteadyState steady_state(const Geometry& geom, const CompoundParams& params) {
    geom.validate();
    params.validate();
    if (params.loss != 0.0) {
        throw std::domain_error("steady_state: requires loss = 0 (otherwise everything ends up in the rest of the plant)");
    }
    const double denom = params.k_in * geom.V_A + params.k_out * geom.V_B + geom.A * geom.L;
    SteadyState ss;
    ss.c_drop = params.k_in * geom.V_A * params.c0 / denom;
    ss.m_uniform = geom.A * ss.c_drop / params.k_in;
    ss.c_leaf = (params.k_out / params.k_in) * ss.c_drop;
    ss.pct_drop = 100.0 * params.k_in * geom.V_A / denom;
    ss.pct_cuticle = 100.0 * geom.A * geom.L / denom;
    ss.pct_leaf = 100.0 * params.k_out * geom.V_B / denom;
    return ss;
}

/// Which knob a steady-state sweep varies.
enum class VaryParameter {
    PartitionRatio,  ///< cuticle/aqueous concentration ratio; k_in = k_out = 1/value
    ContactArea,     ///< contact area; droplet and tissue volumes scale along with it
    CuticleLength,   ///< cuticle thickness
};

struct SteadyStateRow {
    double value;
    double pct_drop;
    double pct_cuticle;
    double pct_leaf;
};

/// One steady state per grid value. Varying the contact area rescales V_A and
/// V_B proportionally (lateral homogeneity), which is what makes the
/// percentage split independent of the area.
inline std::vector<SteadyStateRow> steady_state_sweep(const Geometry& geom,
                                                      const CompoundParams& params,
                                                      VaryParameter vary,
                                                      const std::vector<double>& grid) {
    if (grid.empty()) {
        throw std::domain_error("steady_state_sweep: empty grid");
    }
    std::vector<SteadyStateRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        if (!(value > 0.0)) {
            throw std::domain_error("steady_state_sweep: grid values must be positive");
        }
        Geometry g = geom;
        CompoundParams p = params;
        switch (vary) {
            case VaryParameter::PartitionRatio:
                p.k_in = 1.0 / value;
                p.k_out = 1.0 / value;
                break;
            case VaryParameter::ContactArea: {
                const double scale = value / geom.A;
                g.A = value;
                g.V_A = geom.V_A * scale;
                g.V_B = geom.V_B * scale;
                break;
            }
            case VaryParameter::CuticleLength:
                g.L = value;
                break;
        }
        const SteadyState ss = steady_state(g, p);
        rows.push_back({value, ss.pct_drop, ss.pct_cuticle, ss.pct_leaf});
    }
    return rows;
}

inline void write_steady_csv(std::ostream& out, const std::vector<SteadyStateRow>& rows) {
    out << "value,pct_droplet,pct_cuticle,pct_leaf\n";
    for (const auto& row : rows) {
        out << csv::format_double(row.value) << ',' << csv::format_double(row.pct_drop) << ','
            << csv::format_double(row.pct_cuticle) << ',' << csv::format_double(row.pct_leaf) << '\n';
    }
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_STEADY_STATE_HPP

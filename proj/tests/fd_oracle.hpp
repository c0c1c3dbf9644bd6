#ifndef LEAFUPTAKE_TESTS_FD_ORACLE_HPP
#define LEAFUPTAKE_TESTS_FD_ORACLE_HPP

#include <algorithm>
#include <vector>

#include "leafuptake/geometry.hpp"
#include "leafuptake/params.hpp"

namespace testing {

/// Independent finite-difference reference for one compound with a constant
/// coefficient: second-order central differences with ghost-node flux
/// boundaries, trapezoid quadrature, forward Euler at a small fixed step.
/// Deliberately separate from the production discretisation.
struct FdSplit {
    double pct_drop, pct_cut, pct_leaf, pct_rest;
};

inline FdSplit fd_reference(const leafuptake::Geometry& g, const leafuptake::CompoundParams& p,
                            double t_end, int n_cells, double dt_fraction) {
    const double h = g.L / n_cells;
    const double dt_max = dt_fraction * h * h / (2.0 * p.D);
    std::vector<double> m(n_cells + 1, 0.0);
    std::vector<double> next(n_cells + 1, 0.0);
    double c_drop = p.c0;
    double c_leaf = 0.0;
    double lost = 0.0;
    double t = 0.0;
    while (t < t_end - 1e-12) {
        const double dt = std::min(dt_max, t_end - t);
        const double f_in = p.s_in * g.A * (c_drop - p.k_in * m.front() / g.A);
        const double f_out = p.s_out * g.A * (p.k_out * m.back() / g.A - c_leaf);
        next.front() = m.front() + dt * (p.D * 2.0 * (m[1] - m[0]) / (h * h) + 2.0 * f_in / h);
        for (int i = 1; i < n_cells; ++i) {
            next[i] = m[i] + dt * p.D * (m[i + 1] - 2.0 * m[i] + m[i - 1]) / (h * h);
        }
        next.back() = m.back()
                      + dt * (p.D * 2.0 * (m[n_cells - 1] - m[n_cells]) / (h * h) - 2.0 * f_out / h);
        m.swap(next);
        const double drain = p.loss * g.V_B * c_leaf;
        c_drop -= dt * f_in / g.V_A;
        c_leaf += dt * (f_out - drain) / g.V_B;
        lost += dt * drain;
        t += dt;
    }
    double cut = 0.5 * h * (m.front() + m.back());
    for (int i = 1; i < n_cells; ++i) {
        cut += h * m[i];
    }
    const double tot0 = g.V_A * p.c0;
    return {100.0 * g.V_A * c_drop / tot0, 100.0 * cut / tot0, 100.0 * g.V_B * c_leaf / tot0,
            100.0 * lost / tot0};
}

}  // namespace testing

#endif  // LEAFUPTAKE_TESTS_FD_ORACLE_HPP

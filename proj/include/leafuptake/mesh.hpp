#ifndef LEAFUPTAKE_MESH_HPP
#define LEAFUPTAKE_MESH_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace leafuptake {

/// Uniform 1-D mesh over the cuticle [0, L] with the lumped (trapezoid)
/// quadrature weights: h/2 at the two boundary nodes, h in the interior.
struct Mesh {
    int n_cells = 0;
    double h = 0.0;
    std::vector<double> nodes;           ///< n_cells + 1 positions [um]
    std::vector<double> lumped_weights;  ///< per-node quadrature weights [um]

    static Mesh uniform(double length, int n_cells) {
        if (!(length > 0.0)) {
            throw std::domain_error("Mesh: length must be positive");
        }
        if (n_cells < 1) {
            throw std::domain_error("Mesh: need at least one cell");
        }
        Mesh m;
        m.n_cells = n_cells;
        m.h = length / n_cells;
        m.nodes.resize(static_cast<std::size_t>(n_cells) + 1);
        for (int i = 0; i <= n_cells; ++i) {
            m.nodes[static_cast<std::size_t>(i)] = length * i / n_cells;
        }
        m.lumped_weights.assign(static_cast<std::size_t>(n_cells) + 1, m.h);
        m.lumped_weights.front() = 0.5 * m.h;
        m.lumped_weights.back() = 0.5 * m.h;
        return m;
    }

    std::size_t n_nodes() const { return nodes.size(); }
};

}  // namespace leafuptake

#endif  // LEAFUPTAKE_MESH_HPP

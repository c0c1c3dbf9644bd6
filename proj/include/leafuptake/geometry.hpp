#ifndef LEAFUPTAKE_GEOMETRY_HPP
#define LEAFUPTAKE_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leafuptake {

/// Droplet / cuticle / leaf-tissue dimensions with derived volumes and the
/// contact area. Lengths in um, areas in um^2, volumes in um^3.
struct Geometry {
    double r;     ///< droplet radius [um]
    double L;     ///< cuticle thickness [um]
    double L_B;   ///< leaf-tissue thickness [um]
    double V_A;   ///< droplet volume [um^3]
    double A;     ///< droplet-leaf contact area [um^2]
    double V_B;   ///< leaf-tissue volume [um^3]

    void validate() const {
        if (!(r > 0.0 && L > 0.0 && L_B > 0.0 && V_A > 0.0 && A > 0.0 && V_B > 0.0)) {
            throw std::domain_error("Geometry: all fields must be strictly positive");
        }
    }
};

/// Build the geometry from the three measured lengths: hemispherical droplet
/// (V_A = 2/3 pi r^3), circular contact patch (A = pi r^2) and a tissue slab
/// of the same lateral extent (V_B = A L_B).
inline Geometry derive_geometry(double r, double L, double L_B) {
    if (!(r > 0.0) || !(L > 0.0) || !(L_B > 0.0)) {
        throw std::domain_error("derive_geometry: r, L, L_B must be strictly positive");
    }
    Geometry g;
    g.r = r;
    g.L = L;
    g.L_B = L_B;
    g.A = std::numbers::pi * r * r;
    g.V_A = (2.0 / 3.0) * std::numbers::pi * r * r * r;
    g.V_B = g.A * L_B;
    return g;
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_GEOMETRY_HPP

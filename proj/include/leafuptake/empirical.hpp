#ifndef LEAFUPTAKE_EMPIRICAL_HPP
#define LEAFUPTAKE_EMPIRICAL_HPP

#include <cmath>
#include <stdexcept>

namespace leafuptake {

/// Wax/water partition ratio from the octanol-water partition coefficient:
/// log10 K = log Pow - 1.
inline double partition_wax_water(double log_pow) {
    if (!std::isfinite(log_pow)) {
        throw std::domain_error("partition_wax_water: log_pow must be finite");
    }
    return std::pow(10.0, log_pow - 1.0);
}

/// Cuticle/water partition ratio: log10 K = -0.77 + 0.98 log Pow.
inline double partition_cuticle_water(double log_pow) {
    if (!std::isfinite(log_pow)) {
        throw std::domain_error("partition_cuticle_water: log_pow must be finite");
    }
    return std::pow(10.0, -0.77 + 0.98 * log_pow);
}

/// Which literature correlation maps a McGowan volume to a diffusion
/// coefficient. The active ingredient has separate relations for the
/// epicuticular wax and the cuticle proper.
enum class McGowanRelation { Adjuvant, ActiveWax, ActiveCuticle };

/// Diffusion coefficient in m^2/s from the McGowan volume [cm^3/mol].
inline double diffusion_from_mcgowan(double mcgowan_volume, McGowanRelation relation) {
    if (!(mcgowan_volume > 0.0)) {
        throw std::domain_error("diffusion_from_mcgowan: McGowan volume must be positive");
    }
    switch (relation) {
        case McGowanRelation::Adjuvant:
            return std::pow(10.0, -12.49 - 0.015 * mcgowan_volume);
        case McGowanRelation::ActiveWax:
            return std::pow(10.0, -15.26 - 0.01 * mcgowan_volume);
        case McGowanRelation::ActiveCuticle:
            return std::pow(10.0, -13.0 - 0.01 * mcgowan_volume);
    }
    throw std::domain_error("diffusion_from_mcgowan: unknown relation tag");
}

/// 1 m^2/s = 1e12 um^2 per (1/60) min, i.e. 6e13 um^2/min.
inline double convert_m2s_to_um2min(double d_m2_per_s) {
    return d_m2_per_s * 6.0e13;
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_EMPIRICAL_HPP

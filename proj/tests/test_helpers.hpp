#ifndef LEAFUPTAKE_TEST_HELPERS_HPP
#define LEAFUPTAKE_TEST_HELPERS_HPP

#include <string>

#include "leafuptake/geometry.hpp"
#include "leafuptake/params.hpp"

namespace testing {

inline std::string data_dir() { return LEAFUPTAKE_DATA_DIR; }

inline std::string data_path(const std::string& name) { return data_dir() + "/" + name; }

/// Reference geometry: 30 um droplet, 4 um cuticle, 1 mm tissue.
inline leafuptake::Geometry reference_geometry() {
    return leafuptake::derive_geometry(30.0, 4.0, 1000.0);
}

/// Adjuvant transport constants (mean estimates).
inline leafuptake::CompoundParams adjuvant_params() {
    const auto g = reference_geometry();
    return {0.4, 1.0 / 14.80, 1.0 / 14.80, 0.858, 0.858, 1.37e-2, 100.0 / g.V_A};
}

/// Active-ingredient transport constants (mean estimates).
inline leafuptake::CompoundParams active_params() {
    const auto g = reference_geometry();
    return {0.4, 1.0 / 0.754, 1.0 / 0.754, 0.533, 0.533, 1.26e-2, 100.0 / g.V_A};
}

}  // namespace testing

#endif  // LEAFUPTAKE_TEST_HELPERS_HPP

#ifndef LEAFUPTAKE_LEAFUPTAKE_HPP
#define LEAFUPTAKE_LEAFUPTAKE_HPP

#include "leafuptake/config.hpp"
#include "leafuptake/dataset.hpp"
#include "leafuptake/empirical.hpp"
#include "leafuptake/estimation.hpp"
#include "leafuptake/geometry.hpp"
#include "leafuptake/mesh.hpp"
#include "leafuptake/params.hpp"
#include "leafuptake/solver.hpp"
#include "leafuptake/steady_state.hpp"
#include "leafuptake/sweep.hpp"

#endif  // LEAFUPTAKE_LEAFUPTAKE_HPP

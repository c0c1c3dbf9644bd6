#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "fd_oracle.hpp"
#include "leafuptake/solver.hpp"
#include "leafuptake/steady_state.hpp"
#include "test_helpers.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace leafuptake;

namespace {

SolverConfig quick_config(double t_end, int n_cells = 8) {
    SolverConfig cfg;
    cfg.n_cells = n_cells;
    cfg.t_end = t_end;
    cfg.output_times = {t_end};
    return cfg;
}

}  // namespace

TEST_CASE("boundary fluxes") {
    const auto g = testing::reference_geometry();
    const auto p = testing::adjuvant_params();

    SECTION("reference inflow at the pristine initial condition") {
        // lambda_A * A * c0 with the table-rounded values
        CHECK_THAT(flux_in(1.77e-3, 0.0, p, 2.83e3), WithinRel(4.2978078, 1e-6));
    }
    SECTION("partition equilibrium stops the inflow") {
        const double m0 = 0.37;
        const double c_eq = p.k_in * m0 / g.A;
        CHECK(flux_in(c_eq, m0, p, g.A) == 0.0);
    }
    SECTION("empty membrane and tissue carry no outflow") {
        CHECK(flux_out(0.0, 0.0, p, g.A) == 0.0);
    }
}

TEST_CASE("single step from the pristine initial condition, hand-checked on 4 cells") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    const auto mesh = Mesh::uniform(g.L, 4);
    const double dt = 1e-3;

    SimState a;
    SimState q;
    a.c_drop = aj.c0;
    q.c_drop = ai.c0;
    a.m.assign(5, 0.0);
    q.m.assign(5, 0.0);
    step(a, q, dt, g, aj, ai, DiffusionModel::constant(ai.D), mesh);

    const double f = aj.s_in * g.A * aj.c0;
    CHECK_THAT(a.m[0], WithinRel(dt * f / (0.5 * mesh.h), 1e-14));
    CHECK_THAT(a.c_drop, WithinRel(aj.c0 - dt * f / g.V_A, 1e-14));
    for (std::size_t i = 1; i < a.m.size(); ++i) {
        CHECK(a.m[i] == 0.0);
    }
    CHECK(a.c_leaf == 0.0);
    CHECK(a.lost == 0.0);

    // droplet loses exactly what the membrane gains (the difference of two
    // near-equal concentrations limits the achievable precision here)
    CHECK_THAT(g.V_A * (aj.c0 - a.c_drop), WithinRel(0.5 * mesh.h * a.m[0], 1e-9));
}

TEST_CASE("zero initial condition is a fixed point") {
    const auto g = testing::reference_geometry();
    auto aj = testing::adjuvant_params();
    auto ai = testing::active_params();
    aj.c0 = 0.0;
    ai.c0 = 0.0;
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), quick_config(10.0));
    const auto& s = traj.snapshots.back();
    CHECK(s.aj.c_drop == 0.0);
    CHECK(s.ai.c_drop == 0.0);
    CHECK(s.aj.c_leaf == 0.0);
    CHECK(s.aj.lost == 0.0);
    for (double v : s.aj.m) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("per-step conservation including the drained amount") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    const auto traj =
        simulate(g, aj, ai, DiffusionModel::saturating(0.4, 1.5, 3.0), quick_config(50.0, 12));
    CHECK(traj.aj_conservation.max_step_drift_rel <= 1e-12);
    CHECK(traj.ai_conservation.max_step_drift_rel <= 1e-12);
    CHECK(traj.aj_conservation.final_drift_rel <= 1e-9);
}

TEST_CASE("sealed inlet keeps the droplet full and the rest empty") {
    const auto g = testing::reference_geometry();
    auto aj = testing::adjuvant_params();
    auto ai = testing::active_params();
    aj.s_in = 0.0;
    ai.s_in = 0.0;
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), quick_config(364.0));
    const auto& s = traj.snapshots.back();
    CHECK_THAT(s.aj.c_drop, WithinRel(aj.c0, 1e-12));
    CHECK_THAT(s.ai.c_drop, WithinRel(ai.c0, 1e-12));
    CHECK(s.aj.c_leaf == 0.0);
    CHECK(s.ai.c_leaf == 0.0);
    for (double v : s.aj.m) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("closed-form steady state is a fixed point of the discrete scheme") {
    const auto g = testing::reference_geometry();
    auto aj = testing::adjuvant_params();
    auto ai = testing::active_params();
    aj.loss = 0.0;
    ai.loss = 0.0;
    const auto mesh = Mesh::uniform(g.L, 10);
    const SteadyState ssa = steady_state(g, aj);
    const SteadyState ssq = steady_state(g, ai);

    SimState a;
    a.c_drop = ssa.c_drop;
    a.c_leaf = ssa.c_leaf;
    a.m.assign(mesh.n_nodes(), ssa.m_uniform);
    SimState q;
    q.c_drop = ssq.c_drop;
    q.c_leaf = ssq.c_leaf;
    q.m.assign(mesh.n_nodes(), ssq.m_uniform);

    const double dt = stable_dt(quick_config(1.0, 10), mesh, aj, DiffusionModel::constant(ai.D));
    for (int i = 0; i < 100; ++i) {
        step(a, q, dt, g, aj, ai, DiffusionModel::constant(ai.D), mesh);
    }
    CHECK_THAT(a.c_drop, WithinRel(ssa.c_drop, 1e-12));
    CHECK_THAT(a.c_leaf, WithinRel(ssa.c_leaf, 1e-12));
    CHECK_THAT(q.c_drop, WithinRel(ssq.c_drop, 1e-12));
    for (double v : a.m) {
        CHECK_THAT(v, WithinRel(ssa.m_uniform, 1e-12));
    }
}

TEST_CASE("conservative long run settles on the closed-form steady state") {
    const auto g = testing::reference_geometry();
    auto aj = testing::adjuvant_params();
    auto ai = testing::active_params();
    aj.loss = 0.0;
    ai.loss = 0.0;
    const auto ss = steady_state(g, ai);
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), quick_config(40000.0));
    const auto& pct = traj.snapshots.back().ai_pct;
    CHECK_THAT(pct.droplet, WithinAbs(ss.pct_drop, 0.1));
    CHECK_THAT(pct.cuticle, WithinAbs(ss.pct_cuticle, 0.1));
    CHECK_THAT(pct.leaf, WithinAbs(ss.pct_leaf, 0.1));
    CHECK(pct.rest == 0.0);
}

TEST_CASE("constant-coefficient run matches the finite-difference oracle") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), quick_config(364.0, 40));
    const auto fd = testing::fd_reference(g, ai, 364.0, 120, 0.2);
    const auto& pct = traj.snapshots.back().ai_pct;
    CHECK_THAT(pct.droplet, WithinRel(fd.pct_drop, 1e-4));
    CHECK_THAT(pct.cuticle, WithinRel(fd.pct_cut, 1e-4));
    CHECK_THAT(pct.leaf, WithinRel(fd.pct_leaf, 1e-4));
    CHECK_THAT(pct.rest, WithinRel(fd.pct_rest, 1e-4));
}

TEST_CASE("spatial refinement converges at second order") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    std::vector<double> leaf;
    for (int n : {20, 40, 80}) {
        const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), quick_config(37.0, n));
        leaf.push_back(traj.snapshots.back().ai_pct.leaf);
    }
    const double order = std::log2(std::abs(leaf[0] - leaf[1]) / std::abs(leaf[1] - leaf[2]));
    CHECK(order >= 1.8);
    CHECK(order <= 2.3);
}

TEST_CASE("more enhancement never slows the cumulative uptake") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    double prev = -1.0;
    for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const auto traj =
            simulate(g, aj, ai, DiffusionModel::saturating(0.4, alpha, 3.0), quick_config(100.0));
        const auto& pct = traj.snapshots.back().ai_pct;
        const double absorbed = pct.leaf + pct.rest;
        CHECK(absorbed >= prev);
        prev = absorbed;
    }
}

TEST_CASE("without enhancement the active ingredient ignores the adjuvant") {
    const auto g = testing::reference_geometry();
    const auto ai = testing::active_params();
    auto aj1 = testing::adjuvant_params();
    auto aj2 = aj1;
    aj2.k_in = aj2.k_out = 0.3;
    aj2.s_in = aj2.s_out = 1.2;
    aj2.loss = 0.0;
    aj2.D = 0.35;  // stays below the stability-governing coefficient, dt unchanged

    const auto model = DiffusionModel::saturating(0.4, 0.0, 3.0);
    const auto t1 = simulate(g, aj1, ai, model, quick_config(200.0, 16));
    const auto t2 = simulate(g, aj2, ai, model, quick_config(200.0, 16));
    const auto& p1 = t1.snapshots.back().ai_pct;
    const auto& p2 = t2.snapshots.back().ai_pct;
    CHECK_THAT(p1.droplet, WithinAbs(p2.droplet, 1e-10));
    CHECK_THAT(p1.cuticle, WithinAbs(p2.cuticle, 1e-10));
    CHECK_THAT(p1.leaf, WithinAbs(p2.leaf, 1e-10));
    CHECK_THAT(p1.rest, WithinAbs(p2.rest, 1e-10));
    // the adjuvant itself does react
    CHECK(std::abs(t1.snapshots.back().aj_pct.droplet - t2.snapshots.back().aj_pct.droplet) > 0.1);
}

TEST_CASE("reference run shapes: droplet decays, cuticle peaks, tissue fills") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    SolverConfig cfg;
    cfg.n_cells = 16;
    cfg.t_end = 364.0;
    cfg.output_times = {0, 37, 79, 121, 180, 240, 300, 364};
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(0.4), cfg);

    double peak_cut = 0.0;
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i) {
        CHECK(traj.snapshots[i].aj_pct.droplet < traj.snapshots[i - 1].aj_pct.droplet);
        CHECK(traj.snapshots[i].ai_pct.droplet < traj.snapshots[i - 1].ai_pct.droplet);
        CHECK(traj.snapshots[i].aj_pct.rest >= traj.snapshots[i - 1].aj_pct.rest);
        peak_cut = std::max(peak_cut, traj.snapshots[i].aj_pct.cuticle);
    }
    // cuticle rises into a transient peak well above its final level
    CHECK(peak_cut > 5.0);
    CHECK(peak_cut > traj.snapshots.back().aj_pct.cuticle);
    // tissue fills early on
    CHECK(traj.snapshots[1].ai_pct.leaf > 0.0);
    CHECK(traj.snapshots[2].ai_pct.leaf > traj.snapshots[1].ai_pct.leaf);
}

TEST_CASE("snapshots are emitted at the requested times in order") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    SolverConfig cfg = quick_config(50.0);
    cfg.output_times = {0.0, 10.0, 25.0, 50.0};
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), cfg);
    REQUIRE(traj.snapshots.size() == 4);
    CHECK(traj.snapshots[0].aj.t == 0.0);
    CHECK(traj.snapshots[1].aj.t == 10.0);
    CHECK(traj.snapshots[3].aj.t == 50.0);
    CHECK_THAT(traj.snapshots[0].aj_pct.droplet, WithinAbs(100.0, 1e-12));
    for (const auto& snap : traj.snapshots) {
        const auto& p = snap.ai_pct;
        CHECK_THAT(p.droplet + p.cuticle + p.leaf + p.rest, WithinAbs(100.0, 1e-7));
    }
}

TEST_CASE("solver rejects bad configuration") {
    SolverConfig cfg;
    cfg.n_cells = 2;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg.n_cells = 40;
    cfg.dt_safety = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg.dt_safety = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg.dt_safety = 0.5;
    cfg.output_times = {400.0};
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("overflowing state raises a solver error naming the step") {
    const auto g = testing::reference_geometry();
    auto aj = testing::adjuvant_params();
    auto ai = testing::active_params();
    aj.c0 = 1e308;
    try {
        simulate(g, aj, ai, DiffusionModel::constant(ai.D), quick_config(364.0));
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("a corrupted membrane value beyond the tolerance is rejected") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    const auto mesh = Mesh::uniform(g.L, 8);
    SimState a;
    SimState q;
    a.c_drop = aj.c0;
    q.c_drop = ai.c0;
    a.m.assign(mesh.n_nodes(), 0.0);
    q.m.assign(mesh.n_nodes(), 0.0);
    a.m[3] = -1.0;
    CHECK_THROWS_AS(step(a, q, 1e-3, g, aj, ai, DiffusionModel::saturating(0.4, 1.5, 3.0), mesh),
                    SolverError);
}

TEST_CASE("trajectory CSV writers use the documented schemas") {
    const auto g = testing::reference_geometry();
    const auto aj = testing::adjuvant_params();
    const auto ai = testing::active_params();
    SolverConfig cfg = quick_config(5.0, 4);
    cfg.output_times = {0.0, 5.0};
    const auto traj = simulate(g, aj, ai, DiffusionModel::constant(ai.D), cfg);

    std::ostringstream tcsv;
    write_trajectory_csv(tcsv, traj);
    CHECK(tcsv.str().rfind("t_min,compound,pct_droplet,pct_cuticle,pct_leaf,pct_rest\n", 0) == 0);
    CHECK(tcsv.str().find("\n0,AJ,100,") != std::string::npos);

    std::ostringstream pcsv;
    write_profiles_csv(pcsv, traj, Mesh::uniform(g.L, cfg.n_cells));
    CHECK(pcsv.str().rfind("t_min,compound,x_um,amount_density\n", 0) == 0);
    CHECK(pcsv.str().find(",AI,") != std::string::npos);
}

TEST_CASE("mesh invariants") {
    const auto mesh = Mesh::uniform(4.0, 40);
    CHECK(mesh.nodes.front() == 0.0);
    CHECK(mesh.nodes.back() == 4.0);
    for (std::size_t i = 1; i < mesh.nodes.size(); ++i) {
        CHECK(mesh.nodes[i] > mesh.nodes[i - 1]);
    }
    double sum = 0.0;
    for (double w : mesh.lumped_weights) {
        sum += w;
    }
    CHECK_THAT(sum, WithinRel(4.0, 1e-12));
}

#ifndef LEAFUPTAKE_ESTIMATION_HPP
#define LEAFUPTAKE_ESTIMATION_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leafuptake/csv.hpp"
#include "leafuptake/dataset.hpp"
#include "leafuptake/geometry.hpp"
#include "leafuptake/params.hpp"

namespace leafuptake {

/// Point estimate with a propagated 95% interval.
struct EstimateWithRange {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::string unit;

    void check() const {
        if (!(lo <= mean && mean <= hi)) {
            throw std::domain_error("EstimateWithRange: need lo <= mean <= hi");
        }
    }
};

/// Diffusion coefficient from the membrane lag time, D = L^2 / (2 t_lag).
inline double diffusion_from_lag(double length, double t_lag) {
    if (!(length > 0.0) || !(t_lag > 0.0)) {
        throw std::domain_error("diffusion_from_lag: length and t_lag must be positive");
    }
    return length * length / (2.0 * t_lag);
}

/// Cuticle/aqueous concentration ratio at equilibrium. The reciprocal is the
/// model-side coefficient k_in (or k_out).
inline double partition_from_equilibrium(double c_cuticle, double c_aqueous) {
    if (!(c_cuticle > 0.0) || !(c_aqueous > 0.0)) {
        throw std::domain_error("partition_from_equilibrium: concentrations must be positive");
    }
    return c_cuticle / c_aqueous;
}

/// Boundary speed from a single-sample exponential-decay fit of the droplet,
/// s = -V_A ln(c_t / c0) / (A t). Ignores back-flux from the membrane, so it
/// underestimates slightly once the cuticle fills up.
inline double speed_from_decay(double V_A, double A, double c0, double c_t, double t) {
    if (!(c_t > 0.0)) {
        throw std::domain_error("speed_from_decay: decayed concentration must be positive");
    }
    if (!(c_t < c0)) {
        throw std::domain_error("speed_from_decay: no decay observed (c_t >= c0)");
    }
    if (!(t > 0.0) || !(V_A > 0.0) || !(A > 0.0)) {
        throw std::domain_error("speed_from_decay: V_A, A, t must be positive");
    }
    return -V_A * std::log(c_t / c0) / (A * t);
}

/// Loss rate balancing the observed whole-system drain against the tissue
/// amount, loss = rate / (V_B c_leaf).
inline double loss_rate_from_balance(double total_rate, double V_B, double c_leaf) {
    if (!(total_rate >= 0.0)) {
        throw std::domain_error("loss_rate_from_balance: total_rate must be non-negative");
    }
    if (!(V_B > 0.0) || !(c_leaf > 0.0)) {
        throw std::domain_error("loss_rate_from_balance: V_B and c_leaf must be positive");
    }
    return total_rate / (V_B * c_leaf);
}

/// All transport constants of one compound as interval estimates.
struct CompoundParamsRange {
    EstimateWithRange D;
    EstimateWithRange k_in;
    EstimateWithRange k_out;
    EstimateWithRange s_in;
    EstimateWithRange s_out;
    EstimateWithRange loss;
    double c0 = 0.0;

    CompoundParams means() const {
        return CompoundParams{D.mean, k_in.mean, k_out.mean, s_in.mean, s_out.mean, loss.mean, c0};
    }

    /// Cuticle/aqueous concentration ratio (reciprocal of k_in, endpoints swapped).
    EstimateWithRange partition_ratio() const {
        return {1.0 / k_in.mean, 1.0 / k_in.hi, 1.0 / k_in.lo, "-"};
    }
};

namespace detail {

inline const DatasetRow& require_row(const DatasetSeries& data, Compound compound,
                                     Compartment compartment, double t,
                                     std::vector<std::string>& missing) {
    static const DatasetRow dummy{};
    if (!data.has(compound, compartment, t)) {
        missing.push_back("(" + to_string(compound) + ", " + to_string(compartment)
                          + ", t=" + csv::format_double(t) + ")");
        return dummy;
    }
    return data.at(compound, compartment, t);
}

}  // namespace detail

/// Estimate one compound's parameters from the dataset.
///
/// - speed: droplet decay between t=0 and t=37 min (the first recorded point);
/// - partition: averaged cuticle/droplet concentrations over the last three
///   measurement times, taken as equilibrated; the tissue-side coefficient is
///   set equal to the droplet-side one (both faces are water-rich);
/// - loss: rest-of-plant increase over the final measurement interval,
///   balanced against the tissue amount at the interval end;
/// - diffusion: lag-time bracket applied to [t_lag_lo, t_lag_hi], with the
///   midpoint lag as the point estimate.
///
/// Interval bounds are pushed through each monotone formula endpoint-wise.
inline CompoundParamsRange estimate_compound(const DatasetSeries& data, Compound compound,
                                             const Geometry& geom,
                                             std::pair<double, double> t_lag_range) {
    geom.validate();
    if (!(t_lag_range.first > 0.0) || !(t_lag_range.second >= t_lag_range.first)) {
        throw std::domain_error("estimate_compound: need 0 < t_lag_lo <= t_lag_hi");
    }

    const std::vector<double> times = data.times(compound);
    std::vector<std::string> missing;
    const double decay_time = 37.0;
    const DatasetRow& drop0 = detail::require_row(data, compound, Compartment::Droplet, 0.0, missing);
    const DatasetRow& drop37 =
        detail::require_row(data, compound, Compartment::Droplet, decay_time, missing);

    std::vector<const DatasetRow*> eq_drop;
    std::vector<const DatasetRow*> eq_cut;
    if (times.size() < 3) {
        missing.push_back("(" + to_string(compound) + ", 3 trailing measurement times)");
    } else {
        for (std::size_t i = times.size() - 3; i < times.size(); ++i) {
            eq_drop.push_back(&detail::require_row(data, compound, Compartment::Droplet, times[i], missing));
            eq_cut.push_back(&detail::require_row(data, compound, Compartment::Cuticle, times[i], missing));
        }
    }

    const DatasetRow* rest_prev = nullptr;
    const DatasetRow* rest_last = nullptr;
    const DatasetRow* leaf_last = nullptr;
    if (times.size() < 2) {
        missing.push_back("(" + to_string(compound) + ", 2 trailing measurement times)");
    } else {
        const double t_last = times.back();
        const double t_prev = times[times.size() - 2];
        rest_prev = &detail::require_row(data, compound, Compartment::Rest, t_prev, missing);
        rest_last = &detail::require_row(data, compound, Compartment::Rest, t_last, missing);
        leaf_last = &detail::require_row(data, compound, Compartment::LeafTissue, t_last, missing);
    }

    if (!missing.empty()) {
        std::string msg = "estimate_compound: dataset is missing required rows:";
        for (const auto& key : missing) {
            msg += ' ' + key;
        }
        throw DatasetError(msg);
    }

    CompoundParamsRange out;
    out.c0 = drop0.mean_pct / geom.V_A;

    // boundary speed from the initial decay; decreasing in the observed value
    auto speed_of = [&](double pct) {
        return speed_from_decay(geom.V_A, geom.A, out.c0, pct / geom.V_A, decay_time);
    };
    out.s_in = {speed_of(drop37.mean_pct), speed_of(drop37.ci_hi_pct), speed_of(drop37.ci_lo_pct),
                "um/min"};
    out.s_out = out.s_in;

    // partition from averaged trailing concentrations
    auto avg = [](const std::vector<const DatasetRow*>& rows, double DatasetRow::*field) {
        double sum = 0.0;
        for (const auto* r : rows) {
            sum += r->*field;
        }
        return sum / static_cast<double>(rows.size());
    };
    const double cut_area = geom.A * geom.L;
    auto ratio_of = [&](double cut_pct, double drop_pct) {
        return partition_from_equilibrium(cut_pct / cut_area, drop_pct / geom.V_A);
    };
    const double ratio_mean = ratio_of(avg(eq_cut, &DatasetRow::mean_pct), avg(eq_drop, &DatasetRow::mean_pct));
    const double ratio_lo = ratio_of(avg(eq_cut, &DatasetRow::ci_lo_pct), avg(eq_drop, &DatasetRow::ci_hi_pct));
    const double ratio_hi = ratio_of(avg(eq_cut, &DatasetRow::ci_hi_pct), avg(eq_drop, &DatasetRow::ci_lo_pct));
    out.k_in = {1.0 / ratio_mean, 1.0 / ratio_hi, 1.0 / ratio_lo, "-"};
    out.k_out = out.k_in;

    // loss from the final inter-measurement drain; decreasing in the tissue amount
    const double dt_last = rest_last->t - rest_prev->t;
    const double rate = (rest_last->mean_pct - rest_prev->mean_pct) / dt_last;
    auto loss_of = [&](double leaf_pct) {
        return loss_rate_from_balance(rate, geom.V_B, leaf_pct / geom.V_B);
    };
    out.loss = {loss_of(leaf_last->mean_pct), loss_of(leaf_last->ci_hi_pct),
                loss_of(leaf_last->ci_lo_pct), "1/min"};

    // lag-time bracket; decreasing in the lag
    const double t_mid = 0.5 * (t_lag_range.first + t_lag_range.second);
    out.D = {diffusion_from_lag(geom.L, t_mid), diffusion_from_lag(geom.L, t_lag_range.second),
             diffusion_from_lag(geom.L, t_lag_range.first), "um^2/min"};

    for (const auto* e : {&out.D, &out.k_in, &out.s_in, &out.loss}) {
        e->check();
    }
    return out;
}

/// Estimate both compounds. Returns (adjuvant, active ingredient).
inline std::pair<CompoundParamsRange, CompoundParamsRange> estimate_all(
    const DatasetSeries& data, const Geometry& geom, std::pair<double, double> t_lag_range) {
    return {estimate_compound(data, Compound::AJ, geom, t_lag_range),
            estimate_compound(data, Compound::AI, geom, t_lag_range)};
}

/// Parameter report in the symbol convention of the configuration file.
inline void write_estimate_csv(std::ostream& out, const CompoundParamsRange& aj,
                               const CompoundParamsRange& ai) {
    out << "param,mean,lo,hi,unit\n";
    auto emit = [&](const std::string& name, const EstimateWithRange& e) {
        out << name << ',' << csv::format_double(e.mean) << ',' << csv::format_double(e.lo) << ','
            << csv::format_double(e.hi) << ',' << e.unit << '\n';
    };
    emit("lambda_A", aj.s_in);
    emit("mu_A", ai.s_in);
    emit("kappa_1A", aj.partition_ratio());
    emit("K_1A", ai.partition_ratio());
    emit("kappa_A1", aj.k_in);
    emit("K_A1", ai.k_in);
    emit("beta", aj.loss);
    emit("eta", ai.loss);
    emit("D_P", aj.D);
    emit("D_Q0", ai.D);
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_ESTIMATION_HPP

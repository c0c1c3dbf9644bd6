#ifndef LEAFUPTAKE_PARAMS_HPP
#define LEAFUPTAKE_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace leafuptake {

/// Transport constants of one formulation component.
///
/// Partition coefficients follow the membrane-side convention: k_in is the
/// coefficient applied to the membrane amount density at the droplet face
/// (x = 0) and k_out the one at the tissue face (x = L). They are the
/// reciprocals of the cuticle/aqueous concentration ratios reported by
/// equilibrium experiments.
struct CompoundParams {
    double D;       ///< baseline diffusion coefficient in the cuticle [um^2/min]
    double k_in;    ///< partition coefficient at x=0 (dimensionless)
    double k_out;   ///< partition coefficient at x=L (dimensionless)
    double s_in;    ///< boundary speed at x=0 [um/min]
    double s_out;   ///< boundary speed at x=L [um/min]
    double loss;    ///< transfer rate from leaf tissue to the rest of the plant [1/min]
    double c0;      ///< initial droplet concentration [% um^-3]

    void validate() const {
        if (!(D > 0.0 && k_in > 0.0 && k_out > 0.0 && s_in >= 0.0 && s_out >= 0.0)) {
            throw std::domain_error("CompoundParams: D, k_in, k_out must be positive and speeds non-negative");
        }
        if (!(loss >= 0.0) || !(c0 >= 0.0)) {
            throw std::domain_error("CompoundParams: loss and c0 must be non-negative");
        }
    }
};

/// Diffusion-coefficient law for a compound inside the cuticle: either a
/// constant coefficient or one that saturates with the local amount density
/// of the accelerating component,
///   D(m) = D0 * (1 + alpha * m / (sigma + m)).
struct DiffusionModel {
    enum class Kind { Constant, Saturating };

    Kind kind = Kind::Constant;
    double d0 = 0.0;      ///< zero-concentration coefficient [um^2/min]
    double alpha = 0.0;   ///< maximal relative enhancement (dimensionless)
    double sigma = 1.0;   ///< half-saturation amount density [% um^-1]

    static DiffusionModel constant(double d0) {
        DiffusionModel m;
        m.kind = Kind::Constant;
        m.d0 = d0;
        m.validate();
        return m;
    }

    static DiffusionModel saturating(double d0, double alpha, double sigma) {
        DiffusionModel m;
        m.kind = Kind::Saturating;
        m.d0 = d0;
        m.alpha = alpha;
        m.sigma = sigma;
        m.validate();
        return m;
    }

    void validate() const {
        if (!(d0 > 0.0)) {
            throw std::domain_error("DiffusionModel: d0 must be strictly positive");
        }
        if (kind == Kind::Saturating && (!(alpha >= 0.0) || !(sigma > 0.0))) {
            throw std::domain_error("DiffusionModel: saturating law needs alpha >= 0 and sigma > 0");
        }
    }

    /// Largest coefficient the law can produce, used for stability bounds.
    double max_coefficient() const {
        return kind == Kind::Saturating ? d0 * (1.0 + alpha) : d0;
    }
};

/// Evaluate the diffusion coefficient at a local amount density m_local.
/// The caller clamps round-off negatives to zero first; a genuinely negative
/// value is a domain error.
inline double eval_diffusion(const DiffusionModel& model, double m_local) {
    if (!(m_local >= 0.0)) {
        throw std::domain_error("eval_diffusion: m_local must be non-negative");
    }
    if (model.kind == DiffusionModel::Kind::Constant) {
        return model.d0;
    }
    return model.d0 * (1.0 + model.alpha * m_local / (model.sigma + m_local));
}

}  // namespace leafuptake

#endif  // LEAFUPTAKE_PARAMS_HPP

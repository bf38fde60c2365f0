#pragma once

#include <map>
#include <string>
#include <vector>

#include "nongibbs/spin_model.hpp"

namespace nongibbs::transform {

// Measure transformation: decimation to a sublattice, or infinite-
// temperature Glauber evolution (independent rate-1 spin flips) run for a
// time t. Transforms are realised only through constrained first-layer
// models; the transformed infinite-volume measure is never represented.
struct TransformSpec {
    enum class Kind { decimation, glauber };
    Kind kind = Kind::decimation;
    SublatticeMask sublattice; // decimation target S
    double time = 0.0;         // glauber

    static TransformSpec decimation(SublatticeMask s);
    static TransformSpec glauber(double t);
    std::string describe() const;
};

// Original-spin model conditioned on an image configuration: spins remain
// on the unobserved sites, the image enters through induced fields.
struct ConstrainedModel {
    SpinModel model;
    std::vector<Site> sites; // live sites of the constrained system
    std::string provenance;
    std::map<std::string, double> metadata;
};

// p_t(sigma, eta) = (1 + e^{-2t} sigma eta) / 2: probability that a spin
// starting at sigma reads eta after time t under rate-1 independent flips.
struct GlauberKernel {
    double t = 0.0;
    double correlation = 1.0; // e^{-2t}
    double p(int sigma_initial, int eta_final) const {
        return 0.5 * (1.0 + correlation * sigma_initial * eta_final);
    }
};

GlauberKernel glauber_kernel(double t);

// Dynamical field h_t = atanh(e^{-2t}): conditioning the joint measure on
// the evolved spin eta_i multiplies the initial weight by
// exp(h_t eta_i sigma_i) up to sigma-independent factors. Returns +infinity
// at t = 0 (the conditioning becomes hard).
double dynamical_field(double t);

// Adds the decimation-induced fields sum_{j in dom(omega)} J(i-j) omega_j
// to every live site. The omega sites themselves must already be excluded
// from (or lie outside) the model's live volume. With `periodic_wrap` the
// displacement wraps around the window, matching the periodic bond
// convention of the engines.
void add_decimation_fields(SpinModel& model, const Configuration& omega,
                           bool periodic_wrap = false);

// Adds the Glauber conditioning fields (h_t / beta) eta_i on the sites eta
// covers, so that the Boltzmann exponent gains exactly h_t eta_i sigma_i.
// Requires beta > 0.
void add_glauber_fields(SpinModel& model, double t, const Configuration& eta);

// Model on S^c with pair terms restricted to S^c x S^c and image-induced
// fields; couplings across S are absorbed exactly.
ConstrainedModel decimation_constrained_model(const SpinModel& model, const SublatticeMask& s,
                                              const Configuration& omega);

// First-layer model of the time-t evolved measure conditioned on the image
// configuration eta, which must cover the live window.
ConstrainedModel evolution_constrained_model(const SpinModel& model, double t,
                                             const Configuration& eta);

} // namespace nongibbs::transform

#pragma once

#include <optional>
#include <string>

#include "nongibbs/configuration.hpp"
#include "nongibbs/interaction.hpp"
#include "nongibbs/lattice.hpp"

namespace nongibbs {

// Quenched disorder attached to a model. Under the dilution rule each pair
// coupling is multiplied by n_i * n_j (n in {0,1}); empty sites keep a free
// spin that is summed over. Under the random_field rule every site gains a
// field field_strength * n_i (n in {-1,+1}). Sites not covered by n default
// to 0 in both rules.
struct QuenchedOverlay {
    enum class Rule { dilution, random_field };
    Rule rule = Rule::dilution;
    Configuration n;
    double field_strength = 0.0;
};

// Lattice geometry + interaction + inverse temperature: the object every
// engine consumes.
//
// Conventions, used consistently throughout:
//   H^Lambda(sigma, eta) = - sum_pairs J sigma_i sigma_j - sum_i h_i sigma_i
//   weight(sigma)        = exp(-beta * H)
// Each pair intersecting Lambda is counted once. Under periodic boundaries
// pairs are (site, canonical offset) with the partner wrapped into the
// window. beta = 0 is allowed (uniform weights).
struct SpinModel {
    Lattice lattice;
    Interaction interaction;
    double beta = 1.0;
    std::optional<QuenchedOverlay> overlay;

    static SpinModel ising_chain(int length, double j, double h, double beta);
    static SpinModel ising_square(int lx, int ly, double j, double h, double beta);
};

// H^Lambda(sigma, eta) with Lambda = sigma's domain. Exterior sites within
// interaction range are resolved through bc; free boundaries drop the
// cross terms. Throws if a fixed bc leaves an exterior site unresolved,
// naming the site.
double energy(const Configuration& sigma, const BoundaryCondition& bc, const SpinModel& model);

// sum_{0 in X} ||Phi_X||_inf on the site-0 translate:
// sum over both signed offsets of |J| plus |h_0|.
double interaction_norm(const SpinModel& model);

// Unnormalized Boltzmann weight exp(-beta * H) and its log-domain variant.
double gibbs_weight(const Configuration& sigma, const BoundaryCondition& bc, const SpinModel& model);
double log_gibbs_weight(const Configuration& sigma, const BoundaryCondition& bc, const SpinModel& model);

std::uint64_t model_hash(const SpinModel& model);

} // namespace nongibbs

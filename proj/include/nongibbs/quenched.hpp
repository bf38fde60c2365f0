#pragma once

#include <cstdint>

#include "nongibbs/exact.hpp"
#include "nongibbs/spin_model.hpp"

namespace nongibbs::quenched {

// Sitewise-independent disorder: dilution (n_i = 0 with probability p,
// 1 otherwise) or a two-valued random field (n_i = +1 with probability q,
// -1 otherwise, coupling through strength h).
struct DisorderField {
    enum class Kind { dilution, random_field };
    Kind kind = Kind::dilution;
    double p = 0.5;      // dilution: P(n_i = 0)
    double h = 1.0;      // random_field strength
    double bias_q = 0.5; // random_field: P(n_i = +1)

    static DisorderField dilution(double p);
    static DisorderField random_field(double h, double bias_q = 0.5);
};

// Disorder kind + nearest-neighbour spin coupling + inverse temperature on
// a fixed window. The induced spin model for a disorder realization n is
// local in n: dilution multiplies each bond by n_i n_j (empty sites keep a
// free spin, so every empty site contributes ln 2 to log Z uniformly);
// the random field adds h n_i per site.
struct JointModel {
    DisorderField disorder;
    double coupling_j = 1.0;
    double beta = 1.0;
    Lattice lattice;
};

// disorder realization over the window, seeded, sitewise independent
Configuration sample_disorder(const JointModel& jm, std::uint64_t seed);

SpinModel induced_model(const JointModel& jm, const Configuration& n);

// Dilution only: the spin system on the occupied subgraph, with empty
// sites as holes. This is the geometry whose T = 0 ground-state count the
// degeneracy diagnostics use.
SpinModel occupied_subgraph_model(const JointModel& jm, const Configuration& n);

double log_disorder_prob(const JointModel& jm, const Configuration& n);

// K(n, sigma) = P(n) exp(-beta H(n, sigma)) / Z(n); the sigma-conditional
// given n is the quenched Gibbs measure.
double joint_weight(const JointModel& jm, const Configuration& n, const Configuration& sigma,
                    const BoundaryCondition& bc, int cap = exact::default_enumeration_cap);
double log_joint_weight(const JointModel& jm, const Configuration& n, const Configuration& sigma,
                        const BoundaryCondition& bc, int cap = exact::default_enumeration_cap);

// log Z(n + add_site occupied) - log Z(n), exact. Badness of a dilution
// configuration shows up here: whether occupying one site costs the ln 2
// entropy term depends on arbitrarily distant connections.
double free_energy_increment(const JointModel& jm, const Configuration& n, const Site& add_site,
                             const BoundaryCondition& bc,
                             int cap = exact::default_enumeration_cap);

// <sigma_site> under the quenched Gibbs measure mu[n].
double quenched_magnetization(const JointModel& jm, const Configuration& n,
                              const BoundaryCondition& bc, const Site& site = Site{},
                              int cap = exact::default_enumeration_cap);

// |<sigma_0>(n_Lambda, +1 outside) - <sigma_0>(n_Lambda, -1 outside)|: the
// finite-volume discontinuity observable of the joint measure. A function
// of the disorder alone; no spin configuration enters.
double bad_disorder_probe(const JointModel& jm, const Configuration& n, const Box& lambda,
                          const BoundaryCondition& bc,
                          int cap = exact::default_enumeration_cap);

} // namespace nongibbs::quenched

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nongibbs/compiled_model.hpp"

namespace nongibbs::exact {

// Thrown when a request would enumerate more states than the cap allows.
class enumeration_cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int default_enumeration_cap = 25; // 2^25 states

void check_cap(int n_sites, int cap);

// Exact finite-volume Gibbs distribution. Probabilities are evaluated on
// demand from the compiled model and the stored log partition function;
// nothing of size 2^n is kept.
struct ExactDistribution {
    CompiledModel cm;
    double log_z = 0.0;

    double log_prob(const Configuration& sigma) const;
    double prob(const Configuration& sigma) const;
    double log_prob_bits(std::uint64_t state) const;
};

ExactDistribution enumerate_distribution(const SpinModel& model, const std::vector<Site>& window,
                                         const BoundaryCondition& bc,
                                         int cap = default_enumeration_cap);
ExactDistribution enumerate_distribution(const SpinModel& model, const BoundaryCondition& bc,
                                         int cap = default_enumeration_cap);

double log_partition_function(const CompiledModel& cm);

// P(sigma_site = +1 | conditioning, bc), exact single-site Gibbs kernel via
// two energy evaluations. `conditioning` must cover the rest of the volume.
double conditional_probability(const SpinModel& model, const Site& site,
                               const Configuration& conditioning, const BoundaryCondition& bc);

// <sigma_i> under the exact distribution of the compiled model.
double site_expectation(const CompiledModel& cm, int site_index,
                        int cap = default_enumeration_cap);

struct SpinMoments {
    double m1 = 0.0;
    double m2 = 0.0;
    double m4 = 0.0;
    double abs_m = 0.0;
    double e_per_site = 0.0;
    double log_z = 0.0;
};

SpinMoments magnetization_moments(const CompiledModel& cm, int cap = default_enumeration_cap);

// Number of configurations attaining the minimum energy. Ties are resolved
// with a relative tolerance of 1e-9, ample for desk-scale couplings.
std::int64_t ground_state_degeneracy(const SpinModel& model, const std::vector<Site>& window,
                                     const BoundaryCondition& bc,
                                     int cap = default_enumeration_cap);
std::int64_t ground_state_degeneracy(const SpinModel& model, const BoundaryCondition& bc,
                                     int cap = default_enumeration_cap);

// Serial visitor over all states, for oracles and small-instance checks.
// f(state_bits, energy); bit k set means spin +1 at cm.sites[k].
template <typename F>
void for_each_state(const CompiledModel& cm, F&& f) {
    check_cap(cm.n, default_enumeration_cap);
    const std::uint64_t total = 1ull << cm.n;
    for (std::uint64_t s = 0; s < total; ++s) f(s, cm.energy_bits(s));
}

} // namespace nongibbs::exact

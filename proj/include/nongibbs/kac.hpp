#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nongibbs/badness.hpp"
#include "nongibbs/interaction.hpp"
#include "nongibbs/mc.hpp"
#include "nongibbs/transform.hpp"

namespace nongibbs::kac {

// Kac-scaled pair kernel J_gamma(r) = gamma^d J(gamma r). Profiles use
// max-norm support on ||x||_inf <= 1 with the normalization constant c
// making the continuum integral one:
//   top hat:  J(x) = c,               c = 2^-d
//   triangle: J(x) = c (1 - ||x||),   c = (d+1) 2^-d
// The discrete kernel is kept literally (no rescaling); its sum deviates
// from 1 by O(gamma), which the Lebowitz-Penrose check absorbs and reports.
struct KacProfile {
    enum class Shape { top_hat, triangle };
    Shape shape = Shape::top_hat;
    double gamma = 0.25;
    int dim = 1;

    static KacProfile top_hat(double gamma, int dim);
    static KacProfile triangle(double gamma, int dim);

    double normalization() const;
    int range() const; // floor(1/gamma)
    // gamma^d J(gamma r); zero outside the support and at r = 0
    double coupling(const Site& offset) const;
    std::string describe() const;
};

// pair terms of the discrete kernel (r = 0 excluded)
Interaction kac_kernel(const KacProfile& profile);

// sum_{r != 0} J_gamma(r)
double kernel_sum(const KacProfile& profile);

// per-profile constant C with |kernel_sum - 1| <= C gamma, pinned by a
// verified scan over the shipped gamma grid
double kernel_sum_bound_c(const KacProfile& profile);

// sum_{j in S} J_gamma(i - j) eta_spec(j) for the checkerboard eta_spec on
// S = (pitch Z)^d, summed exactly over the kernel support
double checkerboard_effective_field(const KacProfile& profile, int pitch, const Site& i);

// max over i in S^c of |field|; |field| is periodic with period `pitch`,
// so the maximum runs over the finitely many residue classes. For the
// reflection-symmetric profiles shipped here the exact support sum
// vanishes identically: pairing j with its reflection through i flips the
// checkerboard sign and preserves the kernel.
double checkerboard_max_field(const KacProfile& profile, int pitch = 2);

// max |field| when the sum is truncated to S inside a finite window, as in
// the finite-volume three-quarter-lattice model: the window edge leaves
// one uncancelled layer of the support, of order gamma^d.
double checkerboard_max_field_windowed(const KacProfile& profile, int pitch, const Box& window);

struct LpGap {
    double f_gamma = 0.0;    // transfer-matrix free energy of the 1D chain
    double f_envelope = 0.0; // convexified Curie-Weiss free energy
    double gap = 0.0;
};

// d = 1, range <= 14 (transfer-matrix cap)
LpGap lp_free_energy_gap(const KacProfile& profile, double beta, double h);

// Kac interaction decimated to S = (2Z)^2 with image configuration omega;
// metadata records the effective inverse temperature heuristic p beta.
transform::ConstrainedModel quenched_threequarter_model(const KacProfile& profile, double beta,
                                                        const Box& window,
                                                        const Configuration& omega);

struct BetacConfig {
    KacProfile profile = KacProfile::top_hat(1.0, 2);
    badness::ConfigGenerator omega_gen = badness::ConfigGenerator::checkerboard(2);
    std::vector<int> sizes;    // linear sizes L (multiples of 4 for a
                               // seamless periodic checkerboard on S)
    std::vector<double> betas; // sorted grid
    std::uint64_t seed = 1;
    std::int64_t sweeps = 20'000;
    mc::UpdateKind kind = mc::UpdateKind::heatbath;
};

struct BinderPoint {
    int size = 0;
    double beta = 0.0;
    double u = 0.0;
    double u_err = 0.0;
};

struct CrossingReport {
    std::vector<BinderPoint> table;
    bool crossing_found = false;
    double beta_c = 0.0;
    double beta_c_err = 0.0;
    int pair_l1 = 0, pair_l2 = 0; // sizes whose curves located the crossing
    std::string note;
};

// Binder-cumulant scan of the quenched three-quarter-lattice model over
// (L, beta); the crossing of the two largest sizes estimates beta_c, with
// a bootstrap error from the jackknife bars.
CrossingReport betac_pipeline(const BetacConfig& config);

} // namespace nongibbs::kac

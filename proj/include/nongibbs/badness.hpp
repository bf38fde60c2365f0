#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nongibbs/configuration.hpp"
#include "nongibbs/exact.hpp"
#include "nongibbs/transform.hpp"

namespace nongibbs::badness {

// Deterministic generators of candidate bad configurations. `pitch` scales
// the checkerboard to a sublattice: the value at x is the parity of
// sum_k floor(x_k / pitch) (plus `phase`), so a pitch-2 checkerboard
// alternates along (2Z)^d.
struct ConfigGenerator {
    enum class Kind { checkerboard, bernoulli, perturbation, constant };
    Kind kind = Kind::checkerboard;
    int pitch = 1;
    int phase = 0;
    double q = 0.5;
    std::uint64_t seed = 0;
    int value = 1;
    std::shared_ptr<const ConfigGenerator> base; // perturbation
    std::vector<Site> flips;

    static ConfigGenerator checkerboard(int pitch = 1, int phase = 0);
    static ConfigGenerator bernoulli(double q, std::uint64_t seed);
    static ConfigGenerator perturbation(ConfigGenerator base, std::vector<Site> flips);
    static ConfigGenerator constant(int value);

    std::string describe() const;
};

// Deterministic given (generator, window); bernoulli consumes its seeded
// stream in lexicographic site order.
Configuration generate(const ConfigGenerator& gen, const std::vector<Site>& window);

struct EtaCandidate {
    std::string name;
    ConfigGenerator gen;
};

// The finite surrogate for Eq-style suprema: all-plus, all-minus, the
// checkerboard and its flip. `image_pitch` is 1 for evolved measures and
// the sublattice pitch for decimation.
std::vector<EtaCandidate> default_eta_candidates(int image_pitch);

struct VariationParams {
    int margin = -1; // -1: interaction range + 2
    BoundaryCondition bc = BoundaryCondition::all_plus();
    int cap = exact::default_enumeration_cap;
    std::vector<EtaCandidate> candidates; // empty: defaults
    bool mc_fallback = false;
    std::int64_t mc_sweeps = 40'000;
    std::uint64_t mc_seed = 1;
};

struct VariationPoint {
    int radius = 0;
    double variation = 0.0;
    std::string eta_high; // candidate realizing the largest conditional
    std::string eta_low;
    bool exact = true; // false when the MC fallback produced it
};

// The finite-volume quasilocality observable: conditional probabilities of
// the image spin at the origin given omega on the conditioning box Lambda
// (radius `lambda_radius`) and an eta-candidate on the image sites between
// Lambda and the computation window (radius lambda_radius + margin), with
// the stated original-spin boundary condition outside. Returns
// max-minus-min over the candidate set.
VariationPoint variation_at_volume(const SpinModel& model, const transform::TransformSpec& spec,
                                   const Configuration& omega, int lambda_radius,
                                   const VariationParams& params = {});

struct VariationCurve {
    std::vector<VariationPoint> points; // radii strictly increasing
    int margin = 0;
    std::string model_note;
    std::string transform_note;
    std::string generator_note;
    std::string bc_note;
    double min_variation = 0.0;
    double fit_slope = 0.0; // least-squares slope of variation vs radius
};

// variation_at_volume per radius with a single generator draw on the
// largest conditioning box, restricted per radius.
VariationCurve badness_profile(const SpinModel& model, const transform::TransformSpec& spec,
                               const ConfigGenerator& gen, const std::vector<int>& radii,
                               const VariationParams& params = {});

} // namespace nongibbs::badness

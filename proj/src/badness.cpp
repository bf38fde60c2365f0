#include "nongibbs/badness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nongibbs/mc.hpp"
#include "nongibbs/parallel.hpp"
#include "nongibbs/rng.hpp"

namespace nongibbs::badness {

ConfigGenerator ConfigGenerator::checkerboard(int pitch, int phase) {
    ConfigGenerator g;
    g.kind = Kind::checkerboard;
    g.pitch = pitch;
    g.phase = phase & 1;
    return g;
}

ConfigGenerator ConfigGenerator::bernoulli(double q, std::uint64_t seed) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("bernoulli q must lie in [0,1]");
    ConfigGenerator g;
    g.kind = Kind::bernoulli;
    g.q = q;
    g.seed = seed;
    return g;
}

ConfigGenerator ConfigGenerator::perturbation(ConfigGenerator base, std::vector<Site> flips) {
    ConfigGenerator g;
    g.kind = Kind::perturbation;
    g.base = std::make_shared<ConfigGenerator>(std::move(base));
    g.flips = std::move(flips);
    return g;
}

ConfigGenerator ConfigGenerator::constant(int value) {
    if (value != 1 && value != -1) throw std::invalid_argument("constant generator value must be +-1");
    ConfigGenerator g;
    g.kind = Kind::constant;
    g.value = value;
    return g;
}

std::string ConfigGenerator::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::checkerboard:
            os << (phase ? "checkerboard-flipped" : "checkerboard");
            if (pitch != 1) os << "(pitch=" << pitch << ")";
            break;
        case Kind::bernoulli: os << "bernoulli(q=" << q << ",seed=" << seed << ")"; break;
        case Kind::perturbation:
            os << "perturbation(" << base->describe() << "," << flips.size() << " flips)";
            break;
        case Kind::constant: os << (value > 0 ? "all-plus" : "all-minus"); break;
    }
    return os.str();
}

Configuration generate(const ConfigGenerator& gen, const std::vector<Site>& window) {
    Configuration out;
    switch (gen.kind) {
        case ConfigGenerator::Kind::checkerboard: {
            for (const Site& x : window) {
                int s = gen.phase;
                for (int c : x) s += floordiv(c, gen.pitch);
                out.set(x, (s % 2 + 2) % 2 == 0 ? 1 : -1);
            }
            break;
        }
        case ConfigGenerator::Kind::bernoulli: {
            std::vector<Site> ordered = window;
            std::sort(ordered.begin(), ordered.end());
            Rng rng = Rng::from_stream(gen.seed, 0);
            for (const Site& x : ordered) out.set(x, rng.uniform() < gen.q ? 1 : -1);
            break;
        }
        case ConfigGenerator::Kind::perturbation: {
            out = generate(*gen.base, window);
            for (const Site& x : gen.flips)
                if (out.has(x)) out.set(x, -out.at(x));
            break;
        }
        case ConfigGenerator::Kind::constant:
            out = Configuration::constant(window, gen.value);
            break;
    }
    return out;
}

std::vector<EtaCandidate> default_eta_candidates(int image_pitch) {
    return {
        {"all-plus", ConfigGenerator::constant(1)},
        {"all-minus", ConfigGenerator::constant(-1)},
        {"checkerboard", ConfigGenerator::checkerboard(image_pitch, 0)},
        {"checkerboard-flipped", ConfigGenerator::checkerboard(image_pitch, 1)},
    };
}

namespace {

// <sigma_origin> of a working model, exactly or through the MC fallback
double origin_expectation(const SpinModel& working, const BoundaryCondition& bc,
                          const VariationParams& params, std::size_t candidate_index,
                          bool& exact_path) {
    const auto live = working.lattice.sites();
    const Site origin{};
    auto it = std::lower_bound(live.begin(), live.end(), origin);
    if (it == live.end() || *it != origin)
        throw std::logic_error("origin is not a live site of the constrained model");
    const int origin_index = static_cast<int>(it - live.begin());

    if (static_cast<int>(live.size()) <= params.cap) {
        exact_path = true;
        CompiledModel cm = compile_model(working, live, bc);
        const double z_check = exact::log_partition_function(cm);
        if (!std::isfinite(z_check))
            throw std::runtime_error("conditioning event has vanishing probability (log Z not finite)");
        return exact::site_expectation(cm, origin_index, params.cap);
    }
    if (!params.mc_fallback)
        exact::check_cap(static_cast<int>(live.size()), params.cap); // throws with resources
    exact_path = false;
    mc::ChainState st = mc::make_chain(working, live, bc, params.mc_seed,
                                       static_cast<std::uint64_t>(candidate_index));
    const std::int64_t burn = params.mc_sweeps / 5;
    double acc = 0.0;
    std::int64_t n = 0;
    for (std::int64_t s = 0; s < params.mc_sweeps; ++s) {
        mc::sweep(st, mc::UpdateKind::heatbath);
        if (s < burn) continue;
        acc += st.spins[static_cast<std::size_t>(origin_index)];
        ++n;
    }
    return acc / static_cast<double>(n);
}

struct Geometry {
    std::vector<Site> image_in_lambda;  // conditioning sites (origin removed)
    std::vector<Site> image_outside;    // eta-candidate sites
    SpinModel working_base;             // box window, image sites excluded where needed
};

Geometry build_geometry(const SpinModel& model, const transform::TransformSpec& spec,
                        int lambda_radius, int margin) {
    if (!model.lattice.excluded().empty() || model.overlay)
        throw std::invalid_argument("variation_at_volume expects a plain base model");
    const int dim = model.lattice.dim();
    const Box box = Box::centered(dim, lambda_radius + margin);
    const Box lambda = Box::centered(dim, lambda_radius);
    const Site origin{};

    Geometry g;
    g.working_base = model;
    g.working_base.lattice = Lattice(dim, box);

    if (spec.kind == transform::TransformSpec::Kind::decimation) {
        if (!spec.sublattice.contains(origin, dim))
            throw std::invalid_argument("decimation variation takes the origin in the sublattice");
        std::vector<Site> image;
        for (const Site& x : box.sites())
            if (spec.sublattice.contains(x, dim)) image.push_back(x);
        for (const Site& x : image) {
            if (x == origin) continue;
            (lambda.contains(x) ? g.image_in_lambda : g.image_outside).push_back(x);
        }
        std::vector<Site> holes = g.image_in_lambda;
        holes.insert(holes.end(), g.image_outside.begin(), g.image_outside.end());
        g.working_base.lattice.exclude(holes);
    } else {
        for (const Site& x : box.sites()) {
            if (x == origin) continue;
            (lambda.contains(x) ? g.image_in_lambda : g.image_outside).push_back(x);
        }
    }
    return g;
}

} // namespace

VariationPoint variation_at_volume(const SpinModel& model, const transform::TransformSpec& spec,
                                   const Configuration& omega, int lambda_radius,
                                   const VariationParams& params) {
    if (lambda_radius < 0) throw std::invalid_argument("lambda radius must be >= 0");
    const int margin = params.margin >= 0 ? params.margin : model.interaction.range() + 2;
    if (margin < 1) throw std::invalid_argument("margin must be >= 1");

    Geometry g = build_geometry(model, spec, lambda_radius, margin);
    for (const Site& x : g.image_in_lambda)
        if (!omega.has(x))
            throw std::invalid_argument("omega does not cover conditioning site " +
                                        site_to_string(x, model.lattice.dim()));

    const bool glauber = spec.kind == transform::TransformSpec::Kind::glauber;
    const int image_pitch =
        glauber ? 1
                : (spec.sublattice.kind == SublatticeMask::Kind::even ? spec.sublattice.pitch : 1);
    const auto candidates =
        params.candidates.empty() ? default_eta_candidates(image_pitch) : params.candidates;

    VariationPoint out;
    out.radius = lambda_radius;
    double p_min = 1.0, p_max = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        Configuration cond = omega.restricted_to(g.image_in_lambda);
        const Configuration eta = generate(candidates[c].gen, g.image_outside);
        for (const Site& x : g.image_outside) cond.set(x, eta.at(x));

        SpinModel working = g.working_base;
        if (glauber)
            transform::add_glauber_fields(working, spec.time, cond);
        else
            transform::add_decimation_fields(working, cond);

        bool exact_path = true;
        const double s0 = origin_expectation(working, params.bc, params, c, exact_path);
        out.exact = out.exact && exact_path;
        const double p = glauber ? 0.5 * (1.0 + std::exp(-2.0 * spec.time) * s0)
                                 : 0.5 * (1.0 + s0);
        if (p > p_max) {
            p_max = p;
            out.eta_high = candidates[c].name;
        }
        if (p < p_min) {
            p_min = p;
            out.eta_low = candidates[c].name;
        }
    }
    out.variation = std::max(0.0, p_max - p_min);
    return out;
}

VariationCurve badness_profile(const SpinModel& model, const transform::TransformSpec& spec,
                               const ConfigGenerator& gen, const std::vector<int>& radii,
                               const VariationParams& params) {
    if (radii.empty()) throw std::invalid_argument("badness_profile needs at least one radius");
    std::vector<int> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("radii must be distinct");

    const int margin = params.margin >= 0 ? params.margin : model.interaction.range() + 2;
    // one generator draw on the largest conditioning box, shared by all radii
    Geometry largest = build_geometry(model, spec, sorted.back(), margin);
    const Configuration omega = generate(gen, largest.image_in_lambda);

    VariationCurve curve;
    curve.margin = margin;
    curve.transform_note = spec.describe();
    curve.generator_note = gen.describe();
    curve.bc_note = params.bc.describe();
    {
        std::ostringstream os;
        os << model.lattice.dim() << "d beta=" << model.beta;
        curve.model_note = os.str();
    }
    curve.points.resize(sorted.size());
    parallel_for(sorted.size(), 0, [&](std::size_t k) {
        curve.points[k] = variation_at_volume(model, spec, omega, sorted[k], params);
    });

    curve.min_variation = curve.points.front().variation;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : curve.points) {
        curve.min_variation = std::min(curve.min_variation, p.variation);
        sx += p.radius;
        sy += p.variation;
        sxx += static_cast<double>(p.radius) * p.radius;
        sxy += p.radius * p.variation;
    }
    const double n = static_cast<double>(curve.points.size());
    const double denom = n * sxx - sx * sx;
    curve.fit_slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    return curve;
}

} // namespace nongibbs::badness

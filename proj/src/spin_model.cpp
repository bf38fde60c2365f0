#include "nongibbs/spin_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nongibbs/compiled_model.hpp"
#include "nongibbs/hash.hpp"

namespace nongibbs {

SpinModel SpinModel::ising_chain(int length, double j, double h, double beta) {
    SpinModel m;
    m.lattice = Lattice(1, Box::interval(0, length - 1));
    m.interaction = Interaction::nearest_neighbor(1, j, h);
    m.beta = beta;
    return m;
}

SpinModel SpinModel::ising_square(int lx, int ly, double j, double h, double beta) {
    SpinModel m;
    m.lattice = Lattice(2, Box::rectangle(0, lx - 1, 0, ly - 1));
    m.interaction = Interaction::nearest_neighbor(2, j, h);
    m.beta = beta;
    return m;
}

double energy(const Configuration& sigma, const BoundaryCondition& bc, const SpinModel& model) {
    const std::vector<Site>& volume = sigma.domain();
    if (volume.empty()) throw std::invalid_argument("energy: empty configuration");
    CompiledModel cm = compile_model(model, volume, bc);
    return cm.energy_spins(sigma.values());
}

double interaction_norm(const SpinModel& model) {
    double norm = 0.0;
    for (const PairTerm& t : model.interaction.pairs())
        norm += 2.0 * std::abs(t.coupling); // both signed offsets contain the origin
    norm += std::abs(model.interaction.field_at(Site{}));
    return norm;
}

double log_gibbs_weight(const Configuration& sigma, const BoundaryCondition& bc,
                        const SpinModel& model) {
    return -model.beta * energy(sigma, bc, model);
}

double gibbs_weight(const Configuration& sigma, const BoundaryCondition& bc,
                    const SpinModel& model) {
    return std::exp(log_gibbs_weight(sigma, bc, model));
}

std::uint64_t model_hash(const SpinModel& model) {
    Fnv1a h;
    h.mix_i64(model.lattice.dim());
    for (int k = 0; k < model.lattice.dim(); ++k) {
        h.mix_i64(model.lattice.window().lo[k]);
        h.mix_i64(model.lattice.window().hi[k]);
    }
    for (const Site& s : model.lattice.excluded())
        for (int c : s) h.mix_i64(c);
    for (const PairTerm& t : model.interaction.pairs()) {
        for (int c : t.offset) h.mix_i64(c);
        h.mix_double(t.coupling);
    }
    h.mix_double(model.interaction.uniform_field());
    for (const auto& [s, f] : model.interaction.site_fields()) {
        for (int c : s) h.mix_i64(c);
        h.mix_double(f);
    }
    h.mix_double(model.beta);
    if (model.overlay) {
        h.mix_i64(model.overlay->rule == QuenchedOverlay::Rule::dilution ? 1 : 2);
        h.mix_u64(model.overlay->n.content_hash());
        h.mix_double(model.overlay->field_strength);
    }
    return h.state;
}

} // namespace nongibbs

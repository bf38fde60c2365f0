#include "nongibbs/compiled_model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "nongibbs/hash.hpp"

namespace nongibbs {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::size_t find_index(const std::vector<Site>& sites, const Site& s) {
    auto it = std::lower_bound(sites.begin(), sites.end(), s);
    if (it == sites.end() || *it != s) return npos;
    return static_cast<std::size_t>(it - sites.begin());
}

int overlay_occupation(const QuenchedOverlay* ov, const Site& s) {
    return ov->n.value_or(s, 0);
}
} // namespace

double CompiledModel::energy_bits(std::uint64_t state) const {
    double e = 0.0;
    for (const Bond& b : bonds) {
        int sa = (state >> b.a) & 1 ? 1 : -1;
        int sb = (state >> b.b) & 1 ? 1 : -1;
        e -= b.j * sa * sb;
    }
    for (int i = 0; i < n; ++i) {
        int si = (state >> i) & 1 ? 1 : -1;
        e -= field[static_cast<std::size_t>(i)] * si;
    }
    return e;
}

double CompiledModel::energy_spins(std::span<const std::int8_t> s) const {
    double e = 0.0;
    for (const Bond& b : bonds)
        e -= b.j * s[static_cast<std::size_t>(b.a)] * s[static_cast<std::size_t>(b.b)];
    for (int i = 0; i < n; ++i) e -= field[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
    return e;
}

double CompiledModel::local_field(int i, std::span<const std::int8_t> s) const {
    double h = field[static_cast<std::size_t>(i)];
    for (const auto& [j, jj] : adj[static_cast<std::size_t>(i)])
        h += jj * s[static_cast<std::size_t>(j)];
    return h;
}

std::size_t CompiledModel::index_of(const Site& s) const { return find_index(sites, s); }

std::uint64_t CompiledModel::structure_hash() const {
    Fnv1a h;
    h.mix_i64(n);
    h.mix_double(beta);
    for (const Site& s : sites)
        for (int c : s) h.mix_i64(c);
    for (const Bond& b : bonds) {
        h.mix_i64(b.a);
        h.mix_i64(b.b);
        h.mix_double(b.j);
    }
    for (double f : field) h.mix_double(f);
    return h.state;
}

CompiledModel compile_model(const SpinModel& model, const std::vector<Site>& sites,
                            const BoundaryCondition& bc) {
    if (!std::is_sorted(sites.begin(), sites.end()))
        throw std::invalid_argument("compile_model: site list must be sorted");
    const Lattice& lat = model.lattice;
    const int dim = lat.dim();
    for (const Site& s : sites) {
        if (!lat.in_window(s))
            throw std::invalid_argument("compile_model: site " + site_to_string(s, dim) +
                                        " outside the window");
        if (lat.is_excluded(s))
            throw std::invalid_argument("compile_model: site " + site_to_string(s, dim) +
                                        " is excluded from the model");
    }
    const bool periodic = bc.kind == BoundaryCondition::Kind::periodic;
    if (periodic && static_cast<std::int64_t>(sites.size()) != lat.num_sites())
        throw std::invalid_argument("periodic boundaries require the full window as volume");

    const QuenchedOverlay* ov = model.overlay ? &*model.overlay : nullptr;
    const bool diluted = ov && ov->rule == QuenchedOverlay::Rule::dilution;

    CompiledModel cm;
    cm.sites = sites;
    cm.n = static_cast<int>(sites.size());
    cm.beta = model.beta;
    cm.field.assign(sites.size(), 0.0);
    cm.adj.assign(sites.size(), {});

    for (std::size_t i = 0; i < sites.size(); ++i) {
        const Site& si = sites[i];
        double f = model.interaction.field_at(si);
        if (ov && ov->rule == QuenchedOverlay::Rule::random_field)
            f += ov->field_strength * ov->n.value_or(si, 0);
        cm.field[i] = f;
    }

    // eta value of a resolved exterior spin, or nullopt for a dropped term
    auto exterior_spin = [&](const Site& j) -> std::optional<int> {
        switch (bc.kind) {
            case BoundaryCondition::Kind::free: return std::nullopt;
            case BoundaryCondition::Kind::all_plus: return 1;
            case BoundaryCondition::Kind::all_minus: return -1;
            case BoundaryCondition::Kind::fixed:
                if (!bc.values.has(j))
                    throw std::invalid_argument("fixed boundary condition does not resolve site " +
                                                site_to_string(j, dim));
                return bc.values.at(j);
            case BoundaryCondition::Kind::periodic: return std::nullopt; // handled separately
        }
        return std::nullopt;
    };

    for (std::size_t i = 0; i < sites.size(); ++i) {
        const Site& si = sites[i];
        for (const PairTerm& t : model.interaction.pairs()) {
            for (int dir = 0; dir < 2; ++dir) {
                Site j = dir == 0 ? add(si, t.offset) : sub(si, t.offset);
                double jj = t.coupling;
                if (diluted) jj *= overlay_occupation(ov, si);

                if (periodic) {
                    if (dir == 1) continue; // each (site, canonical offset) once
                    Site jw = lat.window().wrap(j);
                    if (jw == si || lat.is_excluded(jw)) continue;
                    std::size_t jdx = find_index(sites, jw);
                    if (jdx == npos) continue;
                    if (diluted) jj *= overlay_occupation(ov, jw);
                    cm.bonds.push_back(Bond{static_cast<int>(i), static_cast<int>(jdx), jj});
                    continue;
                }

                std::size_t jdx = find_index(sites, j);
                if (jdx != npos) {
                    // interior bond, recorded once in the canonical direction
                    if (dir == 0) {
                        if (diluted) jj *= overlay_occupation(ov, j);
                        cm.bonds.push_back(Bond{static_cast<int>(i), static_cast<int>(jdx), jj});
                    }
                    continue;
                }
                if (lat.in_window(j) && lat.is_excluded(j)) continue; // hole: bond dropped
                // exterior (outside the volume): fold into the field
                if (diluted) {
                    jj *= overlay_occupation(ov, j); // exterior occupation defaults to empty
                    if (jj == 0.0) continue;
                }
                if (auto eta = exterior_spin(j)) cm.field[i] += jj * *eta;
            }
        }
    }

    for (const Bond& b : cm.bonds) {
        cm.adj[static_cast<std::size_t>(b.a)].emplace_back(b.b, b.j);
        cm.adj[static_cast<std::size_t>(b.b)].emplace_back(b.a, b.j);
    }
    return cm;
}

CompiledModel compile_model(const SpinModel& model, const BoundaryCondition& bc) {
    return compile_model(model, model.lattice.sites(), bc);
}

} // namespace nongibbs

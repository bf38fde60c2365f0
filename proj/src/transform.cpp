#include "nongibbs/transform.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nongibbs/hash.hpp"

namespace nongibbs::transform {

TransformSpec TransformSpec::decimation(SublatticeMask s) {
    TransformSpec spec;
    spec.kind = Kind::decimation;
    spec.sublattice = std::move(s);
    return spec;
}

TransformSpec TransformSpec::glauber(double t) {
    if (t < 0.0) throw std::invalid_argument("glauber time must be >= 0");
    TransformSpec spec;
    spec.kind = Kind::glauber;
    spec.time = t;
    return spec;
}

std::string TransformSpec::describe() const {
    std::ostringstream os;
    if (kind == Kind::decimation) {
        os << "decimation(";
        if (sublattice.kind == SublatticeMask::Kind::even)
            os << "pitch " << sublattice.pitch;
        else
            os << sublattice.sites.size() << " sites";
        os << ")";
    } else {
        os << "glauber(t=" << time << ")";
    }
    return os.str();
}

GlauberKernel glauber_kernel(double t) {
    if (t < 0.0) throw std::invalid_argument("glauber time must be >= 0");
    return GlauberKernel{t, std::exp(-2.0 * t)};
}

double dynamical_field(double t) {
    if (t < 0.0) throw std::invalid_argument("glauber time must be >= 0");
    if (t == 0.0) return std::numeric_limits<double>::infinity();
    return std::atanh(std::exp(-2.0 * t));
}

void add_decimation_fields(SpinModel& model, const Configuration& omega, bool periodic_wrap) {
    for (const Site& i : model.lattice.sites()) {
        double f = 0.0;
        for (const PairTerm& t : model.interaction.pairs()) {
            for (Site j : {add(i, t.offset), sub(i, t.offset)}) {
                if (periodic_wrap) j = model.lattice.window().wrap(j);
                if (omega.has(j)) f += t.coupling * omega.at(j);
            }
        }
        if (f != 0.0) model.interaction.add_site_field(i, f);
    }
}

void add_glauber_fields(SpinModel& model, double t, const Configuration& eta) {
    if (model.beta <= 0.0)
        throw std::invalid_argument("glauber conditioning needs beta > 0 (fields scale as h_t/beta)");
    const double h_t = dynamical_field(t);
    if (!std::isfinite(h_t))
        throw std::invalid_argument("glauber conditioning at t = 0 has an unbounded field");
    const double per_beta = h_t / model.beta;
    for (std::size_t k = 0; k < eta.domain().size(); ++k)
        model.interaction.add_site_field(eta.domain()[k], per_beta * eta.values()[k]);
}

ConstrainedModel decimation_constrained_model(const SpinModel& model, const SublatticeMask& s,
                                              const Configuration& omega) {
    if (model.overlay)
        throw std::invalid_argument("decimation of overlay models is not supported");
    const int dim = model.lattice.dim();
    std::vector<Site> s_sites;
    for (const Site& x : model.lattice.sites())
        if (s.contains(x, dim)) s_sites.push_back(x);
    if (s_sites.empty() || s_sites.size() == model.lattice.sites().size())
        throw std::invalid_argument("decimation sublattice must be neither empty nor the full window");
    for (const Site& x : s_sites)
        if (!omega.has(x))
            throw std::invalid_argument("omega does not cover sublattice site " +
                                        site_to_string(x, dim));

    ConstrainedModel out;
    out.model = model;
    out.model.lattice.exclude(s_sites);
    out.model.lattice.set_sublattice(s);
    add_decimation_fields(out.model, omega.restricted_to(s_sites));
    out.sites = out.model.lattice.sites();
    out.provenance = "decimation|omega:" + hex_u64(omega.content_hash());
    return out;
}

ConstrainedModel evolution_constrained_model(const SpinModel& model, double t,
                                             const Configuration& eta) {
    if (t <= 0.0) throw std::invalid_argument("evolution conditioning needs t > 0");
    const std::vector<Site> live = model.lattice.sites();
    if (!eta.covers(live))
        throw std::invalid_argument("eta must cover the window");

    ConstrainedModel out;
    out.model = model;
    add_glauber_fields(out.model, t, eta.restricted_to(live));
    out.sites = live;
    out.provenance = "glauber(t=" + std::to_string(t) + ")|eta:" + hex_u64(eta.content_hash());
    out.metadata["dynamical_field"] = dynamical_field(t);
    return out;
}

} // namespace nongibbs::transform

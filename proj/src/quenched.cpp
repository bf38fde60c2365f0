#include "nongibbs/quenched.hpp"

#include <cmath>
#include <stdexcept>

#include "nongibbs/rng.hpp"

namespace nongibbs::quenched {

DisorderField DisorderField::dilution(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("dilution p must lie in [0,1]");
    DisorderField d;
    d.kind = Kind::dilution;
    d.p = p;
    return d;
}

DisorderField DisorderField::random_field(double h, double bias_q) {
    if (bias_q < 0.0 || bias_q > 1.0) throw std::invalid_argument("field bias q must lie in [0,1]");
    DisorderField d;
    d.kind = Kind::random_field;
    d.h = h;
    d.bias_q = bias_q;
    return d;
}

Configuration sample_disorder(const JointModel& jm, std::uint64_t seed) {
    Rng rng = Rng::from_stream(seed, 0);
    Configuration n;
    for (const Site& x : jm.lattice.sites()) {
        if (jm.disorder.kind == DisorderField::Kind::dilution)
            n.set(x, rng.uniform() < jm.disorder.p ? 0 : 1);
        else
            n.set(x, rng.uniform() < jm.disorder.bias_q ? 1 : -1);
    }
    return n;
}

namespace {
void check_alphabet(const JointModel& jm, const Configuration& n) {
    for (std::size_t k = 0; k < n.domain().size(); ++k) {
        const int v = n.values()[k];
        if (jm.disorder.kind == DisorderField::Kind::dilution) {
            if (v != 0 && v != 1)
                throw std::invalid_argument("dilution occupations must be 0 or 1");
        } else if (v != 1 && v != -1) {
            throw std::invalid_argument("random-field signs must be +-1");
        }
    }
}
} // namespace

SpinModel induced_model(const JointModel& jm, const Configuration& n) {
    check_alphabet(jm, n);
    SpinModel m;
    m.lattice = jm.lattice;
    m.interaction = Interaction::nearest_neighbor(jm.lattice.dim(), jm.coupling_j);
    m.beta = jm.beta;
    QuenchedOverlay ov;
    ov.rule = jm.disorder.kind == DisorderField::Kind::dilution
                  ? QuenchedOverlay::Rule::dilution
                  : QuenchedOverlay::Rule::random_field;
    ov.n = n;
    ov.field_strength = jm.disorder.kind == DisorderField::Kind::random_field ? jm.disorder.h : 0.0;
    m.overlay = ov;
    return m;
}

SpinModel occupied_subgraph_model(const JointModel& jm, const Configuration& n) {
    if (jm.disorder.kind != DisorderField::Kind::dilution)
        throw std::invalid_argument("occupied subgraph is a dilution notion");
    check_alphabet(jm, n);
    SpinModel m;
    m.lattice = jm.lattice;
    std::vector<Site> holes;
    for (const Site& x : jm.lattice.sites())
        if (n.value_or(x, 0) == 0) holes.push_back(x);
    m.lattice.exclude(holes);
    m.interaction = Interaction::nearest_neighbor(jm.lattice.dim(), jm.coupling_j);
    m.beta = jm.beta;
    return m;
}

double log_disorder_prob(const JointModel& jm, const Configuration& n) {
    check_alphabet(jm, n);
    double lp = 0.0;
    for (const Site& x : jm.lattice.sites()) {
        const int v = n.at(x);
        double prob;
        if (jm.disorder.kind == DisorderField::Kind::dilution)
            prob = v == 0 ? jm.disorder.p : 1.0 - jm.disorder.p;
        else
            prob = v == 1 ? jm.disorder.bias_q : 1.0 - jm.disorder.bias_q;
        lp += std::log(prob); // -inf for an impossible realization
    }
    return lp;
}

double log_joint_weight(const JointModel& jm, const Configuration& n, const Configuration& sigma,
                        const BoundaryCondition& bc, int cap) {
    const SpinModel m = induced_model(jm, n);
    const auto window = jm.lattice.sites();
    if (!sigma.covers(window)) throw std::invalid_argument("sigma must cover the window");
    auto dist = exact::enumerate_distribution(m, window, bc, cap);
    return log_disorder_prob(jm, n) + dist.log_prob(sigma.restricted_to(window));
}

double joint_weight(const JointModel& jm, const Configuration& n, const Configuration& sigma,
                    const BoundaryCondition& bc, int cap) {
    return std::exp(log_joint_weight(jm, n, sigma, bc, cap));
}

double free_energy_increment(const JointModel& jm, const Configuration& n, const Site& add_site,
                             const BoundaryCondition& bc, int cap) {
    if (jm.disorder.kind != DisorderField::Kind::dilution)
        throw std::invalid_argument("free_energy_increment is a dilution diagnostic");
    if (!jm.lattice.in_window(add_site))
        throw std::invalid_argument("add_site lies outside the window");
    if (n.value_or(add_site, 0) != 0)
        throw std::invalid_argument("add_site must be empty in the base realization");

    Configuration occupied = n;
    occupied.set(add_site, 1);
    const auto window = jm.lattice.sites();
    auto base = exact::enumerate_distribution(induced_model(jm, n), window, bc, cap);
    auto added = exact::enumerate_distribution(induced_model(jm, occupied), window, bc, cap);
    return added.log_z - base.log_z;
}

double quenched_magnetization(const JointModel& jm, const Configuration& n,
                              const BoundaryCondition& bc, const Site& site, int cap) {
    const SpinModel m = induced_model(jm, n);
    const auto window = jm.lattice.sites();
    exact::check_cap(static_cast<int>(window.size()), cap);
    CompiledModel cm = compile_model(m, window, bc);
    const std::size_t idx = cm.index_of(site);
    if (idx == static_cast<std::size_t>(-1))
        throw std::invalid_argument("site " + site_to_string(site, jm.lattice.dim()) +
                                    " is not in the window");
    return exact::site_expectation(cm, static_cast<int>(idx), cap);
}

double bad_disorder_probe(const JointModel& jm, const Configuration& n, const Box& lambda,
                          const BoundaryCondition& bc, int cap) {
    if (jm.disorder.kind != DisorderField::Kind::random_field)
        throw std::invalid_argument("bad_disorder_probe is a random-field diagnostic");
    Configuration n_plus, n_minus;
    for (const Site& x : jm.lattice.sites()) {
        if (lambda.contains(x)) {
            n_plus.set(x, n.at(x));
            n_minus.set(x, n.at(x));
        } else {
            n_plus.set(x, +1);
            n_minus.set(x, -1);
        }
    }
    const double m_plus = quenched_magnetization(jm, n_plus, bc, Site{}, cap);
    const double m_minus = quenched_magnetization(jm, n_minus, bc, Site{}, cap);
    return std::abs(m_plus - m_minus);
}

} // namespace nongibbs::quenched

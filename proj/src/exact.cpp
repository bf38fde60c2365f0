#include "nongibbs/exact.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

namespace nongibbs::exact {

namespace {

// Gray-code walk over a contiguous index range. States are visited as
// gray(g) = g ^ (g >> 1); consecutive states differ in exactly one spin, so
// the energy update is local. The energy is recomputed from scratch every
// 2^16 steps to stop floating-point drift.
template <typename Visit>
void walk_states_tracked(const CompiledModel& cm, std::uint64_t g_begin, std::uint64_t g_end,
                         Visit&& visit) {
    constexpr std::uint64_t resync_mask = (1ull << 16) - 1;
    std::uint64_t state = g_begin ^ (g_begin >> 1);
    std::vector<std::int8_t> spins(static_cast<std::size_t>(cm.n));
    for (int i = 0; i < cm.n; ++i)
        spins[static_cast<std::size_t>(i)] = (state >> i) & 1 ? 1 : -1;
    double e = cm.energy_bits(state);
    for (std::uint64_t g = g_begin; g < g_end; ++g) {
        visit(state, e);
        if (g + 1 == g_end) break;
        const int flip = std::countr_zero(g + 1);
        const double h_loc = cm.local_field(flip, spins);
        e += 2.0 * spins[static_cast<std::size_t>(flip)] * h_loc;
        spins[static_cast<std::size_t>(flip)] =
            static_cast<std::int8_t>(-spins[static_cast<std::size_t>(flip)]);
        state ^= 1ull << flip;
        if (((g + 1) & resync_mask) == 0) e = cm.energy_bits(state);
    }
}

// Log-sum-exp accumulator with up to 4 weighted observables.
struct Accumulator {
    double max_lw = -std::numeric_limits<double>::infinity();
    double z = 0.0;
    std::array<double, 4> obs{};
    int n_obs = 0;

    void add(double lw, const double* o) {
        if (lw > max_lw) {
            const double scale = max_lw == -std::numeric_limits<double>::infinity()
                                     ? 0.0
                                     : std::exp(max_lw - lw);
            z *= scale;
            for (int k = 0; k < n_obs; ++k) obs[static_cast<std::size_t>(k)] *= scale;
            max_lw = lw;
        }
        const double w = std::exp(lw - max_lw);
        z += w;
        for (int k = 0; k < n_obs; ++k) obs[static_cast<std::size_t>(k)] += w * o[k];
    }

    void merge(const Accumulator& other) {
        if (other.z == 0.0) return;
        if (other.max_lw > max_lw) {
            const double scale = max_lw == -std::numeric_limits<double>::infinity()
                                     ? 0.0
                                     : std::exp(max_lw - other.max_lw);
            z *= scale;
            for (int k = 0; k < n_obs; ++k) obs[static_cast<std::size_t>(k)] *= scale;
            max_lw = other.max_lw;
        }
        const double scale = std::exp(other.max_lw - max_lw);
        z += scale * other.z;
        for (int k = 0; k < n_obs; ++k)
            obs[static_cast<std::size_t>(k)] += scale * other.obs[static_cast<std::size_t>(k)];
    }

    double log_z() const { return max_lw + std::log(z); }
};

// Deterministic parallel reduction: the state space is split into a block
// count that depends only on n, blocks are merged in index order, so the
// result is independent of the worker count.
template <typename Obs>
Accumulator reduce_states(const CompiledModel& cm, int n_obs, Obs&& obs) {
    const std::uint64_t total = 1ull << cm.n;
    const int blocks = cm.n >= 18 ? 64 : 1;
    const std::uint64_t per_block = total / static_cast<std::uint64_t>(blocks);

    std::vector<Accumulator> results(static_cast<std::size_t>(blocks));
    auto run_block = [&](int b) {
        Accumulator acc;
        acc.n_obs = n_obs;
        const std::uint64_t g0 = static_cast<std::uint64_t>(b) * per_block;
        const std::uint64_t g1 = b + 1 == blocks ? total : g0 + per_block;
        walk_states_tracked(cm, g0, g1, [&](std::uint64_t state, double e) {
            double o[4];
            obs(state, e, o);
            acc.add(-cm.beta * e, o);
        });
        results[static_cast<std::size_t>(b)] = acc;
    };

    unsigned hw = std::thread::hardware_concurrency();
    const int workers = std::min<int>(blocks, hw == 0 ? 1 : static_cast<int>(hw));
    if (workers <= 1) {
        for (int b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) run_block(b);
            });
        for (auto& t : pool) t.join();
    }

    Accumulator out;
    out.n_obs = n_obs;
    for (const Accumulator& r : results) out.merge(r);
    return out;
}

} // namespace

void check_cap(int n_sites, int cap) {
    if (n_sites > cap) {
        throw enumeration_cap_error(
            "enumeration over " + std::to_string(n_sites) + " sites needs 2^" +
            std::to_string(n_sites) + " states; cap is " + std::to_string(cap) +
            " sites. Raise the cap or shrink the window / use the MC fallback.");
    }
    if (n_sites > 62) throw enumeration_cap_error("enumeration limited to 62 sites");
}

double log_partition_function(const CompiledModel& cm) {
    Accumulator acc = reduce_states(cm, 0, [](std::uint64_t, double, double*) {});
    return acc.log_z();
}

ExactDistribution enumerate_distribution(const SpinModel& model, const std::vector<Site>& window,
                                         const BoundaryCondition& bc, int cap) {
    check_cap(static_cast<int>(window.size()), cap);
    ExactDistribution dist;
    dist.cm = compile_model(model, window, bc);
    dist.log_z = log_partition_function(dist.cm);
    return dist;
}

ExactDistribution enumerate_distribution(const SpinModel& model, const BoundaryCondition& bc,
                                         int cap) {
    return enumerate_distribution(model, model.lattice.sites(), bc, cap);
}

double ExactDistribution::log_prob_bits(std::uint64_t state) const {
    return -cm.beta * cm.energy_bits(state) - log_z;
}

double ExactDistribution::log_prob(const Configuration& sigma) const {
    std::uint64_t state = 0;
    for (std::size_t i = 0; i < cm.sites.size(); ++i)
        if (sigma.at(cm.sites[i]) > 0) state |= 1ull << i;
    return log_prob_bits(state);
}

double ExactDistribution::prob(const Configuration& sigma) const { return std::exp(log_prob(sigma)); }

double conditional_probability(const SpinModel& model, const Site& site,
                               const Configuration& conditioning, const BoundaryCondition& bc) {
    if (conditioning.has(site))
        throw std::invalid_argument("conditioning must not assign the queried site");
    Configuration plus = conditioning;
    plus.set(site, +1);
    Configuration minus = conditioning;
    minus.set(site, -1);
    const double e_plus = energy(plus, bc, model);
    const double e_minus = energy(minus, bc, model);
    // P(+) = w+ / (w+ + w-), evaluated in the log domain
    const double d = model.beta * (e_minus - e_plus);
    if (d > 0) return 1.0 / (1.0 + std::exp(-d));
    const double ed = std::exp(d);
    return ed / (1.0 + ed);
}

double site_expectation(const CompiledModel& cm, int site_index, int cap) {
    check_cap(cm.n, cap);
    if (site_index < 0 || site_index >= cm.n)
        throw std::invalid_argument("site_expectation: index out of range");
    Accumulator acc = reduce_states(cm, 1, [site_index](std::uint64_t state, double, double* o) {
        o[0] = (state >> site_index) & 1 ? 1.0 : -1.0;
    });
    return acc.obs[0] / acc.z;
}

SpinMoments magnetization_moments(const CompiledModel& cm, int cap) {
    check_cap(cm.n, cap);
    const double inv_n = 1.0 / cm.n;
    Accumulator acc = reduce_states(cm, 4, [&](std::uint64_t state, double e, double* o) {
        const int pc = std::popcount(state);
        const double m = (2.0 * pc - cm.n) * inv_n;
        o[0] = m;
        o[1] = m * m;
        o[2] = m * m * m * m;
        o[3] = e * inv_n;
    });
    SpinMoments out;
    out.m1 = acc.obs[0] / acc.z;
    out.m2 = acc.obs[1] / acc.z;
    out.m4 = acc.obs[2] / acc.z;
    out.e_per_site = acc.obs[3] / acc.z;
    out.log_z = acc.log_z();
    // |m| needs its own pass only when asked; fold it in here cheaply
    Accumulator abs_acc = reduce_states(cm, 1, [&](std::uint64_t state, double, double* o) {
        const int pc = std::popcount(state);
        o[0] = std::abs((2.0 * pc - cm.n) * inv_n);
    });
    out.abs_m = abs_acc.obs[0] / abs_acc.z;
    return out;
}

std::int64_t ground_state_degeneracy(const SpinModel& model, const std::vector<Site>& window,
                                     const BoundaryCondition& bc, int cap) {
    check_cap(static_cast<int>(window.size()), cap);
    CompiledModel cm = compile_model(model, window, bc);
    double e_min = 0.0;
    std::int64_t count = 0;
    bool first = true;
    walk_states_tracked(cm, 0, 1ull << cm.n, [&](std::uint64_t, double e) {
        if (first) {
            e_min = e;
            count = 1;
            first = false;
            return;
        }
        const double tol = 1e-9 * std::max(1.0, std::abs(e_min));
        if (e < e_min - tol) {
            e_min = e;
            count = 1;
        } else if (e <= e_min + tol) {
            ++count;
        }
    });
    return count;
}

std::int64_t ground_state_degeneracy(const SpinModel& model, const BoundaryCondition& bc, int cap) {
    return ground_state_degeneracy(model, model.lattice.sites(), bc, cap);
}

} // namespace nongibbs::exact

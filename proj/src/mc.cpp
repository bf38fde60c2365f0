#include "nongibbs/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nongibbs/hash.hpp"
#include "nongibbs/io.hpp"

namespace nongibbs::mc {

UpdateKind update_kind_from_string(const std::string& name) {
    if (name == "metropolis") return UpdateKind::metropolis;
    if (name == "heatbath" || name == "heat-bath") return UpdateKind::heatbath;
    throw std::invalid_argument("unknown update kind '" + name + "'");
}

ChainState make_chain(const SpinModel& model, const std::vector<Site>& window,
                      const BoundaryCondition& bc, std::uint64_t master_seed,
                      std::uint64_t stream) {
    ChainState st;
    st.cm = compile_model(model, window, bc);
    st.rng = Rng::from_stream(master_seed, stream);
    st.master_seed = master_seed;
    st.stream = stream;
    st.spins.resize(static_cast<std::size_t>(st.cm.n));
    for (auto& s : st.spins) s = static_cast<std::int8_t>(st.rng.spin());
    return st;
}

ChainState make_chain(const SpinModel& model, const BoundaryCondition& bc,
                      std::uint64_t master_seed, std::uint64_t stream) {
    return make_chain(model, model.lattice.sites(), bc, master_seed, stream);
}

void sweep(ChainState& st, UpdateKind kind) {
    const double beta = st.cm.beta;
    const int n = st.cm.n;
    if (kind == UpdateKind::metropolis) {
        for (int i = 0; i < n; ++i) {
            const double h_loc = st.cm.local_field(i, st.spins);
            const double de = 2.0 * st.spins[static_cast<std::size_t>(i)] * h_loc;
            const double u = st.rng.uniform(); // one draw per site, accepted or not
            if (de <= 0.0 || u < std::exp(-beta * de))
                st.spins[static_cast<std::size_t>(i)] =
                    static_cast<std::int8_t>(-st.spins[static_cast<std::size_t>(i)]);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const double h_loc = st.cm.local_field(i, st.spins);
            const double x = 2.0 * beta * h_loc;
            // P(+1) = e^x / (e^x + e^-x), evaluated stably
            const double p_plus = x >= 0 ? 1.0 / (1.0 + std::exp(-x))
                                         : std::exp(x) / (1.0 + std::exp(x));
            st.spins[static_cast<std::size_t>(i)] =
                static_cast<std::int8_t>(st.rng.uniform() < p_plus ? 1 : -1);
        }
    }
    ++st.sweeps_done;
}

McProtocol default_protocol(std::int64_t sweeps, UpdateKind kind) {
    McProtocol p;
    p.sweeps = sweeps;
    p.burn_in = sweeps / 5;
    p.measure_interval = 1;
    p.kind = kind;
    return p;
}

ObservableSeries run_chain(const SpinModel& model, const std::vector<Site>& window,
                           const BoundaryCondition& bc, const McProtocol& protocol,
                           std::uint64_t master_seed, std::uint64_t stream) {
    if (protocol.burn_in < 0 || protocol.sweeps <= protocol.burn_in)
        throw std::invalid_argument("run_chain needs sweeps > burn_in >= 0");
    if (protocol.measure_interval < 1)
        throw std::invalid_argument("measure_interval must be >= 1");

    ChainState st = make_chain(model, window, bc, master_seed, stream);
    if (protocol.init == ChainInit::all_plus)
        std::fill(st.spins.begin(), st.spins.end(), static_cast<std::int8_t>(1));
    else if (protocol.init == ChainInit::all_minus)
        std::fill(st.spins.begin(), st.spins.end(), static_cast<std::int8_t>(-1));
    ObservableSeries out;
    out.master_seed = master_seed;
    out.stream = stream;
    out.model_hash = hex_u64(model_hash(model));
    out.protocol = protocol;
    const double inv_n = 1.0 / st.cm.n;

    for (std::int64_t s = 1; s <= protocol.sweeps; ++s) {
        sweep(st, protocol.kind);
        if (s <= protocol.burn_in) continue;
        if ((s - protocol.burn_in) % protocol.measure_interval != 0) continue;
        double mag = 0.0;
        for (auto v : st.spins) mag += v;
        out.m.push_back(mag * inv_n);
        out.e.push_back(st.cm.energy_spins(st.spins) * inv_n);
        out.sweep_index.push_back(s);
    }
    return out;
}

ObservableSeries run_chain(const SpinModel& model, const BoundaryCondition& bc,
                           const McProtocol& protocol, std::uint64_t master_seed,
                           std::uint64_t stream) {
    return run_chain(model, model.lattice.sites(), bc, protocol, master_seed, stream);
}

std::string series_to_csv(const ObservableSeries& series) {
    std::string out = "sweep,m,e\n";
    for (std::size_t i = 0; i < series.m.size(); ++i) {
        out += std::to_string(series.sweep_index[i]);
        out += ",";
        out += io::g17(series.m[i]);
        out += ",";
        out += io::g17(series.e[i]);
        out += "\n";
    }
    return out;
}

namespace {
// block boundaries for a jackknife with floor(sqrt(n)) blocks; the last
// block absorbs the remainder
std::vector<std::pair<std::size_t, std::size_t>> jackknife_blocks(std::size_t n) {
    const std::size_t nb = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
    const std::size_t len = n / nb;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t b = 0; b < nb; ++b)
        blocks.emplace_back(b * len, b + 1 == nb ? n : (b + 1) * len);
    return blocks;
}
} // namespace

MeanErr blocked_mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("blocked_mean of an empty series");
    MeanErr out;
    out.n = static_cast<std::int64_t>(xs.size());
    double total = 0.0;
    for (double x : xs) total += x;
    out.mean = total / static_cast<double>(xs.size());
    if (xs.size() < 4) {
        out.err = 0.0;
        return out;
    }
    const auto blocks = jackknife_blocks(xs.size());
    const double nb = static_cast<double>(blocks.size());
    std::vector<double> loo;
    for (const auto& [b0, b1] : blocks) {
        double bsum = 0.0;
        for (std::size_t i = b0; i < b1; ++i) bsum += xs[i];
        loo.push_back((total - bsum) / static_cast<double>(xs.size() - (b1 - b0)));
    }
    double lm = 0.0;
    for (double v : loo) lm += v;
    lm /= nb;
    double var = 0.0;
    for (double v : loo) var += (v - lm) * (v - lm);
    out.err = std::sqrt((nb - 1.0) / nb * var);
    return out;
}

BinderResult binder_cumulant(std::span<const double> m) {
    if (m.size() < 100)
        throw std::invalid_argument("binder_cumulant needs at least 100 measurements");
    double s2 = 0.0, s4 = 0.0;
    for (double x : m) {
        s2 += x * x;
        s4 += x * x * x * x;
    }
    if (s2 == 0.0) throw std::invalid_argument("binder_cumulant of a degenerate (all-zero) series");
    const double n = static_cast<double>(m.size());
    BinderResult out;
    out.u = 1.0 - (s4 / n) / (3.0 * (s2 / n) * (s2 / n));

    const auto blocks = jackknife_blocks(m.size());
    const double nb = static_cast<double>(blocks.size());
    std::vector<double> loo;
    for (const auto& [b0, b1] : blocks) {
        double b2 = 0.0, b4 = 0.0;
        for (std::size_t i = b0; i < b1; ++i) {
            b2 += m[i] * m[i];
            b4 += m[i] * m[i] * m[i] * m[i];
        }
        const double rest = n - static_cast<double>(b1 - b0);
        const double r2 = (s2 - b2) / rest, r4 = (s4 - b4) / rest;
        loo.push_back(1.0 - r4 / (3.0 * r2 * r2));
    }
    double lm = 0.0;
    for (double v : loo) lm += v;
    lm /= nb;
    double var = 0.0;
    for (double v : loo) var += (v - lm) * (v - lm);
    out.err = std::sqrt((nb - 1.0) / nb * var);
    return out;
}

BinderResult binder_cumulant(const ObservableSeries& series) { return binder_cumulant(series.m); }

CoexistenceResult coexistence_probe(const SpinModel& model, const McProtocol& protocol,
                                    std::uint64_t master_seed, int chains_per_side) {
    if (chains_per_side < 1) throw std::invalid_argument("need at least one chain per side");
    std::vector<double> plus, minus;
    McProtocol pp = protocol, pm = protocol;
    pp.init = ChainInit::all_plus;
    pm.init = ChainInit::all_minus;
    for (int c = 0; c < chains_per_side; ++c) {
        auto sp = run_chain(model, BoundaryCondition::periodic(), pp, master_seed,
                            static_cast<std::uint64_t>(2 * c));
        auto sm = run_chain(model, BoundaryCondition::periodic(), pm, master_seed,
                            static_cast<std::uint64_t>(2 * c + 1));
        plus.insert(plus.end(), sp.m.begin(), sp.m.end());
        minus.insert(minus.end(), sm.m.begin(), sm.m.end());
    }
    CoexistenceResult out;
    out.m_plus = blocked_mean(plus);
    out.m_minus = blocked_mean(minus);
    out.gap = out.m_plus.mean - out.m_minus.mean;
    out.gap_err = std::hypot(out.m_plus.err, out.m_minus.err);
    out.significant = out.gap > 5.0 * out.gap_err;
    return out;
}

} // namespace nongibbs::mc

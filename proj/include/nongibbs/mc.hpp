#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nongibbs/compiled_model.hpp"
#include "nongibbs/rng.hpp"

namespace nongibbs::mc {

enum class UpdateKind { metropolis, heatbath };

UpdateKind update_kind_from_string(const std::string& name);

// One Markov chain: compiled model, spin state, and its private RNG stream.
// Sweeps run in deterministic (lexicographic) site order; the trajectory is
// a pure function of (model, bc, master seed, stream).
struct ChainState {
    CompiledModel cm;
    std::vector<std::int8_t> spins;
    Rng rng;
    std::uint64_t master_seed = 0;
    std::uint64_t stream = 0;
    std::int64_t sweeps_done = 0;
};

ChainState make_chain(const SpinModel& model, const std::vector<Site>& window,
                      const BoundaryCondition& bc, std::uint64_t master_seed,
                      std::uint64_t stream);
ChainState make_chain(const SpinModel& model, const BoundaryCondition& bc,
                      std::uint64_t master_seed, std::uint64_t stream = 0);

// One full lattice sweep. Both update kinds satisfy detailed balance with
// respect to the model's Gibbs distribution per site update.
void sweep(ChainState& state, UpdateKind kind);

enum class ChainInit { random, all_plus, all_minus };

struct McProtocol {
    std::int64_t sweeps = 10'000;
    std::int64_t burn_in = 2'000; // callers default this to 20% of sweeps
    std::int64_t measure_interval = 1;
    UpdateKind kind = UpdateKind::metropolis;
    ChainInit init = ChainInit::random;
};

McProtocol default_protocol(std::int64_t sweeps, UpdateKind kind = UpdateKind::metropolis);

struct ObservableSeries {
    std::vector<double> m;                 // magnetization per measurement
    std::vector<double> e;                 // energy per site
    std::vector<std::int64_t> sweep_index;
    std::uint64_t master_seed = 0;
    std::uint64_t stream = 0;
    std::string model_hash;
    McProtocol protocol;
};

ObservableSeries run_chain(const SpinModel& model, const BoundaryCondition& bc,
                           const McProtocol& protocol, std::uint64_t master_seed,
                           std::uint64_t stream = 0);
ObservableSeries run_chain(const SpinModel& model, const std::vector<Site>& window,
                           const BoundaryCondition& bc, const McProtocol& protocol,
                           std::uint64_t master_seed, std::uint64_t stream = 0);

// CSV form of a series (columns: sweep, m, e), 17-digit floats: identical
// (seed, model, protocol) give identical bytes
std::string series_to_csv(const ObservableSeries& series);

// Mean with a blocked-jackknife error bar; block count = floor(sqrt(N)) so
// that autocorrelation is absorbed by the blocks.
struct MeanErr {
    double mean = 0.0;
    double err = 0.0;
    std::int64_t n = 0;
};

MeanErr blocked_mean(std::span<const double> xs);

// U = 1 - <m^4> / (3 <m^2>^2) with a blocked-jackknife error bar.
struct BinderResult {
    double u = 0.0;
    double err = 0.0;
};

BinderResult binder_cumulant(const ObservableSeries& series);
BinderResult binder_cumulant(std::span<const double> m);

// Paired chains prepared in the plus and minus ordered states under
// periodic boundaries; in a coexistence region each chain stays in its own
// well, in the unique-phase region both relax to the same magnetization. A
// gap of more than five joint standard errors flags coexistence at this
// (beta, L).
struct CoexistenceResult {
    MeanErr m_plus;
    MeanErr m_minus;
    double gap = 0.0;
    double gap_err = 0.0;
    bool significant = false;
};

CoexistenceResult coexistence_probe(const SpinModel& model, const McProtocol& protocol,
                                    std::uint64_t master_seed, int chains_per_side = 1);

} // namespace nongibbs::mc

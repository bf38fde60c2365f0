#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nongibbs/spin_model.hpp"

namespace nongibbs {

// Index-based view of a SpinModel on a fixed site list with the boundary
// condition folded in. Both the exact engine and the Monte Carlo engine run
// on this structure: interior bonds are listed once (a < b), interactions
// with resolved exterior spins are linear in sigma and therefore folded
// into per-site fields.
struct Bond {
    int a = 0;
    int b = 0;
    double j = 0.0;
};

struct CompiledModel {
    std::vector<Site> sites; // lexicographic; index into everything below
    int n = 0;
    double beta = 1.0;
    std::vector<Bond> bonds;                                // interior, a < b
    std::vector<double> field;                              // interaction + overlay + boundary
    std::vector<std::vector<std::pair<int, double>>> adj;   // per-site interior neighbours

    // E = -sum_bonds J s_a s_b - sum_i field_i s_i
    double energy_bits(std::uint64_t state) const;          // bit k set <=> spin +1
    double energy_spins(std::span<const std::int8_t> s) const;
    // h_loc(i) = sum_j J_ij s_j + field_i, so that flipping spin i changes
    // E by 2 s_i h_loc(i)
    double local_field(int i, std::span<const std::int8_t> s) const;

    std::size_t index_of(const Site& s) const;              // npos if absent
    std::uint64_t structure_hash() const;
};

// Resolves bc, applies any quenched overlay, and drops bonds into excluded
// (hole) sites. `sites` must be sorted lexicographically and live inside
// the model window. Periodic boundaries require sites == full window.
CompiledModel compile_model(const SpinModel& model, const std::vector<Site>& sites,
                            const BoundaryCondition& bc);

// convenience: compile on model.lattice.sites()
CompiledModel compile_model(const SpinModel& model, const BoundaryCondition& bc);

} // namespace nongibbs

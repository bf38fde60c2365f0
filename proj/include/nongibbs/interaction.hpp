#pragma once

#include <map>
#include <vector>

#include "nongibbs/lattice.hpp"

namespace nongibbs {

// One translation-invariant pair coupling J(offset). Offsets are stored in
// canonical form (lexicographically positive); the negated partner is
// implied by symmetry.
struct PairTerm {
    Site offset{};
    double coupling = 0.0;
};

// Finite-range interaction with single-site and pair terms only. Every
// Hamiltonian in scope (nearest-neighbour, diluted, random-field, Kac) is
// of this form.
class Interaction {
public:
    // accumulates onto an existing canonical offset if present
    void add_pair(Site offset, double coupling);
    void set_uniform_field(double h) { uniform_field_ = h; }
    void add_site_field(const Site& s, double h);

    const std::vector<PairTerm>& pairs() const { return pairs_; }
    double uniform_field() const { return uniform_field_; }
    const std::map<Site, double>& site_fields() const { return site_fields_; }

    double field_at(const Site& s) const;
    double coupling_at(const Site& offset) const; // 0 if absent, either sign
    int range() const;                            // max Chebyshev norm of offsets

    static Interaction nearest_neighbor(int dim, double j, double h = 0.0);

    bool operator==(const Interaction& other) const = default;

private:
    std::vector<PairTerm> pairs_; // canonical offsets, sorted
    double uniform_field_ = 0.0;
    std::map<Site, double> site_fields_;
};

} // namespace nongibbs

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nongibbs/lattice.hpp"

namespace nongibbs {

// Assignment of values to a finite set of sites. Values are +-1 for spins
// and 0/1 for occupation variables; which alphabet applies is the owning
// model's business. Sites are kept sorted (lexicographic), lookups are
// binary search.
class Configuration {
public:
    Configuration() = default;

    static Configuration constant(const std::vector<Site>& sites, int value);

    void set(const Site& s, int value);
    bool has(const Site& s) const;
    int at(const Site& s) const;            // throws if unset
    int value_or(const Site& s, int fallback) const;

    const std::vector<Site>& domain() const { return sites_; }
    const std::vector<std::int8_t>& values() const { return values_; }
    std::size_t size() const { return sites_.size(); }

    bool covers(const std::vector<Site>& sites) const;
    Configuration restricted_to(const std::vector<Site>& sites) const;

    // global spin flip (+-1 alphabet)
    Configuration flipped() const;

    std::uint64_t content_hash() const;

    bool operator==(const Configuration& other) const = default;

private:
    std::vector<Site> sites_;          // sorted
    std::vector<std::int8_t> values_;  // parallel to sites_
    std::size_t index_of(const Site& s) const; // npos if absent
};

// Boundary condition for a finite-volume Hamiltonian. `fixed` carries an
// explicit configuration on an annulus outside the volume and must resolve
// every exterior site within interaction range.
struct BoundaryCondition {
    enum class Kind { free, all_plus, all_minus, fixed, periodic };

    Kind kind = Kind::free;
    Configuration values; // fixed only

    static BoundaryCondition free_bc() { return {Kind::free, {}}; }
    static BoundaryCondition all_plus() { return {Kind::all_plus, {}}; }
    static BoundaryCondition all_minus() { return {Kind::all_minus, {}}; }
    static BoundaryCondition fixed(Configuration values) {
        return {Kind::fixed, std::move(values)};
    }
    static BoundaryCondition periodic() { return {Kind::periodic, {}}; }

    std::string describe() const;
};

} // namespace nongibbs

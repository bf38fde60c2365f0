#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nongibbs {

// A lattice site in Z^d, d <= 4. Unused coordinates stay zero so that
// comparisons and hashing are uniform across dimensions. Ordering is
// lexicographic, which fixes the site enumeration order everywhere.
using Site = std::array<int, 4>;

inline Site site(int x) { return {x, 0, 0, 0}; }
inline Site site(int x, int y) { return {x, y, 0, 0}; }
inline Site site(int x, int y, int z) { return {x, y, z, 0}; }

inline Site add(const Site& a, const Site& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Site sub(const Site& a, const Site& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Site negate(const Site& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

// max-norm; interaction ranges are measured in this norm
int chebyshev_norm(const Site& a);

std::string site_to_string(const Site& s, int dim);

// floor division, exact for negative coordinates
inline int floordiv(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Axis-aligned box of sites, inclusive bounds.
struct Box {
    int dim = 1;
    Site lo{};
    Site hi{};

    static Box interval(int lo, int hi);                  // 1D
    static Box rectangle(int x0, int x1, int y0, int y1); // 2D
    static Box centered(int dim, int radius);             // [-r, r]^dim

    bool contains(const Site& s) const;
    std::int64_t volume() const;
    std::vector<Site> sites() const; // lexicographic
    // wrap a site into the box, coordinate-wise (periodic images)
    Site wrap(const Site& s) const;
};

// Marks a sublattice S of Z^d: either the "even" sublattice (p Z)^d for a
// pitch p, or an explicit site list.
struct SublatticeMask {
    enum class Kind { even, explicit_list };
    Kind kind = Kind::even;
    int pitch = 2;
    std::vector<Site> sites; // explicit_list only, kept sorted

    static SublatticeMask even_sites(int pitch = 2);
    static SublatticeMask from_sites(std::vector<Site> sites);

    bool contains(const Site& s, int dim) const;
};

// Finite window of Z^d on which models live. `excluded` lists sites inside
// the window that carry no spin at all (holes); bonds touching them are
// dropped. The optional sublattice mask records a distinguished subset S
// (decimation target); it does not by itself affect energies.
class Lattice {
public:
    Lattice() = default;
    Lattice(int dim, Box window);

    int dim() const { return dim_; }
    const Box& window() const { return window_; }

    const std::optional<SublatticeMask>& sublattice() const { return sublattice_; }
    void set_sublattice(SublatticeMask mask);

    const std::vector<Site>& excluded() const { return excluded_; }
    void exclude(const std::vector<Site>& holes); // adds holes, keeps sorted order
    bool is_excluded(const Site& s) const;

    bool in_window(const Site& s) const { return window_.contains(s); }
    // live sites = window minus holes, in lexicographic order
    std::vector<Site> sites() const;
    std::int64_t num_sites() const;

private:
    int dim_ = 1;
    Box window_{};
    std::optional<SublatticeMask> sublattice_;
    std::vector<Site> excluded_;
};

} // namespace nongibbs

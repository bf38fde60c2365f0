#include "nongibbs/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nongibbs {

namespace {
// canonical form: lexicographically positive offset
Site canonical(const Site& offset) {
    Site zero{};
    if (offset < zero) return negate(offset);
    return offset;
}
} // namespace

void Interaction::add_pair(Site offset, double coupling) {
    Site zero{};
    if (offset == zero) throw std::invalid_argument("pair offset must be nonzero");
    offset = canonical(offset);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), offset,
                               [](const PairTerm& t, const Site& o) { return t.offset < o; });
    if (it != pairs_.end() && it->offset == offset) {
        it->coupling += coupling;
        return;
    }
    pairs_.insert(it, PairTerm{offset, coupling});
}

void Interaction::add_site_field(const Site& s, double h) { site_fields_[s] += h; }

double Interaction::field_at(const Site& s) const {
    auto it = site_fields_.find(s);
    return uniform_field_ + (it == site_fields_.end() ? 0.0 : it->second);
}

double Interaction::coupling_at(const Site& offset) const {
    Site o = canonical(offset);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), o,
                               [](const PairTerm& t, const Site& x) { return t.offset < x; });
    if (it == pairs_.end() || it->offset != o) return 0.0;
    return it->coupling;
}

int Interaction::range() const {
    int r = 0;
    for (const PairTerm& t : pairs_) r = std::max(r, chebyshev_norm(t.offset));
    return r;
}

Interaction Interaction::nearest_neighbor(int dim, double j, double h) {
    Interaction phi;
    for (int k = 0; k < dim; ++k) {
        Site o{};
        o[k] = 1;
        phi.add_pair(o, j);
    }
    phi.set_uniform_field(h);
    return phi;
}

} // namespace nongibbs

#include "nongibbs/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace nongibbs {

int chebyshev_norm(const Site& a) {
    int m = 0;
    for (int c : a) m = std::max(m, std::abs(c));
    return m;
}

std::string site_to_string(const Site& s, int dim) {
    std::ostringstream os;
    os << "(";
    for (int k = 0; k < dim; ++k) {
        if (k) os << ",";
        os << s[k];
    }
    os << ")";
    return os.str();
}

Box Box::interval(int lo, int hi) {
    Box b;
    b.dim = 1;
    b.lo = site(lo);
    b.hi = site(hi);
    return b;
}

Box Box::rectangle(int x0, int x1, int y0, int y1) {
    Box b;
    b.dim = 2;
    b.lo = site(x0, y0);
    b.hi = site(x1, y1);
    return b;
}

Box Box::centered(int dim, int radius) {
    Box b;
    b.dim = dim;
    for (int k = 0; k < dim; ++k) {
        b.lo[k] = -radius;
        b.hi[k] = radius;
    }
    return b;
}

bool Box::contains(const Site& s) const {
    for (int k = 0; k < dim; ++k)
        if (s[k] < lo[k] || s[k] > hi[k]) return false;
    return true;
}

std::int64_t Box::volume() const {
    std::int64_t v = 1;
    for (int k = 0; k < dim; ++k) v *= static_cast<std::int64_t>(hi[k] - lo[k] + 1);
    return v;
}

std::vector<Site> Box::sites() const {
    std::vector<Site> out;
    out.reserve(static_cast<std::size_t>(volume()));
    Site s = lo;
    while (true) {
        out.push_back(s);
        int k = dim - 1;
        while (k >= 0) {
            if (s[k] < hi[k]) {
                ++s[k];
                break;
            }
            s[k] = lo[k];
            --k;
        }
        if (k < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Site Box::wrap(const Site& s) const {
    Site w = s;
    for (int k = 0; k < dim; ++k) {
        int len = hi[k] - lo[k] + 1;
        int r = (s[k] - lo[k]) % len;
        if (r < 0) r += len;
        w[k] = lo[k] + r;
    }
    return w;
}

SublatticeMask SublatticeMask::even_sites(int pitch) {
    SublatticeMask m;
    m.kind = Kind::even;
    m.pitch = pitch;
    return m;
}

SublatticeMask SublatticeMask::from_sites(std::vector<Site> sites) {
    SublatticeMask m;
    m.kind = Kind::explicit_list;
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    m.sites = std::move(sites);
    return m;
}

bool SublatticeMask::contains(const Site& s, int dim) const {
    if (kind == Kind::even) {
        for (int k = 0; k < dim; ++k) {
            int r = s[k] % pitch;
            if (r < 0) r += pitch;
            if (r != 0) return false;
        }
        return true;
    }
    return std::binary_search(sites.begin(), sites.end(), s);
}

Lattice::Lattice(int dim, Box window) : dim_(dim), window_(window) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("lattice dimension must be in 1..4");
    window_.dim = dim;
    for (int k = 0; k < dim; ++k)
        if (window_.lo[k] > window_.hi[k]) throw std::invalid_argument("empty lattice window");
}

void Lattice::set_sublattice(SublatticeMask mask) { sublattice_ = std::move(mask); }

void Lattice::exclude(const std::vector<Site>& holes) {
    for (const Site& h : holes) {
        if (!window_.contains(h))
            throw std::invalid_argument("excluded site " + site_to_string(h, dim_) +
                                        " lies outside the window");
        excluded_.push_back(h);
    }
    std::sort(excluded_.begin(), excluded_.end());
    excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
}

bool Lattice::is_excluded(const Site& s) const {
    return std::binary_search(excluded_.begin(), excluded_.end(), s);
}

std::vector<Site> Lattice::sites() const {
    std::vector<Site> all = window_.sites();
    if (excluded_.empty()) return all;
    std::vector<Site> out;
    out.reserve(all.size());
    for (const Site& s : all)
        if (!is_excluded(s)) out.push_back(s);
    return out;
}

std::int64_t Lattice::num_sites() const {
    return window_.volume() - static_cast<std::int64_t>(excluded_.size());
}

} // namespace nongibbs

#include "nongibbs/configuration.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nongibbs {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

Configuration Configuration::constant(const std::vector<Site>& sites, int value) {
    Configuration c;
    c.sites_ = sites;
    std::sort(c.sites_.begin(), c.sites_.end());
    c.sites_.erase(std::unique(c.sites_.begin(), c.sites_.end()), c.sites_.end());
    c.values_.assign(c.sites_.size(), static_cast<std::int8_t>(value));
    return c;
}

std::size_t Configuration::index_of(const Site& s) const {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
    if (it == sites_.end() || *it != s) return npos;
    return static_cast<std::size_t>(it - sites_.begin());
}

void Configuration::set(const Site& s, int value) {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
    std::size_t pos = static_cast<std::size_t>(it - sites_.begin());
    if (it != sites_.end() && *it == s) {
        values_[pos] = static_cast<std::int8_t>(value);
        return;
    }
    sites_.insert(it, s);
    values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(pos),
                   static_cast<std::int8_t>(value));
}

bool Configuration::has(const Site& s) const { return index_of(s) != npos; }

int Configuration::at(const Site& s) const {
    std::size_t pos = index_of(s);
    if (pos == npos)
        throw std::out_of_range("configuration has no value at site " + site_to_string(s, 4));
    return values_[pos];
}

int Configuration::value_or(const Site& s, int fallback) const {
    std::size_t pos = index_of(s);
    return pos == npos ? fallback : values_[pos];
}

bool Configuration::covers(const std::vector<Site>& sites) const {
    for (const Site& s : sites)
        if (!has(s)) return false;
    return true;
}

Configuration Configuration::restricted_to(const std::vector<Site>& sites) const {
    Configuration out;
    for (const Site& s : sites) {
        std::size_t pos = index_of(s);
        if (pos != npos) out.set(s, values_[pos]);
    }
    return out;
}

Configuration Configuration::flipped() const {
    Configuration out = *this;
    for (auto& v : out.values_) v = static_cast<std::int8_t>(-v);
    return out;
}

std::uint64_t Configuration::content_hash() const {
    std::uint64_t h = 1469598103934665603ull; // FNV offset basis
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        for (int c : sites_[i]) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
        mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(values_[i])));
    }
    return h;
}

std::string BoundaryCondition::describe() const {
    switch (kind) {
        case Kind::free: return "free";
        case Kind::all_plus: return "all-plus";
        case Kind::all_minus: return "all-minus";
        case Kind::fixed: return "fixed";
        case Kind::periodic: return "periodic";
    }
    return "?";
}

} // namespace nongibbs

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nongibbs {

// FNV-1a, used for provenance hashes in metadata and manifests. Stable
// across platforms; not cryptographic.
struct Fnv1a {
    std::uint64_t state = 1469598103934665603ull;

    void mix_bytes(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state ^= p[i];
            state *= 1099511628211ull;
        }
    }
    void mix_u64(std::uint64_t x) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((x >> (8 * i)) & 0xff);
        mix_bytes(b, 8);
    }
    void mix_i64(std::int64_t x) { mix_u64(static_cast<std::uint64_t>(x)); }
    void mix_double(double x) {
        std::uint64_t u;
        static_assert(sizeof(u) == sizeof(x));
        __builtin_memcpy(&u, &x, 8);
        mix_u64(u);
    }
    void mix_string(std::string_view s) { mix_bytes(s.data(), s.size()); }
};

std::string hex_u64(std::uint64_t x);

} // namespace nongibbs

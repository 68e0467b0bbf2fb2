#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace locaos {

// Shortest-safe decimal form: 17 significant digits round-trip any double.
std::string format_double(double value);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

// Fixed-width lowercase hex.
std::string hex64(std::uint64_t value);

}  // namespace locaos

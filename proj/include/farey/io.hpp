#pragma once
// ============================================================================
// Text helpers shared by the CLI and the tests: fixed-precision number
// rendering and the two spellings of a configuration index.
// ============================================================================

#include "farey/exact.hpp"
#include "farey/transfer.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace farey::io {

inline std::string fmt_g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// sigma_1 .. sigma_k left to right, so bit 0 prints first: idx 1 at k = 3 is
// "100".
inline std::string bits_string(chain::Index idx, int k) {
    std::string s(static_cast<std::size_t>(k), '0');
    for (int i = 0; i < k; ++i)
        if ((idx >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

// Accepts either spelling: a 0/1 string of length exactly k is read as a
// configuration (sigma_1 first), anything else must be a decimal index.
inline chain::Index parse_configuration(const std::string& s, int k) {
    if (s.empty()) throw std::invalid_argument("empty configuration");
    bool binary = static_cast<int>(s.size()) == k;
    for (char c : s)
        if (c != '0' && c != '1') binary = false;
    if (binary) {
        chain::Index idx = 0;
        for (int i = 0; i < k; ++i)
            if (s[static_cast<std::size_t>(i)] == '1') idx |= chain::Index{1} << i;
        return idx;
    }
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("configuration must be a 0/1 string or an index");
    }
    if (pos != s.size())
        throw std::invalid_argument("configuration must be a 0/1 string or an index");
    if (v > chain::config_mask(k))
        throw std::invalid_argument("configuration index exceeds 2^k - 1");
    return static_cast<chain::Index>(v);
}

inline std::string to_string(const Rational& x) { return x.str(); }

} // namespace farey::io

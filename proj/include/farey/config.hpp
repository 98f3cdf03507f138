#pragma once
// ============================================================================
// Global size caps shared by every module.
//
// All dense tables hold 2^k entries, so the chain-length cap doubles as a
// memory guard: k = 26 means 0.5 GiB for one table of doubles.  The cap can
// be overridden through the FAREY_KMAX environment variable (clamped to a
// range that still fits in 32-bit indices).
// ============================================================================

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace farey {

inline constexpr int default_k_max = 26;

// Thrown when a requested chain length exceeds the configured cap (or is
// otherwise outside the valid range).  The CLI maps this to a usage error.
class SizeCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int k_max() {
    static const int cap = [] {
        if (const char* env = std::getenv("FAREY_KMAX")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1 && v <= 30)
                return static_cast<int>(v);
        }
        return default_k_max;
    }();
    return cap;
}

// Checks 1 <= k <= k_max().  Operations defined for the empty chain pass
// min_k = 0 (identity matrix, height 1).
inline void require_k(int k, int min_k = 1) {
    if (k < min_k || k > k_max())
        throw SizeCapError("chain length k=" + std::to_string(k) +
                           " outside [" + std::to_string(min_k) + "," +
                           std::to_string(k_max()) + "]");
}

} // namespace farey

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace radial {

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = lo + (hi - lo) * double(i) / double(n - 1);
    x.back() = hi;
    return x;
}

// Logarithmically spaced grid on [lo, hi], lo > 0.
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("logspace: need 0 < lo < hi");
    if (n < 2) throw std::invalid_argument("logspace: need at least 2 points");
    std::vector<double> x(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
    x.front() = lo;
    x.back() = hi;
    return x;
}

// FNV-1a, used to fingerprint problem specs in run manifests.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace radial

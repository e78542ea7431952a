#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace hallmild {

// Pairwise (cascade) summation. All norm and quadrature reductions go through
// this so results do not depend on accumulation chunking.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_sum(std::span<const std::complex<double>>(v));
}

}  // namespace hallmild

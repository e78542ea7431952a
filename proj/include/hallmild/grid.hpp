#pragma once

#include <cmath>
#include <cstddef>
#include <cstdlib>

#include "hallmild/errors.hpp"

namespace hallmild {

// Periodic box [0,L)^3 sampled at n points per axis, n a power of two.
// Mode index i along an axis maps to the signed integer wavenumber
// k = i for i <= n/2, k = i - n otherwise; the physical frequency of a mode
// is 2*pi*k/L. The top third of modes (|k| > n/3) is reserved for the
// dealiasing rule and the Nyquist plane |k| = n/2 is always kept at zero.
class Grid {
public:
    Grid(int n, double box_length) : n_(n), box_length_(box_length) {
        if (n < 4 || (n & (n - 1)) != 0) throw Error("Grid: n must be a power of two >= 4");
        if (!(box_length > 0.0)) throw Error("Grid: box_length must be positive");
    }

    int n() const { return n_; }
    double box_length() const { return box_length_; }
    std::size_t n3() const { return static_cast<std::size_t>(n_) * n_ * n_; }
    double cell_volume() const {
        const double h = box_length_ / n_;
        return h * h * h;
    }
    double volume() const { return box_length_ * box_length_ * box_length_; }

    // Signed integer wavenumber of axis index i.
    int k_of(int i) const { return i <= n_ / 2 ? i : i - n_; }
    // Axis index of signed wavenumber k (k in (-n/2, n/2]).
    int index_of(int k) const { return k >= 0 ? k : k + n_; }

    double frequency(int k) const { return 2.0 * M_PI * k / box_length_; }

    int dealias_limit() const { return n_ / 3; }
    bool keeps_mode(int kx, int ky, int kz) const {
        const int lim = dealias_limit();
        return std::abs(kx) <= lim && std::abs(ky) <= lim && std::abs(kz) <= lim;
    }

    std::size_t flat(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }

    bool operator==(const Grid& o) const { return n_ == o.n_ && box_length_ == o.box_length_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    int n_;
    double box_length_;
};

}  // namespace hallmild

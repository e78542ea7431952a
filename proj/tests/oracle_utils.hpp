#pragma once

// Brute-force reference implementations for the unit suites. Deliberately
// naive (direct sums) and independent of the library's transform paths.

#include <complex>
#include <vector>

#include "hallmild/field.hpp"
#include "hallmild/rng.hpp"
#include "hallmild/spectral_ops.hpp"

namespace oracle {

using hallmild::Complex;
using hallmild::Grid;
using hallmild::PhysicalField;
using hallmild::SpectralField;

// O(n^6) discrete Fourier sum: coef(k) = (1/N) sum_x f(x) exp(-i k.x).
inline SpectralField naive_dft(const PhysicalField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralField out(g, f.ncomp());
    const double norm = 1.0 / static_cast<double>(g.n3());
    for (int c = 0; c < f.ncomp(); ++c)
        for (int kx = 0; kx < n; ++kx)
            for (int ky = 0; ky < n; ++ky)
                for (int kz = 0; kz < n; ++kz) {
                    Complex acc = 0.0;
                    for (int x = 0; x < n; ++x)
                        for (int y = 0; y < n; ++y)
                            for (int z = 0; z < n; ++z) {
                                const double phase =
                                    -2.0 * M_PI * (double(kx) * x + double(ky) * y + double(kz) * z) / n;
                                acc += f.at(c, g.flat(x, y, z)) *
                                       Complex(std::cos(phase), std::sin(phase));
                            }
                    out.at(c, kx, ky, kz) = acc * norm;
                }
    return out;
}

// Direct spectral convolution of two scalar coefficient arrays:
// (f*g)(k) = sum_{k1+k2=k mod n} f(k1) g(k2), then the 2/3-rule mask.
inline std::vector<Complex> naive_convolution(const Grid& g, const std::vector<Complex>& a,
                                              const std::vector<Complex>& b) {
    const int n = g.n();
    std::vector<Complex> out(g.n3(), Complex(0.0));
    for (int ax = 0; ax < n; ++ax)
        for (int ay = 0; ay < n; ++ay)
            for (int az = 0; az < n; ++az) {
                const Complex va = a[g.flat(ax, ay, az)];
                if (std::abs(va) == 0.0) continue;
                for (int bx = 0; bx < n; ++bx)
                    for (int by = 0; by < n; ++by)
                        for (int bz = 0; bz < n; ++bz) {
                            const Complex vb = b[g.flat(bx, by, bz)];
                            if (std::abs(vb) == 0.0) continue;
                            const int cx = (ax + bx) % n, cy = (ay + by) % n, cz = (az + bz) % n;
                            out[g.flat(cx, cy, cz)] += va * vb;
                        }
            }
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz)
                if (!g.keeps_mode(g.k_of(ix), g.k_of(iy), g.k_of(iz)))
                    out[g.flat(ix, iy, iz)] = 0.0;
    return out;
}

// Random real Hermitian-symmetric spectral field (solenoidal optional).
inline SpectralField random_spectral(const Grid& g, int ncomp, hallmild::Rng& rng,
                                     bool solenoidal = false, int max_mode = 0) {
    SpectralField f(g, ncomp);
    const int n = g.n();
    const int lim = max_mode > 0 ? max_mode : g.dealias_limit();
    for (int c = 0; c < ncomp; ++c)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const int kx = g.k_of(ix), ky = g.k_of(iy), kz = g.k_of(iz);
                    if (std::abs(kx) > lim || std::abs(ky) > lim || std::abs(kz) > lim) continue;
                    if (kx == 0 && ky == 0 && kz == 0) continue;
                    f.at(c, ix, iy, iz) = rng.complex_normal();
                }
    hallmild::enforce_hermitian(f);
    hallmild::dealias(f);
    if (solenoidal && ncomp == 3) f = hallmild::helmholtz_project(f);
    return f;
}

inline double rel_err(const SpectralField& a, const SpectralField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) {
        num = std::max(num, std::abs(a.raw()[i] - b.raw()[i]));
        den = std::max(den, std::abs(b.raw()[i]));
    }
    return den > 0.0 ? num / den : num;
}

}  // namespace oracle

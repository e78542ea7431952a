#include "hallmild/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "hallmild/fft.hpp"
#include "hallmild/reduce.hpp"

namespace hallmild {

namespace {

// Per-axis physical frequencies with the Nyquist slot zeroed; differentiation
// through these tables realizes the Nyquist policy automatically.
std::vector<double> freq_table(const Grid& g) {
    std::vector<double> f(g.n());
    for (int i = 0; i < g.n(); ++i) {
        const int k = g.k_of(i);
        f[i] = (i == g.n() / 2) ? 0.0 : g.frequency(k);
    }
    return f;
}

void zero_nyquist(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const int ny = n / 2;
    for (int c = 0; c < f.ncomp(); ++c)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz)
                    if (ix == ny || iy == ny || iz == ny) f.at(c, ix, iy, iz) = 0.0;
}

template <typename Fn>
void for_modes(const Grid& g, Fn&& fn) {
    const int n = g.n();
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) fn(ix, iy, iz, idx++);
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
    if (!f.all_finite()) throw Error("forward_transform: non-finite input values");
    const Grid& g = f.grid();
    SpectralField out(g, f.ncomp());
    const double scale = 1.0 / static_cast<double>(g.n3());
    std::vector<Complex> buf(g.n3());
    for (int c = 0; c < f.ncomp(); ++c) {
        const double* src = f.data(c);
        for (std::size_t i = 0; i < g.n3(); ++i) buf[i] = src[i];
        fft3_forward(g.n(), buf.data());
        Complex* dst = out.data(c);
        for (std::size_t i = 0; i < g.n3(); ++i) dst[i] = buf[i] * scale;
    }
    return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
    const double herm = hermitian_residual(f);
    if (herm > 1e-8)
        throw Error("inverse_transform: broken Hermitian symmetry (residual " + std::to_string(herm) + ")");
    const Grid& g = f.grid();
    PhysicalField out(g, f.ncomp());
    std::vector<Complex> buf(g.n3());
    for (int c = 0; c < f.ncomp(); ++c) {
        const Complex* src = f.data(c);
        std::copy(src, src + g.n3(), buf.begin());
        fft3_backward(g.n(), buf.data());
        double* dst = out.data(c);
        for (std::size_t i = 0; i < g.n3(); ++i) dst[i] = buf[i].real();
    }
    return out;
}

double hermitian_residual(const SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    double worst = 0.0;
    for (int c = 0; c < f.ncomp(); ++c)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const int jx = (n - ix) % n, jy = (n - iy) % n, jz = (n - iz) % n;
                    const Complex a = f.at(c, ix, iy, iz);
                    const Complex b = f.at(c, jx, jy, jz);
                    worst = std::max(worst, std::abs(a - std::conj(b)));
                }
    const double scale = f.max_abs();
    return scale > 0.0 ? worst / scale : 0.0;
}

void enforce_hermitian(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    for (int c = 0; c < f.ncomp(); ++c)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const int jx = (n - ix) % n, jy = (n - iy) % n, jz = (n - iz) % n;
                    const std::size_t a = g.flat(ix, iy, iz), b = g.flat(jx, jy, jz);
                    if (a > b) continue;
                    if (a == b) {
                        f.at(c, a) = Complex(f.at(c, a).real(), 0.0);
                    } else {
                        const Complex avg = 0.5 * (f.at(c, a) + std::conj(f.at(c, b)));
                        f.at(c, a) = avg;
                        f.at(c, b) = std::conj(avg);
                    }
                }
}

void dealias(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    for (int c = 0; c < f.ncomp(); ++c)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz)
                    if (!g.keeps_mode(g.k_of(ix), g.k_of(iy), g.k_of(iz))) f.at(c, ix, iy, iz) = 0.0;
}

SpectralField gradient(const SpectralField& s) {
    if (s.ncomp() != 1) throw Error("gradient: expects scalar field");
    const Grid& g = s.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, 3);
    for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
        const Complex v = s.at(0, m);
        out.at(0, m) = Complex(0, fr[ix]) * v;
        out.at(1, m) = Complex(0, fr[iy]) * v;
        out.at(2, m) = Complex(0, fr[iz]) * v;
    });
    zero_nyquist(out);
    return out;
}

SpectralField divergence(const SpectralField& v) {
    if (v.ncomp() != 3) throw Error("divergence: expects vector field");
    const Grid& g = v.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, 1);
    for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
        out.at(0, m) = Complex(0, fr[ix]) * v.at(0, m) + Complex(0, fr[iy]) * v.at(1, m) +
                       Complex(0, fr[iz]) * v.at(2, m);
    });
    zero_nyquist(out);
    return out;
}

SpectralField curl(const SpectralField& v) {
    if (v.ncomp() != 3) throw Error("curl: expects vector field");
    const Grid& g = v.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, 3);
    for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
        const Complex ikx(0, fr[ix]), iky(0, fr[iy]), ikz(0, fr[iz]);
        out.at(0, m) = iky * v.at(2, m) - ikz * v.at(1, m);
        out.at(1, m) = ikz * v.at(0, m) - ikx * v.at(2, m);
        out.at(2, m) = ikx * v.at(1, m) - iky * v.at(0, m);
    });
    zero_nyquist(out);
    out.is_solenoidal = true;
    return out;
}

SpectralField laplacian(const SpectralField& f) {
    const Grid& g = f.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c)
        for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
            const double k2 = fr[ix] * fr[ix] + fr[iy] * fr[iy] + fr[iz] * fr[iz];
            out.at(c, m) = -k2 * f.at(c, m);
        });
    zero_nyquist(out);
    out.is_solenoidal = f.is_solenoidal;
    return out;
}

SpectralField partial(const SpectralField& f, int axis) {
    if (axis < 0 || axis > 2) throw Error("partial: axis out of range");
    const Grid& g = f.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c)
        for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
            const double k = axis == 0 ? fr[ix] : axis == 1 ? fr[iy] : fr[iz];
            out.at(c, m) = Complex(0, k) * f.at(c, m);
        });
    zero_nyquist(out);
    return out;
}

SpectralField divergence_tensor(const SpectralField& t) {
    if (t.ncomp() != 9) throw Error("divergence_tensor: expects 9-component tensor field");
    const Grid& g = t.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, 3);
    for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
        const Complex ik[3] = {Complex(0, fr[ix]), Complex(0, fr[iy]), Complex(0, fr[iz])};
        for (int i = 0; i < 3; ++i) {
            Complex acc = 0.0;
            for (int j = 0; j < 3; ++j) acc += ik[j] * t.at(3 * i + j, m);
            out.at(i, m) = acc;
        }
    });
    zero_nyquist(out);
    return out;
}

SpectralField helmholtz_project(const SpectralField& v) {
    if (v.ncomp() != 3) throw Error("helmholtz_project: expects vector field");
    const Grid& g = v.grid();
    const auto fr = freq_table(g);
    SpectralField out(g, 3);
    for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
        const double kx = fr[ix], ky = fr[iy], kz = fr[iz];
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) {
            out.at(0, m) = out.at(1, m) = out.at(2, m) = 0.0;
            return;
        }
        const Complex kd = (kx * v.at(0, m) + ky * v.at(1, m) + kz * v.at(2, m)) / k2;
        out.at(0, m) = v.at(0, m) - kx * kd;
        out.at(1, m) = v.at(1, m) - ky * kd;
        out.at(2, m) = v.at(2, m) - kz * kd;
    });
    out.is_solenoidal = true;
    return out;
}

double divergence_residual(const SpectralField& v) {
    if (v.ncomp() != 3) throw Error("divergence_residual: expects vector field");
    const Grid& g = v.grid();
    const auto fr = freq_table(g);
    double num = 0.0, den = 0.0;
    for_modes(g, [&](int ix, int iy, int iz, std::size_t m) {
        const double kx = fr[ix], ky = fr[iy], kz = fr[iz];
        const double kmag = std::sqrt(kx * kx + ky * ky + kz * kz);
        const Complex dot = kx * v.at(0, m) + ky * v.at(1, m) + kz * v.at(2, m);
        const double vmag =
            std::sqrt(std::norm(v.at(0, m)) + std::norm(v.at(1, m)) + std::norm(v.at(2, m)));
        num = std::max(num, std::abs(dot));
        den = std::max(den, kmag * vmag);
    });
    return den > 0.0 ? num / den : 0.0;
}

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g, ProductKind kind) {
    if (f.grid() != g.grid()) throw Error("pointwise_product: grid mismatch");
    const PhysicalField a = inverse_transform(f);
    const PhysicalField b = inverse_transform(g);
    const Grid& gr = f.grid();
    int ncomp_out = 0;
    switch (kind) {
        case ProductKind::Tensor: ncomp_out = 9; break;
        case ProductKind::Cross: ncomp_out = 3; break;
        case ProductKind::Dot: ncomp_out = 1; break;
    }
    if (kind != ProductKind::Dot && (f.ncomp() != 3 || g.ncomp() != 3))
        throw Error("pointwise_product: tensor/cross need vector inputs");
    if (kind == ProductKind::Dot && f.ncomp() != g.ncomp())
        throw Error("pointwise_product: dot needs matching components");
    PhysicalField prod(gr, ncomp_out);
    const std::size_t n3 = gr.n3();
    switch (kind) {
        case ProductKind::Tensor:
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double* ai = a.data(i);
                    const double* bj = b.data(j);
                    double* p = prod.data(3 * i + j);
                    for (std::size_t m = 0; m < n3; ++m) p[m] = ai[m] * bj[m];
                }
            break;
        case ProductKind::Cross:
            for (std::size_t m = 0; m < n3; ++m) {
                const double ax = a.data(0)[m], ay = a.data(1)[m], az = a.data(2)[m];
                const double bx = b.data(0)[m], by = b.data(1)[m], bz = b.data(2)[m];
                prod.data(0)[m] = ay * bz - az * by;
                prod.data(1)[m] = az * bx - ax * bz;
                prod.data(2)[m] = ax * by - ay * bx;
            }
            break;
        case ProductKind::Dot:
            for (int c = 0; c < f.ncomp(); ++c) {
                const double* ac = a.data(c);
                const double* bc = b.data(c);
                double* p = prod.data(0);
                for (std::size_t m = 0; m < n3; ++m) p[m] += ac[m] * bc[m];
            }
            break;
    }
    SpectralField out = forward_transform(prod);
    dealias(out);
    return out;
}

double l2_norm(const SpectralField& f) {
    std::vector<double> terms(f.raw().size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::norm(f.raw()[i]);
    return std::sqrt(f.grid().volume() * pairwise_sum(terms));
}

double l2_norm_phys(const PhysicalField& f) {
    std::vector<double> terms(f.raw().size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = f.raw()[i] * f.raw()[i];
    return std::sqrt(f.grid().cell_volume() * pairwise_sum(terms));
}

double lp_norm_phys(const PhysicalField& f, double p) {
    const std::size_t n3 = f.grid().n3();
    std::vector<double> mag(n3, 0.0);
    for (int c = 0; c < f.ncomp(); ++c) {
        const double* d = f.data(c);
        for (std::size_t i = 0; i < n3; ++i) mag[i] += d[i] * d[i];
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return std::sqrt(m);
    }
    if (!(p >= 1.0)) throw Error("lp_norm_phys: p must be >= 1");
    std::vector<double> terms(n3);
    for (std::size_t i = 0; i < n3; ++i) terms[i] = std::pow(mag[i], 0.5 * p);
    return std::pow(f.grid().cell_volume() * pairwise_sum(terms), 1.0 / p);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    if (f.grid() != g.grid() || f.ncomp() != g.ncomp()) throw Error("inner_product: shape mismatch");
    std::vector<double> terms(f.raw().size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = (std::conj(f.raw()[i]) * g.raw()[i]).real();
    return f.grid().volume() * pairwise_sum(terms);
}

}  // namespace hallmild

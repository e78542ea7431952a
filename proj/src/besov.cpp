#include "hallmild/besov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "hallmild/fft.hpp"
#include "hallmild/parallel.hpp"
#include "hallmild/reduce.hpp"
#include "hallmild/spectral_ops.hpp"

namespace hallmild {

namespace {

constexpr int kProfileSamples = 4096;
constexpr double kTaperFraction = 0.15;

double smooth_step(double s) {
    // exp-based C-infinity step: 0 for s<=0, 1 for s>=1.
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

// Quintic step used for the time taper.
double taper_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

std::vector<double> spatial_freq_magnitudes(const Grid& g) {
    const int n = g.n();
    std::vector<double> fr(n);
    for (int i = 0; i < n; ++i) fr[i] = g.frequency(g.k_of(i));
    std::vector<double> mags(g.n3());
    std::size_t m = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz)
                mags[m++] = std::sqrt(fr[ix] * fr[ix] + fr[iy] * fr[iy] + fr[iz] * fr[iz]);
    return mags;
}

double aggregate_lq(const std::vector<BlockEntry>& blocks, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (const auto& b : blocks) m = std::max(m, b.weighted);
        return m;
    }
    std::vector<double> terms(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) terms[i] = std::pow(blocks[i].weighted, q);
    return std::pow(pairwise_sum(terms), 1.0 / q);
}

}  // namespace

DyadicProfile::DyadicProfile(BesovFlavor flavor) : flavor_(flavor), table_(kProfileSamples) {
    // chi on [1,2]; exact plateau values outside.
    for (int i = 0; i < kProfileSamples; ++i) {
        const double r = 1.0 + static_cast<double>(i) / (kProfileSamples - 1);
        table_[i] = smooth_step(2.0 - r);
    }
}

double DyadicProfile::chi(double r) const {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double x = (r - 1.0) * (kProfileSamples - 1);
    const int i = std::min(static_cast<int>(x), kProfileSamples - 2);
    const double w = x - i;
    return (1.0 - w) * table_[i] + w * table_[i + 1];
}

double DyadicProfile::radius(double k_mag, double tau) const {
    return flavor_ == BesovFlavor::AnisotropicSpaceTime ? k_mag + std::sqrt(std::abs(tau)) : k_mag;
}

double DyadicProfile::phi_hat(int j, double k_mag, double tau) const {
    return rho(std::ldexp(radius(k_mag, tau), -j));
}

double DyadicProfile::partition_sum(double k_mag, double tau, int j_lo, int j_hi) const {
    std::vector<double> terms;
    terms.reserve(j_hi - j_lo + 1);
    for (int j = j_lo; j <= j_hi; ++j) terms.push_back(phi_hat(j, k_mag, tau));
    return pairwise_sum(std::span<const double>(terms));
}

const DyadicProfile& DyadicProfile::shared(BesovFlavor flavor) {
    static const DyadicProfile iso(BesovFlavor::IsotropicSpatial);
    static const DyadicProfile aniso(BesovFlavor::AnisotropicSpaceTime);
    return flavor == BesovFlavor::IsotropicSpatial ? iso : aniso;
}

DyadicProfile build_dyadic_profile(BesovFlavor flavor) { return DyadicProfile(flavor); }

void BesovSpec::validate() const {
    if (!(p > 1.0)) throw Error("BesovSpec: p must be > 1");
    if (!(q >= 1.0)) throw Error("BesovSpec: q must be >= 1");
}

JBand spatial_band(const Grid& g) {
    const double k_min = g.frequency(1);
    const double k_max = g.frequency(g.dealias_limit()) * std::sqrt(3.0);
    return {static_cast<int>(std::floor(std::log2(k_min) + 1e-9)),
            static_cast<int>(std::ceil(std::log2(k_max) - 1e-9))};
}

JBand anisotropic_band(const Grid& g, double window_length, int n_window) {
    const double k_min = g.frequency(1);
    const double k_max = g.frequency(g.dealias_limit()) * std::sqrt(3.0);
    const double tau_min = 2.0 * M_PI / window_length;
    const double tau_max = tau_min * (n_window / 2);
    const double r_min = std::min(k_min, std::sqrt(tau_min));
    const double r_max = k_max + std::sqrt(tau_max);
    return {static_cast<int>(std::floor(std::log2(r_min) + 1e-9)),
            static_cast<int>(std::ceil(std::log2(r_max) - 1e-9))};
}

BesovReport besov_norm_spatial(const SpectralField& f, const BesovSpec& spec,
                               std::optional<JBand> band_opt) {
    spec.validate();
    if (spec.flavor != BesovFlavor::IsotropicSpatial)
        throw Error("besov_norm_spatial: spec flavor must be isotropic-spatial");
    const Grid& g = f.grid();
    const JBand band = band_opt.value_or(spatial_band(g));
    const DyadicProfile& prof = DyadicProfile::shared(spec.flavor);
    const auto mags = spatial_freq_magnitudes(g);

    BesovReport rep;
    rep.spec = spec;
    rep.band = band;
    rep.label = "spatial";
    rep.per_block.resize(band.j_max - band.j_min + 1);

    parallel_for(band.j_max - band.j_min + 1, [&](int idx) {
        const int j = band.j_min + idx;
        double block = 0.0;
        if (spec.p == 2.0) {
            std::vector<double> terms(f.raw().size());
            for (int c = 0; c < f.ncomp(); ++c) {
                const Complex* src = f.data(c);
                for (std::size_t m = 0; m < mags.size(); ++m) {
                    const double w = prof.phi_hat(j, mags[m]);
                    terms[c * mags.size() + m] = w * w * std::norm(src[m]);
                }
            }
            block = std::sqrt(g.volume() * pairwise_sum(terms));
        } else {
            SpectralField masked(g, f.ncomp());
            for (int c = 0; c < f.ncomp(); ++c) {
                const Complex* src = f.data(c);
                Complex* dst = masked.data(c);
                for (std::size_t m = 0; m < mags.size(); ++m)
                    dst[m] = prof.phi_hat(j, mags[m]) * src[m];
            }
            block = lp_norm_phys(inverse_transform(masked), spec.p);
        }
        rep.per_block[idx] = {j, block, block * std::pow(2.0, spec.s * j)};
    });
    rep.total = aggregate_lq(rep.per_block, spec.q);
    return rep;
}

std::vector<double> extension_coefficients(int k) {
    if (k < 0) throw Error("extension_coefficients: order must be >= 0");
    const int n = k + 1;
    // Vandermonde system sum_j (-j)^l lambda_j = 1, l = 0..k.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int l = 0; l < n; ++l) {
        for (int j = 1; j <= n; ++j) a[l][j - 1] = std::pow(-static_cast<double>(j), l);
        a[l][n] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12) throw Error("extension_coefficients: singular system");
        std::swap(a[piv], a[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> lambda(n);
    for (int j = 0; j < n; ++j) lambda[j] = a[j][n] / a[j][j];
    return lambda;
}

SpaceTimeField extension_operator(const SpaceTimeField& f, int k) {
    const auto lambda = extension_coefficients(k);
    const int nt = f.n_slices();
    const int m_ext = (nt - 1) / (k + 1);
    if (m_ext < 1) throw Error("extension_operator: too few slices for requested order");
    SpaceTimeField out(f.grid(), f.ncomp(), f.t0() - m_ext * f.dt(), f.dt(), nt + m_ext);
    for (int i = 0; i < nt; ++i) out.slice(m_ext + i) = f.slice(i);
    for (int m = 1; m <= m_ext; ++m) {
        SpectralField& dst = out.slice(m_ext - m);
        for (int j = 1; j <= k + 1; ++j) {
            const auto& src = f.slice(j * m).raw();
            auto& d = dst.raw();
            for (std::size_t i = 0; i < d.size(); ++i) d[i] += lambda[j - 1] * src[i];
        }
    }
    return out;
}

namespace {

// Windowed 4-D transform scaffold: extend to negative time, taper at the
// periodic seam, transform in time. Slices stay spectral in space.
struct WindowedTransform {
    Grid grid;
    int ncomp;
    int n_total;  // samples on the periodic window
    int m_ext;    // extension samples (t < 0)
    double dt;
    double window_len;
    std::vector<Complex> coef;   // [c*n3 + m][time], contiguous in time
    std::vector<double> k_mag;   // per spatial mode
    std::vector<double> kx, ky, kz;
    std::vector<double> tau;     // per time index, signed

    std::size_t series(int c, std::size_t m) const {
        return (static_cast<std::size_t>(c) * k_mag.size() + m) * n_total;
    }
};

WindowedTransform window_transform(const SpaceTimeField& f, int ext_order) {
    const SpaceTimeField ext = extension_operator(f, ext_order);
    const int nt = ext.n_slices();
    WindowedTransform wt{f.grid(),
                         f.ncomp(),
                         nt,
                         nt - f.n_slices(),
                         f.dt(),
                         nt * f.dt(),
                         {},
                         spatial_freq_magnitudes(f.grid()),
                         {},
                         {},
                         {},
                         {}};

    const Grid& g = f.grid();
    const int n = g.n();
    std::vector<double> fr(n);
    for (int i = 0; i < n; ++i) fr[i] = g.frequency(g.k_of(i));
    wt.kx.resize(g.n3());
    wt.ky.resize(g.n3());
    wt.kz.resize(g.n3());
    std::size_t m = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++m) {
                wt.kx[m] = fr[ix];
                wt.ky[m] = fr[iy];
                wt.kz[m] = fr[iz];
            }

    const int ramp = std::max(2, static_cast<int>(std::lround(kTaperFraction * nt)));
    std::vector<double> w(nt);
    for (int i = 0; i < nt; ++i)
        w[i] = taper_step(static_cast<double>(i) / ramp) *
               taper_step(static_cast<double>(nt - 1 - i) / ramp);

    const std::size_t n3 = wt.k_mag.size();
    wt.coef.assign(static_cast<std::size_t>(wt.ncomp) * n3 * nt, Complex(0.0));
    for (int c = 0; c < wt.ncomp; ++c)
        for (int i = 0; i < nt; ++i) {
            const Complex* src = ext.slice(i).data(c);
            for (std::size_t mm = 0; mm < n3; ++mm) wt.coef[wt.series(c, mm) + i] = src[mm] * w[i];
        }
    fft1_many(nt, wt.ncomp * static_cast<int>(n3), wt.coef.data(), -1);
    const double scale = 1.0 / nt;
    for (auto& z : wt.coef) z *= scale;

    wt.tau.resize(nt);
    for (int i = 0; i < nt; ++i) {
        const int kt = i <= nt / 2 ? i : i - nt;
        wt.tau[i] = 2.0 * M_PI * kt / wt.window_len;
    }
    return wt;
}

using ModeMultiplier = std::function<Complex(std::size_t mode, int tindex)>;

// Lp over the original (0,T] region of the multiplier-filtered field.
double filtered_lp(const WindowedTransform& wt, const ModeMultiplier& mult, double p) {
    const std::size_t n3 = wt.k_mag.size();
    const int nt = wt.n_total;
    std::vector<Complex> buf(static_cast<std::size_t>(wt.ncomp) * n3 * nt);
    for (int c = 0; c < wt.ncomp; ++c)
        for (std::size_t m = 0; m < n3; ++m) {
            const std::size_t off = wt.series(c, m);
            for (int i = 0; i < nt; ++i) buf[off + i] = wt.coef[off + i] * mult(m, i);
        }
    fft1_many(nt, wt.ncomp * static_cast<int>(n3), buf.data(), +1);

    const int i0 = wt.m_ext + 1;  // first slice with t > 0
    const Grid& g = wt.grid;
    if (p == 2.0) {
        std::vector<double> per_slice(nt - i0, 0.0);
        for (int i = i0; i < nt; ++i) {
            double acc = 0.0;
            for (int c = 0; c < wt.ncomp; ++c) {
                const std::size_t base = static_cast<std::size_t>(c) * n3 * nt;
                for (std::size_t m = 0; m < n3; ++m) acc += std::norm(buf[base + m * nt + i]);
            }
            per_slice[i - i0] = acc * g.volume() * wt.dt;
        }
        return std::sqrt(pairwise_sum(per_slice));
    }
    double sup = 0.0;
    std::vector<double> per_slice(nt - i0, 0.0);
    for (int i = i0; i < nt; ++i) {
        SpectralField sl(g, wt.ncomp);
        for (int c = 0; c < wt.ncomp; ++c)
            for (std::size_t m = 0; m < n3; ++m) sl.at(c, m) = buf[wt.series(c, m) + i];
        const double lp = lp_norm_phys(inverse_transform(sl), p);
        if (std::isinf(p))
            sup = std::max(sup, lp);
        else
            per_slice[i - i0] = std::pow(lp, p) * wt.dt;
    }
    if (std::isinf(p)) return sup;
    return std::pow(pairwise_sum(per_slice), 1.0 / p);
}

}  // namespace

BesovReport besov_norm_anisotropic(const SpaceTimeField& f, const BesovSpec& spec, int ext_order,
                                   std::optional<JBand> band_opt) {
    spec.validate();
    if (spec.flavor != BesovFlavor::AnisotropicSpaceTime)
        throw Error("besov_norm_anisotropic: spec flavor must be anisotropic-spacetime");
    if (f.n_slices() < 8)
        throw Error("besov_norm_anisotropic: too few time slices to resolve a parabolic shell");
    const WindowedTransform wt = window_transform(f, ext_order);
    const JBand band = band_opt.value_or(anisotropic_band(f.grid(), wt.window_len, wt.n_total));
    const DyadicProfile& prof = DyadicProfile::shared(spec.flavor);

    BesovReport rep;
    rep.spec = spec;
    rep.band = band;
    rep.ext_order = ext_order;
    rep.label = "E-proxy";
    rep.per_block.resize(band.j_max - band.j_min + 1);
    parallel_for(band.j_max - band.j_min + 1, [&](int idx) {
        const int j = band.j_min + idx;
        const double block = filtered_lp(
            wt, [&](std::size_t m, int i) { return Complex(prof.phi_hat(j, wt.k_mag[m], wt.tau[i])); },
            spec.p);
        rep.per_block[idx] = {j, block, block * std::pow(2.0, spec.s * j)};
    });
    rep.total = aggregate_lq(rep.per_block, spec.q);
    return rep;
}

double sobolev_norm_parabolic(const SpaceTimeField& f, double s, double p, int ext_order) {
    if (s == 0.0) return spacetime_lp(f, p);
    if (p == 2.0) {
        const WindowedTransform wt = window_transform(f, ext_order);
        const std::size_t n3 = wt.k_mag.size();
        std::vector<double> terms;
        terms.reserve(wt.coef.size());
        for (int c = 0; c < wt.ncomp; ++c)
            for (std::size_t m = 0; m < n3; ++m)
                for (int i = 0; i < wt.n_total; ++i) {
                    const double k2 = wt.k_mag[m] * wt.k_mag[m];
                    const double mod2 = k2 * k2 + wt.tau[i] * wt.tau[i];
                    const double w2 = mod2 > 0.0 ? std::pow(mod2, 0.5 * s) : 0.0;
                    terms.push_back(w2 * std::norm(wt.coef[wt.series(c, m) + i]));
                }
        return std::sqrt(f.grid().volume() * wt.window_len * pairwise_sum(terms));
    }
    return sobolev_norm_derivative_path(f, s, p, ext_order);
}

double sobolev_norm_derivative_path(const SpaceTimeField& f, double s, double p, int ext_order) {
    const double half = 0.5 * s;
    const bool s_even = s > 0.0 && std::abs(half - std::round(half)) < 1e-12;
    if (!s_even || !(p > 1.0) || std::isinf(p) || s > 4.0)
        throw Error("sobolev_norm_parabolic: unsupported (s, p) combination");
    const WindowedTransform wt = window_transform(f, ext_order);
    const int k = static_cast<int>(std::round(half));
    std::vector<double> norms;
    for (int l = 0; l <= k; ++l) {
        const int r = static_cast<int>(std::round(s)) - 2 * l;  // spatial derivative order
        std::vector<int> axes(r, 0);
        for (;;) {
            norms.push_back(filtered_lp(
                wt,
                [&](std::size_t m, int i) {
                    Complex mul(1.0, 0.0);
                    for (int a : axes) {
                        const double ka = a == 0 ? wt.kx[m] : a == 1 ? wt.ky[m] : wt.kz[m];
                        mul *= Complex(0.0, ka);
                    }
                    for (int lt = 0; lt < l; ++lt) mul *= Complex(0.0, wt.tau[i]);
                    return mul;
                },
                p));
            // next ordered tuple
            int pos = r - 1;
            while (pos >= 0 && axes[pos] == 2) axes[pos--] = 0;
            if (pos < 0) break;
            ++axes[pos];
        }
    }
    return pairwise_sum(norms);
}

double spacetime_lp(const SpaceTimeField& f, double p) {
    const double dt = f.dt();
    if (std::isinf(p)) {
        double sup = 0.0;
        for (int i = 1; i < f.n_slices(); ++i)
            sup = std::max(sup, lp_norm_phys(inverse_transform(f.slice(i)), p));
        return sup;
    }
    std::vector<double> per_slice(f.n_slices() - 1);
    for (int i = 1; i < f.n_slices(); ++i) {
        const double lp = lp_norm_phys(inverse_transform(f.slice(i)), p);
        per_slice[i - 1] = std::pow(lp, p) * dt;
    }
    return std::pow(pairwise_sum(per_slice), 1.0 / p);
}

double lorentz_norm(const SpaceTimeField& f, double p, double r) {
    if (!(p >= 1.0) || std::isinf(p)) throw Error("lorentz_norm: need 1 <= p < inf");
    if (!(r >= 1.0)) throw Error("lorentz_norm: need r >= 1");
    const Grid& g = f.grid();
    const double w = g.cell_volume() * f.dt();
    std::vector<double> mags;
    mags.reserve(g.n3() * (f.n_slices() - 1));
    for (int i = 1; i < f.n_slices(); ++i) {
        const PhysicalField ph = inverse_transform(f.slice(i));
        for (std::size_t m = 0; m < g.n3(); ++m) {
            double acc = 0.0;
            for (int c = 0; c < f.ncomp(); ++c) acc += ph.data(c)[m] * ph.data(c)[m];
            mags.push_back(std::sqrt(acc));
        }
    }
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    if (std::isinf(r)) {
        double sup = 0.0;
        for (std::size_t i = 0; i < mags.size(); ++i)
            sup = std::max(sup, std::pow((i + 1) * w, 1.0 / p) * mags[i]);
        return sup;
    }
    std::vector<double> terms(mags.size());
    double t_prev = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const double t_cur = (i + 1) * w;
        terms[i] =
            (p / r) * (std::pow(t_cur, r / p) - std::pow(t_prev, r / p)) * std::pow(mags[i], r);
        t_prev = t_cur;
    }
    return std::pow(pairwise_sum(terms), 1.0 / r);
}

}  // namespace hallmild

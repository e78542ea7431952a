#include "hallmild/brute.hpp"

#include <cmath>

#include "hallmild/spectral_ops.hpp"

namespace hallmild {

namespace {

// 5-point Gauss-Legendre on [-1,1], literal constants.
constexpr double kG5x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kG5w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                            0.4786286704993665, 0.2369268850561891};

SpectralField reduce_kind(DuhamelKind kind, const SpectralField& f) {
    switch (kind) {
        case DuhamelKind::Plain: return f;
        case DuhamelKind::Grad: {
            SpectralField d = divergence_tensor(f);
            d *= -1.0;
            return d;
        }
        case DuhamelKind::GradProj: {
            SpectralField d = divergence_tensor(f);
            d *= -1.0;
            return helmholtz_project(d);
        }
        case DuhamelKind::Hess: {
            SpectralField d = curl(divergence_tensor(f));
            d *= -1.0;
            return d;
        }
        case DuhamelKind::Curl: return curl(f);
    }
    throw Error("brute_duhamel: unknown kind");
}

std::vector<double> lam_of(const Grid& g) {
    const int n = g.n();
    std::vector<double> fr(n);
    for (int i = 0; i < n; ++i) fr[i] = (i == n / 2) ? 0.0 : g.frequency(g.k_of(i));
    std::vector<double> lam(g.n3());
    std::size_t m = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz)
                lam[m++] = fr[ix] * fr[ix] + fr[iy] * fr[iy] + fr[iz] * fr[iz];
    return lam;
}

struct BruteCtx {
    DuhamelKind kind;
    const Forcing* F;
    double t;
    double tol;
    double total_len;
    int max_depth;
    std::vector<double> lam;
};

SpectralField panel_integral(const BruteCtx& ctx, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double ds = 0.5 * (b - a);
    SpectralField acc = [&] {
        SpectralField g = reduce_kind(ctx.kind, (*ctx.F)(mid + ds * kG5x[0]));
        return SpectralField(g.grid(), g.ncomp());
    }();
    for (int qn = 0; qn < 5; ++qn) {
        const double s = mid + ds * kG5x[qn];
        const double w = ds * kG5w[qn];
        SpectralField g = reduce_kind(ctx.kind, (*ctx.F)(s));
        for (int c = 0; c < acc.ncomp(); ++c) {
            const Complex* src = g.data(c);
            Complex* dst = acc.data(c);
            for (std::size_t m = 0; m < ctx.lam.size(); ++m)
                dst[m] += w * std::exp(-ctx.lam[m] * (ctx.t - s)) * src[m];
        }
    }
    return acc;
}

double sup_diff(const SpectralField& a, const SpectralField& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i)
        worst = std::max(worst, std::abs(a.raw()[i] - b.raw()[i]));
    return worst;
}

SpectralField refine(const BruteCtx& ctx, double a, double b, const SpectralField& whole,
                     int depth) {
    const double mid = 0.5 * (a + b);
    const SpectralField left = panel_integral(ctx, a, mid);
    const SpectralField right = panel_integral(ctx, mid, b);
    SpectralField sum = left;
    sum += right;
    const double local_tol = ctx.tol * (b - a) / ctx.total_len;
    if (sup_diff(sum, whole) <= std::max(local_tol, 1e-300)) return sum;
    if (depth >= ctx.max_depth)
        throw Error("brute_duhamel: tolerance not reached within depth limit");
    SpectralField l = refine(ctx, a, mid, left, depth + 1);
    SpectralField r = refine(ctx, mid, b, right, depth + 1);
    l += r;
    return l;
}

}  // namespace

SpectralField brute_duhamel(DuhamelKind kind, const Forcing& F, double t, double tol,
                            int max_depth) {
    if (!(t >= 0.0)) throw Error("brute_duhamel: t must be non-negative");
    SpectralField probe = reduce_kind(kind, F(0.0));
    if (t == 0.0) return SpectralField(probe.grid(), probe.ncomp());
    BruteCtx ctx{kind, &F, t, tol, t, max_depth, lam_of(probe.grid())};
    const SpectralField whole = panel_integral(ctx, 0.0, t);
    return refine(ctx, 0.0, t, whole, 0);
}

}  // namespace hallmild

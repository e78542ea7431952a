#include "hallmild/battery.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "hallmild/heat.hpp"
#include "hallmild/rng.hpp"
#include "hallmild/spectral_ops.hpp"

namespace hallmild {

namespace {

constexpr BesovFlavor kAniso = BesovFlavor::AnisotropicSpaceTime;
constexpr BesovFlavor kIso = BesovFlavor::IsotropicSpatial;

// Random scalar field: a band of spatial modes, each with a smooth random
// time profile (mixture of decaying exponentials and oscillations).
SpaceTimeField random_field(const Grid& g, const BatteryConfig& cfg, Rng& rng) {
    SpaceTimeField out(g, 1, 0.0, cfg.t_final / (cfg.n_steps - 1), cfg.n_steps);
    const int n = g.n();
    const int lo = 1, hi = std::max(2, g.dealias_limit() - 1);
    const int band_lo = rng.uniform_int(lo, hi - 1);
    const int band_hi = rng.uniform_int(band_lo, hi);
    const double amp = std::pow(10.0, rng.uniform(-1.5, 0.5));
    struct ModeProfile {
        std::size_t flat;
        Complex c0;
        double sigma, omega, phase;
    };
    std::vector<ModeProfile> modes;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const int kx = g.k_of(ix), ky = g.k_of(iy), kz = g.k_of(iz);
                const double kk = std::sqrt(double(kx * kx + ky * ky + kz * kz));
                if (kk < band_lo - 0.5 || kk > band_hi + 0.5) continue;
                if (!g.keeps_mode(kx, ky, kz)) continue;
                modes.push_back({g.flat(ix, iy, iz), amp * rng.complex_normal(),
                                 rng.uniform(0.0, 3.0 / cfg.t_final),
                                 rng.uniform(0.0, 2.0 / cfg.t_final), rng.uniform(0.0, 2.0 * M_PI)});
            }
    for (int i = 0; i < cfg.n_steps; ++i) {
        const double t = out.time(i);
        for (const auto& mp : modes)
            out.slice(i).at(0, mp.flat) =
                mp.c0 * std::exp(-mp.sigma * t) * std::cos(mp.omega * t + mp.phase);
        enforce_hermitian(out.slice(i));
        dealias(out.slice(i));
    }
    return out;
}

SpaceTimeField st_product(const SpaceTimeField& a, const SpaceTimeField& b) {
    SpaceTimeField out = SpaceTimeField::zero_like(a);
    for (int i = 0; i < a.n_slices(); ++i)
        out.slice(i) = pointwise_product(a.slice(i), b.slice(i), ProductKind::Dot);
    return out;
}

SpaceTimeField st_partial(const SpaceTimeField& a, int axis) {
    SpaceTimeField out = SpaceTimeField::zero_like(a);
    for (int i = 0; i < a.n_slices(); ++i) out.slice(i) = partial(a.slice(i), axis);
    return out;
}

// 4th-order finite-difference time derivative (one-sided at the ends).
SpaceTimeField st_time_derivative(const SpaceTimeField& a) {
    SpaceTimeField out = SpaceTimeField::zero_like(a);
    const int ns = a.n_slices();
    const double h = a.dt();
    auto axpy = [&](SpectralField& dst, double w, const SpectralField& src) {
        for (std::size_t i = 0; i < dst.raw().size(); ++i) dst.raw()[i] += w * src.raw()[i];
    };
    for (int i = 0; i < ns; ++i) {
        SpectralField& d = out.slice(i);
        if (i >= 2 && i + 2 < ns) {
            axpy(d, 1.0 / (12 * h), a.slice(i - 2));
            axpy(d, -8.0 / (12 * h), a.slice(i - 1));
            axpy(d, 8.0 / (12 * h), a.slice(i + 1));
            axpy(d, -1.0 / (12 * h), a.slice(i + 2));
        } else if (i + 4 < ns && i < 2) {
            axpy(d, -25.0 / (12 * h), a.slice(i));
            axpy(d, 48.0 / (12 * h), a.slice(i + 1));
            axpy(d, -36.0 / (12 * h), a.slice(i + 2));
            axpy(d, 16.0 / (12 * h), a.slice(i + 3));
            axpy(d, -3.0 / (12 * h), a.slice(i + 4));
        } else {
            axpy(d, 25.0 / (12 * h), a.slice(i));
            axpy(d, -48.0 / (12 * h), a.slice(i - 1));
            axpy(d, 36.0 / (12 * h), a.slice(i - 2));
            axpy(d, -16.0 / (12 * h), a.slice(i - 3));
            axpy(d, 3.0 / (12 * h), a.slice(i - 4));
        }
    }
    return out;
}

// Duhamel with the plain kernel at every slice of f (forcing is f itself).
SpaceTimeField st_duhamel_plain(const SpaceTimeField& f, int quad_order) {
    SpaceTimeField out = SpaceTimeField::zero_like(f);
    TimeGrid quad{f.t_final(), f.n_slices(), quad_order};
    Forcing F = [&](double s) { return f.sample(s); };
    for (int i = 1; i < f.n_slices(); ++i)
        out.slice(i) = duhamel(DuhamelKind::Plain, F, f.time(i), quad);
    return out;
}

struct Ineq {
    std::string name;
    std::function<std::pair<double, double>(const BatterySample&)> eval;  // (lhs, rhs)
};

std::vector<Ineq> inequality_set(const BatteryConfig& cfg) {
    const int eo = cfg.ext_order;
    auto aniso = [eo](const SpaceTimeField& f, double s, double p, double q) {
        return besov_norm_anisotropic(f, {s, p, q, kAniso}, eo).total;
    };
    std::vector<Ineq> set;

    // Hoelder-type product estimate: s=1, p=2 against p1=r1=p2=r2=4.
    set.push_back({"product_holder", [=](const BatterySample& smp) {
                       const SpaceTimeField fg = st_product(smp.f, smp.g);
                       const double lhs = aniso(fg, 1.0, 2.0, 2.0);
                       const double rhs = aniso(smp.f, 1.0, 4.0, 2.0) * spacetime_lp(smp.g, 4.0) +
                                          spacetime_lp(smp.f, 4.0) * aniso(smp.g, 1.0, 4.0, 2.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Lorentz embedding: L^{4,2} against B^{5/2-5/4}_{2,2}.
    set.push_back({"lorentz_embedding", [=](const BatterySample& smp) {
                       const double lhs = lorentz_norm(smp.f, 4.0, 2.0);
                       const double rhs = aniso(smp.f, 1.25, 2.0, 2.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Sup embedding: L^inf against B^{5/2}_{2,1}.
    set.push_back({"sup_embedding", [=](const BatterySample& smp) {
                       const double inf = std::numeric_limits<double>::infinity();
                       const double lhs = spacetime_lp(smp.f, inf);
                       const double rhs = aniso(smp.f, 2.5, 2.0, 1.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Composite product estimate (the shape used to bound the Hall term).
    set.push_back({"product_composite", [=](const BatterySample& smp) {
                       const SpaceTimeField fg = st_product(smp.f, smp.g);
                       const double lhs = aniso(fg, 1.5, 2.0, 5.0);
                       const double rhs = aniso(smp.f, 2.5, 2.0, 1.0) * aniso(smp.g, 1.5, 2.0, 5.0) +
                                          aniso(smp.g, 2.5, 2.0, 1.0) * aniso(smp.f, 1.5, 2.0, 5.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Derivative lifting, one spatial derivative: s = 2.5 -> 1.5.
    set.push_back({"lift_spatial", [=](const BatterySample& smp) {
                       const double lhs = aniso(st_partial(smp.f, 0), 1.5, 2.0, 2.0);
                       const double rhs = aniso(smp.f, 2.5, 2.0, 2.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Derivative lifting, one time derivative: s = 2.5 -> 0.5.
    set.push_back({"lift_time", [=](const BatterySample& smp) {
                       const double lhs = aniso(st_time_derivative(smp.f), 0.5, 2.0, 2.0);
                       const double rhs = aniso(smp.f, 2.5, 2.0, 2.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Heat-flow estimate: ||Gamma g||_{B^{1.5,*}_{2,2}} vs ||g||_{B^{0.5}_{2,2}}.
    set.push_back({"heat_flow", [=](const BatterySample& smp) {
                       const SpectralField g0 = smp.f.slice(0);
                       SpaceTimeField flow = SpaceTimeField::zero_like(smp.f);
                       for (int i = 0; i < flow.n_slices(); ++i)
                           flow.slice(i) = heat_propagate(g0, flow.time(i));
                       const double lhs = aniso(flow, 1.5, 2.0, 2.0);
                       const double rhs = besov_norm_spatial(g0, {0.5, 2.0, 2.0, kIso}).total;
                       return std::make_pair(lhs, rhs);
                   }});

    // Duhamel gradient estimate, s > 1 branch.
    set.push_back({"duhamel_gradient", [=](const BatterySample& smp) {
                       const SpaceTimeField conv = st_duhamel_plain(smp.f, 6);
                       const double lhs = aniso(st_partial(conv, 0), 1.5, 2.0, 2.0);
                       const double rhs = aniso(smp.f, 0.5, 2.0, 2.0);
                       return std::make_pair(lhs, rhs);
                   }});

    // Duhamel gradient estimate, integrability-shift branch (s < 1):
    // ||d_x Gamma*f||_{B^{0.8,*}_{4,2}} vs ||f||_{B^{0.3,*}_{20/7,2}}.
    set.push_back({"duhamel_gradient_lp", [=](const BatterySample& smp) {
                       const SpaceTimeField conv = st_duhamel_plain(smp.f, 6);
                       const double lhs = aniso(st_partial(conv, 0), 0.8, 4.0, 2.0);
                       const double rhs = aniso(smp.f, 0.3, 20.0 / 7.0, 2.0);
                       return std::make_pair(lhs, rhs);
                   }});
    return set;
}

}  // namespace

std::vector<BatterySample> make_battery_corpus(const BatteryConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<BatterySample> corpus;
    corpus.reserve(cfg.corpus_size);
    for (int i = 0; i < cfg.corpus_size; ++i) {
        const Grid g(i % 2 == 0 ? cfg.n : 2 * cfg.n, cfg.box_length);
        corpus.push_back({random_field(g, cfg, rng), random_field(g, cfg, rng)});
    }
    return corpus;
}

BatteryReport estimate_battery(const std::vector<BatterySample>& corpus, const BatteryConfig& cfg) {
    BatteryReport rep;
    rep.corpus_size = static_cast<int>(corpus.size());
    rep.margin = cfg.margin;
    rep.insufficient_samples = rep.corpus_size < cfg.min_samples;

    const auto set = inequality_set(cfg);
    rep.rows.resize(set.size());
    for (std::size_t q = 0; q < set.size(); ++q) {
        InequalityResult row;
        row.name = set[q].name;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto [lhs, rhs] = set[q].eval(corpus[i]);
            ++row.evaluated;
            if (rhs < 1e-14) {
                if (lhs > 1e-12) ++row.degenerate;
                continue;
            }
            const double ratio = lhs / rhs;
            if (i % 2 == 0)
                row.c_fit = std::max(row.c_fit, ratio);
            else
                row.holdout_max = std::max(row.holdout_max, ratio);
        }
        row.pass = row.degenerate == 0 && row.holdout_max <= cfg.margin * row.c_fit;
        rep.rows[q] = row;
    }
    rep.all_pass = true;
    for (const auto& r : rep.rows) rep.all_pass = rep.all_pass && r.pass;
    return rep;
}

}  // namespace hallmild

#include "hallmild/picard.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "hallmild/reduce.hpp"
#include "hallmild/rng.hpp"
#include "hallmild/spectral_ops.hpp"

namespace hallmild {

namespace {

void finalize_data_field(SpectralField& f, double amplitude) {
    enforce_hermitian(f);
    dealias(f);
    f = helmholtz_project(f);
    // zero mean
    for (int c = 0; c < f.ncomp(); ++c) f.at(c, 0, 0, 0) = 0.0;
    const PhysicalField ph = inverse_transform(f);
    double peak = 0.0;
    for (std::size_t m = 0; m < f.grid().n3(); ++m) {
        double acc = 0.0;
        for (int c = 0; c < 3; ++c) acc += ph.data(c)[m] * ph.data(c)[m];
        peak = std::max(peak, acc);
    }
    peak = std::sqrt(peak);
    if (peak > 0.0) f *= amplitude / peak;
    f.is_solenoidal = true;
}

SpectralField sample_physical(const Grid& g, const std::function<void(double, double, double, double*)>& fn) {
    PhysicalField ph(g, 3);
    const int n = g.n();
    const double h = g.box_length() / n;
    std::size_t m = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++m) {
                double v[3];
                fn(ix * h, iy * h, iz * h, v);
                ph.data(0)[m] = v[0];
                ph.data(1)[m] = v[1];
                ph.data(2)[m] = v[2];
            }
    return forward_transform(ph);
}

}  // namespace

InitialData make_initial_data(const std::string& family, double amplitude, const Grid& grid,
                              std::uint64_t seed, const DataParams& params) {
    InitialData data{SpectralField(grid, 3), SpectralField(grid, 3), family, amplitude};
    const double c = 2.0 * M_PI / grid.box_length();
    if (family == "taylor-green") {
        data.u0 = sample_physical(grid, [&](double x, double y, double z, double* v) {
            v[0] = std::sin(c * x) * std::cos(c * y) * std::cos(c * z);
            v[1] = -std::cos(c * x) * std::sin(c * y) * std::cos(c * z);
            v[2] = 0.0;
        });
        data.b0 = sample_physical(grid, [&](double x, double y, double z, double* v) {
            v[0] = -std::cos(c * x) * std::sin(c * y) * std::cos(c * z);
            v[1] = std::sin(c * x) * std::cos(c * y) * std::cos(c * z);
            v[2] = 0.0;
        });
    } else if (family == "random-band") {
        Rng rng(seed);
        auto fill = [&](SpectralField& f) {
            const int n = grid.n();
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    for (int iz = 0; iz < n; ++iz) {
                        const int kx = grid.k_of(ix), ky = grid.k_of(iy), kz = grid.k_of(iz);
                        const double kk = std::sqrt(double(kx * kx + ky * ky + kz * kz));
                        if (kk < params.band_lo - 0.5 || kk > params.band_hi + 0.5) continue;
                        if (!grid.keeps_mode(kx, ky, kz)) continue;
                        for (int comp = 0; comp < 3; ++comp)
                            f.at(comp, ix, iy, iz) = rng.complex_normal();
                    }
        };
        fill(data.u0);
        fill(data.b0);
    } else if (family == "concentrated-bump") {
        // curl of a Gaussian vector potential: solenoidal and spatially
        // concentrated (box-size emulation of decaying whole-space data).
        const double L = grid.box_length();
        const double w2 = params.bump_width * params.bump_width;
        auto bump = [&](double x, double y, double z, double cx, double cy, double cz) {
            const double dx = x - cx * L, dy = y - cy * L, dz = z - cz * L;
            return std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * w2));
        };
        SpectralField psi_u = sample_physical(grid, [&](double x, double y, double z, double* v) {
            v[0] = bump(x, y, z, 0.5, 0.5, 0.5);
            v[1] = bump(x, y, z, 0.45, 0.55, 0.5);
            v[2] = bump(x, y, z, 0.55, 0.5, 0.45);
        });
        SpectralField psi_b = sample_physical(grid, [&](double x, double y, double z, double* v) {
            v[0] = bump(x, y, z, 0.5, 0.45, 0.55);
            v[1] = bump(x, y, z, 0.55, 0.45, 0.5);
            v[2] = bump(x, y, z, 0.5, 0.55, 0.45);
        });
        data.u0 = curl(psi_u);
        data.b0 = curl(psi_b);
    } else {
        throw ConfigError("unknown initial-data family: " + family);
    }
    finalize_data_field(data.u0, amplitude);
    finalize_data_field(data.b0, amplitude);
    if (divergence_residual(data.u0) > 1e-10 || divergence_residual(data.b0) > 1e-10)
        throw Error("make_initial_data: solenoidality defect above 1e-10");
    return data;
}

void SolverConfig::validate() const {
    if (!(p > 1.0 && p < 5.0)) throw ConfigError("SolverConfig: need 1 < p < 5");
    if (!(q >= 1.0)) throw ConfigError("SolverConfig: need q >= 1");
    if (!(alpha > 5.0 / p)) throw ConfigError("SolverConfig: need alpha > 5/p");
    if (max_iterations < 1) throw ConfigError("SolverConfig: max_iterations must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("SolverConfig: tol must be positive");
    if (!(ceiling > 0.0)) throw ConfigError("SolverConfig: ceiling must be positive");
    tg.validate();
    Grid(n, box_length);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::Diverged: return "diverged";
        case Verdict::MaxIterations: return "max-iter";
    }
    return "unknown";
}

std::pair<SpaceTimeField, SpaceTimeField> first_iterate(const InitialData& data, const TimeGrid& tg) {
    tg.validate();
    const Grid& g = data.u0.grid();
    SpaceTimeField u(g, 3, 0.0, tg.dt(), tg.n_steps);
    SpaceTimeField b(g, 3, 0.0, tg.dt(), tg.n_steps);
    for (int i = 0; i < tg.n_steps; ++i) {
        u.slice(i) = heat_propagate(data.u0, tg.time(i));
        b.slice(i) = heat_propagate(data.b0, tg.time(i));
        u.slice(i).is_solenoidal = b.slice(i).is_solenoidal = true;
    }
    return {std::move(u), std::move(b)};
}

std::pair<SpaceTimeField, SpaceTimeField> picard_step(const SpaceTimeField& u,
                                                      const SpaceTimeField& b,
                                                      const InitialData& data, const TimeGrid& tg,
                                                      const MildTerms& terms) {
    if (u.max_divergence_residual() > 1e-8 || b.max_divergence_residual() > 1e-8)
        throw Error("picard_step: iterates must be solenoidal");
    return mild_step(u, b, data.u0, data.b0, tg, terms);
}

namespace {

struct NormSet {
    double A = 0, C = 0, D = 0, E = 0;
};

struct TraceMachinery {
    const SolverConfig& cfg;
    JBand band;

    explicit TraceMachinery(const SolverConfig& c, const Grid& g) : cfg(c), band{0, 0} {
        // Fixed truncation band for all trace norms: derived from the grid
        // and the extended window of the configured time lattice.
        const TimeGrid& tg = cfg.tg;
        const int m_ext = (tg.n_steps - 1) / (cfg.ext_order + 1);
        band = anisotropic_band(g, (tg.n_steps + m_ext) * tg.dt(), tg.n_steps + m_ext);
    }

    double norm(const SpaceTimeField& f, const BesovSpec& spec) const {
        return besov_norm_anisotropic(f, spec, cfg.ext_order, band).total;
    }
};

double max_field_abs(const SpaceTimeField& f) {
    double m = 0.0;
    for (int i = 0; i < f.n_slices(); ++i) m = std::max(m, f.slice(i).max_abs());
    return m;
}

}  // namespace

RunResult run(const SolverConfig& config, const InitialData& data) {
    config.validate();
    const Grid g = config.grid();
    if (data.u0.grid() != g) throw ConfigError("run: data grid does not match config grid");
    const TimeGrid& tg = config.tg;
    TraceMachinery tm(config, g);

    RunResult res{Verdict::MaxIterations,
                  IterationTrace{},
                  SpaceTimeField(g, 3, 0.0, tg.dt(), tg.n_steps),
                  SpaceTimeField(g, 3, 0.0, tg.dt(), tg.n_steps)};
    res.trace.band = tm.band;

    auto [u, b] = first_iterate(data, tg);
    res.max_divergence = std::max(u.max_divergence_residual(), b.max_divergence_residual());

    auto iterate_row = [&](int m, const SpaceTimeField& uu, const SpaceTimeField& bb) {
        TraceRow row;
        row.m = m;
        row.u_A = tm.norm(uu, config.spec_A());
        row.b_A = tm.norm(bb, config.spec_A());
        row.b_C = tm.norm(bb, config.spec_C());
        row.u_D = tm.norm(uu, config.spec_D());
        row.b_E = tm.norm(bb, config.spec_E());
        return row;
    };

    res.trace.rows.push_back(iterate_row(1, u, b));

    double prev_triple = 0.0;
    bool have_prev_triple = false;
    std::vector<double> log_rhos;

    for (int m = 1; m <= config.max_iterations; ++m) {
        auto [un, bn] = picard_step(u, b, data, tg, config.terms);
        ++res.iterations;
        const double amax = std::max(max_field_abs(un), max_field_abs(bn));
        if (!std::isfinite(amax) || amax > config.ceiling) {
            res.verdict = Verdict::Diverged;
            TraceRow row;
            row.m = m + 1;
            row.u_A = row.b_A = row.b_C = row.u_D = row.b_E =
                std::numeric_limits<double>::infinity();
            res.trace.rows.push_back(row);
            break;
        }
        res.max_divergence = std::max(
            res.max_divergence,
            std::max(un.max_divergence_residual(), bn.max_divergence_residual()));

        SpaceTimeField du = un;
        du -= u;
        SpaceTimeField db = bn;
        db -= b;
        TraceRow row = iterate_row(m + 1, un, bn);
        row.dU_A = tm.norm(du, config.spec_A());
        row.dB_A = tm.norm(db, config.spec_A());
        row.dB_C = tm.norm(db, config.spec_C());
        row.triple = row.dU_A + row.dB_A + row.dB_C;
        row.has_diff = true;

        if (have_prev_triple && prev_triple > 1e-14) {
            res.trace.rows.back().rho = row.triple / prev_triple;
            res.trace.rows.back().has_rho = true;
            if (res.trace.rows.back().rho > 0.0)
                log_rhos.push_back(std::log(res.trace.rows.back().rho));
        }
        res.trace.rows.push_back(row);
        prev_triple = row.triple;
        have_prev_triple = true;
        res.final_triple = row.triple;

        u = std::move(un);
        b = std::move(bn);

        if (row.triple < config.tol) {
            res.verdict = Verdict::Converged;
            res.converged_at = m;
            // Trace reports iterates up to the converged index; the closing
            // difference survives in the last row's rho and final_triple.
            res.trace.rows.resize(res.converged_at);
            break;
        }
    }
    res.rho_bar = log_rhos.empty()
                      ? 0.0
                      : std::exp(pairwise_sum(log_rhos) / static_cast<double>(log_rhos.size()));
    res.u = std::move(u);
    res.b = std::move(b);
    return res;
}

UniquenessReport uniqueness_probe(const SolverConfig& config, const InitialData& data,
                                  const SpectralField& delta) {
    if (divergence_residual(delta) > 1e-10)
        throw Error("uniqueness_probe: perturbation must be solenoidal");
    UniquenessReport rep;
    RunResult base = run(config, data);
    rep.base_converged = base.verdict == Verdict::Converged;
    if (!rep.base_converged) return rep;

    // Perturbed restart: same iteration loop, seeded from u^1 + delta.
    SolverConfig cfg = config;
    const TimeGrid& tg = cfg.tg;
    TraceMachinery tm(cfg, cfg.grid());
    auto [u, b] = first_iterate(data, tg);
    for (int i = 1; i < u.n_slices(); ++i) {
        u.slice(i) += delta;
        b.slice(i) += delta;
    }
    double triple = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= cfg.max_iterations; ++m) {
        auto [un, bn] = picard_step(u, b, data, tg, cfg.terms);
        SpaceTimeField du = un;
        du -= u;
        SpaceTimeField db = bn;
        db -= b;
        triple = tm.norm(du, cfg.spec_A()) + tm.norm(db, cfg.spec_A()) + tm.norm(db, cfg.spec_C());
        u = std::move(un);
        b = std::move(bn);
        if (triple < cfg.tol) {
            rep.perturbed_converged = true;
            break;
        }
    }
    if (!rep.perturbed_converged) return rep;

    SpaceTimeField gu = u;
    gu -= base.u;
    SpaceTimeField gb = b;
    gb -= base.b;
    rep.gap = tm.norm(gu, cfg.spec_A()) + tm.norm(gb, cfg.spec_A()) + tm.norm(gb, cfg.spec_C());
    rep.pass = rep.gap <= 10.0 * cfg.tol;
    return rep;
}

SmallnessReport smallness_report(const IterationTrace& trace) {
    if (trace.rows.empty()) throw Error("smallness_report: empty trace");
    SmallnessReport rep;
    const char* names[5] = {"u_A", "b_A", "b_C", "u_D", "b_E"};
    auto get = [](const TraceRow& r, int c) {
        switch (c) {
            case 0: return r.u_A;
            case 1: return r.b_A;
            case 2: return r.b_C;
            case 3: return r.u_D;
            default: return r.b_E;
        }
    };
    for (int c = 0; c < 5; ++c) {
        SmallnessColumn col;
        col.name = names[c];
        col.first_value = get(trace.rows.front(), c);
        for (const auto& row : trace.rows) {
            const double v = get(row, c);
            if (v > col.sup) {
                col.sup = v;
                col.attained_at = row.m;
            }
        }
        col.flagged = col.sup > 2.0 * col.first_value && col.sup > 0.0;
        rep.any_flagged = rep.any_flagged || col.flagged;
        rep.columns.push_back(col);
    }
    return rep;
}

}  // namespace hallmild

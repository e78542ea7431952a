#include "hallmild/heat.hpp"

#include <cmath>

#include "hallmild/parallel.hpp"
#include "hallmild/quadrature.hpp"
#include "hallmild/spectral_ops.hpp"

namespace hallmild {

namespace {

// |k|^2 per mode with the Nyquist-zeroed frequency convention.
std::vector<double> lambda_table(const Grid& g) {
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

std::vector<double> freq_axis(const Grid& g) {
    std::vector<double> fr(g.n());
    for (int i = 0; i < g.n(); ++i) fr[i] = (i == g.n() / 2) ? 0.0 : g.frequency(g.k_of(i));
    return fr;
}

struct PanelNodes {
    std::vector<double> s;
    std::vector<double> w;
};

// Panels of [0,t] split at the slice times of quad, trailing partial panel
// included when t is off the lattice.
PanelNodes composite_nodes(double t, const TimeGrid& quad) {
    PanelNodes out;
    const double dt = quad.dt();
    std::vector<double> bounds{0.0};
    for (int i = 1;; ++i) {
        const double ti = i * dt;
        if (ti < t - 1e-12 * std::max(1.0, t))
            bounds.push_back(ti);
        else
            break;
    }
    bounds.push_back(t);
    for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
        GaussRule r = gauss_legendre_on(quad.quad_order, bounds[p], bounds[p + 1]);
        out.s.insert(out.s.end(), r.nodes.begin(), r.nodes.end());
        out.w.insert(out.w.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

}  // namespace

SpectralField heat_propagate(const SpectralField& f, double t) {
    if (t < 0.0) throw Error("heat_propagate: t must be non-negative");
    const auto lam = lambda_table(f.grid());
    SpectralField out(f.grid(), f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c) {
        const Complex* src = f.data(c);
        Complex* dst = out.data(c);
        for (std::size_t m = 0; m < lam.size(); ++m) dst[m] = src[m] * std::exp(-lam[m] * t);
    }
    out.is_solenoidal = f.is_solenoidal;
    return out;
}

SpectralField apply_duhamel_multiplier(DuhamelKind kind, const SpectralField& f) {
    const Grid& g = f.grid();
    if (kind == DuhamelKind::Plain) return f;
    const auto fr = freq_axis(g);
    const int n = g.n();
    switch (kind) {
        case DuhamelKind::Grad:
        case DuhamelKind::GradProj: {
            if (f.ncomp() != 9) throw Error("duhamel: Grad kinds need a 9-component tensor forcing");
            SpectralField out(g, 3);
            std::size_t m = 0;
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    for (int iz = 0; iz < n; ++iz, ++m) {
                        const Complex ik[3] = {Complex(0, fr[ix]), Complex(0, fr[iy]),
                                               Complex(0, fr[iz])};
                        for (int i = 0; i < 3; ++i) {
                            Complex acc = 0.0;
                            for (int j = 0; j < 3; ++j) acc += ik[j] * f.at(3 * i + j, m);
                            out.at(i, m) = -acc;
                        }
                    }
            if (kind == DuhamelKind::GradProj) return helmholtz_project(out);
            return out;
        }
        case DuhamelKind::Hess: {
            if (f.ncomp() != 9) throw Error("duhamel: Hess needs a 9-component tensor forcing");
            SpectralField out(g, 3);
            std::size_t m = 0;
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    for (int iz = 0; iz < n; ++iz, ++m) {
                        const double k[3] = {fr[ix], fr[iy], fr[iz]};
                        Complex h[3];
                        for (int kk = 0; kk < 3; ++kk)
                            h[kk] = k[0] * f.at(3 * kk + 0, m) + k[1] * f.at(3 * kk + 1, m) +
                                    k[2] * f.at(3 * kk + 2, m);
                        out.at(0, m) = k[1] * h[2] - k[2] * h[1];
                        out.at(1, m) = k[2] * h[0] - k[0] * h[2];
                        out.at(2, m) = k[0] * h[1] - k[1] * h[0];
                    }
            out.is_solenoidal = true;
            return out;
        }
        case DuhamelKind::Curl: {
            if (f.ncomp() != 3) throw Error("duhamel: Curl needs a vector forcing");
            return curl(f);
        }
        default: throw Error("duhamel: unknown kind");
    }
}

SpectralField duhamel(DuhamelKind kind, const Forcing& F, double t, const TimeGrid& quad) {
    quad.validate();
    if (!(t > 0.0)) {
        // Degenerate integral over an empty interval.
        SpectralField probe = apply_duhamel_multiplier(kind, F(0.0));
        SpectralField out(probe.grid(), probe.ncomp());
        out.is_solenoidal = probe.is_solenoidal;
        return out;
    }
    const PanelNodes nodes = composite_nodes(t, quad);
    SpectralField first = apply_duhamel_multiplier(kind, F(nodes.s[0]));
    const auto lam = lambda_table(first.grid());
    SpectralField out(first.grid(), first.ncomp());
    out.is_solenoidal = first.is_solenoidal;
    for (std::size_t q = 0; q < nodes.s.size(); ++q) {
        SpectralField red = q == 0 ? std::move(first) : apply_duhamel_multiplier(kind, F(nodes.s[q]));
        if (!std::isfinite(red.max_abs())) throw Error("duhamel: non-finite forcing at a node");
        const double w = nodes.w[q];
        const double delta = t - nodes.s[q];
        for (int c = 0; c < out.ncomp(); ++c) {
            const Complex* src = red.data(c);
            Complex* dst = out.data(c);
            for (std::size_t m = 0; m < lam.size(); ++m)
                dst[m] += w * std::exp(-lam[m] * delta) * src[m];
        }
    }
    return out;
}

SpectralField momentum_forcing(const SpectralField& u_s, const SpectralField& b_s,
                               const MildTerms& terms) {
    SpectralField out(u_s.grid(), 9);
    if (terms.convection) out += pointwise_product(u_s, u_s, ProductKind::Tensor);
    if (terms.lorentz) out -= pointwise_product(b_s, b_s, ProductKind::Tensor);
    return out;
}

SpectralField hall_forcing(const SpectralField& b_s) {
    return pointwise_product(b_s, b_s, ProductKind::Tensor);
}

SpectralField induction_cross_forcing(const SpectralField& u_s, const SpectralField& b_s) {
    return pointwise_product(u_s, b_s, ProductKind::Cross);
}

SpectralField hall_operator_T(const SpaceTimeField& b1, const SpaceTimeField& b2, double t,
                              const TimeGrid& quad) {
    if (b1.grid() != b2.grid()) throw Error("hall_operator_T: grid mismatch");
    auto F = [&](double s) {
        return pointwise_product(b1.sample(s), b2.sample(s), ProductKind::Tensor);
    };
    return duhamel(DuhamelKind::Hess, F, t, quad);
}

SpectralField mild_rhs_u(const SpaceTimeField& u, const SpaceTimeField& b, const SpectralField& u0,
                         double t, const TimeGrid& quad, const MildTerms& terms) {
    if (divergence_residual(u0) > 1e-8) throw Error("mild_rhs_u: u0 is not solenoidal");
    SpectralField out = heat_propagate(u0, t);
    if (terms.convection || terms.lorentz) {
        auto F = [&](double s) { return momentum_forcing(u.sample(s), b.sample(s), terms); };
        out += duhamel(DuhamelKind::GradProj, F, t, quad);
    }
    // The printed 1/2 P grad |b|^2 term of the momentum formula vanishes
    // identically under the projection (P annihilates gradients mode-wise).
    out.is_solenoidal = true;
    return out;
}

SpectralField mild_rhs_b(const SpaceTimeField& u, const SpaceTimeField& b, const SpectralField& b0,
                         double t, const TimeGrid& quad, const MildTerms& terms) {
    if (divergence_residual(b0) > 1e-8) throw Error("mild_rhs_b: b0 is not solenoidal");
    SpectralField out = heat_propagate(b0, t);
    if (terms.hall) {
        auto F = [&](double s) { return hall_forcing(b.sample(s)); };
        out += duhamel(DuhamelKind::Hess, F, t, quad);
    }
    if (terms.induction) {
        auto F = [&](double s) { return induction_cross_forcing(u.sample(s), b.sample(s)); };
        out += duhamel(DuhamelKind::Curl, F, t, quad);
    }
    out.is_solenoidal = true;
    return out;
}

std::pair<SpaceTimeField, SpaceTimeField> mild_step(const SpaceTimeField& u_prev,
                                                    const SpaceTimeField& b_prev,
                                                    const SpectralField& u0, const SpectralField& b0,
                                                    const TimeGrid& tg, const MildTerms& terms) {
    tg.validate();
    const Grid& g = u0.grid();
    const int ns = tg.n_steps;
    SpaceTimeField out_u(g, 3, 0.0, tg.dt(), ns);
    SpaceTimeField out_b(g, 3, 0.0, tg.dt(), ns);
    const auto lam = lambda_table(g);
    const std::size_t n3 = g.n3();

    // Heat flow of the data; slice 0 is the data itself.
    out_u.slice(0) = u0;
    out_b.slice(0) = b0;
    for (int j = 1; j < ns; ++j) {
        out_u.slice(j) = heat_propagate(u0, tg.time(j));
        out_b.slice(j) = heat_propagate(b0, tg.time(j));
    }

    // exp(-lam * t_j) per output, exp(+lam * s) per node; the pairing
    // exp(lam s) * exp(-lam t_j) = exp(-lam (t_j - s)) stays in range as long
    // as lam * t_final is moderate, otherwise fall back to direct exp.
    const bool direct_exp = [&] {
        double lmax = 0.0;
        for (double l : lam) lmax = std::max(lmax, l);
        return lmax * tg.t_final > 650.0;
    }();
    std::vector<std::vector<double>> decay(ns);
    if (!direct_exp)
        for (int j = 1; j < ns; ++j) {
            decay[j].resize(n3);
            for (std::size_t m = 0; m < n3; ++m) decay[j][m] = std::exp(-lam[m] * tg.time(j));
        }

    const GaussRule& base = gauss_legendre(tg.quad_order);
    const int q = tg.quad_order;
    std::vector<SpectralField> au(q, SpectralField(g, 3));
    std::vector<SpectralField> ab(q, SpectralField(g, 3));
    std::vector<double> snode(q), wnode(q);
    std::vector<std::vector<double>> grow(q, std::vector<double>(direct_exp ? 0 : n3));

    for (int i = 1; i < ns; ++i) {
        const double a = tg.time(i - 1), b = tg.time(i);
        for (int k = 0; k < q; ++k) {
            snode[k] = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[k];
            wnode[k] = 0.5 * (b - a) * base.weights[k];
        }
        parallel_for(q, [&](int k) {
            const SpectralField us = u_prev.sample(snode[k]);
            const SpectralField bs = b_prev.sample(snode[k]);
            au[k] = apply_duhamel_multiplier(DuhamelKind::GradProj, momentum_forcing(us, bs, terms));
            SpectralField fb(g, 3);
            if (terms.hall) fb += apply_duhamel_multiplier(DuhamelKind::Hess, hall_forcing(bs));
            if (terms.induction)
                fb += apply_duhamel_multiplier(DuhamelKind::Curl, induction_cross_forcing(us, bs));
            ab[k] = std::move(fb);
            if (!std::isfinite(au[k].max_abs()) || !std::isfinite(ab[k].max_abs()))
                throw Error("mild_step: non-finite forcing at a quadrature node");
            if (!direct_exp)
                for (std::size_t m = 0; m < n3; ++m) grow[k][m] = std::exp(lam[m] * snode[k]);
        });
        parallel_for(ns - i, [&](int jj) {
            const int j = i + jj;
            const double tj = tg.time(j);
            for (int k = 0; k < q; ++k) {
                const double w = wnode[k];
                for (int c = 0; c < 3; ++c) {
                    const Complex* fu = au[k].data(c);
                    const Complex* fbk = ab[k].data(c);
                    Complex* du = out_u.slice(j).data(c);
                    Complex* db = out_b.slice(j).data(c);
                    if (!direct_exp) {
                        const double* dj = decay[j].data();
                        const double* gk = grow[k].data();
                        for (std::size_t m = 0; m < n3; ++m) {
                            const double e = w * dj[m] * gk[m];
                            du[m] += e * fu[m];
                            db[m] += e * fbk[m];
                        }
                    } else {
                        for (std::size_t m = 0; m < n3; ++m) {
                            const double e = w * std::exp(-lam[m] * (tj - snode[k]));
                            du[m] += e * fu[m];
                            db[m] += e * fbk[m];
                        }
                    }
                }
            }
        });
    }
    for (int j = 0; j < ns; ++j) {
        out_u.slice(j).is_solenoidal = true;
        out_b.slice(j).is_solenoidal = true;
    }
    return {std::move(out_u), std::move(out_b)};
}

SpectralField pressure_from_state(const SpectralField& u, const SpectralField& b) {
    // -lap p = div[(u.grad)u - (curl b) x b]; both terms via their tensor
    // forms, so div div (u⊗u - b⊗b) + lap(|b|^2/2).
    SpectralField t = pointwise_product(u, u, ProductKind::Tensor);
    t -= pointwise_product(b, b, ProductKind::Tensor);
    SpectralField rhs = divergence(divergence_tensor(t));
    SpectralField bb = pointwise_product(b, b, ProductKind::Dot);
    rhs += 0.5 * laplacian(bb);
    const auto lam = lambda_table(u.grid());
    SpectralField p(u.grid(), 1);
    for (std::size_t m = 0; m < lam.size(); ++m)
        p.at(0, m) = lam[m] > 0.0 ? rhs.at(0, m) / lam[m] : Complex(0.0);
    return p;
}

}  // namespace hallmild

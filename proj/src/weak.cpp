#include "hallmild/weak.hpp"

#include <cmath>

#include "hallmild/quadrature.hpp"
#include "hallmild/reduce.hpp"
#include "hallmild/rng.hpp"
#include "hallmild/spectral_ops.hpp"

namespace hallmild {

namespace {

double qstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double qstep_dot(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return 30.0 * x * x * (x - 1.0) * (x - 1.0);
}

// Jacobian tensor J_{ij} = d_j phi_i, component layout 3i+j.
SpectralField jacobian(const SpectralField& v) {
    SpectralField out(v.grid(), 9);
    for (int j = 0; j < 3; ++j) {
        SpectralField pj = partial(v, j);
        for (int i = 0; i < 3; ++i) {
            const Complex* src = pj.data(i);
            Complex* dst = out.data(3 * i + j);
            std::copy(src, src + v.grid().n3(), dst);
        }
    }
    return out;
}

}  // namespace

double WeakTestField::eta(double t) const { return qstep(1.0 - t / horizon); }
double WeakTestField::eta_dot(double t) const { return -qstep_dot(1.0 - t / horizon) / horizon; }

std::vector<WeakTestField> make_weak_test_fields(const Grid& g, double horizon, int count,
                                                 std::uint64_t seed, int max_mode) {
    Rng rng(seed);
    std::vector<WeakTestField> out;
    out.reserve(count);
    for (int f = 0; f < count; ++f) {
        SpectralField phi(g, 3);
        const int n = g.n();
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const int kx = g.k_of(ix), ky = g.k_of(iy), kz = g.k_of(iz);
                    if (std::abs(kx) > max_mode || std::abs(ky) > max_mode || std::abs(kz) > max_mode)
                        continue;
                    if (kx == 0 && ky == 0 && kz == 0) continue;
                    for (int c = 0; c < 3; ++c) phi.at(c, ix, iy, iz) = rng.complex_normal();
                }
        enforce_hermitian(phi);
        phi = helmholtz_project(phi);
        const double nrm = l2_norm(phi);
        if (nrm > 0.0) phi *= 1.0 / nrm;
        out.push_back({std::move(phi), horizon});
    }
    return out;
}

WeakResiduals weak_residual(const SpaceTimeField& u, const SpaceTimeField& b,
                            const InitialData& data, const std::vector<WeakTestField>& tests,
                            int quad_order) {
    const int nf = static_cast<int>(tests.size());
    for (const auto& t : tests)
        if (divergence_residual(t.phi) > 1e-10) throw Error("weak_residual: test field not solenoidal");

    struct Precomp {
        SpectralField lap_phi;       // 3
        SpectralField grad_phi;      // 9
        SpectralField curl_phi;      // 3
        SpectralField grad_curlphi;  // 9
    };
    std::vector<Precomp> pre;
    pre.reserve(nf);
    for (const auto& t : tests)
        pre.push_back({laplacian(t.phi), jacobian(t.phi), curl(t.phi), jacobian(curl(t.phi))});

    // accumulators per test field: lhs/rhs integrals and term magnitudes
    std::vector<double> lhs_u(nf, 0.0), rhs_u(nf, 0.0), mag_u(nf, 0.0);
    std::vector<double> lhs_b(nf, 0.0), rhs_b(nf, 0.0), mag_b(nf, 0.0);

    const GaussRule& base = gauss_legendre(quad_order);
    for (int i = 1; i < u.n_slices(); ++i) {
        const double a = u.time(i - 1), bb = u.time(i);
        for (int k = 0; k < quad_order; ++k) {
            const double s = 0.5 * (a + bb) + 0.5 * (bb - a) * base.nodes[k];
            const double w = 0.5 * (bb - a) * base.weights[k];
            const SpectralField us = u.sample(s);
            const SpectralField bs = b.sample(s);
            const SpectralField uu = pointwise_product(us, us, ProductKind::Tensor);
            const SpectralField bbt = pointwise_product(bs, bs, ProductKind::Tensor);
            const SpectralField ub = pointwise_product(us, bs, ProductKind::Cross);
            for (int f = 0; f < nf; ++f) {
                const double eta = tests[f].eta(s);
                const double etad = tests[f].eta_dot(s);
                const double t_lhs_u = -eta * inner_product(us, pre[f].lap_phi);
                const double t_ut = etad * inner_product(us, tests[f].phi);
                const double t_conv = eta * inner_product(uu, pre[f].grad_phi);
                const double t_lor = -eta * inner_product(bbt, pre[f].grad_phi);
                lhs_u[f] += w * t_lhs_u;
                rhs_u[f] += w * (t_ut + t_conv + t_lor);
                mag_u[f] += w * (std::abs(t_lhs_u) + std::abs(t_ut) + std::abs(t_conv) +
                                 std::abs(t_lor));

                const double t_lhs_b = -eta * inner_product(bs, pre[f].lap_phi);
                const double t_bt = etad * inner_product(bs, tests[f].phi);
                const double t_ind = eta * inner_product(ub, pre[f].curl_phi);
                const double t_hall = eta * inner_product(bbt, pre[f].grad_curlphi);
                lhs_b[f] += w * t_lhs_b;
                rhs_b[f] += w * (t_bt + t_ind + t_hall);
                mag_b[f] += w * (std::abs(t_lhs_b) + std::abs(t_bt) + std::abs(t_ind) +
                                 std::abs(t_hall));
            }
        }
    }
    WeakResiduals res;
    for (int f = 0; f < nf; ++f) {
        const double init_u = inner_product(data.u0, tests[f].phi) * tests[f].eta(0.0);
        const double init_b = inner_product(data.b0, tests[f].phi) * tests[f].eta(0.0);
        const double den_u = mag_u[f] + std::abs(init_u) + 1e-30;
        const double den_b = mag_b[f] + std::abs(init_b) + 1e-30;
        res.momentum.push_back(std::abs(lhs_u[f] - (rhs_u[f] + init_u)) / den_u);
        res.induction.push_back(std::abs(lhs_b[f] - (rhs_b[f] + init_b)) / den_b);
        res.max_normalized =
            std::max({res.max_normalized, res.momentum.back(), res.induction.back()});
    }
    return res;
}

}  // namespace hallmild

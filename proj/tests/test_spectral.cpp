#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hallmild/rng.hpp"
#include "hallmild/spectral_ops.hpp"
#include "oracle_utils.hpp"

using namespace hallmild;

namespace {

PhysicalField random_physical(const Grid& g, int ncomp, Rng& rng) {
    PhysicalField f(g, ncomp);
    for (auto& v : f.raw()) v = rng.normal();
    return f;
}

}  // namespace

TEST_CASE("forward transform: zero field gives zero coefficients") {
    Grid g(8, 2.0 * M_PI);
    PhysicalField zero(g, 3);
    SpectralField out = forward_transform(zero);
    CHECK(out.max_abs() == 0.0);
}

TEST_CASE("forward transform: cosine mode lands on +/-k with weight 1/2") {
    Grid g(16, 2.0 * M_PI);
    PhysicalField f(g, 3);
    const int n = g.n();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                f.at(0, g.flat(x, y, z)) = std::cos(2.0 * M_PI * x / n);
    SpectralField out = forward_transform(f);
    CHECK(std::abs(out.at(0, g.index_of(1), 0, 0) - Complex(0.5, 0.0)) < 1e-13);
    CHECK(std::abs(out.at(0, g.index_of(-1), 0, 0) - Complex(0.5, 0.0)) < 1e-13);
    double off = 0.0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                if (iy == 0 && iz == 0 && (ix == g.index_of(1) || ix == g.index_of(-1))) continue;
                for (int c = 0; c < 3; ++c) off = std::max(off, std::abs(out.at(c, ix, iy, iz)));
            }
    CHECK(off < 1e-13);
}

TEST_CASE("forward transform matches the naive DFT oracle on n=8") {
    Grid g(8, 2.0 * M_PI);
    Rng rng(42);
    PhysicalField f = random_physical(g, 3, rng);
    SpectralField fast = forward_transform(f);
    SpectralField slow = oracle::naive_dft(f);
    CHECK(oracle::rel_err(fast, slow) < 1e-12);
}

TEST_CASE("forward transform rejects non-finite input") {
    Grid g(8, 2.0 * M_PI);
    PhysicalField f(g, 3);
    f.at(1, 3) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(forward_transform(f), Error);
}

TEST_CASE("round trip is identity to 1e-12 on n=16") {
    Grid g(16, 2.0 * M_PI);
    Rng rng(7);
    PhysicalField f = random_physical(g, 3, rng);
    PhysicalField back = inverse_transform(forward_transform(f));
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < f.raw().size(); ++i) {
        worst = std::max(worst, std::abs(f.raw()[i] - back.raw()[i]));
        scale = std::max(scale, std::abs(f.raw()[i]));
    }
    CHECK(worst / scale < 1e-12);
}

TEST_CASE("single mode pair inverts to a cosine") {
    Grid g(16, 2.0 * M_PI);
    SpectralField f(g, 3);
    f.at(0, g.index_of(1), 0, 0) = 0.5;
    f.at(0, g.index_of(-1), 0, 0) = 0.5;
    PhysicalField ph = inverse_transform(f);
    const int n = g.n();
    double worst = 0.0;
    for (int x = 0; x < n; ++x)
        worst = std::max(worst,
                         std::abs(ph.at(0, g.flat(x, 0, 0)) - std::cos(2.0 * M_PI * x / n)));
    CHECK(worst < 1e-13);
}

TEST_CASE("inverse transform rejects broken Hermitian symmetry") {
    Grid g(8, 2.0 * M_PI);
    SpectralField f(g, 3);
    f.at(0, g.index_of(1), 0, 0) = Complex(1.0, 0.3);  // no conjugate partner
    CHECK_THROWS_AS(inverse_transform(f), Error);
}

TEST_CASE("Parseval holds to 1e-12 relative") {
    Grid g(16, 5.0);
    Rng rng(3);
    PhysicalField f = random_physical(g, 3, rng);
    SpectralField fh = forward_transform(f);
    CHECK(l2_norm(fh) == doctest::Approx(l2_norm_phys(f)).epsilon(1e-12));
}

TEST_CASE("helmholtz projection annihilates gradients") {
    Grid g(16, 2.0 * M_PI);
    SpectralField phi(g, 1);
    phi.at(0, g.index_of(1), 0, 0) = Complex(0.0, -0.5);
    phi.at(0, g.index_of(-1), 0, 0) = Complex(0.0, 0.5);  // sin(x)
    SpectralField grad = gradient(phi);
    SpectralField proj = helmholtz_project(grad);
    CHECK(proj.max_abs() < 1e-14);
}

TEST_CASE("helmholtz projection leaves solenoidal fields unchanged") {
    Grid g(16, 2.0 * M_PI);
    Rng rng(11);
    SpectralField f = oracle::random_spectral(g, 3, rng, /*solenoidal=*/true);
    SpectralField again = helmholtz_project(f);
    CHECK(oracle::rel_err(again, f) < 1e-12);
}

TEST_CASE("helmholtz projection is idempotent and matches the per-mode formula") {
    Grid g(16, 2.0 * M_PI);
    Rng rng(12);
    SpectralField f = oracle::random_spectral(g, 3, rng);
    SpectralField once = helmholtz_project(f);
    SpectralField twice = helmholtz_project(once);
    CHECK(oracle::rel_err(twice, once) < 1e-12);
    CHECK(divergence_residual(once) < 1e-10);

    // direct per-mode evaluation on a mixed single mode
    SpectralField single(g, 3);
    const int ix = g.index_of(2), iy = g.index_of(1), iz = g.index_of(-1);
    single.at(0, ix, iy, iz) = Complex(0.3, -0.2);
    single.at(1, ix, iy, iz) = Complex(-1.0, 0.5);
    single.at(2, ix, iy, iz) = Complex(0.1, 0.7);
    enforce_hermitian(single);
    SpectralField p = helmholtz_project(single);
    const double k[3] = {g.frequency(2), g.frequency(1), g.frequency(-1)};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    Complex dot = 0.0;
    for (int c = 0; c < 3; ++c) dot += k[c] * single.at(c, ix, iy, iz);
    for (int c = 0; c < 3; ++c) {
        const Complex expect = single.at(c, ix, iy, iz) - k[c] * dot / k2;
        CHECK(std::abs(p.at(c, ix, iy, iz) - expect) < 1e-14);
    }
}

TEST_CASE("curl of gradient vanishes; divergence of curl vanishes") {
    Grid g(16, 2.0 * M_PI);
    Rng rng(13);
    SpectralField phi = oracle::random_spectral(g, 1, rng);
    CHECK(curl(gradient(phi)).max_abs() < 1e-12 * std::max(1.0, phi.max_abs()));

    SpectralField f = oracle::random_spectral(g, 3, rng);
    SpectralField c = curl(f);
    CHECK(divergence(c).max_abs() < 1e-12 * std::max(1.0, c.max_abs()));
}

TEST_CASE("laplacian is the -|k|^2 eigenvalue on a single mode") {
    Grid g(16, 2.0 * M_PI);
    SpectralField f(g, 3);
    const int ix = g.index_of(2), iy = g.index_of(-1), iz = g.index_of(1);
    f.at(0, ix, iy, iz) = Complex(1.0, 0.5);
    enforce_hermitian(f);
    SpectralField lap = laplacian(f);
    const double k2 = g.frequency(2) * g.frequency(2) + g.frequency(-1) * g.frequency(-1) +
                      g.frequency(1) * g.frequency(1);
    CHECK(std::abs(lap.at(0, ix, iy, iz) + k2 * f.at(0, ix, iy, iz)) < 1e-12);
}

TEST_CASE("cross product of a field with itself is zero") {
    Grid g(8, 2.0 * M_PI);
    Rng rng(17);
    SpectralField f = oracle::random_spectral(g, 3, rng);
    SpectralField x = pointwise_product(f, f, ProductKind::Cross);
    CHECK(x.max_abs() < 1e-13 * std::max(1.0, f.max_abs() * f.max_abs()));
}

TEST_CASE("product of single modes is supported on k1 +/- k2") {
    Grid g(16, 2.0 * M_PI);
    SpectralField f(g, 3), h(g, 3);
    f.at(0, g.index_of(1), 0, 0) = 0.5;
    f.at(0, g.index_of(-1), 0, 0) = 0.5;
    h.at(1, 0, g.index_of(2), 0) = 0.5;
    h.at(1, 0, g.index_of(-2), 0) = 0.5;
    SpectralField t = pointwise_product(f, h, ProductKind::Tensor);
    const int n = g.n();
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz)
                for (int c = 0; c < 9; ++c) {
                    const double v = std::abs(t.at(c, ix, iy, iz));
                    const bool expected = c == 1 && iz == 0 &&
                                          (ix == g.index_of(1) || ix == g.index_of(-1)) &&
                                          (iy == g.index_of(2) || iy == g.index_of(-2));
                    if (expected)
                        CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
                    else
                        CHECK(v < 1e-14);
                }
}

TEST_CASE("pointwise products match the direct convolution oracle on n=8") {
    Grid g(8, 2.0 * M_PI);
    Rng rng(19);
    SpectralField f = oracle::random_spectral(g, 3, rng);
    SpectralField h = oracle::random_spectral(g, 3, rng);
    SpectralField t = pointwise_product(f, h, ProductKind::Tensor);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<Complex> a(f.data(i), f.data(i) + g.n3());
            std::vector<Complex> b(h.data(j), h.data(j) + g.n3());
            const auto conv = oracle::naive_convolution(g, a, b);
            double worst = 0.0, scale = 0.0;
            for (std::size_t m = 0; m < g.n3(); ++m) {
                worst = std::max(worst, std::abs(t.at(3 * i + j, m) - conv[m]));
                scale = std::max(scale, std::abs(conv[m]));
            }
            CHECK(worst < 1e-12 * std::max(1.0, scale));
        }
}

TEST_CASE("product rejects grid mismatch") {
    Grid a(8, 2.0 * M_PI), b(16, 2.0 * M_PI);
    SpectralField f(a, 3), h(b, 3);
    CHECK_THROWS_AS(pointwise_product(f, h, ProductKind::Dot), Error);
}

TEST_CASE("dealiasing zeroes the top-third modes and the Nyquist plane") {
    Grid g(8, 2.0 * M_PI);
    SpectralField f(g, 1);
    for (auto& c : f.raw()) c = Complex(1.0, 0.0);
    dealias(f);
    CHECK(std::abs(f.at(0, g.index_of(3), 0, 0)) == 0.0);  // 3 > 8/3
    CHECK(std::abs(f.at(0, 4, 0, 0)) == 0.0);              // Nyquist
    CHECK(std::abs(f.at(0, g.index_of(2), 0, 0)) == 1.0);
}

TEST_CASE("reality: Hermitian input leaves tiny imaginary residue") {
    Grid g(16, 2.0 * M_PI);
    Rng rng(23);
    SpectralField f = oracle::random_spectral(g, 3, rng);
    std::vector<Complex> buf(f.raw());
    // imaginary residue via a complex backward transform by hand
    PhysicalField ph = inverse_transform(f);
    SpectralField back = forward_transform(ph);
    CHECK(oracle::rel_err(back, f) < 1e-12);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(6, 1.0), Error);
    CHECK_THROWS_AS(Grid(2, 1.0), Error);
    CHECK_THROWS_AS(Grid(8, -1.0), Error);
    CHECK_NOTHROW(Grid(4, 1.0));
}

#pragma once

#include <complex>
#include <vector>

#include "hallmild/grid.hpp"

namespace hallmild {

using Complex = std::complex<double>;

// Fourier-side field with ncomp components; component-major storage.
// Coefficient convention: f(x) = sum_k coef(k) exp(i 2*pi*k.x/L), so a real
// cosine mode of unit amplitude carries 1/2 at +/-k.
class SpectralField {
public:
    SpectralField(Grid grid, int ncomp)
        : grid_(grid), ncomp_(ncomp), coef_(static_cast<std::size_t>(ncomp) * grid.n3()) {}

    const Grid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    std::size_t size() const { return coef_.size(); }

    Complex& at(int c, std::size_t flat) { return coef_[c * grid_.n3() + flat]; }
    const Complex& at(int c, std::size_t flat) const { return coef_[c * grid_.n3() + flat]; }
    Complex& at(int c, int ix, int iy, int iz) { return at(c, grid_.flat(ix, iy, iz)); }
    const Complex& at(int c, int ix, int iy, int iz) const { return at(c, grid_.flat(ix, iy, iz)); }

    Complex* data(int c) { return coef_.data() + c * grid_.n3(); }
    const Complex* data(int c) const { return coef_.data() + c * grid_.n3(); }
    std::vector<Complex>& raw() { return coef_; }
    const std::vector<Complex>& raw() const { return coef_; }

    bool is_solenoidal = false;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    SpectralField& operator*=(Complex s);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    // Largest coefficient magnitude (deterministic scan).
    double max_abs() const;

private:
    Grid grid_;
    int ncomp_;
    std::vector<Complex> coef_;
};

using SpectralVectorField = SpectralField;  // ncomp == 3

inline SpectralField make_vector_field(const Grid& g) { return SpectralField(g, 3); }
inline SpectralField make_scalar_field(const Grid& g) { return SpectralField(g, 1); }
inline SpectralField make_tensor_field(const Grid& g) { return SpectralField(g, 9); }

// Physical-side field (real samples), component-major.
class PhysicalField {
public:
    PhysicalField(Grid grid, int ncomp)
        : grid_(grid), ncomp_(ncomp), val_(static_cast<std::size_t>(ncomp) * grid.n3()) {}

    const Grid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }

    double& at(int c, std::size_t flat) { return val_[c * grid_.n3() + flat]; }
    const double& at(int c, std::size_t flat) const { return val_[c * grid_.n3() + flat]; }
    double* data(int c) { return val_.data() + c * grid_.n3(); }
    const double* data(int c) const { return val_.data() + c * grid_.n3(); }
    std::vector<double>& raw() { return val_; }
    const std::vector<double>& raw() const { return val_; }

    bool all_finite() const;

private:
    Grid grid_;
    int ncomp_;
    std::vector<double> val_;
};

using PhysicalVectorField = PhysicalField;

}  // namespace hallmild

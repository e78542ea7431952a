#include "hallmild/field.hpp"

#include <algorithm>
#include <cmath>

namespace hallmild {

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (grid_ != o.grid_ || ncomp_ != o.ncomp_) throw Error("SpectralField: shape mismatch");
    for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
    is_solenoidal = is_solenoidal && o.is_solenoidal;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (grid_ != o.grid_ || ncomp_ != o.ncomp_) throw Error("SpectralField: shape mismatch");
    for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
    is_solenoidal = is_solenoidal && o.is_solenoidal;
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coef_) c *= s;
    return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
    for (auto& c : coef_) c *= s;
    return *this;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& c : coef_) m = std::max(m, std::abs(c));
    return m;
}

bool PhysicalField::all_finite() const {
    return std::all_of(val_.begin(), val_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace hallmild

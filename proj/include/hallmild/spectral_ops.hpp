#pragma once

#include "hallmild/field.hpp"

namespace hallmild {

// Transforms. forward_transform rejects non-finite input; inverse_transform
// rejects fields whose Hermitian-symmetry defect would leave an imaginary
// residue above ~1e-10 of the field magnitude.
SpectralField forward_transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& f);

// Relative Hermitian-symmetry defect: max |coef(-k) - conj(coef(k))| scaled
// by the largest coefficient.
double hermitian_residual(const SpectralField& f);
void enforce_hermitian(SpectralField& f);

// 2/3-rule truncation plus Nyquist-plane zeroing, in place.
void dealias(SpectralField& f);

// Exact spectral differentiation (Nyquist modes zeroed by construction).
SpectralField gradient(const SpectralField& scalar);    // 1 -> 3
SpectralField divergence(const SpectralField& vec);     // 3 -> 1
SpectralField curl(const SpectralField& vec);           // 3 -> 3
SpectralField laplacian(const SpectralField& f);        // any ncomp
SpectralField partial(const SpectralField& f, int axis);
// Contraction d_j T_{ij} of a 9-component tensor (row-major T_{ij}).
SpectralField divergence_tensor(const SpectralField& tensor);  // 9 -> 3

// Leray/Helmholtz projection: per mode I - k k^T/|k|^2, zero mode annihilated.
SpectralField helmholtz_project(const SpectralField& vec);

// Scaled solenoidality defect: max_k |k.u(k)| / max_k |k||u(k)|.
double divergence_residual(const SpectralField& vec);

enum class ProductKind { Tensor, Cross, Dot };

// Pointwise product via physical space, dealiased on return.
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g, ProductKind kind);

// Parseval: physical L2 norm squared equals volume * sum |coef|^2.
double l2_norm(const SpectralField& f);
double l2_norm_phys(const PhysicalField& f);
// Volume-weighted physical Lp norm of the pointwise Euclidean magnitude.
double lp_norm_phys(const PhysicalField& f, double p);

// <f,g> = volume * sum conj(f).g summed over components (real part).
double inner_product(const SpectralField& f, const SpectralField& g);

}  // namespace hallmild

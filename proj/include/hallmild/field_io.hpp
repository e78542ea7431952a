#pragma once

#include <string>

#include "hallmild/field.hpp"

namespace hallmild {

// Binary field file, little-endian:
//   magic "HMF1" | n:u32 | L:f64 | n_components:u32 | layout:u32
// followed by the coefficients in row-major k-order, components interleaved
// per mode, each value an interleaved float32 (re, im) pair (layout tag 1).
// A JSON sidecar <path>.json records grid, creation operation, provenance.
void write_field(const std::string& path, const SpectralField& f, const std::string& operation,
                 const std::string& provenance);
SpectralField read_field(const std::string& path);

}  // namespace hallmild

#pragma once

#include <complex>

namespace hallmild {

// Minimal FFTW front end. Plans are cached per shape (FFTW_ESTIMATE for
// reproducible plan choice) and executed through the new-array interface, so
// concurrent calls on distinct buffers are safe. No normalization applied:
// "forward" sums exp(-ikx), "backward" sums exp(+ikx).
void fft3_forward(int n, std::complex<double>* data);
void fft3_backward(int n, std::complex<double>* data);

// Batched contiguous 1-D transforms: count series of length len, series i at
// data + i*len. sign: -1 forward, +1 backward.
void fft1_many(int len, int count, std::complex<double>* data, int sign);

}  // namespace hallmild

#pragma once

#include <vector>

namespace gait {

// Daubechies-6 orthonormal wavelet (12 taps) with periodic boundary
// handling. Odd-length levels are zero-padded to even before the
// transform and trimmed on reconstruction, which keeps both the
// round-trip identity and the energy bound exact.

inline constexpr int kDb6FilterLength = 12;

struct WaveletDecomposition {
    std::vector<double> approx;                 // coefficients at the deepest level
    std::vector<std::vector<double>> details;   // details[0] = level 1 (finest)
    std::vector<std::size_t> level_lengths;     // input length at each level, for trimming
};

/// Multi-level periodized Db6 analysis. Requires input length >= 12 and
/// levels >= 1.
WaveletDecomposition db6_decompose(const std::vector<double>& x, int levels);

/// Exact inverse of db6_decompose.
std::vector<double> db6_reconstruct(const WaveletDecomposition& dec);

/// Denoises by zeroing every detail band and reconstructing from the
/// deepest approximation only. Output length equals input length.
std::vector<double> wavelet_denoise(const std::vector<double>& x, int levels = 2);

}  // namespace gait

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gaitauth/segmentation.hpp"

namespace gait {

inline constexpr std::size_t kNumTimeFeatures = 49;
inline constexpr std::size_t kNumFreqFeatures = 240;
inline constexpr std::size_t kFeatureVectorLength = 289;
inline constexpr std::size_t kFftLength = 256;  // zero-padded transform size
inline constexpr std::size_t kNumSpectralBins = 40;

/// n_s concatenated one-cycle segments per channel. segment_bounds has
/// n_s + 1 entries: entry u is where segment u starts in the concatenated
/// series, the last entry is the series length.
struct GaitPattern {
    std::vector<double> z, xy, m;
    std::vector<std::size_t> segment_bounds;
    std::size_t size() const { return z.size(); }
    std::size_t num_segments() const {
        return segment_bounds.empty() ? 0 : segment_bounds.size() - 1;
    }
};

struct FeatureVector {
    std::vector<double> values;  // length 289
    std::string subject_id;
    std::string session_id;
};

struct FreqOptions {
    std::size_t bin_offset = 0;  // first spectral bin reported (0 keeps the DC bin)
};

/// Windows the segment list into overlapping patterns of n_s consecutive
/// segments with 50% overlap (stride n_s/2). Returns an empty list when
/// fewer than n_s segments are available. n_s must be even and positive.
std::vector<GaitPattern> extract_patterns(const std::vector<CycleSegment>& segments,
                                          int n_s = 4);

/// Time-domain block, 49 values. Per channel (Z, XY, M order): mean of
/// per-segment maxima, mean of per-segment minima, average absolute
/// difference from the mean, RMS (1/n), standard deviation (1/(n-1)),
/// waveform length, then a 10-bin histogram of the channel normalized to
/// sum 1 over the channel's own [min, max] (all mass in bin 0 when the
/// range is degenerate). One shared average segment length goes last.
std::vector<double> time_features(const GaitPattern& p);

/// Frequency-domain block, 240 values. Per channel: magnitudes of DFT
/// bins [offset, offset+40) of the series zero-padded to 256, then DCT-II
/// coefficients over the same bins. Channels longer than 256 samples are
/// truncated (with a warning flag on the pattern level left to callers).
std::vector<double> freq_features(const GaitPattern& p, const FreqOptions& opts = {});

/// [time | freq] concatenation, length 289. Throws if any feature comes
/// out non-finite, naming the offending index.
FeatureVector feature_vector(const GaitPattern& p, const FreqOptions& opts = {});

/// Radix-2 iterative FFT; n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

/// DCT-II of the first `bins` coefficients via the even/odd FFT
/// rearrangement: C_k = Re(exp(-i pi k / (2N)) * FFT(v)_k).
std::vector<double> dct2_bins(const std::vector<double>& x, std::size_t padded_len,
                              std::size_t first_bin, std::size_t bins);

/// CSV export/import with header `subject_id,session_id,f0..f288`.
void write_features_csv(const std::vector<FeatureVector>& rows, std::ostream& out);
std::vector<FeatureVector> read_features_csv(std::istream& in);

}  // namespace gait

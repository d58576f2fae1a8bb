#pragma once

#include <vector>

#include "gaitauth/earth.hpp"

namespace gait {

/// Indices of strict local minima of the vertical channel, in order.
struct PeakSet {
    std::vector<std::size_t> indices;
};

/// Selected gait-cycle starting points plus the cycle-length estimate
/// they were selected against.
struct CycleStarts {
    std::vector<std::size_t> indices;
    int cycle_len = 0;  // samples
};

/// One full gait cycle on all three channels. Bounds are inclusive, so
/// consecutive segments share one boundary sample.
struct CycleSegment {
    std::vector<double> z, xy, m;
    std::size_t start_index = 0;
};

struct SegmentationParams {
    double tau = 0.5;              // peak-magnitude threshold multiplier
    double epsilon_fraction = 0.3; // position window as a fraction of the cycle length
    int smooth_window = 5;         // moving-average window for the autocorrelation
    double min_lag_fraction = 0.25;// minimum lag in seconds-of-rate skipped in peak search
    double min_peak_rise = 0.1;    // required rise of an autocorrelation peak above the
                                   // preceding trough; rejects flat (aperiodic) signals
};

/// Biased autocorrelation normalized so c_0 = 1:
/// c_t = (N/(N-t)) * sum_i z_i z_{i+t} / sum_i z_i^2. Throws when the
/// signal has no energy.
std::vector<double> autocorr(const std::vector<double>& z);

/// Smooths the autocorrelation with a centered moving average and returns
/// the lag of its second prominent local maximum: the first maximum sits
/// near the single-step interval, the second at the full two-step cycle.
/// Throws "aperiodic signal" when fewer than two such maxima exist.
int estimate_cycle_length(const std::vector<double>& c, double rate_hz,
                          const SegmentationParams& params = {});

/// All strict local minima of z, order preserved. Throws if there are
/// fewer than two.
PeakSet find_negative_peaks(const std::vector<double>& z);

/// Magnitude cutoff for cycle-start candidates: mean of the peak values
/// minus tau times their (n-1)-normalized standard deviation.
double magnitude_threshold(const std::vector<double>& z, const PeakSet& peaks, double tau);

/// Greedy left-to-right selection of cycle starts among the negative
/// peaks. A peak qualifies when its value is below the magnitude cutoff
/// and some later peak lies within [delta - eps, delta + eps] of it; each
/// accepted start is followed by the qualifying peak closest to
/// (previous + delta), and the chain is closed by the successor peak of
/// the last start. Throws when fewer than two starts survive.
CycleStarts select_cycle_starts(const std::vector<double>& z, const PeakSet& peaks,
                                int cycle_len, double tau, int epsilon);

/// Splits the signal at the k starts into k-1 segments with inclusive
/// bounds on all three channels.
std::vector<CycleSegment> split_cycles(const GaitSignal& signal, const CycleStarts& starts);

/// Convenience wrapper: autocorrelation, cycle-length estimate, peak
/// filtering and splitting in one call. epsilon defaults to
/// round(epsilon_fraction * cycle_len).
std::vector<CycleSegment> segment_signal(const GaitSignal& signal,
                                         const SegmentationParams& params = {});

}  // namespace gait

#include "gaitauth/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gait {

std::vector<double> autocorr(const std::vector<double>& z) {
    const std::size_t n = z.size();
    if (n < 2) throw std::invalid_argument("autocorr: need at least 2 samples");
    double energy = 0.0;
    for (double v : z) energy += v * v;
    if (energy == 0.0) throw std::runtime_error("no signal energy");

    std::vector<double> c(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double s = 0.0;
        for (std::size_t i = 0; i + t < n; ++i) s += z[i] * z[i + t];
        c[t] = (static_cast<double>(n) / static_cast<double>(n - t)) * s / energy;
    }
    return c;
}

namespace {

std::vector<double> moving_average(const std::vector<double>& c, int window) {
    if (window <= 1) return c;
    const int half = window / 2;
    const int n = static_cast<int>(c.size());
    std::vector<double> out(c.size());
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - half);
        int hi = std::min(n - 1, i + half);
        double s = 0.0;
        for (int j = lo; j <= hi; ++j) s += c[j];
        out[i] = s / static_cast<double>(hi - lo + 1);
    }
    return out;
}

}  // namespace

int estimate_cycle_length(const std::vector<double>& c, double rate_hz,
                          const SegmentationParams& params) {
    auto sm = moving_average(c, params.smooth_window);
    const int n = static_cast<int>(sm.size());
    const int min_lag = std::max(1, static_cast<int>(std::lround(params.min_lag_fraction * rate_hz)));

    // A peak must rise by min_peak_rise above the lowest point since the
    // previous peak; plain strict maxima would fire on the noise wiggles
    // of an aperiodic signal.
    std::vector<int> maxima;
    double trough = std::numeric_limits<double>::infinity();
    for (int t = min_lag; t + 1 < n; ++t) {
        trough = std::min(trough, sm[t]);
        if (sm[t] > sm[t - 1] && sm[t] > sm[t + 1] && sm[t] - trough >= params.min_peak_rise) {
            maxima.push_back(t);
            if (maxima.size() == 2) return maxima[1];
            trough = std::numeric_limits<double>::infinity();
        }
    }
    throw std::runtime_error("aperiodic signal");
}

PeakSet find_negative_peaks(const std::vector<double>& z) {
    if (z.size() < 3) throw std::invalid_argument("find_negative_peaks: need at least 3 samples");
    PeakSet peaks;
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        if (z[i - 1] > z[i] && z[i + 1] > z[i]) peaks.indices.push_back(i);
    }
    if (peaks.indices.size() <= 1) {
        throw std::runtime_error("not enough negative peaks to segment");
    }
    return peaks;
}

double magnitude_threshold(const std::vector<double>& z, const PeakSet& peaks, double tau) {
    const std::size_t n = peaks.indices.size();
    if (n < 2) throw std::invalid_argument("magnitude_threshold: need at least 2 peaks");
    double mean = 0.0;
    for (auto i : peaks.indices) mean += z[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (auto i : peaks.indices) {
        const double d = z[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - 1);
    return mean - tau * std::sqrt(var);
}

CycleStarts select_cycle_starts(const std::vector<double>& z, const PeakSet& peaks,
                                int cycle_len, double tau, int epsilon) {
    if (cycle_len <= 0) throw std::invalid_argument("cycle length must be positive");
    if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
    const double delta = magnitude_threshold(z, peaks, tau);
    const auto& idx = peaks.indices;

    auto deep = [&](std::size_t peak) { return z[peak] < delta; };
    // The position criterion asks only that *some* later peak closes the
    // cycle; that successor is not itself required to pass the magnitude
    // test.
    auto has_successor = [&](std::size_t j) {
        for (std::size_t k = j + 1; k < idx.size(); ++k) {
            auto gap = idx[k] - idx[j];
            if (gap > static_cast<std::size_t>(cycle_len + epsilon)) break;
            if (gap + static_cast<std::size_t>(epsilon) >= static_cast<std::size_t>(cycle_len)) {
                return true;
            }
        }
        return false;
    };

    std::vector<bool> qualifies(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        qualifies[j] = deep(idx[j]) && has_successor(j);
    }

    // Greedy chain anchored at the previous accepted start: take the
    // qualifying peak closest to (previous + cycle_len) within the
    // position window; when none is left, close the final cycle with a
    // deep successor peak.
    CycleStarts starts;
    starts.cycle_len = cycle_len;
    std::size_t first = 0;
    while (first < idx.size() && !qualifies[first]) ++first;
    if (first == idx.size()) throw std::runtime_error("no complete cycle");
    starts.indices.push_back(idx[first]);

    std::size_t cursor = first;
    while (true) {
        const std::size_t prev = starts.indices.back();
        const double target = static_cast<double>(prev) + cycle_len;
        long best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        long best_close = -1;
        double best_close_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = cursor + 1; j < idx.size(); ++j) {
            const auto gap = idx[j] - prev;
            if (gap > static_cast<std::size_t>(cycle_len + epsilon)) break;
            if (gap + static_cast<std::size_t>(epsilon) < static_cast<std::size_t>(cycle_len)) {
                continue;
            }
            const double dist = std::abs(static_cast<double>(idx[j]) - target);
            if (qualifies[j] && dist < best_dist) {
                best = static_cast<long>(j);
                best_dist = dist;
            }
            if (deep(idx[j]) && dist < best_close_dist) {
                best_close = static_cast<long>(j);
                best_close_dist = dist;
            }
        }
        if (best >= 0) {
            cursor = static_cast<std::size_t>(best);
            starts.indices.push_back(idx[cursor]);
            continue;
        }
        if (best_close >= 0) {
            // Closes the last cycle; by construction this peak has no
            // qualifying continuation of its own.
            starts.indices.push_back(idx[static_cast<std::size_t>(best_close)]);
        }
        break;
    }

    if (starts.indices.size() < 2) throw std::runtime_error("no complete cycle");
    return starts;
}

std::vector<CycleSegment> split_cycles(const GaitSignal& signal, const CycleStarts& starts) {
    if (starts.indices.size() < 2) throw std::invalid_argument("need at least 2 cycle starts");
    std::vector<CycleSegment> segments;
    segments.reserve(starts.indices.size() - 1);
    for (std::size_t i = 0; i + 1 < starts.indices.size(); ++i) {
        const std::size_t lo = starts.indices[i];
        const std::size_t hi = starts.indices[i + 1];  // inclusive
        if (hi >= signal.size()) throw std::out_of_range("cycle start beyond signal end");
        CycleSegment seg;
        seg.start_index = lo;
        seg.z.assign(signal.z.begin() + lo, signal.z.begin() + hi + 1);
        seg.xy.assign(signal.xy.begin() + lo, signal.xy.begin() + hi + 1);
        seg.m.assign(signal.m.begin() + lo, signal.m.begin() + hi + 1);
        segments.push_back(std::move(seg));
    }
    return segments;
}

std::vector<CycleSegment> segment_signal(const GaitSignal& signal,
                                         const SegmentationParams& params) {
    auto c = autocorr(signal.z);
    const int cycle_len = estimate_cycle_length(c, signal.rate_hz, params);
    auto peaks = find_negative_peaks(signal.z);
    const int epsilon = static_cast<int>(std::lround(params.epsilon_fraction * cycle_len));
    auto starts = select_cycle_starts(signal.z, peaks, cycle_len, params.tau, epsilon);
    return split_cycles(signal, starts);
}

}  // namespace gait

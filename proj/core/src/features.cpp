#include "gaitauth/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace gait {

std::vector<GaitPattern> extract_patterns(const std::vector<CycleSegment>& segments, int n_s) {
    if (n_s <= 0 || n_s % 2 != 0) {
        throw std::invalid_argument("pattern size n_s must be a positive even number");
    }
    std::vector<GaitPattern> patterns;
    const std::size_t ns = static_cast<std::size_t>(n_s);
    if (segments.size() < ns) return patterns;  // session too short, not an error

    const std::size_t stride = ns / 2;  // 50% overlap
    for (std::size_t off = 0; off + ns <= segments.size(); off += stride) {
        GaitPattern p;
        p.segment_bounds.push_back(0);
        for (std::size_t u = 0; u < ns; ++u) {
            const auto& seg = segments[off + u];
            p.z.insert(p.z.end(), seg.z.begin(), seg.z.end());
            p.xy.insert(p.xy.end(), seg.xy.begin(), seg.xy.end());
            p.m.insert(p.m.end(), seg.m.begin(), seg.m.end());
            p.segment_bounds.push_back(p.z.size());
        }
        patterns.push_back(std::move(p));
    }
    return patterns;
}

namespace {

struct ChannelView {
    const std::vector<double>& data;
};

double mean_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

void channel_time_features(const std::vector<double>& x,
                           const std::vector<std::size_t>& bounds, std::vector<double>& out) {
    // Per-segment extrema.
    double sum_max = 0.0, sum_min = 0.0;
    const std::size_t nseg = bounds.size() - 1;
    for (std::size_t u = 0; u < nseg; ++u) {
        auto lo = x.begin() + static_cast<long>(bounds[u]);
        auto hi = x.begin() + static_cast<long>(bounds[u + 1]);
        auto [mn, mx] = std::minmax_element(lo, hi);
        sum_max += *mx;
        sum_min += *mn;
    }
    out.push_back(sum_max / static_cast<double>(nseg));
    out.push_back(sum_min / static_cast<double>(nseg));

    const double mu = mean_of(x);
    double aad = 0.0, sq = 0.0, var = 0.0, wavelen = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        aad += std::abs(x[i] - mu);
        sq += x[i] * x[i];
        var += (x[i] - mu) * (x[i] - mu);
        if (i + 1 < x.size()) wavelen += std::abs(x[i + 1] - x[i]);
    }
    const double n = static_cast<double>(x.size());
    out.push_back(aad / n);
    out.push_back(std::sqrt(sq / n));
    out.push_back(x.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0);
    out.push_back(wavelen);

    // 10 equal-width bins over the channel's own range, counts normalized
    // to sum 1. A flat channel puts all mass in bin 0.
    auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *mn_it, span = *mx_it - *mn_it;
    double hist[10] = {0};
    for (double v : x) {
        int bin = 0;
        if (span > 0) {
            bin = static_cast<int>((v - lo) / span * 10.0);
            bin = std::clamp(bin, 0, 9);
        }
        hist[bin] += 1.0;
    }
    for (double h : hist) out.push_back(h / n);
}

}  // namespace

std::vector<double> time_features(const GaitPattern& p) {
    if (p.size() == 0 || p.num_segments() == 0) {
        throw std::invalid_argument("time_features: empty pattern");
    }
    std::vector<double> out;
    out.reserve(kNumTimeFeatures);
    for (const auto* ch : {&p.z, &p.xy, &p.m}) {
        channel_time_features(*ch, p.segment_bounds, out);
    }
    // Average one-cycle length is the same on every channel, so it is
    // emitted once.
    const double total = static_cast<double>(p.segment_bounds.back());
    out.push_back(total / static_cast<double>(p.num_segments()));
    return out;
}

void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of 2");
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k];
                auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<double> dct2_bins(const std::vector<double>& x, std::size_t padded_len,
                              std::size_t first_bin, std::size_t bins) {
    // Even/odd rearrangement: v = [x0, x2, ..., x_{N-1}, ..., x3, x1],
    // then C_k = Re(exp(-i*pi*k/(2N)) * FFT(v)_k).
    const std::size_t n = padded_len;
    std::vector<std::complex<double>> v(n, 0.0);
    std::size_t half = (x.size() + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = x[2 * i];
    for (std::size_t i = 0; 2 * i + 1 < x.size(); ++i) v[n - 1 - i] = x[2 * i + 1];
    fft_inplace(v);
    std::vector<double> out;
    out.reserve(bins);
    for (std::size_t k = first_bin; k < first_bin + bins; ++k) {
        const double ang = -M_PI * static_cast<double>(k) / (2.0 * static_cast<double>(n));
        out.push_back((std::complex<double>(std::cos(ang), std::sin(ang)) * v[k]).real());
    }
    return out;
}

std::vector<double> freq_features(const GaitPattern& p, const FreqOptions& opts) {
    if (p.size() == 0) throw std::invalid_argument("freq_features: empty pattern");
    if (opts.bin_offset + kNumSpectralBins > kFftLength) {
        throw std::invalid_argument("bin offset leaves fewer than 40 bins");
    }
    std::vector<double> out;
    out.reserve(kNumFreqFeatures);
    for (const auto* ch : {&p.z, &p.xy, &p.m}) {
        std::vector<double> x = *ch;
        if (x.size() > kFftLength) x.resize(kFftLength);  // ~9.5 s at 27 Hz; rare

        std::vector<std::complex<double>> buf(kFftLength, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
        fft_inplace(buf);
        for (std::size_t k = opts.bin_offset; k < opts.bin_offset + kNumSpectralBins; ++k) {
            out.push_back(std::abs(buf[k]));
        }
        auto dct = dct2_bins(x, kFftLength, opts.bin_offset, kNumSpectralBins);
        out.insert(out.end(), dct.begin(), dct.end());
    }
    return out;
}

FeatureVector feature_vector(const GaitPattern& p, const FreqOptions& opts) {
    FeatureVector fv;
    fv.values = time_features(p);
    auto freq = freq_features(p, opts);
    fv.values.insert(fv.values.end(), freq.begin(), freq.end());
    if (fv.values.size() != kFeatureVectorLength) {
        throw std::logic_error("feature vector length mismatch");
    }
    for (std::size_t i = 0; i < fv.values.size(); ++i) {
        if (!std::isfinite(fv.values[i])) {
            throw std::runtime_error("non-finite feature at index " + std::to_string(i));
        }
    }
    return fv;
}

namespace {

std::string format_val(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_features_csv(const std::vector<FeatureVector>& rows, std::ostream& out) {
    out << "subject_id,session_id";
    for (std::size_t i = 0; i < kFeatureVectorLength; ++i) out << ",f" << i;
    out << '\n';
    for (const auto& fv : rows) {
        out << fv.subject_id << ',' << fv.session_id;
        for (double v : fv.values) out << ',' << format_val(v);
        out << '\n';
    }
}

std::vector<FeatureVector> read_features_csv(std::istream& in) {
    std::vector<FeatureVector> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("subject_id,", 0) == 0) continue;

        FeatureVector fv;
        std::size_t start = 0, field = 0;
        while (start <= line.size()) {
            std::size_t pos = line.find(',', start);
            std::string cell = line.substr(start, pos == std::string::npos ? pos : pos - start);
            if (field == 0) {
                fv.subject_id = cell;
            } else if (field == 1) {
                fv.session_id = cell;
            } else {
                double v = 0.0;
                auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
                    throw std::runtime_error("features csv: bad number at line " +
                                             std::to_string(line_no));
                }
                fv.values.push_back(v);
            }
            ++field;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (fv.values.size() != kFeatureVectorLength) {
            throw std::runtime_error("features csv: line " + std::to_string(line_no) + " has " +
                                     std::to_string(fv.values.size()) + " features, expected 289");
        }
        rows.push_back(std::move(fv));
    }
    return rows;
}

}  // namespace gait

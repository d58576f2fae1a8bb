#include "gaitauth/wavelet.hpp"

#include <stdexcept>

namespace gait {

namespace {

// Db6 scaling filter, 12 taps. Sum = sqrt(2), unit energy, orthogonal to
// its own even shifts.
constexpr double kDb6[kDb6FilterLength] = {
    0.11154074335010946,    0.49462389039845309,   0.75113390802109535,
    0.31525035170919763,    -0.22626469396543982,  -0.12976686756726194,
    0.097501605587323049,   0.027522865530305729,  -0.03158203931748603,
    0.00055384220116149614, 0.0047772575109455106, -0.0010773010853084796,
};

// Quadrature mirror wavelet filter g[n] = (-1)^n h[L-1-n].
constexpr double qmf(int n) {
    double v = kDb6[kDb6FilterLength - 1 - n];
    return (n % 2 == 0) ? v : -v;
}

// One periodized analysis step. Odd input is zero-padded to even length;
// zero padding keeps the padded signal's energy equal to the input's.
void dwt_step(const std::vector<double>& x, std::vector<double>& approx,
              std::vector<double>& detail) {
    std::size_t n = x.size() + (x.size() % 2);
    std::size_t half = n / 2;
    approx.assign(half, 0.0);
    detail.assign(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (int t = 0; t < kDb6FilterLength; ++t) {
            std::size_t i = (2 * k + static_cast<std::size_t>(t)) % n;
            double v = i < x.size() ? x[i] : 0.0;
            a += kDb6[t] * v;
            d += qmf(t) * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

// Adjoint of dwt_step; exact inverse because the analysis map is
// orthonormal. Trims back to orig_len when the level was padded.
std::vector<double> idwt_step(const std::vector<double>& approx,
                              const std::vector<double>& detail, std::size_t orig_len) {
    std::size_t n = approx.size() * 2;
    std::vector<double> x(n, 0.0);
    for (std::size_t k = 0; k < approx.size(); ++k) {
        for (int t = 0; t < kDb6FilterLength; ++t) {
            std::size_t i = (2 * k + static_cast<std::size_t>(t)) % n;
            x[i] += kDb6[t] * approx[k] + qmf(t) * detail[k];
        }
    }
    x.resize(orig_len);
    return x;
}

}  // namespace

WaveletDecomposition db6_decompose(const std::vector<double>& x, int levels) {
    if (levels < 1) throw std::invalid_argument("wavelet levels must be >= 1");
    if (x.size() < static_cast<std::size_t>(kDb6FilterLength)) {
        throw std::runtime_error("series too short for Db6 (need >= 12 samples, got " +
                                 std::to_string(x.size()) + ")");
    }
    WaveletDecomposition dec;
    std::vector<double> current = x;
    for (int level = 0; level < levels; ++level) {
        dec.level_lengths.push_back(current.size());
        std::vector<double> approx, detail;
        dwt_step(current, approx, detail);
        dec.details.push_back(std::move(detail));
        current = std::move(approx);
    }
    dec.approx = std::move(current);
    return dec;
}

std::vector<double> db6_reconstruct(const WaveletDecomposition& dec) {
    std::vector<double> current = dec.approx;
    for (std::size_t level = dec.details.size(); level-- > 0;) {
        current = idwt_step(current, dec.details[level], dec.level_lengths[level]);
    }
    return current;
}

std::vector<double> wavelet_denoise(const std::vector<double>& x, int levels) {
    auto dec = db6_decompose(x, levels);
    for (auto& detail : dec.details) detail.assign(detail.size(), 0.0);
    return db6_reconstruct(dec);
}

}  // namespace gait

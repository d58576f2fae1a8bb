#pragma once

// Independent brute-force reference implementations used only by tests.
// Each one deliberately takes the slow, obvious route so it shares no code
// path with the library implementation it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

// O(n^2) DFT by the defining sum.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x,
                                                   std::size_t padded_len) {
    std::vector<std::complex<double>> out(padded_len);
    for (std::size_t k = 0; k < padded_len; ++k) {
        std::complex<double> s(0.0, 0.0);
        for (std::size_t n = 0; n < x.size(); ++n) {
            const double ang = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(n) /
                               static_cast<double>(padded_len);
            s += x[n] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

// O(n^2) DCT-II by the defining sum (zero padding contributes nothing).
inline std::vector<double> naive_dct2(const std::vector<double>& x, std::size_t padded_len,
                                      std::size_t bins) {
    std::vector<double> out(bins, 0.0);
    for (std::size_t k = 0; k < bins; ++k) {
        double s = 0.0;
        for (std::size_t n = 0; n < x.size(); ++n) {
            s += x[n] * std::cos(M_PI * (2.0 * static_cast<double>(n) + 1.0) *
                                 static_cast<double>(k) / (2.0 * static_cast<double>(padded_len)));
        }
        out[k] = s;
    }
    return out;
}

// Plain 3x3 matrix helpers for checking rotation properties.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 matmul_t_left(const Mat3& r) {  // R^T * R
    Mat3 out{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += r[k][i] * r[k][j];
            out[i][j] = s;
        }
    }
    return out;
}

inline double det3(const Mat3& r) {
    return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
           r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
           r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

// Eigenvalues of a symmetric 3x3 matrix from the characteristic cubic
// (trigonometric form), sorted descending.
inline std::array<double, 3> symmetric3_eigenvalues(const Mat3& a) {
    const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double tr = a[0][0] + a[1][1] + a[2][2];
    std::array<double, 3> eig{};
    if (p1 == 0.0) {
        eig = {a[0][0], a[1][1], a[2][2]};
    } else {
        const double q = tr / 3.0;
        const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                          (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        Mat3 b{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
        }
        double r = det3(b) / 2.0;
        r = std::clamp(r, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        eig[0] = q + 2.0 * p * std::cos(phi);
        eig[2] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
        eig[1] = tr - eig[0] - eig[2];
    }
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

// Exhaustive ROC sweep: recounts FAR/FRR for every candidate threshold by
// scanning both score lists, then finds the EER by the same linear
// interpolation rule the report format documents.
struct RocOraclePoint {
    double threshold, far, frr;
};

struct RocOracleResult {
    std::vector<RocOraclePoint> points;
    double eer;
};

inline RocOracleResult roc_sweep(const std::vector<double>& genuine,
                                 const std::vector<double>& impostor) {
    std::vector<double> thresholds;
    thresholds.insert(thresholds.end(), genuine.begin(), genuine.end());
    thresholds.insert(thresholds.end(), impostor.begin(), impostor.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.push_back(std::nextafter(thresholds.back(), std::numeric_limits<double>::max()));

    RocOracleResult res;
    for (double t : thresholds) {
        std::size_t fa = 0, fr = 0;
        for (double s : impostor) {
            if (s >= t) ++fa;
        }
        for (double s : genuine) {
            if (s < t) ++fr;
        }
        res.points.push_back({t, static_cast<double>(fa) / static_cast<double>(impostor.size()),
                              static_cast<double>(fr) / static_cast<double>(genuine.size())});
    }

    res.eer = 0.5;
    for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
        const double d0 = res.points[i].far - res.points[i].frr;
        const double d1 = res.points[i + 1].far - res.points[i + 1].frr;
        if (d0 == 0.0) {
            res.eer = res.points[i].far;
            break;
        }
        if (d0 > 0.0 && d1 <= 0.0) {
            const double t = d0 / (d0 - d1);
            res.eer = res.points[i].far + t * (res.points[i + 1].far - res.points[i].far);
            break;
        }
    }
    return res;
}

// Hinge-loss objective evaluated directly from its definition.
inline double hinge_objective(double w, double b, double c,
                              const std::vector<double>& pos, const std::vector<double>& neg) {
    double obj = 0.5 * (w * w + b * b);
    for (double x : pos) obj += c * std::max(0.0, 1.0 - (w * x + b));
    for (double x : neg) obj += c * std::max(0.0, 1.0 + (w * x + b));
    return obj;
}

// Coarse-to-fine grid search for the 1-D SVM objective minimum.
inline double hinge_grid_min(double c, const std::vector<double>& pos,
                             const std::vector<double>& neg) {
    double best_w = 0.0, best_b = 0.0;
    double lo_w = -4.0, hi_w = 4.0, lo_b = -4.0, hi_b = 4.0;
    double best = std::numeric_limits<double>::infinity();
    for (int stage = 0; stage < 4; ++stage) {
        const int steps = 200;
        double bw = best_w, bb = best_b;
        for (int i = 0; i <= steps; ++i) {
            const double w = lo_w + (hi_w - lo_w) * i / steps;
            for (int j = 0; j <= steps; ++j) {
                const double b = lo_b + (hi_b - lo_b) * j / steps;
                const double obj = hinge_objective(w, b, c, pos, neg);
                if (obj < best) {
                    best = obj;
                    bw = w;
                    bb = b;
                }
            }
        }
        const double span_w = (hi_w - lo_w) / steps * 4;
        const double span_b = (hi_b - lo_b) / steps * 4;
        lo_w = bw - span_w;
        hi_w = bw + span_w;
        lo_b = bb - span_b;
        hi_b = bb + span_b;
        best_w = bw;
        best_b = bb;
    }
    return best;
}

}  // namespace oracle

#include "gaitauth/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gait {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

void jacobi_eigen_symmetric(Matrix a, std::vector<double>& values, Matrix& vectors,
                            const JacobiOptions& opts) {
    const std::size_t n = a.size();
    for (const auto& row : a) {
        if (row.size() != n) throw std::invalid_argument("jacobi: matrix must be square");
    }

    vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a[i][i]));
    // Large covariances cannot push off-diagonals below an absolute 1e-10
    // once rotation round-off is at eps * scale; widen the stop just enough.
    const double tol = std::max(opts.off_diag_tolerance, 1e-14 * max_diag);

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
        }
        if (off < tol) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) < tol * 1e-2) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = vectors[i][p], viq = vectors[i][q];
                    vectors[i][p] = c * vip - s * viq;
                    vectors[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];

    // Sort eigenpairs by descending eigenvalue.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    std::vector<double> sorted_vals(n);
    Matrix sorted_vecs(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        sorted_vals[j] = values[order[j]];
        for (std::size_t i = 0; i < n; ++i) sorted_vecs[i][j] = vectors[i][order[j]];
    }

    // Deterministic sign: the largest-magnitude component of each
    // eigenvector is positive.
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(sorted_vecs[i][j]) > best) {
                best = std::abs(sorted_vecs[i][j]);
                arg = i;
            }
        }
        if (sorted_vecs[arg][j] < 0) {
            for (std::size_t i = 0; i < n; ++i) sorted_vecs[i][j] = -sorted_vecs[i][j];
        }
    }

    values = std::move(sorted_vals);
    vectors = std::move(sorted_vecs);
}

PcaModel fit_pca(const Matrix& data, double variance_fraction, const JacobiOptions& opts) {
    if (data.size() < 2) throw std::invalid_argument("fit_pca: need at least 2 rows");
    if (variance_fraction <= 0.0 || variance_fraction > 1.0) {
        throw std::invalid_argument("variance_fraction must be in (0, 1]");
    }
    const std::size_t rows = data.size();
    const std::size_t dim = data[0].size();
    for (const auto& row : data) {
        if (row.size() != dim) throw std::invalid_argument("fit_pca: ragged rows");
    }

    PcaModel model;
    model.variance_fraction = variance_fraction;
    model.mean.assign(dim, 0.0);
    for (const auto& row : data) {
        for (std::size_t j = 0; j < dim; ++j) model.mean[j] += row[j];
    }
    for (auto& v : model.mean) v /= static_cast<double>(rows);

    // Population covariance (1/rows), accumulated on the upper triangle.
    Matrix cov(dim, std::vector<double>(dim, 0.0));
    std::vector<double> centered(dim);
    for (const auto& row : data) {
        for (std::size_t j = 0; j < dim; ++j) centered[j] = row[j] - model.mean[j];
        for (std::size_t j = 0; j < dim; ++j) {
            const double cj = centered[j];
            if (cj == 0.0) continue;
            for (std::size_t k = j; k < dim; ++k) cov[j][k] += cj * centered[k];
        }
    }
    double trace = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j; k < dim; ++k) {
            cov[j][k] /= static_cast<double>(rows);
            cov[k][j] = cov[j][k];
        }
        trace += cov[j][j];
    }
    model.total_variance = trace;

    double mean_scale = std::max(1.0, dot(model.mean, model.mean));
    if (trace <= 0.0 || trace < 1e-24 * mean_scale) {
        throw std::runtime_error("zero variance: all feature vectors are identical");
    }

    std::vector<double> values;
    Matrix vectors;
    jacobi_eigen_symmetric(std::move(cov), values, vectors, opts);
    for (auto& v : values) v = std::max(v, 0.0);  // clamp numerical negatives

    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    std::size_t k = 0;
    double cum = 0.0;
    while (k < values.size()) {
        cum += values[k];
        ++k;
        if (cum / total >= variance_fraction) break;
    }

    model.eigenvalues.assign(values.begin(), values.begin() + static_cast<long>(k));
    model.basis.assign(dim, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < k; ++j) model.basis[i][j] = vectors[i][j];
    }
    return model;
}

std::vector<double> pca_project(const PcaModel& model, const std::vector<double>& v) {
    if (v.size() != model.dim()) {
        throw std::invalid_argument("pca_project: vector length " + std::to_string(v.size()) +
                                    " != model dimension " + std::to_string(model.dim()));
    }
    const std::size_t k = model.components();
    std::vector<double> out(k, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double c = v[i] - model.mean[i];
        if (c == 0.0) continue;
        for (std::size_t j = 0; j < k; ++j) out[j] += c * model.basis[i][j];
    }
    return out;
}

std::vector<double> pca_reconstruct(const PcaModel& model, const std::vector<double>& y) {
    if (y.size() != model.components()) {
        throw std::invalid_argument("pca_reconstruct: length mismatch");
    }
    std::vector<double> out = model.mean;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) s += model.basis[i][j] * y[j];
        out[i] += s;
    }
    return out;
}

double knn_verify(const Gallery& gallery, const std::string& subject_id,
                  const std::vector<double>& probe) {
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& e : gallery.entries) {
        if (e.subject_id != subject_id) continue;
        found = true;
        best = std::min(best, sq_dist(e.reduced, probe));
    }
    if (!found) throw std::runtime_error("unknown subject '" + subject_id + "'");
    return -std::sqrt(best);
}

std::string knn_identify(const Gallery& gallery, const std::vector<double>& probe) {
    if (gallery.entries.empty()) throw std::invalid_argument("knn_identify: empty gallery");
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gallery.entries.size(); ++i) {
        const double d = sq_dist(gallery.entries[i].reduced, probe);
        if (d < best) {  // strict: ties keep the earlier entry
            best = d;
            arg = i;
        }
    }
    return gallery.entries[arg].subject_id;
}

double svm_objective(const std::vector<double>& weights, double bias, double c_param,
                     const Matrix& positives, const Matrix& negatives) {
    double obj = 0.5 * (dot(weights, weights) + bias * bias);
    for (const auto& x : positives) obj += c_param * std::max(0.0, 1.0 - (dot(weights, x) + bias));
    for (const auto& x : negatives) obj += c_param * std::max(0.0, 1.0 + (dot(weights, x) + bias));
    return obj;
}

SvmModel train_svm(const Matrix& positives, const Matrix& negatives, const SvmTrainOptions& opts) {
    if (positives.empty() || negatives.empty()) {
        throw std::invalid_argument("train_svm: need at least one example per class");
    }
    const std::size_t dim = positives[0].size();
    for (const auto* cls : {&positives, &negatives}) {
        for (const auto& x : *cls) {
            if (x.size() != dim) throw std::invalid_argument("train_svm: ragged rows");
        }
    }
    {
        Matrix a = positives, b = negatives;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) throw std::runtime_error("train_svm: positive and negative sets are identical");
    }

    // Dual coordinate descent on the hinge-loss dual, bias folded in as a
    // constant feature (so it carries the same L2 penalty as the weights).
    // Cyclic visiting order keeps the solver deterministic; the duality
    // gap bounds the distance to the unique primal optimum.
    const std::size_t n = positives.size() + negatives.size();
    const double C = opts.c_param;
    std::vector<const std::vector<double>*> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < positives.size(); ++i) {
        xs[i] = &positives[i];
        ys[i] = 1.0;
    }
    for (std::size_t i = 0; i < negatives.size(); ++i) {
        xs[positives.size() + i] = &negatives[i];
        ys[positives.size() + i] = -1.0;
    }

    std::vector<double> qii(n);
    for (std::size_t i = 0; i < n; ++i) qii[i] = dot(*xs[i], *xs[i]) + 1.0;  // +1 for bias feature

    std::vector<double> alpha(n, 0.0);
    std::vector<double> w(dim, 0.0);
    double b = 0.0;

    auto margin = [&](std::size_t i) { return dot(w, *xs[i]) + b; };

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            const double grad = ys[i] * margin(i) - 1.0;
            double pg = grad;
            if (alpha[i] <= 0.0) pg = std::min(grad, 0.0);
            else if (alpha[i] >= C) pg = std::max(grad, 0.0);
            if (pg == 0.0) continue;
            const double next = std::clamp(alpha[i] - grad / qii[i], 0.0, C);
            const double delta = next - alpha[i];
            if (delta == 0.0) continue;
            alpha[i] = next;
            const double step = delta * ys[i];
            const auto& x = *xs[i];
            for (std::size_t j = 0; j < dim; ++j) w[j] += step * x[j];
            b += step;
        }

        // Duality gap every few sweeps; stop once tight.
        if (sweep % 4 == 3 || sweep + 1 == opts.max_sweeps) {
            const double wnorm = dot(w, w) + b * b;
            double hinge = 0.0, asum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                hinge += std::max(0.0, 1.0 - ys[i] * margin(i));
                asum += alpha[i];
            }
            const double primal = 0.5 * wnorm + C * hinge;
            const double dual = asum - 0.5 * wnorm;
            if (primal - dual <= opts.gap_tolerance * std::max(1.0, std::abs(primal))) break;
        }
    }

    SvmModel model;
    model.weights = std::move(w);
    model.bias = b;
    model.c_param = C;
    return model;
}

double svm_score(const SvmModel& model, const std::vector<double>& probe) {
    if (probe.size() != model.weights.size()) {
        throw std::invalid_argument("svm_score: probe length " + std::to_string(probe.size()) +
                                    " != weight length " + std::to_string(model.weights.size()));
    }
    return dot(model.weights, probe) + model.bias;
}

// --- model file ------------------------------------------------------------

namespace {

void put_real(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

void put_row(std::ostream& out, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ' ';
        put_real(out, row[i]);
    }
    out << '\n';
}

std::vector<double> read_reals(std::istream& in, std::size_t count, const char* what) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!(in >> out[i])) {
            throw std::runtime_error(std::string("model file: truncated ") + what);
        }
    }
    return out;
}

}  // namespace

void save_model(const RecognitionModel& model, std::ostream& out) {
    out << "GAITMODEL 1\n";
    out << "SCHEME " << model.scheme << '\n';
    const auto& pca = model.pca;
    out << "PCA " << pca.dim() << ' ' << pca.components() << ' ';
    put_real(out, pca.variance_fraction);
    out << ' ';
    put_real(out, pca.total_variance);
    out << '\n';
    out << "MEAN\n";
    put_row(out, pca.mean);
    out << "EIGENVALUES\n";
    put_row(out, pca.eigenvalues);
    out << "BASIS\n";
    // One line per eigenvector (a column of the basis).
    for (std::size_t j = 0; j < pca.components(); ++j) {
        for (std::size_t i = 0; i < pca.dim(); ++i) {
            if (i) out << ' ';
            put_real(out, pca.basis[i][j]);
        }
        out << '\n';
    }
    for (const auto& svm : model.svms) {
        out << "SVM " << svm.subject_id << ' ' << svm.weights.size() << ' ';
        put_real(out, svm.c_param);
        out << ' ' << svm.seed << '\n';
        put_row(out, svm.weights);
        put_real(out, svm.bias);
        out << '\n';
    }
    if (!model.gallery.entries.empty()) {
        // Group consecutive entries per subject.
        std::size_t i = 0;
        while (i < model.gallery.entries.size()) {
            std::size_t j = i;
            while (j < model.gallery.entries.size() &&
                   model.gallery.entries[j].subject_id == model.gallery.entries[i].subject_id) {
                ++j;
            }
            out << "GALLERY " << model.gallery.entries[i].subject_id << ' ' << (j - i) << ' '
                << model.gallery.entries[i].reduced.size() << '\n';
            for (std::size_t t = i; t < j; ++t) put_row(out, model.gallery.entries[t].reduced);
            i = j;
        }
    }
    out << "END\n";
}

RecognitionModel load_model(std::istream& in) {
    RecognitionModel model;
    std::string tag, version;
    in >> tag >> version;
    if (tag != "GAITMODEL" || version != "1") {
        throw std::runtime_error("model file: bad magic header");
    }
    std::size_t dim = 0, k = 0;
    while (in >> tag) {
        if (tag == "END") return model;
        if (tag == "SCHEME") {
            in >> model.scheme;
        } else if (tag == "PCA") {
            in >> dim >> k >> model.pca.variance_fraction >> model.pca.total_variance;
        } else if (tag == "MEAN") {
            model.pca.mean = read_reals(in, dim, "mean");
        } else if (tag == "EIGENVALUES") {
            model.pca.eigenvalues = read_reals(in, k, "eigenvalues");
        } else if (tag == "BASIS") {
            model.pca.basis.assign(dim, std::vector<double>(k, 0.0));
            for (std::size_t j = 0; j < k; ++j) {
                auto row = read_reals(in, dim, "basis");
                for (std::size_t i = 0; i < dim; ++i) model.pca.basis[i][j] = row[i];
            }
        } else if (tag == "SVM") {
            SvmModel svm;
            std::size_t wlen = 0;
            in >> svm.subject_id >> wlen >> svm.c_param >> svm.seed;
            svm.weights = read_reals(in, wlen, "svm weights");
            auto bias = read_reals(in, 1, "svm bias");
            svm.bias = bias[0];
            model.svms.push_back(std::move(svm));
        } else if (tag == "GALLERY") {
            std::string subject;
            std::size_t count = 0, glen = 0;
            in >> subject >> count >> glen;
            for (std::size_t t = 0; t < count; ++t) {
                GalleryEntry e;
                e.subject_id = subject;
                e.reduced = read_reals(in, glen, "gallery vector");
                model.gallery.entries.push_back(std::move(e));
            }
        } else {
            throw std::runtime_error("model file: unknown section '" + tag + "'");
        }
    }
    throw std::runtime_error("model file: missing END");
}

}  // namespace gait

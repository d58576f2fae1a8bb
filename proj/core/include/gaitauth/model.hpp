#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gait {

using Matrix = std::vector<std::vector<double>>;  // row-major

/// PCA model: mean vector, eigenbasis (columns are eigenvectors, most
/// significant first) and the eigenvalues retained.
struct PcaModel {
    std::vector<double> mean;           // length n_f
    Matrix basis;                       // n_f rows x k columns
    std::vector<double> eigenvalues;    // k values, descending
    double variance_fraction = 0.995;
    double total_variance = 0.0;        // trace of the covariance
    std::size_t dim() const { return mean.size(); }
    std::size_t components() const { return eigenvalues.size(); }
};

struct GalleryEntry {
    std::string subject_id;
    std::vector<double> reduced;
};

struct Gallery {
    std::vector<GalleryEntry> entries;
};

struct SvmModel {
    std::string subject_id;
    std::vector<double> weights;
    double bias = 0.0;
    double c_param = 1.0;
    std::uint64_t seed = 0;  // impostor-sampling seed recorded for provenance
};

struct JacobiOptions {
    double off_diag_tolerance = 1e-10;
    int max_sweeps = 100;
};

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues (descending) and the matching eigenvectors as
/// columns of `vectors`. Each eigenvector's largest-magnitude component
/// is made positive so serialized models are reproducible.
void jacobi_eigen_symmetric(Matrix a, std::vector<double>& values, Matrix& vectors,
                            const JacobiOptions& opts = {});

/// Fits PCA on the rows of `data` (population covariance, 1/rows), keeping
/// the smallest number of leading components whose cumulative eigenvalue
/// share reaches variance_fraction. Throws "zero variance" when all rows
/// are identical.
PcaModel fit_pca(const Matrix& data, double variance_fraction = 0.995,
                 const JacobiOptions& opts = {});

/// Projects v onto the PCA basis: (v - mean) * U. Throws on length mismatch.
std::vector<double> pca_project(const PcaModel& model, const std::vector<double>& v);

/// Approximate inverse of pca_project: mean + y * U^T.
std::vector<double> pca_reconstruct(const PcaModel& model, const std::vector<double>& y);

/// Verification score for a claimed subject: minus the Euclidean distance
/// to the subject's nearest gallery template (0 is a perfect match).
/// Throws when the subject has no templates.
double knn_verify(const Gallery& gallery, const std::string& subject_id,
                  const std::vector<double>& probe);

/// Identification: subject of the globally nearest template; ties broken
/// by gallery order.
std::string knn_identify(const Gallery& gallery, const std::vector<double>& probe);

struct SvmTrainOptions {
    double c_param = 1.0;
    double gap_tolerance = 1e-8;  // duality-gap stop, relative to the objective scale
    int max_sweeps = 20000;
};

/// Trains a linear SVM on the primal objective
///   0.5*(|w|^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b))
/// by deterministic cyclic dual coordinate descent (the bias is folded in
/// as a constant feature, so it is regularized). Throws when either class
/// is empty or the two classes are identical point sets.
SvmModel train_svm(const Matrix& positives, const Matrix& negatives,
                   const SvmTrainOptions& opts = {});

/// Signed margin w.probe + bias. Throws on length mismatch.
double svm_score(const SvmModel& model, const std::vector<double>& probe);

/// Hinge-loss primal objective of a weight vector on a labelled set; used
/// by tests and by the trainer's convergence bookkeeping.
double svm_objective(const std::vector<double>& weights, double bias, double c_param,
                     const Matrix& positives, const Matrix& negatives);

/// Serialized recognition model: PCA section plus either per-user SVM
/// sections or a gallery section. Text format, magic line `GAITMODEL 1`,
/// reals written with 17 significant digits for bit-faithful reload.
struct RecognitionModel {
    PcaModel pca;
    std::string scheme;  // "svm" or "knn"
    std::vector<SvmModel> svms;
    Gallery gallery;
};

void save_model(const RecognitionModel& model, std::ostream& out);
RecognitionModel load_model(std::istream& in);

}  // namespace gait

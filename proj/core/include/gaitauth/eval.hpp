#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gaitauth/features.hpp"
#include "gaitauth/model.hpp"

namespace gait {

struct ScoreSet {
    std::vector<double> genuine;
    std::vector<double> impostor;
};

struct RocPoint {
    double threshold = 0.0;
    double far = 0.0;  // fraction of impostor scores >= threshold
    double frr = 0.0;  // fraction of genuine scores < threshold
};

/// ROC summary plus the optional identification accuracy the evaluation
/// protocols fill in. FAR is non-increasing and FRR non-decreasing along
/// the threshold sweep; the EER is linearly interpolated between the
/// bracketing thresholds.
struct EvalReport {
    std::vector<RocPoint> roc;
    double eer = 0.0;
    double eer_threshold = 0.0;
    std::map<double, double> frr_at_far;
    double identification_accuracy = -1.0;  // < 0 when not evaluated
    std::size_t n_genuine = 0;
    std::size_t n_impostor = 0;
    std::string config_digest;
};

struct EvalConfig {
    std::string scheme = "svm";  // "knn" or "svm"
    double train_fraction = 0.5;
    std::uint64_t seed = 1;
    double pca_variance = 0.995;
    double svm_c = 1.0;
    std::vector<double> far_levels{0.01};
};

/// Per-subject stratified random split. Each subject contributes
/// round(fraction * count) training patterns (at least 1); subjects with
/// fewer than two patterns are excluded with a warning.
struct TrainTestSplit {
    std::vector<FeatureVector> train;
    std::vector<FeatureVector> test;
};
TrainTestSplit split_train_test(const std::vector<FeatureVector>& vectors, double fraction,
                                std::uint64_t seed, Warnings* warnings = nullptr);

/// Threshold sweep over all distinct scores (plus sentinels past both
/// ends). frr_at_far picks, for each level, the operating point with the
/// largest FAR not exceeding the level.
EvalReport roc_curve(const ScoreSet& scores, const std::vector<double>& far_levels = {0.01});

/// Majority vote over per-pattern accept decisions; an exact tie rejects.
bool verify_session(const std::vector<bool>& pattern_decisions);

/// Session score equivalent to sweeping majority voting over thresholds:
/// the session is accepted at threshold t iff more than half of its
/// pattern scores are >= t, i.e. iff its (floor(n/2)+1)-th largest score
/// is >= t. Returns that order statistic.
double majority_session_score(std::vector<double> pattern_scores);

struct VerificationResult {
    EvalReport pattern;
    EvalReport session;
    // Operating point of session-level majority voting at the pattern EER
    // threshold.
    double session_far_at_pattern_eer = 0.0;
    double session_frr_at_pattern_eer = 0.0;
};

struct IdentificationResult {
    double pattern_accuracy = 0.0;
    double session_accuracy = 0.0;
    std::size_t n_patterns = 0;
    std::size_t n_sessions = 0;
    std::string config_digest;
};

/// Cross-verification over all subjects in turn. kNN scores every other
/// subject's pattern as an impostor probe; SVM scores only patterns that
/// were not used to train the model (other subjects' training patterns
/// are its negatives). Requires at least two subjects with test data.
VerificationResult evaluate_verification(const std::vector<FeatureVector>& dataset,
                                         const EvalConfig& config,
                                         Warnings* warnings = nullptr);

/// Closed-set identification. kNN: nearest template over the pooled
/// training gallery. SVM: argmax of the per-subject signed margins.
/// Session accuracy takes the plurality label over each session's test
/// patterns (ties broken by first occurrence).
IdentificationResult evaluate_identification(const std::vector<FeatureVector>& dataset,
                                             const EvalConfig& config,
                                             Warnings* warnings = nullptr);

/// Digest of the resolved configuration, embedded in reports so runs are
/// attributable; changes iff any parameter changes.
std::string config_digest(const EvalConfig& config);

}  // namespace gait

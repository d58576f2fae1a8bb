#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gaitauth/eval.hpp"
#include "gaitauth/features.hpp"
#include "gaitauth/segmentation.hpp"
#include "gaitauth/synth.hpp"

namespace gait {

/// Single configuration surface for the whole pipeline. Defaults follow
/// the reference setup: 27 Hz capture, level-2 denoising, 4-cycle
/// patterns, 99.5% retained variance.
struct PipelineConfig {
    double rate_hz = 27.0;
    int wavelet_levels = 2;
    double tau = 0.5;
    double epsilon_fraction = 0.3;
    int n_s = 4;  // must be even (patterns overlap by half)
    std::size_t freq_bin_offset = 0;
    double pca_variance = 0.995;
    double svm_c = 1.0;
    double train_fraction = 0.5;
    std::uint64_t seed = 1;
    std::string scheme = "svm";

    EvalConfig eval_config() const;
    SegmentationParams segmentation_params() const;
    void validate() const;  // throws on out-of-range values
    std::map<std::string, std::string> as_map() const;
};

/// How device-frame logs are turned into gait channels.
///   earth          - gravity removal, per-sample rotation, (Z, XY, M)
///   device_raw     - gravity removal only; device axes used directly
///   magnitude_only - only the (orientation-independent) magnitude is
///                    kept, mapped so heel strikes stay negative peaks
enum class ChannelMode { earth, device_raw, magnitude_only };

struct SessionResult {
    std::string subject_id;
    std::string session_id;
    GaitSignal signal;
    std::vector<CycleSegment> segments;
    std::vector<FeatureVector> features;
    Warnings warnings;
};

/// Runs one session end to end: align, gravity removal, channel
/// projection per `mode`, denoising, segmentation, pattern assembly and
/// feature extraction. Throws on sessions that cannot be segmented.
SessionResult run_session(const RawSession& raw, const std::string& session_id,
                          const PipelineConfig& config, ChannelMode mode = ChannelMode::earth);

struct AbScenarioReport {
    std::string name;
    VerificationResult verification;
    std::size_t n_sessions_processed = 0;
    std::size_t n_sessions_failed = 0;
};

/// Disorientation A/B/magnitude study: the identical cohort is evaluated
/// without the Earth transform, with it, and with only the magnitude
/// channel. Sessions that fail to segment in a scenario are skipped and
/// counted.
std::vector<AbScenarioReport> disorientation_ab(const Cohort& cohort,
                                                const PipelineConfig& config);

}  // namespace gait

#include "gaitauth/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gaitauth/wavelet.hpp"

namespace gait {

EvalConfig PipelineConfig::eval_config() const {
    EvalConfig ec;
    ec.scheme = scheme;
    ec.train_fraction = train_fraction;
    ec.seed = seed;
    ec.pca_variance = pca_variance;
    ec.svm_c = svm_c;
    return ec;
}

SegmentationParams PipelineConfig::segmentation_params() const {
    SegmentationParams sp;
    sp.tau = tau;
    sp.epsilon_fraction = epsilon_fraction;
    return sp;
}

void PipelineConfig::validate() const {
    if (rate_hz <= 0) throw std::invalid_argument("rate_hz must be positive");
    if (wavelet_levels < 1) throw std::invalid_argument("wavelet_levels must be >= 1");
    if (n_s <= 0 || n_s % 2 != 0) throw std::invalid_argument("n_s must be a positive even number");
    if (train_fraction <= 0.0 || train_fraction >= 1.0) {
        throw std::invalid_argument("train_fraction must be in (0, 1)");
    }
    if (pca_variance <= 0.0 || pca_variance > 1.0) {
        throw std::invalid_argument("pca_variance must be in (0, 1]");
    }
    if (epsilon_fraction < 0.0) throw std::invalid_argument("epsilon_fraction must be >= 0");
    if (svm_c <= 0.0) throw std::invalid_argument("svm_c must be positive");
    if (scheme != "knn" && scheme != "svm") {
        throw std::invalid_argument("scheme must be 'knn' or 'svm'");
    }
    if (freq_bin_offset + kNumSpectralBins > kFftLength) {
        throw std::invalid_argument("freq_bin_offset too large");
    }
}

std::map<std::string, std::string> PipelineConfig::as_map() const {
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    return {
        {"rate_hz", fmt(rate_hz)},
        {"wavelet_levels", std::to_string(wavelet_levels)},
        {"tau", fmt(tau)},
        {"epsilon_fraction", fmt(epsilon_fraction)},
        {"n_s", std::to_string(n_s)},
        {"freq_bin_offset", std::to_string(freq_bin_offset)},
        {"pca_variance", fmt(pca_variance)},
        {"svm_c", fmt(svm_c)},
        {"train_fraction", fmt(train_fraction)},
        {"seed", std::to_string(seed)},
        {"scheme", scheme},
    };
}

namespace {

// Channel projection for the three study arms. The magnitude-only arm
// centers the magnitude and flips its sign so heel strikes remain
// negative peaks for the segmenter; it carries no horizontal channel.
GaitSignal project_for_mode(const std::vector<AlignedFrame>& frames, double rate_hz,
                            ChannelMode mode) {
    switch (mode) {
        case ChannelMode::earth:
            return project_channels(transform_frames(frames), rate_hz);
        case ChannelMode::device_raw: {
            std::vector<Vec3> device;
            device.reserve(frames.size());
            for (const auto& f : frames) device.push_back(f.a);
            return project_channels(device, rate_hz);
        }
        case ChannelMode::magnitude_only: {
            std::vector<double> mag;
            mag.reserve(frames.size());
            double mean = 0.0;
            for (const auto& f : frames) {
                mag.push_back(
                    std::sqrt(f.a[0] * f.a[0] + f.a[1] * f.a[1] + f.a[2] * f.a[2]));
                mean += mag.back();
            }
            mean /= static_cast<double>(mag.size());
            std::vector<Vec3> pseudo;
            pseudo.reserve(mag.size());
            for (double v : mag) pseudo.push_back(Vec3{0.0, 0.0, mean - v});
            return project_channels(pseudo, rate_hz);
        }
    }
    throw std::logic_error("unknown channel mode");
}

}  // namespace

SessionResult run_session(const RawSession& raw, const std::string& session_id,
                          const PipelineConfig& config, ChannelMode mode) {
    config.validate();
    SessionResult result;
    result.subject_id = raw.subject_id;
    result.session_id = session_id;

    auto frames = align(raw, config.rate_hz, &result.warnings);
    frames = remove_gravity(std::move(frames));
    result.signal = project_for_mode(frames, config.rate_hz, mode);

    result.signal.z = wavelet_denoise(result.signal.z, config.wavelet_levels);
    result.signal.xy = wavelet_denoise(result.signal.xy, config.wavelet_levels);
    result.signal.m = wavelet_denoise(result.signal.m, config.wavelet_levels);

    result.segments = segment_signal(result.signal, config.segmentation_params());

    FreqOptions fopts;
    fopts.bin_offset = config.freq_bin_offset;
    auto patterns = extract_patterns(result.segments, config.n_s);
    for (const auto& p : patterns) {
        FeatureVector fv = feature_vector(p, fopts);
        fv.subject_id = raw.subject_id;
        fv.session_id = session_id;
        result.features.push_back(std::move(fv));
    }
    return result;
}

std::vector<AbScenarioReport> disorientation_ab(const Cohort& cohort,
                                                const PipelineConfig& config) {
    struct Scenario {
        const char* name;
        ChannelMode mode;
    };
    const Scenario scenarios[] = {
        {"device_raw", ChannelMode::device_raw},
        {"earth_transform", ChannelMode::earth},
        {"magnitude_only", ChannelMode::magnitude_only},
    };

    std::vector<AbScenarioReport> reports;
    for (const auto& sc : scenarios) {
        AbScenarioReport rep;
        rep.name = sc.name;
        std::vector<FeatureVector> dataset;
        for (const auto& cs : cohort.sessions) {
            try {
                auto res = run_session(cs.session, cs.session_id, config, sc.mode);
                dataset.insert(dataset.end(), res.features.begin(), res.features.end());
                ++rep.n_sessions_processed;
            } catch (const std::exception&) {
                // A scenario that cannot even segment a session simply
                // loses that session; that is part of the measured effect.
                ++rep.n_sessions_failed;
            }
        }
        Warnings w;
        rep.verification = evaluate_verification(dataset, config.eval_config(), &w);
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace gait

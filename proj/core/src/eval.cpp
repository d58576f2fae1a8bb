#include "gaitauth/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gaitauth/rng.hpp"

namespace gait {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Count of elements >= t (sorted ascending).
std::size_t count_ge(const std::vector<double>& sorted, double t) {
    return sorted.size() -
           static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t) -
                                    sorted.begin());
}

}  // namespace

std::string config_digest(const EvalConfig& config) {
    std::ostringstream os;
    os.precision(17);
    os << "scheme=" << config.scheme << ";train_fraction=" << config.train_fraction
       << ";seed=" << config.seed << ";pca_variance=" << config.pca_variance
       << ";svm_c=" << config.svm_c << ";far_levels=";
    for (double f : config.far_levels) os << f << ',';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

TrainTestSplit split_train_test(const std::vector<FeatureVector>& vectors, double fraction,
                                std::uint64_t seed, Warnings* warnings) {
    if (fraction <= 0.0 || fraction >= 1.0) {
        throw std::invalid_argument("train fraction must be in (0, 1)");
    }

    // Group pattern indices per subject, preserving first-occurrence order.
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    std::map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto [it, inserted] = where.try_emplace(vectors[i].subject_id, groups.size());
        if (inserted) groups.push_back({vectors[i].subject_id, {}});
        groups[it->second].second.push_back(i);
    }

    TrainTestSplit split;
    for (auto& [subject, idx] : groups) {
        if (idx.size() < 2) {
            if (warnings) {
                warnings->add("subject '" + subject + "' has fewer than 2 patterns; excluded");
            }
            continue;
        }
        // Per-subject RNG derived from (seed, subject id) so the split is
        // independent of subject iteration order.
        Rng rng(mix_seed(seed, fnv1a(subject)));
        rng.shuffle(idx);
        auto want = static_cast<std::size_t>(
            std::llround(fraction * static_cast<double>(idx.size())));
        want = std::clamp<std::size_t>(want, 1, idx.size());
        std::sort(idx.begin(), idx.begin() + static_cast<long>(want));
        std::sort(idx.begin() + static_cast<long>(want), idx.end());
        for (std::size_t t = 0; t < idx.size(); ++t) {
            (t < want ? split.train : split.test).push_back(vectors[idx[t]]);
        }
    }
    return split;
}

EvalReport roc_curve(const ScoreSet& scores, const std::vector<double>& far_levels) {
    if (scores.genuine.empty()) throw std::invalid_argument("roc_curve: no genuine scores");
    if (scores.impostor.empty()) throw std::invalid_argument("roc_curve: no impostor scores");

    std::vector<double> gen = scores.genuine, imp = scores.impostor;
    std::sort(gen.begin(), gen.end());
    std::sort(imp.begin(), imp.end());

    std::vector<double> thresholds;
    thresholds.reserve(gen.size() + imp.size() + 1);
    thresholds.insert(thresholds.end(), gen.begin(), gen.end());
    thresholds.insert(thresholds.end(), imp.begin(), imp.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    // Sentinel past the top so the sweep reaches (FAR 0, FRR 1).
    thresholds.push_back(std::nextafter(thresholds.back(), std::numeric_limits<double>::max()));

    EvalReport report;
    report.n_genuine = gen.size();
    report.n_impostor = imp.size();
    report.roc.reserve(thresholds.size());
    for (double t : thresholds) {
        RocPoint p;
        p.threshold = t;
        p.far = static_cast<double>(count_ge(imp, t)) / static_cast<double>(imp.size());
        p.frr = static_cast<double>(gen.size() - count_ge(gen, t)) /
                static_cast<double>(gen.size());
        report.roc.push_back(p);
    }

    // EER: first sign change of FAR - FRR along the sweep, linearly
    // interpolated between the bracketing thresholds.
    report.eer = 0.5;
    report.eer_threshold = report.roc.front().threshold;
    for (std::size_t i = 0; i + 1 < report.roc.size(); ++i) {
        const double d0 = report.roc[i].far - report.roc[i].frr;
        const double d1 = report.roc[i + 1].far - report.roc[i + 1].frr;
        if (d0 < 0.0) {  // should not happen before a crossing; guard anyway
            report.eer = std::max(report.roc[i].far, report.roc[i].frr);
            report.eer_threshold = report.roc[i].threshold;
            break;
        }
        if (d0 == 0.0) {
            report.eer = report.roc[i].far;
            report.eer_threshold = report.roc[i].threshold;
            break;
        }
        if (d1 <= 0.0) {
            const double t = d0 / (d0 - d1);
            report.eer = report.roc[i].far + t * (report.roc[i + 1].far - report.roc[i].far);
            report.eer_threshold =
                report.roc[i].threshold +
                t * (report.roc[i + 1].threshold - report.roc[i].threshold);
            break;
        }
    }

    // Operating point with the largest FAR still within each level.
    for (double level : far_levels) {
        double frr = 1.0;
        for (const auto& p : report.roc) {
            if (p.far <= level) {
                frr = p.frr;
                break;  // thresholds ascend, FAR only shrinks beyond here
            }
        }
        report.frr_at_far[level] = frr;
    }
    return report;
}

bool verify_session(const std::vector<bool>& pattern_decisions) {
    if (pattern_decisions.empty()) throw std::invalid_argument("verify_session: empty vote");
    std::size_t accepted = 0;
    for (bool d : pattern_decisions) accepted += d ? 1 : 0;
    return accepted * 2 > pattern_decisions.size();  // exact tie rejects
}

double majority_session_score(std::vector<double> pattern_scores) {
    if (pattern_scores.empty()) throw std::invalid_argument("majority_session_score: empty");
    // Accepted at threshold t iff more than half the scores are >= t,
    // i.e. iff the (floor(n/2)+1)-th largest score is >= t.
    const std::size_t m = pattern_scores.size() / 2;  // 0-based rank from the top
    std::nth_element(pattern_scores.begin(), pattern_scores.begin() + static_cast<long>(m),
                     pattern_scores.end(), std::greater<double>());
    return pattern_scores[static_cast<long>(m)];
}

namespace {

struct SubjectSplit {
    std::string id;
    std::vector<const FeatureVector*> train;
    std::vector<const FeatureVector*> test;
};

struct ProjectedSet {
    PcaModel pca;
    TrainTestSplit split;  // owns the vectors the subject lists point into
    // Reduced vectors aligned with each subject's train/test lists.
    std::vector<SubjectSplit> subjects;
    std::vector<std::vector<std::vector<double>>> train_reduced;  // [subject][pattern]
    std::vector<std::vector<std::vector<double>>> test_reduced;
};

std::vector<SubjectSplit> group_subjects(const TrainTestSplit& split, Warnings* warnings) {
    std::vector<SubjectSplit> subjects;
    std::map<std::string, std::size_t> where;
    auto slot = [&](const std::string& id) -> SubjectSplit& {
        auto [it, inserted] = where.try_emplace(id, subjects.size());
        if (inserted) subjects.push_back({id, {}, {}});
        return subjects[it->second];
    };
    for (const auto& fv : split.train) slot(fv.subject_id).train.push_back(&fv);
    for (const auto& fv : split.test) slot(fv.subject_id).test.push_back(&fv);

    std::vector<SubjectSplit> eligible;
    for (auto& s : subjects) {
        if (s.train.empty() || s.test.empty()) {
            if (warnings) {
                warnings->add("subject '" + s.id + "' lacks train or test patterns; excluded");
            }
            continue;
        }
        eligible.push_back(std::move(s));
    }
    return eligible;
}

ProjectedSet project_dataset(const std::vector<FeatureVector>& dataset, const EvalConfig& config,
                             Warnings* warnings) {
    if (config.scheme != "knn" && config.scheme != "svm") {
        throw std::invalid_argument("unknown scheme '" + config.scheme + "'");
    }
    ProjectedSet out;
    out.split = split_train_test(dataset, config.train_fraction, config.seed, warnings);
    out.subjects = group_subjects(out.split, warnings);
    if (out.subjects.size() < 2) {
        throw std::runtime_error("evaluation needs at least 2 subjects with train and test data");
    }

    Matrix train_matrix;
    for (const auto& s : out.subjects) {
        for (const auto* fv : s.train) train_matrix.push_back(fv->values);
    }
    out.pca = fit_pca(train_matrix, config.pca_variance);

    out.train_reduced.resize(out.subjects.size());
    out.test_reduced.resize(out.subjects.size());
    for (std::size_t i = 0; i < out.subjects.size(); ++i) {
        for (const auto* fv : out.subjects[i].train) {
            out.train_reduced[i].push_back(pca_project(out.pca, fv->values));
        }
        for (const auto* fv : out.subjects[i].test) {
            out.test_reduced[i].push_back(pca_project(out.pca, fv->values));
        }
    }
    return out;
}

// Session key -> scores, preserving first-appearance order for
// deterministic pooling.
class SessionPool {
public:
    void add(const std::string& key, double score) {
        auto [it, inserted] = where_.try_emplace(key, scores_.size());
        if (inserted) scores_.emplace_back();
        scores_[it->second].push_back(score);
    }
    std::vector<double> session_scores() const {
        std::vector<double> out;
        out.reserve(scores_.size());
        for (const auto& s : scores_) out.push_back(majority_session_score(s));
        return out;
    }

private:
    std::map<std::string, std::size_t> where_;
    std::vector<std::vector<double>> scores_;
};

std::vector<SvmModel> train_subject_svms(const ProjectedSet& ps, const EvalConfig& config) {
    std::vector<SvmModel> models(ps.subjects.size());
    for (std::size_t i = 0; i < ps.subjects.size(); ++i) {
        Matrix negatives;
        for (std::size_t j = 0; j < ps.subjects.size(); ++j) {
            if (j == i) continue;
            for (const auto& v : ps.train_reduced[j]) negatives.push_back(v);
        }
        SvmTrainOptions opts;
        opts.c_param = config.svm_c;
        models[i] = train_svm(ps.train_reduced[i], negatives, opts);
        models[i].subject_id = ps.subjects[i].id;
        models[i].seed = config.seed;
    }
    return models;
}

}  // namespace

VerificationResult evaluate_verification(const std::vector<FeatureVector>& dataset,
                                         const EvalConfig& config, Warnings* warnings) {
    ProjectedSet ps = project_dataset(dataset, config, warnings);
    const bool use_svm = config.scheme == "svm";

    std::vector<SvmModel> svms;
    std::vector<Gallery> galleries(ps.subjects.size());
    if (use_svm) {
        svms = train_subject_svms(ps, config);
    } else {
        for (std::size_t i = 0; i < ps.subjects.size(); ++i) {
            for (const auto& v : ps.train_reduced[i]) {
                galleries[i].entries.push_back({ps.subjects[i].id, v});
            }
        }
    }

    ScoreSet pattern_scores;
    SessionPool genuine_sessions, impostor_sessions;

    for (std::size_t i = 0; i < ps.subjects.size(); ++i) {
        auto score_probe = [&](const std::vector<double>& probe) {
            return use_svm ? svm_score(svms[i], probe)
                           : knn_verify(galleries[i], ps.subjects[i].id, probe);
        };

        for (std::size_t t = 0; t < ps.test_reduced[i].size(); ++t) {
            const double s = score_probe(ps.test_reduced[i][t]);
            pattern_scores.genuine.push_back(s);
            genuine_sessions.add(ps.subjects[i].id + "/" + ps.subjects[i].test[t]->session_id, s);
        }

        for (std::size_t j = 0; j < ps.subjects.size(); ++j) {
            if (j == i) continue;
            auto add_impostor = [&](const FeatureVector& fv, const std::vector<double>& probe) {
                const double s = score_probe(probe);
                pattern_scores.impostor.push_back(s);
                impostor_sessions.add(
                    ps.subjects[i].id + "|" + fv.subject_id + "/" + fv.session_id, s);
            };
            // The kNN scheme probes every pattern of the other subjects;
            // the SVM scheme must not score its own training negatives, so
            // it probes only their held-out patterns.
            if (!use_svm) {
                for (std::size_t t = 0; t < ps.train_reduced[j].size(); ++t) {
                    add_impostor(*ps.subjects[j].train[t], ps.train_reduced[j][t]);
                }
            }
            for (std::size_t t = 0; t < ps.test_reduced[j].size(); ++t) {
                add_impostor(*ps.subjects[j].test[t], ps.test_reduced[j][t]);
            }
        }
    }

    VerificationResult result;
    result.pattern = roc_curve(pattern_scores, config.far_levels);

    ScoreSet session_scores;
    session_scores.genuine = genuine_sessions.session_scores();
    session_scores.impostor = impostor_sessions.session_scores();
    result.session = roc_curve(session_scores, config.far_levels);

    // Majority voting pinned at the pattern EER threshold: a session score
    // of at least the threshold is exactly "more than half the patterns
    // accepted".
    const double thr = result.pattern.eer_threshold;
    std::size_t far_n = 0, frr_n = 0;
    for (double s : session_scores.impostor) far_n += (s >= thr) ? 1 : 0;
    for (double s : session_scores.genuine) frr_n += (s < thr) ? 1 : 0;
    result.session_far_at_pattern_eer =
        static_cast<double>(far_n) / static_cast<double>(session_scores.impostor.size());
    result.session_frr_at_pattern_eer =
        static_cast<double>(frr_n) / static_cast<double>(session_scores.genuine.size());

    const std::string digest = config_digest(config);
    result.pattern.config_digest = digest;
    result.session.config_digest = digest;
    return result;
}

IdentificationResult evaluate_identification(const std::vector<FeatureVector>& dataset,
                                             const EvalConfig& config, Warnings* warnings) {
    ProjectedSet ps = project_dataset(dataset, config, warnings);
    const bool use_svm = config.scheme == "svm";

    std::vector<SvmModel> svms;
    Gallery gallery;
    if (use_svm) {
        svms = train_subject_svms(ps, config);
    } else {
        for (std::size_t i = 0; i < ps.subjects.size(); ++i) {
            for (const auto& v : ps.train_reduced[i]) {
                gallery.entries.push_back({ps.subjects[i].id, v});
            }
        }
    }

    auto predict = [&](const std::vector<double>& probe) -> std::string {
        if (!use_svm) return knn_identify(gallery, probe);
        std::size_t arg = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < svms.size(); ++i) {
            const double s = svm_score(svms[i], probe);
            if (s > best) {
                best = s;
                arg = i;
            }
        }
        return svms[arg].subject_id;
    };

    IdentificationResult result;
    std::size_t correct_patterns = 0;

    // session key -> (true subject, predicted labels in pattern order)
    std::vector<std::pair<std::string, std::vector<std::string>>> sessions;
    std::map<std::string, std::size_t> session_where;

    for (std::size_t i = 0; i < ps.subjects.size(); ++i) {
        for (std::size_t t = 0; t < ps.test_reduced[i].size(); ++t) {
            const std::string predicted = predict(ps.test_reduced[i][t]);
            ++result.n_patterns;
            if (predicted == ps.subjects[i].id) ++correct_patterns;

            const std::string key =
                ps.subjects[i].id + "/" + ps.subjects[i].test[t]->session_id;
            auto [it, inserted] = session_where.try_emplace(key, sessions.size());
            if (inserted) sessions.push_back({ps.subjects[i].id, {}});
            sessions[it->second].second.push_back(predicted);
        }
    }

    std::size_t correct_sessions = 0;
    for (const auto& [truth, labels] : sessions) {
        // Plurality vote, ties broken by earliest first occurrence.
        std::map<std::string, std::size_t> counts;
        for (const auto& l : labels) ++counts[l];
        std::string winner;
        std::size_t best = 0;
        for (const auto& l : labels) {
            if (counts[l] > best) {
                best = counts[l];
                winner = l;
            }
        }
        if (winner == truth) ++correct_sessions;
    }
    result.n_sessions = sessions.size();
    result.pattern_accuracy = result.n_patterns == 0
                                  ? 0.0
                                  : static_cast<double>(correct_patterns) /
                                        static_cast<double>(result.n_patterns);
    result.session_accuracy = result.n_sessions == 0
                                  ? 0.0
                                  : static_cast<double>(correct_sessions) /
                                        static_cast<double>(result.n_sessions);
    result.config_digest = config_digest(config);
    return result;
}

}  // namespace gait

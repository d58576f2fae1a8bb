// gaitauth: orientation-invariant gait verification pipeline front end.
//
// Subcommands:
//   synth     generate a synthetic walking cohort (session CSVs + truth)
//   pipeline  turn raw sensor logs into a 289-dim feature CSV
//   train     fit a recognition model file from a feature CSV
//   eval      run the cross-verification / identification protocol
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaitauth/eval.hpp"
#include "gaitauth/pipeline.hpp"
#include "gaitauth/rng.hpp"
#include "gaitauth/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gait;

namespace {

void print_config(const std::map<std::string, std::string>& kv) {
    std::ostringstream os;
    os << "config:";
    for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
    std::cerr << os.str() << '\n';
}

OrientationMode parse_orientation(const std::string& name) {
    if (name == "fixed") return OrientationMode::fixed;
    if (name == "drifting") return OrientationMode::drifting;
    if (name == "per_session_random") return OrientationMode::per_session_random;
    throw CLI::ValidationError("--orientation", "must be fixed, drifting or per_session_random");
}

const char* orientation_name(OrientationMode mode) {
    switch (mode) {
        case OrientationMode::fixed: return "fixed";
        case OrientationMode::drifting: return "drifting";
        case OrientationMode::per_session_random: return "per_session_random";
    }
    return "?";
}

// subject id = stem up to the first '_'; session id = whole stem.
std::pair<std::string, std::string> ids_from_path(const fs::path& path) {
    const std::string stem = path.stem().string();
    const auto cut = stem.find('_');
    return {cut == std::string::npos ? stem : stem.substr(0, cut), stem};
}

json roc_to_json(const EvalReport& report) {
    json j;
    j["eer"] = report.eer;
    j["eer_threshold"] = report.eer_threshold;
    j["n_genuine"] = report.n_genuine;
    j["n_impostor"] = report.n_impostor;
    json levels = json::object();
    for (const auto& [far, frr] : report.frr_at_far) {
        levels[std::to_string(far)] = frr;
    }
    j["frr_at_far"] = levels;
    j["roc_points"] = report.roc.size();
    return j;
}

void write_roc_csv(const EvalReport& report, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write ROC csv: " + path.string());
    out << "threshold,far,frr\n";
    out.precision(17);
    for (const auto& p : report.roc) {
        out << p.threshold << ',' << p.far << ',' << p.frr << '\n';
    }
}

struct SynthOptions {
    int subjects = 10;
    int sessions = 4;
    double duration_s = 20.0;
    double noise = 0.8;
    std::string orientation = "per_session_random";
    std::vector<double> base{0.0, 0.0, 0.0};
    double drift_rate = 3.0;
    double min_distance = 0.35;
    std::uint64_t seed = 1;
    double rate_hz = 27.0;
    std::string out_dir;
};

int cmd_synth(const SynthOptions& opt) {
    CohortConfig cfg;
    cfg.n_subjects = opt.subjects;
    cfg.sessions_per_subject = opt.sessions;
    cfg.duration_s = opt.duration_s;
    cfg.rate_hz = opt.rate_hz;
    cfg.noise_sigma = opt.noise;
    cfg.orientation_mode = parse_orientation(opt.orientation);
    cfg.orientation_base = {opt.base[0], opt.base[1], opt.base[2]};
    cfg.drift_rate = opt.drift_rate;
    cfg.master_seed = opt.seed;
    cfg.min_param_distance = opt.min_distance;

    print_config({{"subjects", std::to_string(cfg.n_subjects)},
                  {"sessions", std::to_string(cfg.sessions_per_subject)},
                  {"duration_s", std::to_string(cfg.duration_s)},
                  {"rate_hz", std::to_string(cfg.rate_hz)},
                  {"noise", std::to_string(cfg.noise_sigma)},
                  {"orientation", opt.orientation},
                  {"drift_rate", std::to_string(cfg.drift_rate)},
                  {"seed", std::to_string(cfg.master_seed)}});

    const fs::path out_dir(opt.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    auto cohort = gen_cohort(cfg);

    json manifest;
    manifest["master_seed"] = cfg.master_seed;
    manifest["rate_hz"] = cfg.rate_hz;
    manifest["duration_s"] = cfg.duration_s;
    manifest["noise_sigma"] = cfg.noise_sigma;
    manifest["orientation_mode"] = opt.orientation;
    manifest["sessions"] = json::array();

    for (const auto& cs : cohort.sessions) {
        const fs::path log_path = out_dir / (cs.session_id + ".csv");
        const fs::path truth_path = out_dir / (cs.session_id + "_truth.csv");
        {
            std::ofstream out(log_path);
            if (!out) throw std::runtime_error("cannot write " + log_path.string());
            serialize_log(cs.session, out);
        }
        {
            std::ofstream out(truth_path);
            if (!out) throw std::runtime_error("cannot write " + truth_path.string());
            out << "session_id,cycle_start_index\n";
            for (auto idx : cs.truth) out << cs.session_id << ',' << idx << '\n';
        }
        json entry;
        entry["file"] = log_path.filename().string();
        entry["truth_file"] = truth_path.filename().string();
        entry["subject_id"] = cs.subject_id;
        entry["session_id"] = cs.session_id;
        entry["orientation"] = {{"mode", orientation_name(cs.trajectory.mode)},
                                {"base", cs.trajectory.base},
                                {"drift_rate", cs.trajectory.drift_rate},
                                {"seed", cs.trajectory.seed}};
        manifest["sessions"].push_back(entry);
    }

    const fs::path manifest_path = out_dir / "manifest.json";
    std::ofstream mout(manifest_path);
    if (!mout) throw std::runtime_error("cannot write " + manifest_path.string());
    mout << manifest.dump(2) << '\n';

    std::cerr << "wrote " << cohort.sessions.size() << " sessions to " << out_dir.string()
              << '\n';
    return 0;
}

struct DumpOptions {
    std::string signal_dir;  // per-session transformed channels, t_ms,z,xy,m
    std::string starts_dir;  // per-session detected starts, index,t_ms,z_value
};

void dump_session_debug(const SessionResult& res, double rate_hz, const DumpOptions& dumps) {
    const double dt_ms = 1000.0 / rate_hz;
    if (!dumps.signal_dir.empty()) {
        fs::create_directories(dumps.signal_dir);
        std::ofstream out(fs::path(dumps.signal_dir) / (res.session_id + "_signal.csv"));
        out << "t_ms,z,xy,m\n";
        out.precision(17);
        for (std::size_t i = 0; i < res.signal.size(); ++i) {
            out << i * dt_ms << ',' << res.signal.z[i] << ',' << res.signal.xy[i] << ','
                << res.signal.m[i] << '\n';
        }
    }
    if (!dumps.starts_dir.empty()) {
        fs::create_directories(dumps.starts_dir);
        std::ofstream out(fs::path(dumps.starts_dir) / (res.session_id + "_starts.csv"));
        out << "index,t_ms,z_value\n";
        out.precision(17);
        for (const auto& seg : res.segments) {
            out << seg.start_index << ',' << seg.start_index * dt_ms << ','
                << res.signal.z[seg.start_index] << '\n';
        }
    }
}

std::vector<FeatureVector> run_pipeline_over_logs(const std::vector<std::string>& files,
                                                  const PipelineConfig& config, int jobs,
                                                  ChannelMode mode, std::size_t* failures,
                                                  const DumpOptions& dumps = {}) {
    struct FileResult {
        std::vector<FeatureVector> features;
        std::string note;
        bool failed = false;
    };
    std::vector<FileResult> results(files.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            auto& r = results[i];
            try {
                std::ifstream in(files[i]);
                if (!in) throw std::runtime_error("cannot open file");
                auto [subject, session] = ids_from_path(files[i]);
                auto raw = parse_log(in, subject);
                auto res = run_session(raw, session, config, mode);
                dump_session_debug(res, config.rate_hz, dumps);
                std::ostringstream note;
                note << files[i] << ": " << res.segments.size() << " cycles, "
                     << res.features.size() << " patterns";
                for (const auto& w : res.warnings.messages) note << "\n  warning: " << w;
                r.note = note.str();
                r.features = std::move(res.features);
            } catch (const std::exception& e) {
                r.failed = true;
                r.note = files[i] + ": skipped (" + e.what() + ")";
            }
        }
    };

    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Report and concatenate in input order so output is independent of
    // the thread count.
    std::vector<FeatureVector> features;
    std::size_t failed = 0;
    for (const auto& r : results) {
        std::cerr << r.note << '\n';
        failed += r.failed ? 1 : 0;
        features.insert(features.end(), r.features.begin(), r.features.end());
    }
    if (failures) *failures = failed;
    return features;
}

std::vector<std::string> collect_log_files(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<std::string> dir_files;
            for (const auto& entry : fs::directory_iterator(input)) {
                if (!entry.is_regular_file()) continue;
                const auto name = entry.path().filename().string();
                if (entry.path().extension() == ".csv" && name.find("_truth") == std::string::npos &&
                    name != "manifest.json") {
                    dir_files.push_back(entry.path().string());
                }
            }
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else {
            files.push_back(input);
        }
    }
    if (files.empty()) throw std::runtime_error("no input log files");
    return files;
}

json config_echo(const PipelineConfig& config) {
    json j;
    for (const auto& [k, v] : config.as_map()) j[k] = v;
    return j;
}

int cmd_eval(const PipelineConfig& config, const std::vector<FeatureVector>& features,
             const std::string& report_path, const std::string& roc_path,
             const std::vector<double>& far_levels) {
    EvalConfig ec = config.eval_config();
    if (!far_levels.empty()) ec.far_levels = far_levels;

    Warnings warnings;
    auto verification = evaluate_verification(features, ec, &warnings);
    auto identification = evaluate_identification(features, ec, &warnings);
    for (const auto& w : warnings.messages) std::cerr << "warning: " << w << '\n';

    json report;
    report["config"] = config_echo(config);
    report["config_digest"] = config_digest(ec);
    report["scheme"] = ec.scheme;
    report["verification"]["pattern"] = roc_to_json(verification.pattern);
    report["verification"]["session"] = roc_to_json(verification.session);
    report["verification"]["session_at_pattern_eer"] = {
        {"threshold", verification.pattern.eer_threshold},
        {"far", verification.session_far_at_pattern_eer},
        {"frr", verification.session_frr_at_pattern_eer}};
    report["identification"] = {{"pattern_accuracy", identification.pattern_accuracy},
                                {"session_accuracy", identification.session_accuracy},
                                {"n_patterns", identification.n_patterns},
                                {"n_sessions", identification.n_sessions}};

    if (!roc_path.empty()) write_roc_csv(verification.pattern, roc_path);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write report: " + report_path);
        out << report.dump(2) << '\n';
    } else {
        std::cout << report.dump(2) << '\n';
    }

    std::cerr << "pattern EER " << verification.pattern.eer << ", session EER "
              << verification.session.eer << ", identification (session) "
              << identification.session_accuracy << '\n';
    return 0;
}

int cmd_eval_ab(const PipelineConfig& config, const std::vector<std::string>& files, int jobs,
                const std::string& report_path) {
    struct Arm {
        const char* name;
        ChannelMode mode;
    };
    const Arm arms[] = {{"device_raw", ChannelMode::device_raw},
                        {"earth_transform", ChannelMode::earth},
                        {"magnitude_only", ChannelMode::magnitude_only}};

    json report;
    report["config"] = config_echo(config);
    report["config_digest"] = config_digest(config.eval_config());
    for (const auto& arm : arms) {
        std::cerr << "--- scenario " << arm.name << '\n';
        std::size_t failures = 0;
        auto features = run_pipeline_over_logs(files, config, jobs, arm.mode, &failures);
        Warnings warnings;
        auto verification = evaluate_verification(features, config.eval_config(), &warnings);
        for (const auto& w : warnings.messages) std::cerr << "warning: " << w << '\n';
        json arm_json;
        arm_json["pattern"] = roc_to_json(verification.pattern);
        arm_json["session"] = roc_to_json(verification.session);
        arm_json["sessions_failed"] = failures;
        report["scenarios"][arm.name] = arm_json;
        std::cerr << arm.name << ": pattern EER " << verification.pattern.eer << " ("
                  << failures << " sessions failed)\n";
    }

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write report: " + report_path);
        out << report.dump(2) << '\n';
    } else {
        std::cout << report.dump(2) << '\n';
    }
    return 0;
}

struct ConfigFileBinding {
    std::string path;
    CLI::App* app = nullptr;
};

void add_pipeline_flags(CLI::App* app, PipelineConfig& config, ConfigFileBinding& binding) {
    binding.app = app;
    app->add_option("--config", binding.path, "Config file (key=value lines, flags win)");
    app->add_option("--rate", config.rate_hz, "Uniform resampling rate in Hz");
    app->add_option("--wavelet-levels", config.wavelet_levels, "Denoising decomposition depth");
    app->add_option("--tau", config.tau, "Peak magnitude threshold multiplier");
    app->add_option("--epsilon-fraction", config.epsilon_fraction,
                    "Cycle position window as a fraction of the cycle length");
    app->add_option("--ns", config.n_s, "Cycles per gait pattern (even)");
    app->add_option("--freq-bin-offset", config.freq_bin_offset,
                    "First spectral bin of the 40-bin feature window");
    app->add_option("--pca-variance", config.pca_variance, "Retained variance fraction");
    app->add_option("--svm-c", config.svm_c, "SVM regularization parameter C");
    app->add_option("--train-fraction", config.train_fraction,
                    "Per-subject fraction of patterns used for training");
    app->add_option("--seed", config.seed, "Random seed for splits and training");
    app->add_option("--scheme", config.scheme, "Recognition scheme: knn or svm");
}

// key=value configuration with CLI-flag precedence: a file value is applied
// only when the matching flag was not given on the command line.
void apply_config_file(const ConfigFileBinding& binding, PipelineConfig& config) {
    if (binding.path.empty()) return;
    std::ifstream in(binding.path);
    if (!in) throw std::runtime_error("cannot open config file: " + binding.path);

    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config file line " + std::to_string(line_no) +
                                     ": expected key=value");
        }
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t");
            const auto e = v.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        for (auto& c : key) {
            if (c == '-') c = '_';
        }
        kv[key] = trim(line.substr(eq + 1));
    }

    auto fresh = [&](const char* flag) { return binding.app->count(flag) == 0; };
    auto take = [&](std::initializer_list<const char*> names, const char* flag, auto setter) {
        for (const char* name : names) {
            auto it = kv.find(name);
            if (it == kv.end()) continue;
            if (fresh(flag)) setter(it->second);
            kv.erase(it);
        }
    };
    auto to_d = [](const std::string& v) { return std::stod(v); };
    auto to_i = [](const std::string& v) { return std::stoi(v); };

    take({"rate", "rate_hz"}, "--rate", [&](const std::string& v) { config.rate_hz = to_d(v); });
    take({"wavelet_levels"}, "--wavelet-levels",
         [&](const std::string& v) { config.wavelet_levels = to_i(v); });
    take({"tau"}, "--tau", [&](const std::string& v) { config.tau = to_d(v); });
    take({"epsilon_fraction"}, "--epsilon-fraction",
         [&](const std::string& v) { config.epsilon_fraction = to_d(v); });
    take({"ns", "n_s"}, "--ns", [&](const std::string& v) { config.n_s = to_i(v); });
    take({"freq_bin_offset"}, "--freq-bin-offset",
         [&](const std::string& v) { config.freq_bin_offset = static_cast<std::size_t>(to_i(v)); });
    take({"pca_variance"}, "--pca-variance",
         [&](const std::string& v) { config.pca_variance = to_d(v); });
    take({"svm_c"}, "--svm-c", [&](const std::string& v) { config.svm_c = to_d(v); });
    take({"train_fraction"}, "--train-fraction",
         [&](const std::string& v) { config.train_fraction = to_d(v); });
    take({"seed"}, "--seed",
         [&](const std::string& v) { config.seed = std::stoull(v); });
    take({"scheme"}, "--scheme", [&](const std::string& v) { config.scheme = v; });
    if (!kv.empty()) {
        throw std::runtime_error("config file: unknown key '" + kv.begin()->first + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orientation-invariant gait verification pipeline"};
    app.require_subcommand(1);

    PipelineConfig config;

    // synth
    SynthOptions synth_opt;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic walking cohort");
    synth->add_option("--subjects", synth_opt.subjects, "Number of subjects")->required();
    synth->add_option("--sessions", synth_opt.sessions, "Sessions per subject")->required();
    synth->add_option("--out", synth_opt.out_dir, "Output directory")->required();
    synth->add_option("--seed", synth_opt.seed, "Master seed");
    synth->add_option("--duration", synth_opt.duration_s, "Session length in seconds");
    synth->add_option("--rate", synth_opt.rate_hz, "Sampling rate in Hz");
    synth->add_option("--noise", synth_opt.noise, "Sensor noise sigma in m/s^2");
    synth->add_option("--orientation", synth_opt.orientation,
                      "fixed | drifting | per_session_random");
    synth->add_option("--base", synth_opt.base, "Base orientation angles (deg)")->expected(3);
    synth->add_option("--drift-rate", synth_opt.drift_rate, "Drift rate in deg/s");
    synth->add_option("--min-distance", synth_opt.min_distance,
                      "Subject parameter distinctness floor");

    // pipeline
    std::vector<std::string> pipe_inputs;
    std::string pipe_out;
    int jobs = 1;
    ConfigFileBinding config_binding;
    auto* pipeline = app.add_subcommand("pipeline", "Extract features from raw logs");
    pipeline->add_option("inputs", pipe_inputs, "Log files or directories")->required();
    pipeline->add_option("--out", pipe_out, "Output feature CSV")->required();
    pipeline->add_option("--jobs", jobs, "Parallel file workers");
    DumpOptions dumps;
    pipeline->add_option("--dump-signals", dumps.signal_dir,
                         "Write per-session transformed channels (t_ms,z,xy,m) here");
    pipeline->add_option("--dump-starts", dumps.starts_dir,
                         "Write per-session detected cycle starts here");
    add_pipeline_flags(pipeline, config, config_binding);

    // train
    std::string train_features, train_model;
    auto* train = app.add_subcommand("train", "Fit a recognition model from features");
    train->add_option("--features", train_features, "Feature CSV")->required();
    train->add_option("--model", train_model, "Output model file")->required();
    add_pipeline_flags(train, config, config_binding);

    // eval
    std::vector<std::string> eval_inputs;
    std::string eval_features, eval_report, eval_roc;
    std::vector<double> far_levels{0.01};
    bool ab_disorientation = false;
    auto* eval = app.add_subcommand("eval", "Cross-verification and identification protocol");
    eval->add_option("--features", eval_features, "Feature CSV (already extracted)");
    eval->add_option("--logs", eval_inputs, "Raw log files or directories");
    eval->add_option("--report", eval_report, "Output JSON report (stdout if omitted)");
    eval->add_option("--roc", eval_roc, "Optional ROC CSV (pattern-based)");
    eval->add_option("--far-levels", far_levels, "FAR levels for FRR reporting");
    eval->add_flag("--ab-disorientation", ab_disorientation,
                   "Run the with/without-transform study (requires --logs)");
    eval->add_option("--jobs", jobs, "Parallel file workers");
    add_pipeline_flags(eval, config, config_binding);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 0 covers --help/--version
    }

    try {
        if (!synth->parsed()) {
            // Rebind to whichever subcommand actually parsed.
            for (auto* sub : {pipeline, train, eval}) {
                if (sub->parsed()) config_binding.app = sub;
            }
            apply_config_file(config_binding, config);
        }
        config.validate();
        if (synth->parsed()) return cmd_synth(synth_opt);

        if (pipeline->parsed()) {
            print_config(config.as_map());
            auto files = collect_log_files(pipe_inputs);
            std::size_t failures = 0;
            auto features =
                run_pipeline_over_logs(files, config, jobs, ChannelMode::earth, &failures, dumps);
            if (failures == files.size()) {
                throw std::runtime_error("all input files failed");
            }
            std::ofstream out(pipe_out);
            if (!out) throw std::runtime_error("cannot write features: " + pipe_out);
            write_features_csv(features, out);
            std::cerr << "wrote " << features.size() << " feature vectors ("
                      << files.size() - failures << "/" << files.size() << " files)\n";
            return 0;
        }

        if (train->parsed()) {
            print_config(config.as_map());
            std::ifstream in(train_features);
            if (!in) throw std::runtime_error("cannot open features: " + train_features);
            auto features = read_features_csv(in);
            if (features.empty()) throw std::runtime_error("feature file is empty");

            RecognitionModel model;
            model.scheme = config.scheme;
            Matrix rows;
            for (const auto& fv : features) rows.push_back(fv.values);
            model.pca = fit_pca(rows, config.pca_variance);

            std::map<std::string, Matrix> by_subject;
            std::vector<std::string> order;
            for (const auto& fv : features) {
                if (!by_subject.count(fv.subject_id)) order.push_back(fv.subject_id);
                by_subject[fv.subject_id].push_back(pca_project(model.pca, fv.values));
            }
            if (config.scheme == "svm") {
                if (order.size() < 2) {
                    throw std::runtime_error("svm training needs at least 2 subjects");
                }
                for (const auto& subject : order) {
                    Matrix negatives;
                    for (const auto& [other, vecs] : by_subject) {
                        if (other == subject) continue;
                        negatives.insert(negatives.end(), vecs.begin(), vecs.end());
                    }
                    SvmTrainOptions opts;
                    opts.c_param = config.svm_c;
                    auto svm = train_svm(by_subject[subject], negatives, opts);
                    svm.subject_id = subject;
                    svm.seed = config.seed;
                    model.svms.push_back(std::move(svm));
                }
            } else {
                for (const auto& subject : order) {
                    for (auto& v : by_subject[subject]) {
                        model.gallery.entries.push_back({subject, std::move(v)});
                    }
                }
            }

            std::ofstream out(train_model);
            if (!out) throw std::runtime_error("cannot write model: " + train_model);
            save_model(model, out);
            std::cerr << "wrote model (" << model.pca.components() << " components, "
                      << order.size() << " subjects) to " << train_model << '\n';
            return 0;
        }

        if (eval->parsed()) {
            print_config(config.as_map());
            if (ab_disorientation) {
                if (eval_inputs.empty()) {
                    throw CLI::ValidationError("--ab-disorientation", "requires --logs");
                }
                return cmd_eval_ab(config, collect_log_files(eval_inputs), jobs, eval_report);
            }
            std::vector<FeatureVector> features;
            if (!eval_features.empty()) {
                std::ifstream in(eval_features);
                if (!in) throw std::runtime_error("cannot open features: " + eval_features);
                features = read_features_csv(in);
            } else if (!eval_inputs.empty()) {
                auto files = collect_log_files(eval_inputs);
                features = run_pipeline_over_logs(files, config, jobs, ChannelMode::earth,
                                                  nullptr);
            } else {
                throw CLI::ValidationError("eval", "needs --features or --logs");
            }
            return cmd_eval(config, features, eval_report, eval_roc, far_levels);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

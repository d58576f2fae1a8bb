#include "gaitauth/synth.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gaitauth/rng.hpp"

namespace gait {

namespace {

constexpr double kGravity = 9.81;  // m/s^2 along Earth Z

// Periodic bump centered at phase 0, height 1; shape controls the width
// (larger = narrower).
double strike_pulse(double phase, double shape) {
    return std::exp(shape * (std::cos(2.0 * M_PI * phase) - 1.0));
}

// Mean of strike_pulse over one period: exp(-shape) * I0(shape). The dip
// train is centered by this so the vertical channel integrates to zero
// over a cycle, as momentum conservation demands of real walking.
double strike_pulse_mean(double shape) {
    return std::exp(-shape) * std::cyl_bessel_i(0.0, shape);
}

double harmonic_sum(const std::vector<Harmonic>& hs, double phase) {
    double v = 0.0;
    int k = 1;
    for (const auto& h : hs) {
        v += h.amplitude * std::cos(2.0 * M_PI * k * phase + h.phase);
        ++k;
    }
    return v;
}

}  // namespace

EarthGait gen_earth_gait(const SubjectParams& params, double duration_s, double rate_hz) {
    if (params.cycle_s <= 0) throw std::invalid_argument("cycle_s must be positive");
    if (duration_s < 2.0 * params.cycle_s) {
        throw std::invalid_argument("duration must cover at least two gait cycles");
    }
    if (params.step_asymmetry < 0.0 || params.step_asymmetry > 1.0) {
        throw std::invalid_argument("step_asymmetry must be in [0, 1]");
    }

    EarthGait gait;
    gait.rate_hz = rate_hz;
    const auto n = static_cast<std::size_t>(std::llround(duration_s * rate_hz));
    gait.samples.reserve(n);

    Rng rng(params.seed);
    const double T = params.cycle_s;
    const double pulse_mean = strike_pulse_mean(params.strike_shape);
    const auto cycle_count = std::floor(duration_s / T);
    // The walker stops after the last counted cycle: no strike is emitted
    // past it, so the truth list covers every strike in the signal. The
    // envelope ramps off smoothly; a hard edge would leak a spurious dip
    // through the denoiser.
    const double strikes_end = (cycle_count - 0.5) * T + 0.15 * T;
    const double ramp = 0.1 * T;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / rate_hz;
        const double phase = t / T;
        double envelope = 1.0;
        if (t > strikes_end + ramp) {
            envelope = 0.0;
        } else if (t > strikes_end) {
            envelope = 0.5 * (1.0 + std::cos(M_PI * (t - strikes_end) / ramp));
        }
        // Same-side heel strikes at phase 0.5 (mod 1), off-side at 0.0.
        const double dips =
            envelope * params.strike_depth *
            (strike_pulse(phase - 0.5, params.strike_shape) - pulse_mean +
             params.step_asymmetry * (strike_pulse(phase, params.strike_shape) - pulse_mean));
        double texture = 0.0;
        for (const auto& tc : params.texture) {
            texture += tc.amplitude * std::cos(2.0 * M_PI * tc.hz * t + tc.phase);
        }
        const double z = harmonic_sum(params.harmonics_z, phase) + texture - dips;
        const double h = harmonic_sum(params.harmonics_h, phase);
        Vec3 e{h * std::cos(params.heading_rad), h * std::sin(params.heading_rad), z};
        if (params.noise_sigma > 0) {
            for (auto& c : e) c += rng.normal(0.0, params.noise_sigma);
        }
        gait.samples.push_back(e);
    }

    const auto cycles = static_cast<std::size_t>(std::floor(duration_s / T));
    for (std::size_t j = 0; j < cycles; ++j) {
        gait.truth.push_back(
            static_cast<std::size_t>(std::lround((static_cast<double>(j) + 0.5) * T * rate_hz)));
    }
    return gait;
}

Vec3 trajectory_angles(const OrientationTrajectory& traj, double t_s) {
    switch (traj.mode) {
        case OrientationMode::fixed:
            return traj.base;
        case OrientationMode::drifting: {
            // Per-angle drift directions drawn once from the seed.
            Rng rng(mix_seed(traj.seed, 0x5eed));
            Vec3 dir{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            return Vec3{traj.base[0] + traj.drift_rate * t_s * dir[0],
                        traj.base[1] + traj.drift_rate * t_s * dir[1],
                        traj.base[2] + traj.drift_rate * t_s * dir[2]};
        }
        case OrientationMode::per_session_random: {
            Rng rng(mix_seed(traj.seed, 0x0a11));
            return Vec3{rng.uniform(-180.0, 180.0), rng.uniform(-90.0, 90.0),
                        rng.uniform(-180.0, 180.0)};
        }
    }
    return traj.base;
}

RawSession to_device_frame(const std::vector<Vec3>& earth_samples,
                           const OrientationTrajectory& traj, double rate_hz,
                           std::string subject_id) {
    RawSession session;
    session.subject_id = std::move(subject_id);
    session.records.reserve(earth_samples.size() * 3);

    const Vec3 g_earth{0.0, 0.0, kGravity};
    for (std::size_t i = 0; i < earth_samples.size(); ++i) {
        const double t_s = static_cast<double>(i) / rate_hz;
        const double t_ms = t_s * 1000.0;
        const Vec3 angles = trajectory_angles(traj, t_s);
        const RotationMatrix rot = rotation_matrix(angles);

        const Vec3 linear = to_device(earth_samples[i], rot);
        const Vec3 gravity = to_device(g_earth, rot);
        const Vec3 accel{linear[0] + gravity[0], linear[1] + gravity[1], linear[2] + gravity[2]};

        session.records.push_back({t_ms, SensorKind::accel, accel});
        session.records.push_back({t_ms, SensorKind::gravity, gravity});
        session.records.push_back({t_ms, SensorKind::orientation, angles});
    }
    return session;
}

double subject_param_distance(const SubjectParams& a, const SubjectParams& b) {
    // Weighted L2 over the parameters that shape the signal; cycle length
    // differences dominate on purpose (they are the most discriminative).
    double d = 0.0;
    const double dc = (a.cycle_s - b.cycle_s) / 0.25;
    d += dc * dc;
    const std::size_t nz = std::max(a.harmonics_z.size(), b.harmonics_z.size());
    for (std::size_t i = 0; i < nz; ++i) {
        const double av = i < a.harmonics_z.size() ? a.harmonics_z[i].amplitude : 0.0;
        const double bv = i < b.harmonics_z.size() ? b.harmonics_z[i].amplitude : 0.0;
        d += (av - bv) * (av - bv);
    }
    const std::size_t nh = std::max(a.harmonics_h.size(), b.harmonics_h.size());
    for (std::size_t i = 0; i < nh; ++i) {
        const double av = i < a.harmonics_h.size() ? a.harmonics_h[i].amplitude : 0.0;
        const double bv = i < b.harmonics_h.size() ? b.harmonics_h[i].amplitude : 0.0;
        d += (av - bv) * (av - bv);
    }
    const double da = a.step_asymmetry - b.step_asymmetry;
    d += da * da;
    const std::size_t nt = std::max(a.texture.size(), b.texture.size());
    for (std::size_t i = 0; i < nt; ++i) {
        const double ahz = i < a.texture.size() ? a.texture[i].hz : 0.0;
        const double bhz = i < b.texture.size() ? b.texture[i].hz : 0.0;
        const double aam = i < a.texture.size() ? a.texture[i].amplitude : 0.0;
        const double bam = i < b.texture.size() ? b.texture[i].amplitude : 0.0;
        d += (ahz - bhz) * (ahz - bhz) / 0.09;
        d += (aam - bam) * (aam - bam);
    }
    return std::sqrt(d);
}

SubjectParams random_subject_params(Rng& rng, double noise_sigma) {
    SubjectParams p;
    p.cycle_s = rng.uniform(0.9, 1.4);
    // The torso bounce is step-periodic (second harmonic) and phase
    // locked to the strikes: peak downward acceleration coincides with
    // ground contact. The lock matters; a free phase could cancel the dip
    // train's own second harmonic and starve the autocorrelation of its
    // half-cycle peak.
    p.harmonics_z = {
        {rng.uniform(0.2, 0.5), rng.uniform(0.0, 2.0 * M_PI)},
        {rng.uniform(1.8, 2.8), M_PI + rng.uniform(-0.5, 0.5)},
        {rng.uniform(0.4, 0.9), rng.uniform(0.0, 2.0 * M_PI)},
    };
    p.harmonics_h = {
        {rng.uniform(1.0, 2.5), rng.uniform(0.0, 2.0 * M_PI)},
        {rng.uniform(0.3, 1.2), rng.uniform(0.0, 2.0 * M_PI)},
        {rng.uniform(0.1, 0.5), rng.uniform(0.0, 2.0 * M_PI)},
    };
    // Pocket-worn accelerometers see heel strikes of well over a g; the
    // swing-phase oscillation sits far below that. The off-side strike is
    // weak at the same-side pocket.
    p.strike_depth = rng.uniform(11.0, 14.0);
    p.strike_shape = 3.5;
    p.step_asymmetry = rng.uniform(0.1, 0.22);
    p.noise_sigma = noise_sigma;
    p.heading_rad = rng.uniform(0.0, 2.0 * M_PI);
    p.texture = {
        {rng.uniform(2.3, 3.0), rng.uniform(0.3, 0.6), rng.uniform(0.0, 2.0 * M_PI)},
    };
    return p;
}

Cohort gen_cohort(const CohortConfig& config) {
    if (config.n_subjects < 2) throw std::invalid_argument("cohort needs at least 2 subjects");
    if (config.sessions_per_subject < 1) {
        throw std::invalid_argument("cohort needs at least 1 session per subject");
    }

    Cohort cohort;
    cohort.config = config;

    Rng draw_rng(mix_seed(config.master_seed, 0xc040));
    for (int s = 0; s < config.n_subjects; ++s) {
        // Rejection-sample until the new subject clears the distinctness
        // floor against everyone already drawn.
        SubjectParams p;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            p = random_subject_params(draw_rng, config.noise_sigma);
            bool ok = true;
            for (const auto& q : cohort.subjects) {
                if (subject_param_distance(p, q) < config.min_param_distance) {
                    ok = false;
                    break;
                }
            }
            if (ok) break;
            if (attempt == 999) {
                throw std::runtime_error("could not draw distinct subject parameters; "
                                         "lower min_param_distance or the subject count");
            }
        }
        cohort.subjects.push_back(p);
    }

    char buf[32];
    for (int s = 0; s < config.n_subjects; ++s) {
        std::snprintf(buf, sizeof(buf), "s%02d", s + 1);
        const std::string subject_id = buf;
        for (int k = 0; k < config.sessions_per_subject; ++k) {
            SubjectParams params = cohort.subjects[s];
            params.seed = mix_seed(config.master_seed,
                                   0x10000ULL * static_cast<std::uint64_t>(s + 1) +
                                       static_cast<std::uint64_t>(k + 1));

            CohortSession cs;
            cs.subject_id = subject_id;
            std::snprintf(buf, sizeof(buf), "%s_sess%02d", subject_id.c_str(), k + 1);
            cs.session_id = buf;

            cs.earth = gen_earth_gait(params, config.duration_s, config.rate_hz);
            cs.truth = cs.earth.truth;

            cs.trajectory.mode = config.orientation_mode;
            cs.trajectory.base = config.orientation_base;
            cs.trajectory.drift_rate = config.drift_rate;
            cs.trajectory.seed = mix_seed(params.seed, 0x7ea1);

            cs.session = to_device_frame(cs.earth.samples, cs.trajectory, config.rate_hz,
                                         subject_id);
            cohort.sessions.push_back(std::move(cs));
        }
    }
    return cohort;
}

}  // namespace gait

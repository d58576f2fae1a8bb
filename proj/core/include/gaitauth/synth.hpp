#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaitauth/earth.hpp"
#include "gaitauth/ingest.hpp"

namespace gait {

struct Harmonic {
    double amplitude = 0.0;  // m/s^2
    double phase = 0.0;      // radians
};

/// Oscillation at a fixed frequency (Hz), not locked to the gait cycle.
struct TextureComponent {
    double hz = 0.0;
    double amplitude = 0.0;  // m/s^2
    double phase = 0.0;      // radians
};

/// Generator parameters for one synthetic walker. The vertical channel is
/// a periodic train of two heel-strike dips per cycle (the off-side dip
/// scaled by step_asymmetry) plus the listed harmonics; the horizontal
/// channel is a harmonic sum split between Earth X and Y by a per-subject
/// heading.
struct SubjectParams {
    double cycle_s = 1.0;
    std::vector<Harmonic> harmonics_z;
    std::vector<Harmonic> harmonics_h;
    double step_asymmetry = 0.45;  // in [0, 1]; 1 makes both dips equal depth
    double noise_sigma = 0.0;      // m/s^2
    std::uint64_t seed = 0;
    double heading_rad = 0.0;
    double strike_depth = 6.0;     // m/s^2, depth of the same-side dip
    double strike_shape = 4.0;     // dip sharpness; larger = narrower dip
    // Body oscillations that are not locked to the gait cycle; they are
    // what survives denoising as shallow texture minima between heel
    // strikes. Heel strikes must stay loud against this texture: the
    // denoiser's periodized transform is not shift invariant, so dip
    // depths wobble by roughly +-15% with the cycle's grid phase, and the
    // peak-magnitude cutoff needs the gap to absorb that.
    std::vector<TextureComponent> texture;
};

enum class OrientationMode { fixed, drifting, per_session_random };

struct OrientationTrajectory {
    OrientationMode mode = OrientationMode::fixed;
    Vec3 base{0.0, 0.0, 0.0};  // (alpha, beta, gamma) degrees
    double drift_rate = 0.0;   // degrees/s, direction drawn from seed
    std::uint64_t seed = 0;
};

struct EarthGait {
    std::vector<Vec3> samples;            // Earth-frame linear acceleration
    std::vector<std::size_t> truth;       // sample index of each same-side heel strike
    double rate_hz = 0.0;
};

/// Ground-truth Earth-frame gait. Heel strikes sit at (j + 0.5) * cycle_s
/// for j = 0 .. floor(duration/cycle_s) - 1, so the truth count equals
/// floor(duration/cycle_s) exactly when noise is off.
EarthGait gen_earth_gait(const SubjectParams& params, double duration_s, double rate_hz);

/// Orientation angles of the trajectory at time t (seconds).
Vec3 trajectory_angles(const OrientationTrajectory& traj, double t_s);

/// Re-expresses an Earth-frame signal in a (possibly moving) device frame:
/// per sample, device linear accel = e * R^T, device gravity =
/// (0,0,9.81) * R^T, emitted accel = linear + gravity. All three streams
/// share the accel timestamps.
RawSession to_device_frame(const std::vector<Vec3>& earth_samples,
                           const OrientationTrajectory& traj, double rate_hz,
                           std::string subject_id = "");

struct CohortConfig {
    int n_subjects = 10;
    int sessions_per_subject = 4;
    double duration_s = 20.0;
    double rate_hz = 27.0;
    double noise_sigma = 0.8;
    OrientationMode orientation_mode = OrientationMode::per_session_random;
    Vec3 orientation_base{0.0, 0.0, 0.0};
    double drift_rate = 3.0;  // degrees/s for drifting mode
    std::uint64_t master_seed = 1;
    // Subjects are rejection-sampled until pairwise parameter distance
    // stays above this floor, so cohorts are distinguishable by design.
    double min_param_distance = 0.35;
};

struct CohortSession {
    std::string subject_id;
    std::string session_id;
    RawSession session;
    std::vector<std::size_t> truth;
    EarthGait earth;  // kept for oracle tests
    OrientationTrajectory trajectory;
};

struct Cohort {
    std::vector<CohortSession> sessions;
    std::vector<SubjectParams> subjects;
    CohortConfig config;
};

/// Seeded cohort generation; same master seed, same bytes out.
Cohort gen_cohort(const CohortConfig& config);

/// One random walker drawn from the cohort parameter ranges; also used by
/// tests that need single sessions instead of a whole cohort.
class Rng;
SubjectParams random_subject_params(Rng& rng, double noise_sigma);

/// Distance used by the cohort distinctness floor.
double subject_param_distance(const SubjectParams& a, const SubjectParams& b);

}  // namespace gait

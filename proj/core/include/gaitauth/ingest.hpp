#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace gait {

using Vec3 = std::array<double, 3>;

enum class SensorKind { accel, gravity, orientation };

const char* to_string(SensorKind kind);

/// One raw sensor reading. Acceleration and gravity are in m/s^2;
/// orientation carries (alpha, beta, gamma) rotation angles in degrees
/// about the device Z, X and Y axes.
struct SensorRecord {
    double t = 0.0;  // milliseconds since session start
    SensorKind kind = SensorKind::accel;
    Vec3 v{0.0, 0.0, 0.0};
};

/// A parsed walking-session log: all records of all three streams.
struct RawSession {
    std::string subject_id;
    std::vector<SensorRecord> records;
};

/// Accel/gravity/orientation synchronized onto one uniform time grid.
struct AlignedFrame {
    double t = 0.0;  // milliseconds
    Vec3 a{0.0, 0.0, 0.0};
    Vec3 g{0.0, 0.0, 0.0};
    Vec3 o{0.0, 0.0, 0.0};  // degrees
};

/// Collects non-fatal diagnostics (duplicate timestamps, skipped rows).
struct Warnings {
    std::vector<std::string> messages;
    void add(std::string msg) { messages.push_back(std::move(msg)); }
    bool empty() const { return messages.empty(); }
};

using TimedVec3 = std::pair<double, Vec3>;

/// Parses the CSV log format (header `t_ms,sensor,x,y,z`, sensor one of
/// acc/grav/orient). Records are stably sorted by timestamp within each
/// stream. Throws on malformed rows (message carries the line number),
/// empty input, or a stream with fewer than two records.
RawSession parse_log(std::istream& in, std::string subject_id = "");

/// Inverse of parse_log; emits records in stored order with shortest
/// round-trip number formatting.
void serialize_log(const RawSession& session, std::ostream& out);

/// Resamples a sorted series onto the uniform grid t0, t0+dt, ... with
/// dt = 1000/rate_hz ms, covering [t_first, t_last]. Values are linear
/// interpolations of the bracketing samples. Duplicate timestamps keep
/// the last record (sensors occasionally re-emit) and warn.
std::vector<TimedVec3> resample(const std::vector<TimedVec3>& series, double rate_hz,
                                Warnings* warnings = nullptr);

/// Resamples the accel stream at rate_hz on its own support and linearly
/// interpolates gravity and orientation at the accel timestamps. Frames
/// outside the overlap of all three streams are dropped; an empty overlap
/// throws.
std::vector<AlignedFrame> align(const RawSession& session, double rate_hz,
                                Warnings* warnings = nullptr);

}  // namespace gait

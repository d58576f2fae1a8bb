#include "gaitauth/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gait {

namespace {

constexpr const char* kHeader = "t_ms,sensor,x,y,z";

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

std::string format_double(double v) {
    std::array<char, 32> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

Vec3 lerp(const Vec3& a, const Vec3& b, double t) {
    return Vec3{a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

// Linear interpolation of a sorted, deduplicated series at time t.
// t must lie within [front.t, back.t].
Vec3 interp_at(const std::vector<TimedVec3>& series, double t) {
    auto it = std::lower_bound(series.begin(), series.end(), t,
                               [](const TimedVec3& s, double value) { return s.first < value; });
    if (it == series.end()) return series.back().second;
    if (it->first == t || it == series.begin()) return it->second;
    auto prev = std::prev(it);
    double span = it->first - prev->first;
    double u = span > 0 ? (t - prev->first) / span : 1.0;
    return lerp(prev->second, it->second, u);
}

// Sorts by time (stable) and collapses duplicate timestamps, keeping the
// last record.
std::vector<TimedVec3> prepare_series(std::vector<TimedVec3> series, const char* label,
                                      Warnings* warnings) {
    std::stable_sort(series.begin(), series.end(),
                     [](const TimedVec3& a, const TimedVec3& b) { return a.first < b.first; });
    std::vector<TimedVec3> out;
    out.reserve(series.size());
    for (auto& s : series) {
        if (!out.empty() && out.back().first == s.first) {
            if (warnings && out.back().second != s.second) {
                warnings->add(std::string(label) + ": duplicate timestamp " +
                              format_double(s.first) + " ms, keeping last record");
            }
            out.back() = s;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace

const char* to_string(SensorKind kind) {
    switch (kind) {
        case SensorKind::accel: return "acc";
        case SensorKind::gravity: return "grav";
        case SensorKind::orientation: return "orient";
    }
    return "?";
}

RawSession parse_log(std::istream& in, std::string subject_id) {
    RawSession session;
    session.subject_id = std::move(subject_id);

    std::string line;
    std::size_t line_no = 0;
    bool saw_any = false;
    std::size_t counts[3] = {0, 0, 0};

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == kHeader) continue;
        saw_any = true;

        auto fields = split_csv(line);
        if (fields.size() != 5) {
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": expected 5 fields, got " + std::to_string(fields.size()));
        }
        SensorRecord rec;
        if (!parse_double(fields[0], rec.t) || rec.t < 0) {
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": bad timestamp '" + fields[0] + "'");
        }
        if (fields[1] == "acc") {
            rec.kind = SensorKind::accel;
        } else if (fields[1] == "grav") {
            rec.kind = SensorKind::gravity;
        } else if (fields[1] == "orient") {
            rec.kind = SensorKind::orientation;
        } else {
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": unknown sensor '" + fields[1] + "'");
        }
        for (int i = 0; i < 3; ++i) {
            if (!parse_double(fields[2 + i], rec.v[i])) {
                throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                         ": bad value '" + fields[2 + i] + "'");
            }
        }
        counts[static_cast<int>(rec.kind)]++;
        session.records.push_back(rec);
    }

    if (!saw_any) throw std::runtime_error("empty log file");

    if (counts[1] == 0 && counts[2] == 0) {
        throw std::runtime_error("missing gravity/orientation streams");
    }
    const char* names[3] = {"acc", "grav", "orient"};
    for (int k = 0; k < 3; ++k) {
        if (counts[k] < 2) {
            throw std::runtime_error(std::string("stream '") + names[k] +
                                     "' has fewer than 2 records; cannot interpolate");
        }
    }

    // Stable sort by time within each stream, preserving relative order of
    // equal timestamps.
    std::stable_sort(session.records.begin(), session.records.end(),
                     [](const SensorRecord& a, const SensorRecord& b) {
                         if (a.kind != b.kind) return a.kind < b.kind;
                         return a.t < b.t;
                     });
    return session;
}

void serialize_log(const RawSession& session, std::ostream& out) {
    out << kHeader << '\n';
    for (const auto& rec : session.records) {
        out << format_double(rec.t) << ',' << to_string(rec.kind) << ',' << format_double(rec.v[0])
            << ',' << format_double(rec.v[1]) << ',' << format_double(rec.v[2]) << '\n';
    }
}

std::vector<TimedVec3> resample(const std::vector<TimedVec3>& series, double rate_hz,
                                Warnings* warnings) {
    if (rate_hz <= 0) throw std::invalid_argument("rate_hz must be positive");
    auto clean = prepare_series(series, "resample", warnings);
    if (clean.size() < 2) throw std::runtime_error("resample: need at least 2 samples");

    const double dt = 1000.0 / rate_hz;
    const double t0 = clean.front().first;
    const double t1 = clean.back().first;
    // Grid points are computed as t0 + k*dt (never accumulated) so the
    // spacing is exact.
    auto steps = static_cast<std::size_t>(std::floor((t1 - t0) / dt + 1e-9));

    std::vector<TimedVec3> out;
    out.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        double t = t0 + static_cast<double>(k) * dt;
        if (t > t1) t = t1;
        out.emplace_back(t, interp_at(clean, t));
    }
    return out;
}

std::vector<AlignedFrame> align(const RawSession& session, double rate_hz, Warnings* warnings) {
    std::vector<TimedVec3> acc, grav, orient;
    for (const auto& rec : session.records) {
        switch (rec.kind) {
            case SensorKind::accel: acc.emplace_back(rec.t, rec.v); break;
            case SensorKind::gravity: grav.emplace_back(rec.t, rec.v); break;
            case SensorKind::orientation: orient.emplace_back(rec.t, rec.v); break;
        }
    }
    if (acc.size() < 2 || grav.size() < 2 || orient.size() < 2) {
        throw std::runtime_error("align: all three streams need at least 2 records");
    }

    auto grid = resample(acc, rate_hz, warnings);
    auto g = prepare_series(std::move(grav), "gravity", warnings);
    auto o = prepare_series(std::move(orient), "orientation", warnings);

    const double lo = std::max(g.front().first, o.front().first);
    const double hi = std::min(g.back().first, o.back().first);

    std::vector<AlignedFrame> frames;
    frames.reserve(grid.size());
    for (const auto& [t, a] : grid) {
        if (t < lo || t > hi) continue;  // outside the overlap of all streams
        AlignedFrame f;
        f.t = t;
        f.a = a;
        f.g = interp_at(g, t);
        f.o = interp_at(o, t);
        frames.push_back(f);
    }
    if (frames.empty()) throw std::runtime_error("align: streams do not overlap in time");
    return frames;
}

}  // namespace gait

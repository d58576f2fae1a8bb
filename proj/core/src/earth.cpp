#include "gaitauth/earth.hpp"

#include <cmath>
#include <stdexcept>

namespace gait {

std::vector<AlignedFrame> remove_gravity(std::vector<AlignedFrame> frames) {
    for (auto& f : frames) {
        f.a[0] -= f.g[0];
        f.a[1] -= f.g[1];
        f.a[2] -= f.g[2];
    }
    return frames;
}

RotationMatrix rotation_matrix(const Vec3& orientation_deg) {
    for (double d : orientation_deg) {
        if (!std::isfinite(d)) throw std::invalid_argument("non-finite orientation angle");
    }
    constexpr double kDegToRad = M_PI / 180.0;
    const double a = orientation_deg[0] * kDegToRad;  // about device Z
    const double b = orientation_deg[1] * kDegToRad;  // about device X
    const double c = orientation_deg[2] * kDegToRad;  // about device Y
    const double sa = std::sin(a), ca = std::cos(a);
    const double sb = std::sin(b), cb = std::cos(b);
    const double sc = std::sin(c), cc = std::cos(c);

    RotationMatrix rot;
    rot.r = {{
        {ca * cc - sa * sb * sc, sa * cb, ca * sc + sa * sb * cc},
        {-sa * cc - ca * sb * sc, ca * cb, -sa * sc + ca * sb * cc},
        {-cb * sc, -sb, cb * cc},
    }};
    return rot;
}

Vec3 to_earth(const Vec3& a, const RotationMatrix& rot) {
    Vec3 out{0.0, 0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
        out[j] = a[0] * rot.r[0][j] + a[1] * rot.r[1][j] + a[2] * rot.r[2][j];
    }
    return out;
}

Vec3 to_device(const Vec3& earth, const RotationMatrix& rot) {
    Vec3 out{0.0, 0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
        out[j] = earth[0] * rot.r[j][0] + earth[1] * rot.r[j][1] + earth[2] * rot.r[j][2];
    }
    return out;
}

std::vector<Vec3> transform_frames(const std::vector<AlignedFrame>& frames) {
    std::vector<Vec3> out;
    out.reserve(frames.size());
    for (const auto& f : frames) {
        out.push_back(to_earth(f.a, rotation_matrix(f.o)));
    }
    return out;
}

GaitSignal project_channels(const std::vector<Vec3>& earth_samples, double rate_hz) {
    if (earth_samples.empty()) throw std::invalid_argument("project_channels: empty input");
    GaitSignal s;
    s.rate_hz = rate_hz;
    s.z.reserve(earth_samples.size());
    s.xy.reserve(earth_samples.size());
    s.m.reserve(earth_samples.size());
    for (const auto& e : earth_samples) {
        const double h2 = e[0] * e[0] + e[1] * e[1];
        s.z.push_back(e[2]);
        s.xy.push_back(std::sqrt(h2));
        s.m.push_back(std::sqrt(h2 + e[2] * e[2]));
    }
    return s;
}

}  // namespace gait

#pragma once

#include <array>
#include <vector>

#include "gaitauth/ingest.hpp"

namespace gait {

/// 3x3 rotation from device coordinates to Earth coordinates.
/// Orthonormal with determinant +1 for any finite input angles.
struct RotationMatrix {
    std::array<std::array<double, 3>, 3> r{};
};

/// The orientation-independent gait representation: vertical component,
/// horizontal magnitude and total magnitude of Earth-frame acceleration.
struct GaitSignal {
    double rate_hz = 0.0;
    std::vector<double> z;
    std::vector<double> xy;
    std::vector<double> m;
    std::size_t size() const { return z.size(); }
};

/// Subtracts the gravity reading from the accel reading per frame.
/// The gravity field is retained for audit.
std::vector<AlignedFrame> remove_gravity(std::vector<AlignedFrame> frames);

/// Builds the device-to-Earth rotation for orientation angles in degrees:
/// alpha about Z, beta about X, gamma about Y (Android orientation-sensor
/// convention). Throws on non-finite angles.
RotationMatrix rotation_matrix(const Vec3& orientation_deg);

/// Applies the rotation as a row-vector product a*R.
Vec3 to_earth(const Vec3& a, const RotationMatrix& rot);

/// Inverse map (a*R^T); rotations are orthonormal so the transpose is the
/// exact inverse.
Vec3 to_device(const Vec3& earth, const RotationMatrix& rot);

/// Full per-frame transform: gravity removal already done by the caller;
/// rotates each accel sample into the Earth frame using that frame's
/// orientation angles.
std::vector<Vec3> transform_frames(const std::vector<AlignedFrame>& frames);

/// Collapses Earth-frame samples into the (Z, XY, M) channels:
/// z = sample Z, xy = sqrt(X^2 + Y^2), m = sqrt(X^2 + Y^2 + Z^2).
GaitSignal project_channels(const std::vector<Vec3>& earth_samples, double rate_hz);

}  // namespace gait

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "doctest.h"
#include "gaitauth/ingest.hpp"
#include "gaitauth/rng.hpp"

using namespace gait;

TEST_SUITE_BEGIN("ingest");

TEST_CASE("parse_log maps fields directly") {
    std::istringstream in(
        "t_ms,sensor,x,y,z\n"
        "0,acc,0.1,9.8,0.0\n"
        "10,acc,0.2,9.7,0.1\n"
        "0,grav,0,9.81,0\n"
        "10,grav,0,9.81,0\n"
        "0,orient,10,20,30\n"
        "10,orient,11,21,31\n");
    auto session = parse_log(in, "subj");
    CHECK(session.subject_id == "subj");
    REQUIRE(session.records.size() == 6);
    const auto& r = session.records[0];
    CHECK(r.t == 0.0);
    CHECK(r.kind == SensorKind::accel);
    CHECK(r.v[0] == doctest::Approx(0.1));
    CHECK(r.v[1] == doctest::Approx(9.8));
    CHECK(r.v[2] == doctest::Approx(0.0));
}

TEST_CASE("parse_log rejects a file with only accel rows") {
    std::istringstream in(
        "t_ms,sensor,x,y,z\n"
        "0,acc,0,0,0\n"
        "10,acc,1,1,1\n");
    CHECK_THROWS_WITH_AS(parse_log(in), doctest::Contains("missing gravity/orientation"),
                         std::runtime_error);
}

TEST_CASE("parse_log sorts out-of-order rows by time within a stream") {
    std::istringstream in(
        "30,acc,3,0,0\n"
        "10,acc,1,0,0\n"
        "20,acc,2,0,0\n"
        "0,grav,0,0,0\n"
        "30,grav,0,0,0\n"
        "0,orient,0,0,0\n"
        "30,orient,0,0,0\n");
    auto session = parse_log(in);
    std::vector<double> acc_times;
    for (const auto& r : session.records) {
        if (r.kind == SensorKind::accel) acc_times.push_back(r.t);
    }
    CHECK(acc_times == std::vector<double>{10, 20, 30});
}

TEST_CASE("parse_log reports the offending line") {
    std::istringstream bad("0,acc,0.1,oops,0.0\n");
    CHECK_THROWS_WITH_AS(parse_log(bad), doctest::Contains("line 1"), std::runtime_error);

    std::istringstream empty("");
    CHECK_THROWS_AS(parse_log(empty), std::runtime_error);
}

TEST_CASE("resample interpolates the midpoint of a linear ramp") {
    std::vector<TimedVec3> series{{0.0, {0, 0, 0}}, {100.0, {10, 0, 0}}};
    auto out = resample(series, 10.0);  // dt = 100 ms -> samples at 0, 100
    REQUIRE(out.size() == 2);

    // Query halfway by resampling at 20 Hz: grid 0, 50, 100.
    auto mid = resample(series, 20.0);
    REQUIRE(mid.size() == 3);
    CHECK(mid[1].first == doctest::Approx(50.0));
    CHECK(mid[1].second[0] == doctest::Approx(5.0));
    CHECK(mid[1].second[1] == doctest::Approx(0.0));
}

TEST_CASE("resample of a constant series is constant") {
    std::vector<TimedVec3> series;
    for (int i = 0; i < 7; ++i) series.push_back({37.0 * i, {1.5, -2.5, 3.5}});
    auto out = resample(series, 27.0);
    for (const auto& [t, v] : out) {
        CHECK(v[0] == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(v[1] == doctest::Approx(-2.5).epsilon(1e-12));
        CHECK(v[2] == doctest::Approx(3.5).epsilon(1e-12));
    }
}

TEST_CASE("resample of a 0..27 ramp at 27 Hz steps by exactly 1") {
    std::vector<TimedVec3> series{{0.0, {0, 0, 0}}, {1000.0, {27, 27, 27}}};
    auto out = resample(series, 27.0);
    REQUIRE(out.size() == 28);
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
        for (int c = 0; c < 3; ++c) {
            CHECK(out[k + 1].second[c] - out[k].second[c] == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("resample output spacing is exact") {
    Rng rng(11);
    std::vector<TimedVec3> series;
    double t = 0.0;
    for (int i = 0; i < 60; ++i) {
        series.push_back({t, {rng.normal(), rng.normal(), rng.normal()}});
        t += rng.uniform(20.0, 60.0);
    }
    auto out = resample(series, 27.0);
    const double dt = 1000.0 / 27.0;
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
        CHECK(std::abs(out[k + 1].first - out[k].first - dt) < 1e-9);
    }
}

TEST_CASE("linear interpolation is exact on affine inputs") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Vec3 p{rng.normal(), rng.normal(), rng.normal()};
        Vec3 q{rng.normal(0, 0.01), rng.normal(0, 0.01), rng.normal(0, 0.01)};
        std::vector<TimedVec3> series;
        double t = 0.0;
        for (int i = 0; i < 40; ++i) {
            series.push_back({t, {p[0] + q[0] * t, p[1] + q[1] * t, p[2] + q[2] * t}});
            t += rng.uniform(10.0, 90.0);
        }
        for (const auto& [tt, v] : resample(series, 27.0)) {
            for (int c = 0; c < 3; ++c) CHECK(std::abs(v[c] - (p[c] + q[c] * tt)) < 1e-9);
        }
    }
}

TEST_CASE("resample keeps the last of duplicate timestamps and warns") {
    std::vector<TimedVec3> series{
        {0.0, {0, 0, 0}}, {50.0, {1, 1, 1}}, {50.0, {2, 2, 2}}, {100.0, {3, 3, 3}}};
    Warnings w;
    auto out = resample(series, 20.0, &w);
    REQUIRE(out.size() == 3);
    CHECK(out[1].second[0] == doctest::Approx(2.0));
    CHECK_FALSE(w.empty());

    std::vector<TimedVec3> tiny{{0.0, {0, 0, 0}}};
    CHECK_THROWS_AS(resample(tiny, 20.0), std::runtime_error);
}

namespace {

RawSession make_session(double acc_start, double acc_end, double grav_start, double grav_end,
                        double orient_start, double orient_end, double step) {
    RawSession s;
    for (double t = acc_start; t <= acc_end + 1e-12; t += step) {
        s.records.push_back({t, SensorKind::accel, {t, 2 * t, 3 * t}});
    }
    for (double t = grav_start; t <= grav_end + 1e-12; t += step) {
        s.records.push_back({t, SensorKind::gravity, {0, t, 0}});
    }
    for (double t = orient_start; t <= orient_end + 1e-12; t += step) {
        s.records.push_back({t, SensorKind::orientation, {t / 10, 0, 0}});
    }
    return s;
}

}  // namespace

TEST_CASE("align carries raw values through when all timestamps coincide") {
    auto s = make_session(0, 1000, 0, 1000, 0, 1000, 100);
    auto frames = align(s, 10.0);
    REQUIRE(frames.size() == 11);
    for (const auto& f : frames) {
        CHECK(f.a[0] == doctest::Approx(f.t).epsilon(1e-12));
        CHECK(f.g[1] == doctest::Approx(f.t).epsilon(1e-12));
        CHECK(f.o[0] == doctest::Approx(f.t / 10).epsilon(1e-12));
    }
}

TEST_CASE("align interpolates a half-period-offset gravity stream at midpoints") {
    RawSession s;
    for (double t = 0; t <= 1000; t += 100) {
        s.records.push_back({t, SensorKind::accel, {1, 1, 1}});
        s.records.push_back({t, SensorKind::orientation, {0, 0, 0}});
    }
    for (double t = 50; t <= 950; t += 100) {
        s.records.push_back({t, SensorKind::gravity, {t, 0, 0}});
    }
    auto frames = align(s, 10.0);
    // Grid points at 100..900 fall halfway between gravity knots.
    for (const auto& f : frames) {
        if (f.t < 50 || f.t > 950) continue;
        if (std::fmod(f.t, 100.0) == 0.0) {
            CHECK(f.g[0] == doctest::Approx(f.t).epsilon(1e-12));  // midpoint of t-50, t+50
        }
    }
}

TEST_CASE("align drops accel frames outside the overlap window") {
    // Orientation ends 1 s early: trailing accel frames must disappear.
    auto s = make_session(0, 5000, 0, 5000, 0, 4000, 100);
    auto frames = align(s, 10.0);
    REQUIRE_FALSE(frames.empty());
    CHECK(frames.back().t == doctest::Approx(4000.0));

    // Empty overlap errors.
    auto disjoint = make_session(0, 1000, 2000, 3000, 0, 1000, 100);
    CHECK_THROWS_AS(align(disjoint, 10.0), std::runtime_error);
}

TEST_CASE("serialize then parse is the identity on raw sessions") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        RawSession s;
        s.subject_id = "s" + std::to_string(trial);
        const int n = 5 + static_cast<int>(rng.uniform(0, 20));
        for (auto kind : {SensorKind::accel, SensorKind::gravity, SensorKind::orientation}) {
            double t = 0.0;
            for (int i = 0; i < n; ++i) {
                s.records.push_back({t, kind, {rng.normal(), rng.normal(), rng.normal()}});
                t += rng.uniform(1.0, 80.0);
            }
        }
        std::ostringstream out;
        serialize_log(s, out);
        std::istringstream in(out.str());
        auto parsed = parse_log(in, s.subject_id);
        REQUIRE(parsed.records.size() == s.records.size());

        // parse_log groups by stream; compare per stream in time order.
        auto by_kind = [](const RawSession& sess, SensorKind k) {
            std::vector<SensorRecord> out;
            for (const auto& r : sess.records) {
                if (r.kind == k) out.push_back(r);
            }
            return out;
        };
        for (auto kind : {SensorKind::accel, SensorKind::gravity, SensorKind::orientation}) {
            auto a = by_kind(s, kind), b = by_kind(parsed, kind);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].t == b[i].t);
                CHECK(a[i].v == b[i].v);
            }
        }
    }
}

TEST_SUITE_END();

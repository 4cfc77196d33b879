#pragma once

#include <symplab/symplectomap.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace symplab {

// Seeded draws with a fixed mapping from engine output to values, so the
// same seed always produces the same families.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(uint64_t seed) : engine(seed) {}

    double unit()  // [0, 1)
    {
        return (engine() >> 11) * (1.0 / 9007199254740992.0);
    }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double symmetric(double s) { return uniform(-s, s); }
    int integer(int lo, int hi)  // inclusive
    {
        return lo + static_cast<int>(engine() % static_cast<uint64_t>(hi - lo + 1));
    }
};

// Points with chart norm below radius (disk: also inside the chart).
std::vector<Point> random_points(Rng& rng, const ManifoldModel& model, int count, double radius);

std::vector<SympMap> random_translations(Rng& rng, int count, int pairs, double scale);

// Block-diagonal linear symplectic part plus a translation.
std::vector<SympMap> random_affine_maps(Rng& rng, int count, int pairs, double scale);

// Hyperbolic isometries with |b| < scale (rotation content free).
std::vector<SympMap> random_moebius_maps(Rng& rng, int count, double scale);

// Unit-time bump flows with centers in the chart box of the given reach,
// radii in [radius_min, radius_max], amplitudes in [-amplitude, amplitude].
// Disk model: center and radius are constrained to keep the ball inside.
std::vector<SympMap> random_bump_flows(Rng& rng, const ManifoldModel& model, int count,
                                       double reach, double radius_min, double radius_max,
                                       double amplitude);

}  // namespace symplab

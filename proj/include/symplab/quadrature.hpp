#pragma once

#include <symplab/geometry.hpp>
#include <symplab/symplectomap.hpp>

#include <functional>
#include <vector>

namespace symplab {

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// Adaptive composite 10-point Gauss-Legendre; a panel pair is accepted when
// it agrees with its parent within the share of tol proportional to the
// parameter length covered. Reversed endpoints negate the value. A panel
// still disagreeing at depth 24 is kept and, once the whole interval has
// been walked, raises AccuracyError carrying the full estimate.
IntegralResult integrate_scalar(const std::function<double(double)>& f, double a, double b,
                                double tol = 1e-9, const std::vector<double>& kinks = {});

// Line integral of a pointwise covector field along a path, split at the
// path's non-smooth parameters.
IntegralResult integrate_one_form(const ManifoldModel& model,
                                  const std::function<Covector(const Point&)>& form,
                                  const PathSpec& path, double tol = 1e-9);

// Flow of H started at x, with the running integral of lambda(X_t) + H_t
// along the trajectory. Samples are equally spaced on [0, T].
struct FlowSample {
    double t = 0.0;
    Point p;
    double action = 0.0;
};
std::vector<FlowSample> flow_trajectory(const ManifoldModel& model, const HamiltonianSpec& H,
                                        const Point& x, double T = 1.0, int samples = 128,
                                        const FlowSettings& settings = {});

// |integral along path1 - integral along path2| for paths sharing endpoints.
double path_independence_residual(const ManifoldModel& model,
                                  const std::function<Covector(const Point&)>& form,
                                  const PathSpec& path1, const PathSpec& path2, double tol = 1e-9);

// Same, comparing the model geodesic from a to b against a bent two-segment
// detour through a deterministically displaced midpoint.
double path_independence_residual(const ManifoldModel& model,
                                  const std::function<Covector(const Point&)>& form, const Point& a,
                                  const Point& b, double tol = 1e-9);

}  // namespace symplab

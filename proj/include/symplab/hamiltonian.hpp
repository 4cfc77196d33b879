#pragma once

#include <symplab/types.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace symplab {

// Chart-coordinate Euclidean ball known to contain the support of a function.
struct SupportBall {
    Vec center;
    double radius = 0.0;
};

// Possibly time-dependent Hamiltonian H_t on chart coordinates, t in [0,1].
// gradient/hessian are optional; finite differences fill them in on demand.
// breakpoints are interior times where t -> H_t is only piecewise smooth.
struct HamiltonianSpec {
    std::function<double(double, const Point&)> value;
    std::function<Vec(double, const Point&)> gradient;
    std::function<Mat(double, const Point&)> hessian;
    std::optional<SupportBall> support;
    std::vector<double> breakpoints;
    bool autonomous = true;

    double value_at(double t, const Point& p) const { return value(t, p); }
    Vec gradient_at(double t, const Point& p) const;
    Mat hessian_at(double t, const Point& p) const;
};

// A * exp(1 - 1/(1 - s^2)) with s = |p - center|/radius, zero outside.
// Smooth, compactly supported; gradient and hessian in closed form.
HamiltonianSpec bump_hamiltonian(Vec center, double radius, double amplitude);

// H(p) = p' S p / 2 + b' p + c (S is symmetrized).
HamiltonianSpec quadratic_hamiltonian(Mat S, Vec b = Vec(), double c = 0.0);

// H(p) = omega |p|^2 / 2; the flow rotates every coordinate pair rigidly.
HamiltonianSpec rotation_hamiltonian(double omega, int pairs = 1);

// Same time-one map along the schedule t -> a(t), a(0)=0, a(1)=1:
// new H(t,p) = a'(t) * H(a(t), p).
HamiltonianSpec reparametrize(HamiltonianSpec spec, std::function<double(double)> a,
                              std::function<double(double)> a_prime);

}  // namespace symplab

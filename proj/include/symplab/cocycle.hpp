#pragma once

#include <symplab/quadrature.hpp>
#include <symplab/symplectomap.hpp>

#include <memory>
#include <vector>

namespace symplab {

// Basepoint and tolerances shared by the cocycle evaluations below.
struct CocycleContext {
    ManifoldModel model;
    Point x;
    double quad_tol = 1e-9;
};

// Normalized potential of g^* lambda - lambda: the integral from the
// basepoint to y along the model geodesic, so K_tilde(g)(basepoint) = 0.
double K_tilde(const CocycleContext& ctx, const SympMap& g, const Point& y);

// Two-cocycle value: integral of g^* lambda - lambda from x to h(x), which
// equals K_tilde(g)(h(x)).
double G(const CocycleContext& ctx, const SympMap& g, const SympMap& h);

// |G(g,h) - G(g,hk) + G(gh,k) - G(h,k)|.
double coboundary2_residual(const CocycleContext& ctx, const SympMap& g, const SympMap& h,
                            const SympMap& k);

// One-chain: integral of lambda along the geodesic from x to g(x).
double k_chain(const CocycleContext& ctx, const SympMap& g);

// G(g,h) + k(g) - k(gh) + k(h) against the loop integral of lambda around
// the bent triangle x -> g x -> g h x -> x whose middle side is the g-image
// of the geodesic from x to h x.
struct TrilateralReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};
TrilateralReport trilateral_identity(const CocycleContext& ctx, const SympMap& g,
                                     const SympMap& h);

// Disk only: signed hyperbolic area of the geodesic triangle
// (x, g x, g h x). Counterclockwise positive; always in (-pi, pi).
double kahler_cocycle(const CocycleContext& ctx, const SympMap& g, const SympMap& h);

// One-chain for compactly supported maps: integral of g^* lambda - lambda
// along a straight chart ray from x, truncated once it has left every
// support ball (the integrand vanishes beyond them). Its coboundary
// b(g) - b(gh) + b(h) reproduces G(g,h).
double b_chain(const CocycleContext& ctx, const SympMap& g, Vec direction = Vec());

// Rows of the power table n -> |G(g^n, h)| against n |G(g, h)|.
struct PowerTableRow {
    int n = 0;
    double value = 0.0;
    double reference = 0.0;
    double rel_error = 0.0;
};
std::vector<PowerTableRow> hom_power_table(const CocycleContext& ctx, const SympMap& g,
                                           const SympMap& h, int n_max);

// Hamiltonian isotopy on [0, T] with its time-one map.
struct IsotopySpec {
    std::shared_ptr<const HamiltonianSpec> H;
    double T = 1.0;
    FlowSettings settings;

    SympMap time_one_map() const { return SympMap::flow(H, T, settings); }
};

// F_T(p): integral of lambda(X_t) + H_t along the trajectory of p.
double action_functional(const CocycleContext& ctx, const IsotopySpec& iso, const Point& p);

// F_T(h x) - F_T(x); equals G(g, h) for the isotopy's time-one map g.
double action_difference(const CocycleContext& ctx, const IsotopySpec& iso, const SympMap& h);

// Two isotopies with the same time-one map must produce the same action
// differences; returns |dF(a) - dF(b)| between the basepoint and y.
double isotopy_independence_residual(const CocycleContext& ctx, const IsotopySpec& a,
                                     const IsotopySpec& b, const Point& y);

}  // namespace symplab

#include <symplab/quadrature.hpp>

#include <cmath>
#include <limits>

namespace symplab {

namespace {

// 10-point Gauss-Legendre on [-1, 1]; weights for the positive half, so the
// full rule is sum over +/- node pairs.
constexpr int kGL = 5;
constexpr double kNode[kGL] = {0.148874338981631211, 0.433395394129247191, 0.679409568299024406,
                               0.865063366688984511, 0.973906528517171720};
constexpr double kWeight[kGL] = {0.295524224714752870, 0.269266719309996355,
                                 0.219086362515982044, 0.149451349150580593,
                                 0.066671344308688138};
constexpr int kMaxDepth = 24;

double gl10(const std::function<double(double)>& f, double a, double b)
{
    double c = 0.5 * (a + b), s = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < kGL; ++i)
        acc += kWeight[i] * (f(c + s * kNode[i]) + f(c - s * kNode[i]));
    return s * acc;
}

struct AdaptiveAcc {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    int stalls = 0;
};

void adapt(const std::function<double(double)>& f, double a, double b, double coarse, double tol,
           int depth, AdaptiveAcc& acc)
{
    double m = 0.5 * (a + b);
    double left = gl10(f, a, m), right = gl10(f, m, b);
    double fine = left + right;
    double disc = std::abs(fine - coarse);
    if (disc <= tol * (b - a) || depth >= kMaxDepth) {
        // A panel at the depth cap is kept, so the final estimate still
        // covers the whole interval; the stall is raised after the walk.
        acc.value += fine;
        acc.error += disc;
        acc.panels += 2;
        acc.stalls += depth >= kMaxDepth && disc > tol * (b - a);
        return;
    }
    adapt(f, a, m, left, tol, depth + 1, acc);
    adapt(f, m, b, right, tol, depth + 1, acc);
}

IntegralResult integrate_pieces(const std::function<double(double)>& f,
                                const std::vector<std::pair<double, double>>& pieces, double span,
                                double tol)
{
    AdaptiveAcc acc;
    for (auto [a, b] : pieces) {
        if (b <= a) continue;
        adapt(f, a, b, gl10(f, a, b), tol / span, 0, acc);
    }
    if (acc.stalls > 0) throw AccuracyError("quadrature did not converge", acc.value, acc.error);
    return {acc.value, acc.error, acc.panels};
}

}  // namespace

IntegralResult integrate_scalar(const std::function<double(double)>& f, double a, double b,
                                double tol, const std::vector<double>& kinks)
{
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        IntegralResult r = integrate_scalar(f, b, a, tol, kinks);
        r.value = -r.value;
        return r;
    }
    std::vector<std::pair<double, double>> pieces;
    double prev = a;
    for (double k : kinks)
        if (k > prev && k < b) {
            pieces.emplace_back(prev, k);
            prev = k;
        }
    pieces.emplace_back(prev, b);
    return integrate_pieces(f, pieces, b - a, tol);
}

IntegralResult integrate_one_form(const ManifoldModel& model,
                                  const std::function<Covector(const Point&)>& form,
                                  const PathSpec& path, double tol)
{
    auto f = [&](double t) -> double {
        Point p = path_point(model, path, t);
        return form(p).dot(path_velocity(model, path, t));
    };
    return integrate_pieces(f, smooth_pieces(path), 1.0, tol);
}

std::vector<FlowSample> flow_trajectory(const ManifoldModel& model, const HamiltonianSpec& H,
                                        const Point& x, double T, int samples,
                                        const FlowSettings& settings)
{
    if (samples < 1) throw PreconditionError("need at least one sample interval");
    require_in_domain(model, x);

    // Augmented RK4 state (p, a) with a' = (lambda(X_t) + H_t)(p); the whole
    // grid is recomputed with halved steps until endpoints settle.
    auto rhs = [&](double t, const Point& p, Vec& dp, double& da) {
        dp = hamiltonian_vector_field(model, H, t, p);
        da = lambda_at(model, p).dot(dp) + H.value_at(t, p);
    };
    auto step_through = [&](Point& p, double& a, double t0, double t1, int steps) {
        double h = (t1 - t0) / steps;
        for (int j = 0; j < steps; ++j) {
            double t = t0 + j * h;
            Vec k1, k2, k3, k4;
            double a1, a2, a3, a4;
            rhs(t, p, k1, a1);
            rhs(t + 0.5 * h, p + 0.5 * h * k1, k2, a2);
            rhs(t + 0.5 * h, p + 0.5 * h * k2, k3, a3);
            rhs(t + h, p + h * k3, k4, a4);
            p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            a += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            require_in_domain(model, p);
        }
    };
    auto run = [&](int steps_per_sample) {
        std::vector<FlowSample> out;
        out.reserve(samples + 1);
        Point p = x;
        double a = 0.0;
        out.push_back({0.0, p, 0.0});
        double dt_sample = T / samples;
        for (int i = 0; i < samples; ++i) {
            double t0 = i * dt_sample, t1 = t0 + dt_sample;
            // Cut at the hamiltonian's non-smooth times so RK4 keeps order.
            double prev = t0;
            for (double bp : H.breakpoints)
                if (bp > prev && bp < t1) {
                    int steps = std::max(
                        1, static_cast<int>(std::ceil(steps_per_sample * (bp - prev) / dt_sample)));
                    step_through(p, a, prev, bp, steps);
                    prev = bp;
                }
            int steps = std::max(
                1, static_cast<int>(std::ceil(steps_per_sample * (t1 - prev) / dt_sample)));
            step_through(p, a, prev, t1, steps);
            out.push_back({t1, p, a});
        }
        return out;
    };

    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(T) / samples / settings.step)));
    auto prev = run(steps);
    double diff = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= settings.max_halvings; ++k) {
        steps *= 2;
        auto cur = run(steps);
        diff = std::abs(cur.back().action - prev.back().action);
        diff = std::max(diff, (cur.back().p - prev.back().p).cwiseAbs().maxCoeff());
        prev = std::move(cur);
        if (diff <= settings.refine_target) return prev;
    }
    throw AccuracyError("trajectory refinement did not converge", prev.back().action, diff);
}

double path_independence_residual(const ManifoldModel& model,
                                  const std::function<Covector(const Point&)>& form,
                                  const PathSpec& path1, const PathSpec& path2, double tol)
{
    double i1 = integrate_one_form(model, form, path1, tol).value;
    double i2 = integrate_one_form(model, form, path2, tol).value;
    return std::abs(i1 - i2);
}

double path_independence_residual(const ManifoldModel& model,
                                  const std::function<Covector(const Point&)>& form, const Point& a,
                                  const Point& b, double tol)
{
    Point mid = 0.5 * (a + b);
    Vec chord = b - a;
    Vec offset = Vec::Zero(a.size());
    if (chord.norm() > 1e-12) {
        offset[0] = -chord[1];
        offset[1] = chord[0];
        offset *= 0.3;
    } else {
        offset[0] = 0.3;
    }
    Point bent = mid + offset;
    if (model.kind == ModelKind::HyperbolicDisk && bent.norm() > 0.9) bent *= 0.9 / bent.norm();
    PathSpec detour = PathSpec::polyline({a, bent, b});
    return path_independence_residual(model, form, geodesic(model, a, b), detour, tol);
}

}  // namespace symplab

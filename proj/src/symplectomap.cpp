#include <symplab/symplectomap.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace symplab {

namespace {

Mat omega_block(int dim)
{
    Mat W = Mat::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; k += 2) {
        W(k, k + 1) = 1.0;
        W(k + 1, k) = -1.0;
    }
    return W;
}

double phi_of(const SympMap::CotangentLift& L, double q) { return L.a * q + L.b + L.c * std::tanh(q); }

double phi_prime(const SympMap::CotangentLift& L, double q)
{
    double s = 1.0 / std::cosh(q);
    return L.a + L.c * s * s;
}

double phi_second(const SympMap::CotangentLift& L, double q)
{
    double s = 1.0 / std::cosh(q);
    return -2.0 * L.c * s * s * std::tanh(q);
}

double phi_inverse(const SympMap::CotangentLift& L, double y)
{
    double q = (y - L.b) / L.a;
    for (int it = 0; it < 60; ++it) {
        double r = phi_of(L, q) - y;
        if (std::abs(r) <= 1e-14 * std::max(1.0, std::abs(y))) return q;
        q -= r / phi_prime(L, q);
    }
    throw AccuracyError("lift base inversion stalled", q, std::abs(phi_of(L, q) - y));
}

// X_H with i_X d(lambda) = dH: componentwise J grad H per pair, scaled by
// the inverse area density on the disk.
Vec hamiltonian_field(const ManifoldModel& model, const HamiltonianSpec& H, double t,
                      const Point& p)
{
    Vec g = H.gradient_at(t, p);
    Vec X(g.size());
    for (int k = 0; k + 1 < g.size(); k += 2) {
        X[k] = g[k + 1];
        X[k + 1] = -g[k];
    }
    if (model.kind == ModelKind::HyperbolicDisk) {
        double q = 1.0 - p.squaredNorm();
        X *= q * q / 4.0;
    }
    return X;
}

Mat hamiltonian_field_jacobian(const ManifoldModel& model, const HamiltonianSpec& H, double t,
                               const Point& p)
{
    Mat Hess = H.hessian_at(t, p);
    int d = static_cast<int>(Hess.rows());
    Mat JH(d, d);
    for (int k = 0; k + 1 < d; k += 2) {
        JH.row(k) = Hess.row(k + 1);
        JH.row(k + 1) = -Hess.row(k);
    }
    if (model.kind == ModelKind::EuclideanPlane) return JH;
    double q = 1.0 - p.squaredNorm();
    double inv_s = q * q / 4.0;
    Vec g = H.gradient_at(t, p);
    Vec Jg(d);
    Jg[0] = g[1];
    Jg[1] = -g[0];
    Vec grad_inv_s = -q * p;
    return inv_s * JH + Jg * grad_inv_s.transpose();
}

struct FlowState {
    Point p;
    Mat M;
};

FlowState integrate_segment(const ManifoldModel& model, const HamiltonianSpec& H, double t0,
                            double t1, FlowState s, int steps, bool with_M)
{
    double h = (t1 - t0) / steps;
    const double guard2 = (1.0 - kDiskGuard) * (1.0 - kDiskGuard);
    for (int i = 0; i < steps; ++i) {
        double t = t0 + i * h;
        Vec k1 = hamiltonian_field(model, H, t, s.p);
        Vec k2 = hamiltonian_field(model, H, t + 0.5 * h, s.p + 0.5 * h * k1);
        Vec k3 = hamiltonian_field(model, H, t + 0.5 * h, s.p + 0.5 * h * k2);
        Vec k4 = hamiltonian_field(model, H, t + h, s.p + h * k3);
        if (with_M) {
            Mat K1 = hamiltonian_field_jacobian(model, H, t, s.p) * s.M;
            Mat K2 = hamiltonian_field_jacobian(model, H, t + 0.5 * h, s.p + 0.5 * h * k1) *
                     (s.M + 0.5 * h * K1);
            Mat K3 = hamiltonian_field_jacobian(model, H, t + 0.5 * h, s.p + 0.5 * h * k2) *
                     (s.M + 0.5 * h * K2);
            Mat K4 = hamiltonian_field_jacobian(model, H, t + h, s.p + h * k3) * (s.M + h * K3);
            s.M += (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
        }
        s.p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (model.kind == ModelKind::HyperbolicDisk && s.p.squaredNorm() >= guard2)
            throw DomainError("flow trajectory left the chart");
    }
    return s;
}

FlowState integrate_flow(const ManifoldModel& model, const HamiltonianSpec& H, double T,
                         const Point& p0, int base_steps, bool with_M)
{
    std::vector<double> cuts{0.0};
    if (!H.autonomous && T > 0.0) {
        for (double b : H.breakpoints)
            if (b > 0.0 && b < T) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
    }
    cuts.push_back(T);
    FlowState s{p0, Mat::Identity(p0.size(), p0.size())};
    double per_unit = base_steps / std::max(std::abs(T), 1e-300);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        int steps = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) * per_unit)));
        s = integrate_segment(model, H, a, b, std::move(s), steps, with_M);
    }
    return s;
}

FlowState run_flow(const ManifoldModel& model, const SympMap::Flow& flow, const Point& p0,
                   bool with_M, double refine_override = 0.0)
{
    const HamiltonianSpec& H = *flow.H;
    int d = static_cast<int>(p0.size());
    if (H.support) {
        Vec w = p0 - H.support->center;
        if (w.norm() >= H.support->radius) return {p0, Mat::Identity(d, d)};
    }
    const FlowSettings& st = flow.settings;
    double target = refine_override > 0.0 ? refine_override : st.refine_target;
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(flow.time) / st.step)));
    FlowState prev = integrate_flow(model, H, flow.time, p0, steps, with_M);
    double diff = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= st.max_halvings; ++k) {
        steps *= 2;
        FlowState cur = integrate_flow(model, H, flow.time, p0, steps, with_M);
        diff = (cur.p - prev.p).cwiseAbs().maxCoeff();
        if (with_M) diff = std::max(diff, (cur.M - prev.M).cwiseAbs().maxCoeff());
        prev = std::move(cur);
        if (diff <= target) return prev;
    }
    throw AccuracyError("flow refinement did not converge",
                        std::numeric_limits<double>::quiet_NaN(), diff);
}

std::pair<Point, Mat> apply_and_differential(const ManifoldModel& model, const SympMap& g,
                                             const Point& p, bool with_M);

Mat flow_fd_differential(const ManifoldModel& model, const SympMap::Flow& flow, const Point& p)
{
    // 4th-order stencil on the map itself, with the flow solved tighter so
    // integration noise stays below the difference scale.
    const double h = 1e-3;
    int d = static_cast<int>(p.size());
    Mat D(d, d);
    auto at = [&](const Point& q) { return run_flow(model, flow, q, false, 1e-11).p; };
    for (int j = 0; j < d; ++j) {
        Point e = Point::Zero(d);
        e[j] = 1.0;
        Point f2 = at(p + 2 * h * e), f1 = at(p + h * e);
        Point b1 = at(p - h * e), b2 = at(p - 2 * h * e);
        D.col(j) = (-f2 + 8.0 * f1 - 8.0 * b1 + b2) / (12.0 * h);
    }
    return D;
}

std::pair<Point, Mat> apply_and_differential(const ManifoldModel& model, const SympMap& g,
                                             const Point& p, bool with_M)
{
    require_in_domain(model, p);
    int d = model.dim();

    if (std::holds_alternative<SympMap::Identity>(g.rep)) return {p, Mat::Identity(d, d)};

    if (const auto* a = std::get_if<SympMap::AffineSymplectic>(&g.rep)) {
        if (model.kind != ModelKind::EuclideanPlane)
            throw PreconditionError("affine maps act on the plane model");
        if (a->A.rows() != d) throw PreconditionError("affine map dimension mismatch");
        return {a->A * p + a->t, a->A};
    }

    if (const auto* m = std::get_if<SympMap::MoebiusIsometry>(&g.rep)) {
        if (model.kind != ModelKind::HyperbolicDisk)
            throw PreconditionError("moebius maps act on the disk model");
        Complex z = to_complex(p);
        Complex den = std::conj(m->b) * z + std::conj(m->a);
        Complex w = (m->a * z + m->b) / den;
        Mat D = with_M ? complex_jacobian(1.0 / (den * den)) : Mat();
        return {to_point(w), std::move(D)};
    }

    if (const auto* f = std::get_if<SympMap::Flow>(&g.rep)) {
        if (with_M && f->settings.fd_differential) {
            FlowState s = run_flow(model, *f, p, false);
            return {std::move(s.p), flow_fd_differential(model, *f, p)};
        }
        FlowState s = run_flow(model, *f, p, with_M);
        return {std::move(s.p), std::move(s.M)};
    }

    if (const auto* L = std::get_if<SympMap::CotangentLift>(&g.rep)) {
        if (model.kind != ModelKind::EuclideanPlane || model.pairs != 1)
            throw PreconditionError("cotangent lifts act on the two dimensional plane model");
        double x = p[0], y = p[1];
        Point out(2);
        Mat D(2, 2);
        if (!L->inverted) {
            double dp = phi_prime(*L, y), ddp = phi_second(*L, y);
            out << x / dp, phi_of(*L, y);
            if (with_M) D << 1.0 / dp, -x * ddp / (dp * dp), 0.0, dp;
        } else {
            double q = phi_inverse(*L, y);
            double dp = phi_prime(*L, q), ddp = phi_second(*L, q);
            out << x * dp, q;
            if (with_M) D << dp, x * ddp / dp, 0.0, 1.0 / dp;
        }
        return {std::move(out), std::move(D)};
    }

    const auto& w = std::get<SympMap::Word>(g.rep);
    Point q = p;
    Mat D = Mat::Identity(d, d);
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        auto [q2, D2] = apply_and_differential(model, *it, q, with_M);
        q = std::move(q2);
        if (with_M) D = D2 * D;
    }
    return {std::move(q), std::move(D)};
}

}  // namespace

SympMap SympMap::affine(Mat A, Vec t)
{
    int d = static_cast<int>(A.rows());
    if (A.cols() != d || d % 2 != 0 || t.size() != d)
        throw PreconditionError("affine map needs a square even sized matrix");
    Mat W = omega_block(d);
    if ((A.transpose() * W * A - W).cwiseAbs().maxCoeff() > 1e-10)
        throw PreconditionError("matrix is not symplectic");
    return {AffineSymplectic{std::move(A), std::move(t)}};
}

SympMap SympMap::translation(Vec t)
{
    int d = static_cast<int>(t.size());
    return {AffineSymplectic{Mat::Identity(d, d), std::move(t)}};
}

SympMap SympMap::moebius(Complex a, Complex b)
{
    double det = std::norm(a) - std::norm(b);
    if (det <= 0.0) throw PreconditionError("moebius parameters need |a|^2 - |b|^2 > 0");
    double s = 1.0 / std::sqrt(det);
    return {MoebiusIsometry{a * s, b * s}};
}

SympMap SympMap::moebius_rotation(double phi)
{
    return {MoebiusIsometry{std::polar(1.0, 0.5 * phi), Complex(0.0, 0.0)}};
}

SympMap SympMap::moebius_translation(Complex p)
{
    if (std::abs(p) >= 1.0) throw PreconditionError("target must lie inside the disk");
    double a = 1.0 / std::sqrt(1.0 - std::norm(p));
    return {MoebiusIsometry{Complex(a, 0.0), p * a}};
}

SympMap SympMap::moebius_axis_translation(double length)
{
    return {MoebiusIsometry{Complex(std::cosh(0.5 * length), 0.0),
                            Complex(std::sinh(0.5 * length), 0.0)}};
}

SympMap SympMap::flow(std::shared_ptr<const HamiltonianSpec> H, double time, FlowSettings settings)
{
    if (!H || !H->value) throw PreconditionError("flow needs a hamiltonian");
    if (!H->autonomous && time < 0.0)
        throw PreconditionError("negative time needs an autonomous hamiltonian");
    return {Flow{std::move(H), time, settings}};
}

SympMap SympMap::cotangent_lift(double a, double b, double c)
{
    if (a <= std::abs(c)) throw PreconditionError("lift base map needs a > |c|");
    return {CotangentLift{a, b, c, false}};
}

SympMap bump_flow(Vec center, double radius, double amplitude, double time, FlowSettings settings)
{
    auto H = std::make_shared<HamiltonianSpec>(
        bump_hamiltonian(std::move(center), radius, amplitude));
    return SympMap::flow(std::move(H), time, settings);
}

SympMap compose(SympMap g, SympMap h)
{
    std::vector<SympMap> factors;
    if (auto* gw = std::get_if<SympMap::Word>(&g.rep))
        factors = std::move(gw->factors);
    else
        factors.push_back(std::move(g));
    if (auto* hw = std::get_if<SympMap::Word>(&h.rep))
        for (auto& f : hw->factors) factors.push_back(std::move(f));
    else
        factors.push_back(std::move(h));
    return SympMap::word(std::move(factors));
}

SympMap inverse(const SympMap& g)
{
    if (std::holds_alternative<SympMap::Identity>(g.rep)) return SympMap::identity();

    if (const auto* a = std::get_if<SympMap::AffineSymplectic>(&g.rep)) {
        Mat Ai = a->A.inverse();
        return {SympMap::AffineSymplectic{Ai, -(Ai * a->t)}};
    }

    if (const auto* m = std::get_if<SympMap::MoebiusIsometry>(&g.rep))
        return {SympMap::MoebiusIsometry{std::conj(m->a), -m->b}};

    if (const auto* f = std::get_if<SympMap::Flow>(&g.rep)) {
        if (f->H->autonomous) return {SympMap::Flow{f->H, -f->time, f->settings}};
        // Time reversal: the inverse of the time-T flow of H is the time-T
        // flow of (s, p) -> -H(T - s, p).
        double T = f->time;
        auto H = f->H;
        auto rev = std::make_shared<HamiltonianSpec>();
        rev->autonomous = false;
        rev->support = H->support;
        for (auto it = H->breakpoints.rbegin(); it != H->breakpoints.rend(); ++it)
            rev->breakpoints.push_back(T - *it);
        rev->value = [H, T](double t, const Point& p) { return -H->value_at(T - t, p); };
        rev->gradient = [H, T](double t, const Point& p) -> Vec {
            return -H->gradient_at(T - t, p);
        };
        rev->hessian = [H, T](double t, const Point& p) -> Mat {
            return -H->hessian_at(T - t, p);
        };
        return {SympMap::Flow{std::move(rev), T, f->settings}};
    }

    if (const auto* L = std::get_if<SympMap::CotangentLift>(&g.rep)) {
        auto out = *L;
        out.inverted = !out.inverted;
        return {out};
    }

    const auto& w = std::get<SympMap::Word>(g.rep);
    std::vector<SympMap> factors;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
        factors.push_back(inverse(*it));
    return SympMap::word(std::move(factors));
}

SympMap power(const SympMap& g, int n)
{
    if (n == 0) return SympMap::identity();
    SympMap base = n > 0 ? g : inverse(g);
    std::vector<SympMap> factors(static_cast<size_t>(std::abs(n)), base);
    return SympMap::word(std::move(factors));
}

Vec hamiltonian_vector_field(const ManifoldModel& model, const HamiltonianSpec& H, double t,
                             const Point& p)
{
    return hamiltonian_field(model, H, t, p);
}

Point apply(const ManifoldModel& model, const SympMap& g, const Point& p)
{
    return apply_and_differential(model, g, p, false).first;
}

Mat differential(const ManifoldModel& model, const SympMap& g, const Point& p)
{
    return apply_and_differential(model, g, p, true).second;
}

Covector pullback_delta_lambda(const ManifoldModel& model, const SympMap& g, const Point& p)
{
    auto [gp, D] = apply_and_differential(model, g, p, true);
    return D.transpose() * lambda_at(model, gp) - lambda_at(model, p);
}

double verify_symplectic(const ManifoldModel& model, const SympMap& g,
                         const std::vector<Point>& points)
{
    double worst = 0.0;
    for (const Point& p : points) {
        auto [gp, D] = apply_and_differential(model, g, p, true);
        Mat r = D.transpose() * symplectic_matrix(model, gp) * D - symplectic_matrix(model, p);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

std::optional<std::vector<SupportBall>> compact_support(const SympMap& g)
{
    if (std::holds_alternative<SympMap::Identity>(g.rep)) return std::vector<SupportBall>{};

    if (const auto* f = std::get_if<SympMap::Flow>(&g.rep)) {
        if (!f->H->support) return std::nullopt;
        return std::vector<SupportBall>{*f->H->support};
    }

    if (const auto* w = std::get_if<SympMap::Word>(&g.rep)) {
        std::vector<SupportBall> balls;
        for (const auto& f : w->factors) {
            auto sub = compact_support(f);
            if (!sub) return std::nullopt;
            balls.insert(balls.end(), sub->begin(), sub->end());
        }
        return balls;
    }

    return std::nullopt;
}

}  // namespace symplab

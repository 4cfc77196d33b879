#include <symplab/hamiltonian.hpp>

#include <cmath>
#include <memory>

namespace symplab {

namespace {

Vec fd_gradient(const std::function<double(double, const Point&)>& f, double t, const Point& p,
                double h = 1e-6)
{
    Vec g(p.size());
    for (int i = 0; i < p.size(); ++i) {
        Point pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        g[i] = (f(t, pp) - f(t, pm)) / (2.0 * h);
    }
    return g;
}

Mat fd_hessian(const std::function<double(double, const Point&)>& f, double t, const Point& p,
               double h = 1e-4)
{
    int n = static_cast<int>(p.size());
    Mat H(n, n);
    double f0 = f(t, p);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Point a = p, b = p, c = p, d = p;
            if (i == j) {
                a[i] += h;
                b[i] -= h;
                H(i, i) = (f(t, a) - 2.0 * f0 + f(t, b)) / (h * h);
            } else {
                a[i] += h; a[j] += h;
                b[i] += h; b[j] -= h;
                c[i] -= h; c[j] += h;
                d[i] -= h; d[j] -= h;
                H(i, j) = H(j, i) = (f(t, a) - f(t, b) - f(t, c) + f(t, d)) / (4.0 * h * h);
            }
        }
    }
    return H;
}

}  // namespace

Vec HamiltonianSpec::gradient_at(double t, const Point& p) const
{
    if (gradient) return gradient(t, p);
    return fd_gradient(value, t, p);
}

Mat HamiltonianSpec::hessian_at(double t, const Point& p) const
{
    if (hessian) return hessian(t, p);
    return fd_hessian(value, t, p);
}

HamiltonianSpec bump_hamiltonian(Vec center, double radius, double amplitude)
{
    if (radius <= 0.0) throw PreconditionError("bump radius must be positive");
    const Vec c = std::move(center);
    const double R = radius, A = amplitude;
    const double R2 = R * R;

    // f(s) = exp(1 - 1/(1 - s^2)); profile(s2) = f and its radial factors:
    //   grad H = gfac * (p - c),   hess H = gfac * I + hfac * (p-c)(p-c)'
    // with gfac = -2A f / (q^2 R^2), hfac = -2A f (4/q^3 - 2/q^4) / R^4,
    // q = 1 - s^2. All decay to zero faster than any pole as q -> 0+.
    auto profile = [](double s2) -> double {
        double q = 1.0 - s2;
        if (q <= 0.0) return 0.0;
        double e = 1.0 - 1.0 / q;
        if (e < -700.0) return 0.0;
        return std::exp(e);
    };

    HamiltonianSpec spec;
    spec.support = SupportBall{c, R};
    spec.value = [=](double, const Point& p) -> double {
        return A * profile((p - c).squaredNorm() / R2);
    };
    spec.gradient = [=](double, const Point& p) -> Vec {
        Vec w = p - c;
        double s2 = w.squaredNorm() / R2;
        double f = profile(s2);
        if (f == 0.0) return Vec::Zero(w.size());
        double q = 1.0 - s2;
        return (-2.0 * A * f / (q * q * R2)) * w;
    };
    spec.hessian = [=](double, const Point& p) -> Mat {
        Vec w = p - c;
        int n = static_cast<int>(w.size());
        double s2 = w.squaredNorm() / R2;
        double f = profile(s2);
        if (f == 0.0) return Mat::Zero(n, n);
        double q = 1.0 - s2;
        double gfac = -2.0 * A * f / (q * q * R2);
        double hfac = -2.0 * A * f * (4.0 / (q * q * q) - 2.0 / (q * q * q * q)) / (R2 * R2);
        return gfac * Mat::Identity(n, n) + hfac * (w * w.transpose());
    };
    return spec;
}

HamiltonianSpec quadratic_hamiltonian(Mat S, Vec b, double c)
{
    Mat Ssym = 0.5 * (S + S.transpose());
    if (b.size() == 0) b = Vec::Zero(Ssym.rows());
    if (b.size() != Ssym.rows()) throw PreconditionError("quadratic term sizes disagree");

    HamiltonianSpec spec;
    spec.value = [=](double, const Point& p) -> double {
        return 0.5 * p.dot(Ssym * p) + b.dot(p) + c;
    };
    spec.gradient = [=](double, const Point& p) -> Vec { return Ssym * p + b; };
    spec.hessian = [=](double, const Point& p) -> Mat { return Ssym; };
    return spec;
}

HamiltonianSpec rotation_hamiltonian(double omega, int pairs)
{
    return quadratic_hamiltonian(omega * Mat::Identity(2 * pairs, 2 * pairs));
}

HamiltonianSpec reparametrize(HamiltonianSpec spec, std::function<double(double)> a,
                              std::function<double(double)> a_prime)
{
    HamiltonianSpec out;
    out.support = spec.support;
    out.breakpoints = spec.breakpoints;
    out.autonomous = false;
    auto inner = std::make_shared<HamiltonianSpec>(std::move(spec));
    out.value = [inner, a, a_prime](double t, const Point& p) {
        return a_prime(t) * inner->value_at(a(t), p);
    };
    out.gradient = [inner, a, a_prime](double t, const Point& p) -> Vec {
        return a_prime(t) * inner->gradient_at(a(t), p);
    };
    out.hessian = [inner, a, a_prime](double t, const Point& p) -> Mat {
        return a_prime(t) * inner->hessian_at(a(t), p);
    };
    return out;
}

}  // namespace symplab

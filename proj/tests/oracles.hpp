#pragma once

// Independent reference computations the tests compare against. Everything
// here is closed-form or a deliberately different numerical method from the
// library code (plain Simpson instead of adaptive Gauss, central differences
// instead of analytic derivatives).

#include <symplab/geometry.hpp>

#include <cmath>
#include <functional>

namespace oracles {

using symplab::Mat;
using symplab::ManifoldModel;
using symplab::Point;
using symplab::Primitive;
using symplab::Vec;

inline double omega_pairs(const Vec& u, const Vec& v)
{
    double acc = 0.0;
    for (int k = 0; k + 1 < u.size(); k += 2) acc += u[k] * v[k + 1] - u[k + 1] * v[k];
    return acc;
}

// Matrix of the primitive as a bilinear form: lambda_z(v) = z' L v.
inline Mat primitive_matrix(const ManifoldModel& model)
{
    int d = model.dim();
    Mat L = Mat::Zero(d, d);
    for (int k = 0; k + 1 < d; k += 2) {
        if (model.primitive == Primitive::Radial) {
            L(k, k + 1) = 0.5;
            L(k + 1, k) = -0.5;
        } else {
            L(k, k + 1) = 1.0;
        }
    }
    return L;
}

// Integral of lambda along the straight segment from p to q on the plane.
inline double segment_lambda(const ManifoldModel& model, const Vec& p, const Vec& q)
{
    Mat L = primitive_matrix(model);
    Vec d = q - p;
    return p.dot(L * d) + 0.5 * d.dot(L * d);
}

// Normalized potential of (Az+t)^* lambda - lambda on the plane: with
// S = A'LA - L (symmetric for symplectic A), the potential is
// phi(z) = z'Sz/2 + t'LAz, and the value is phi(y) - phi(x).
inline double affine_potential(const ManifoldModel& model, const Mat& A, const Vec& t,
                               const Vec& x, const Vec& y)
{
    Mat L = primitive_matrix(model);
    Mat S = A.transpose() * L * A - L;
    auto phi = [&](const Vec& z) { return 0.5 * z.dot(S * z) + t.dot(L * A * z); };
    return phi(y) - phi(x);
}

inline double hyperbolic_distance(const Vec& z, const Vec& w)
{
    std::complex<double> a(z[0], z[1]), b(w[0], w[1]);
    double m = std::abs((b - a) / (1.0 - std::conj(a) * b));
    return 2.0 * std::atanh(m);
}

// Signed area of the geodesic triangle from the angle defect, angles by the
// hyperbolic law of cosines; sign from the chart orientation of the
// vertices (conformal, so it matches the hyperbolic orientation).
inline double triangle_area_defect(const Vec& A, const Vec& B, const Vec& C)
{
    double a = hyperbolic_distance(B, C);
    double b = hyperbolic_distance(C, A);
    double c = hyperbolic_distance(A, B);
    if (a < 1e-12 || b < 1e-12 || c < 1e-12) return 0.0;
    auto angle = [](double opp, double s1, double s2) {
        double cosv = (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) /
                      (std::sinh(s1) * std::sinh(s2));
        return std::acos(std::clamp(cosv, -1.0, 1.0));
    };
    double defect = std::acos(-1.0) - angle(a, b, c) - angle(b, c, a) - angle(c, a, b);
    double cross = (B[0] - A[0]) * (C[1] - A[1]) - (B[1] - A[1]) * (C[0] - A[0]);
    return cross >= 0.0 ? defect : -defect;
}

// Plane rotation flow closed form: z(t) = exp(omega J t) z with J = [0 1; -1 0].
inline Mat rotation_matrix(double theta)
{
    Mat R(2, 2);
    R << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return R;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n)
{
    if (n % 2) ++n;
    double h = (b - a) / n, acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& p,
                       double h = 1e-5)
{
    Vec g(p.size());
    for (int i = 0; i < p.size(); ++i) {
        Vec e = Vec::Zero(p.size());
        e[i] = h;
        g[i] = (f(p + e) - f(p - e)) / (2.0 * h);
    }
    return g;
}

inline Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& p, double h = 1e-6)
{
    Vec base = f(p);
    Mat Jm(base.size(), p.size());
    for (int j = 0; j < p.size(); ++j) {
        Vec e = Vec::Zero(p.size());
        e[j] = h;
        Jm.col(j) = (f(p + e) - f(p - e)) / (2.0 * h);
    }
    return Jm;
}

}  // namespace oracles

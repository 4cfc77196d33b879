#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace symplab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Chart coordinates of a point. Plane model: (x1,y1,...,xn,yn); disk model:
// (Re z, Im z) with |z| < 1.
using Point = Vec;

// Components of a one-form in chart coordinates, same length as the point.
using Covector = Vec;

inline Complex to_complex(const Point& p) { return {p[0], p[1]}; }

inline Point to_point(Complex z)
{
    Point p(2);
    p << z.real(), z.imag();
    return p;
}

// Real 2x2 Jacobian of multiplication by a complex number.
inline Mat complex_jacobian(Complex c)
{
    Mat J(2, 2);
    J << c.real(), -c.imag(), c.imag(), c.real();
    return J;
}

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or flow refinement hit its depth cap; carries the best estimate.
struct AccuracyError : std::runtime_error {
    double best_estimate;
    double error_estimate;
    AccuracyError(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err)
    {
    }
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    int line = 0;
    std::string field;
    ConfigError(const std::string& what, int line_ = 0, std::string field_ = {})
        : std::runtime_error(what), line(line_), field(std::move(field_))
    {
    }
};

}  // namespace symplab

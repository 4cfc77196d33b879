#pragma once

#include <symplab/types.hpp>

#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace symplab {

// Exact symplectic manifold models. Both are contractible charts, so every
// closed one-form on them is exact. The hyperbolic disk has curvature -1 and
// carries the radial primitive lambda = (cosh r - 1) dtheta about the model
// basepoint; the plane ships two primitives. Orientation convention used for
// every signed area in this library: counterclockwise in the chart is
// positive.

enum class ModelKind { EuclideanPlane, HyperbolicDisk };
enum class Primitive {
    Radial,    // plane: 1/2 sum (x dy - y dx); disk: (cosh r - 1) dtheta
    Liouville  // plane only: sum x dy
};

struct ManifoldModel {
    ModelKind kind = ModelKind::EuclideanPlane;
    int pairs = 1;  // n: chart dimension is 2n (disk: always 1)
    Primitive primitive = Primitive::Radial;
    Point basepoint;  // disk: center of the radial primitive

    int dim() const { return 2 * pairs; }

    static ManifoldModel plane(int n = 1, Primitive prim = Primitive::Radial);
    static ManifoldModel disk(Point basepoint = Point::Zero(2));
};

// Disk chart guard: points with |z| > 1 - kDiskGuard are rejected.
inline constexpr double kDiskGuard = 1e-9;

bool in_domain(const ManifoldModel& model, const Point& p);
void require_in_domain(const ManifoldModel& model, const Point& p);

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

struct PathSpec {
    struct Geodesic {
        Point a, b;
    };
    struct Polyline {
        std::vector<Point> points;
    };
    struct Parametrized {
        std::function<Point(double)> curve;                      // t in [0,1]
        std::function<Vec(double)> velocity;                     // optional
        std::vector<double> kinks;                               // interior C^1 breaks
    };
    struct Ray {
        Point origin;
        Vec direction;  // unit chart direction
        double length;  // chart-length truncation
    };

    std::variant<Geodesic, Polyline, Parametrized, Ray> shape;

    static PathSpec geodesic(Point a, Point b) { return {Geodesic{std::move(a), std::move(b)}}; }
    static PathSpec polyline(std::vector<Point> pts) { return {Polyline{std::move(pts)}}; }
    static PathSpec parametrized(std::function<Point(double)> c,
                                 std::function<Vec(double)> v = nullptr,
                                 std::vector<double> kinks = {})
    {
        return {Parametrized{std::move(c), std::move(v), std::move(kinks)}};
    }
    static PathSpec ray(Point origin, Vec direction, double length);
};

Point path_point(const ManifoldModel& model, const PathSpec& path, double t);
Vec path_velocity(const ManifoldModel& model, const PathSpec& path, double t);
PathSpec reverse(const PathSpec& path);

// Splits [0,1] at the path's C^1 breaks (polyline vertices, declared kinks).
std::vector<std::pair<double, double>> smooth_pieces(const PathSpec& path);

// ---------------------------------------------------------------------------
// Model operations
// ---------------------------------------------------------------------------

// The primitive one-form at p.
Covector lambda_at(const ManifoldModel& model, const Point& p);

// Chart matrix W of the symplectic form d(lambda): d(lambda)(u,v) = u^T W v.
// Plane: block diagonal [[0,1],[-1,0]] per pair; disk: 4/(1-|z|^2)^2 times it.
Mat symplectic_matrix(const ManifoldModel& model, const Point& p);

// Riemannian distance (Euclidean, or hyperbolic of curvature -1).
double distance(const ManifoldModel& model, const Point& a, const Point& b);

// Unit-interval constant-speed geodesic from a to b.
PathSpec geodesic(const ManifoldModel& model, const Point& a, const Point& b);

// Signed hyperbolic area of the geodesic triangle (a,b,c) by angle defect:
// sign * (pi - alpha - beta - gamma), positive iff (a,b,c) is counterclockwise
// in the chart. Degenerate triangles give 0.
double triangle_area_gauss_bonnet(const ManifoldModel& model, const Point& a, const Point& b,
                                  const Point& c);

// Max-norm residual | FD d(lambda)_p - W(p) |, finite differences of step h.
double check_dlambda(const ManifoldModel& model, const Point& p, double h_step = 1e-5);

// Metric norm of a covector at p (Euclidean, or hyperbolic dual norm).
double covector_norm(const ManifoldModel& model, const Point& p, const Covector& alpha);

// ---------------------------------------------------------------------------
// Disk helpers (also used by the Moebius map family)
// ---------------------------------------------------------------------------

// Moebius translation taking b to 0: z -> (z - b) / (1 - conj(b) z).
Complex disk_translate(Complex b, Complex z);
// Its complex derivative at z.
Complex disk_translate_deriv(Complex b, Complex z);
// Inverse translation taking 0 to b.
Complex disk_untranslate(Complex b, Complex z);
Complex disk_untranslate_deriv(Complex b, Complex z);

double disk_distance(Complex a, Complex b);

}  // namespace symplab

#include <symplab/geometry.hpp>

#include <algorithm>
#include <cmath>

namespace symplab {

ManifoldModel ManifoldModel::plane(int n, Primitive prim)
{
    ManifoldModel m;
    m.kind = ModelKind::EuclideanPlane;
    m.pairs = n;
    m.primitive = prim;
    m.basepoint = Point::Zero(2 * n);
    return m;
}

ManifoldModel ManifoldModel::disk(Point basepoint)
{
    ManifoldModel m;
    m.kind = ModelKind::HyperbolicDisk;
    m.pairs = 1;
    m.primitive = Primitive::Radial;
    m.basepoint = std::move(basepoint);
    require_in_domain(m, m.basepoint);
    return m;
}

bool in_domain(const ManifoldModel& model, const Point& p)
{
    if (p.size() != model.dim() || !p.allFinite()) return false;
    if (model.kind == ModelKind::HyperbolicDisk) return p.norm() <= 1.0 - kDiskGuard;
    return true;
}

void require_in_domain(const ManifoldModel& model, const Point& p)
{
    if (!in_domain(model, p)) throw DomainError("point outside chart domain");
}

// ---------------------------------------------------------------------------
// Disk helpers
// ---------------------------------------------------------------------------

Complex disk_translate(Complex b, Complex z) { return (z - b) / (1.0 - std::conj(b) * z); }

Complex disk_translate_deriv(Complex b, Complex z)
{
    Complex d = 1.0 - std::conj(b) * z;
    return (1.0 - std::norm(b)) / (d * d);
}

Complex disk_untranslate(Complex b, Complex z) { return (z + b) / (1.0 + std::conj(b) * z); }

Complex disk_untranslate_deriv(Complex b, Complex z)
{
    Complex d = 1.0 + std::conj(b) * z;
    return (1.0 - std::norm(b)) / (d * d);
}

double disk_distance(Complex a, Complex b)
{
    double ratio = std::abs(a - b) / std::abs(1.0 - std::conj(b) * a);
    return 2.0 * std::atanh(ratio);
}

// ---------------------------------------------------------------------------
// Primitive and symplectic form
// ---------------------------------------------------------------------------

Covector lambda_at(const ManifoldModel& model, const Point& p)
{
    require_in_domain(model, p);
    Covector lam(model.dim());
    if (model.kind == ModelKind::EuclideanPlane) {
        for (int k = 0; k < model.pairs; ++k) {
            double x = p[2 * k], y = p[2 * k + 1];
            if (model.primitive == Primitive::Radial) {
                lam[2 * k] = -0.5 * y;
                lam[2 * k + 1] = 0.5 * x;
            } else {
                lam[2 * k] = 0.0;
                lam[2 * k + 1] = x;
            }
        }
        return lam;
    }
    // Disk: lambda = (cosh r - 1) dtheta about the basepoint. In coordinates
    // w centered at the basepoint this is 2(-w2 dw1 + w1 dw2)/(1-|w|^2),
    // which is smooth through w = 0; pull back through dw = T'(z) dz.
    Complex b = to_complex(model.basepoint);
    Complex z = to_complex(p);
    Complex w = disk_translate(b, z);
    double f = 2.0 / (1.0 - std::norm(w));
    Eigen::Vector2d lam_w(-f * w.imag(), f * w.real());
    Mat Dw = complex_jacobian(disk_translate_deriv(b, z));
    lam = Dw.transpose() * lam_w;
    return lam;
}

Mat symplectic_matrix(const ManifoldModel& model, const Point& p)
{
    require_in_domain(model, p);
    int d = model.dim();
    Mat W = Mat::Zero(d, d);
    for (int k = 0; k < model.pairs; ++k) {
        W(2 * k, 2 * k + 1) = 1.0;
        W(2 * k + 1, 2 * k) = -1.0;
    }
    if (model.kind == ModelKind::HyperbolicDisk) {
        double r2 = p.squaredNorm();
        W *= 4.0 / ((1.0 - r2) * (1.0 - r2));
    }
    return W;
}

double covector_norm(const ManifoldModel& model, const Point& p, const Covector& alpha)
{
    if (model.kind == ModelKind::EuclideanPlane) return alpha.norm();
    return alpha.norm() * (1.0 - p.squaredNorm()) / 2.0;
}

double distance(const ManifoldModel& model, const Point& a, const Point& b)
{
    require_in_domain(model, a);
    require_in_domain(model, b);
    if (model.kind == ModelKind::EuclideanPlane) return (a - b).norm();
    return disk_distance(to_complex(a), to_complex(b));
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

PathSpec PathSpec::ray(Point origin, Vec direction, double length)
{
    double n = direction.norm();
    if (n <= 0.0 || length < 0.0) throw PreconditionError("ray needs a direction and length >= 0");
    return {Ray{std::move(origin), direction / n, length}};
}

PathSpec geodesic(const ManifoldModel& model, const Point& a, const Point& b)
{
    require_in_domain(model, a);
    require_in_domain(model, b);
    return PathSpec::geodesic(a, b);
}

namespace {

Point disk_geodesic_point(const ManifoldModel& model, const Point& a, const Point& b, double t)
{
    Complex za = to_complex(a), zb = to_complex(b);
    Complex w = disk_translate(za, zb);
    double wn = std::abs(w);
    if (wn < 1e-15) return a;
    double D = 2.0 * std::atanh(wn);
    Complex dir = w / wn;
    Complex zeta = std::tanh(0.5 * t * D) * dir;
    return to_point(disk_untranslate(za, zeta));
}

Vec disk_geodesic_velocity(const ManifoldModel& model, const Point& a, const Point& b, double t)
{
    Complex za = to_complex(a), zb = to_complex(b);
    Complex w = disk_translate(za, zb);
    double wn = std::abs(w);
    if (wn < 1e-15) return Vec::Zero(2);
    double D = 2.0 * std::atanh(wn);
    Complex dir = w / wn;
    double u = 0.5 * t * D;
    Complex zeta = std::tanh(u) * dir;
    double sech = 1.0 / std::cosh(u);
    Complex dzeta = 0.5 * D * sech * sech * dir;
    Complex dz = disk_untranslate_deriv(za, zeta) * dzeta;
    Vec v(2);
    v << dz.real(), dz.imag();
    return v;
}

// 4th-order central difference; h shrinks near the interval ends so all
// stencil points stay in [0,1].
Vec fd_velocity(const std::function<Point(double)>& c, double t)
{
    double h = std::min({1e-4, t / 2.0, (1.0 - t) / 2.0});
    if (h < 1e-12) h = 1e-12;
    Point p2 = c(t + 2 * h), p1 = c(t + h), m1 = c(t - h), m2 = c(t - 2 * h);
    return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
}

}  // namespace

Point path_point(const ManifoldModel& model, const PathSpec& path, double t)
{
    if (const auto* g = std::get_if<PathSpec::Geodesic>(&path.shape)) {
        if (model.kind == ModelKind::EuclideanPlane) return g->a + t * (g->b - g->a);
        return disk_geodesic_point(model, g->a, g->b, t);
    }
    if (const auto* pl = std::get_if<PathSpec::Polyline>(&path.shape)) {
        const auto& pts = pl->points;
        if (pts.size() == 1) return pts[0];
        int m = static_cast<int>(pts.size()) - 1;
        double s = t * m;
        int i = std::min(static_cast<int>(s), m - 1);
        return pts[i] + (s - i) * (pts[i + 1] - pts[i]);
    }
    if (const auto* pr = std::get_if<PathSpec::Parametrized>(&path.shape)) return pr->curve(t);
    const auto& r = std::get<PathSpec::Ray>(path.shape);
    return r.origin + (t * r.length) * r.direction;
}

Vec path_velocity(const ManifoldModel& model, const PathSpec& path, double t)
{
    if (const auto* g = std::get_if<PathSpec::Geodesic>(&path.shape)) {
        if (model.kind == ModelKind::EuclideanPlane) return g->b - g->a;
        return disk_geodesic_velocity(model, g->a, g->b, t);
    }
    if (const auto* pl = std::get_if<PathSpec::Polyline>(&path.shape)) {
        const auto& pts = pl->points;
        if (pts.size() == 1) return Vec::Zero(pts[0].size());
        int m = static_cast<int>(pts.size()) - 1;
        int i = std::min(static_cast<int>(t * m), m - 1);
        return static_cast<double>(m) * (pts[i + 1] - pts[i]);
    }
    if (const auto* pr = std::get_if<PathSpec::Parametrized>(&path.shape)) {
        if (pr->velocity) return pr->velocity(t);
        return fd_velocity(pr->curve, t);
    }
    const auto& r = std::get<PathSpec::Ray>(path.shape);
    return r.length * r.direction;
}

PathSpec reverse(const PathSpec& path)
{
    if (const auto* g = std::get_if<PathSpec::Geodesic>(&path.shape))
        return PathSpec::geodesic(g->b, g->a);
    if (const auto* pl = std::get_if<PathSpec::Polyline>(&path.shape)) {
        auto pts = pl->points;
        std::reverse(pts.begin(), pts.end());
        return PathSpec::polyline(std::move(pts));
    }
    if (const auto* pr = std::get_if<PathSpec::Parametrized>(&path.shape)) {
        auto c = pr->curve;
        auto v = pr->velocity;
        std::vector<double> kinks;
        for (auto it = pr->kinks.rbegin(); it != pr->kinks.rend(); ++it) kinks.push_back(1.0 - *it);
        return PathSpec::parametrized(
            [c](double t) { return c(1.0 - t); },
            v ? std::function<Vec(double)>([v](double t) { return Vec(-v(1.0 - t)); }) : nullptr,
            std::move(kinks));
    }
    const auto& r = std::get<PathSpec::Ray>(path.shape);
    Point far = r.origin + r.length * r.direction;
    Vec back = -r.direction;
    return {PathSpec::Ray{far, back, r.length}};
}

std::vector<std::pair<double, double>> smooth_pieces(const PathSpec& path)
{
    std::vector<std::pair<double, double>> pieces;
    if (const auto* pl = std::get_if<PathSpec::Polyline>(&path.shape)) {
        int m = std::max<int>(1, static_cast<int>(pl->points.size()) - 1);
        for (int i = 0; i < m; ++i)
            pieces.emplace_back(static_cast<double>(i) / m, static_cast<double>(i + 1) / m);
        return pieces;
    }
    if (const auto* pr = std::get_if<PathSpec::Parametrized>(&path.shape)) {
        double prev = 0.0;
        for (double k : pr->kinks) {
            if (k > prev && k < 1.0) {
                pieces.emplace_back(prev, k);
                prev = k;
            }
        }
        pieces.emplace_back(prev, 1.0);
        return pieces;
    }
    pieces.emplace_back(0.0, 1.0);
    return pieces;
}

// ---------------------------------------------------------------------------
// Triangle area and the d(lambda) consistency check
// ---------------------------------------------------------------------------

namespace {

// Interior angle at the origin between directions w1, w2, in [0, pi].
double origin_angle(Complex w1, Complex w2)
{
    Complex q = std::conj(w1) * w2;
    return std::atan2(std::abs(q.imag()), q.real());
}

}  // namespace

double triangle_area_gauss_bonnet(const ManifoldModel& model, const Point& a, const Point& b,
                                  const Point& c)
{
    if (model.kind != ModelKind::HyperbolicDisk)
        throw PreconditionError("gauss-bonnet area requires the disk model");
    require_in_domain(model, a);
    require_in_domain(model, b);
    require_in_domain(model, c);
    Complex za = to_complex(a), zb = to_complex(b), zc = to_complex(c);

    Complex ab = disk_translate(za, zb), ac = disk_translate(za, zc);
    Complex ba = disk_translate(zb, za), bc = disk_translate(zb, zc);
    Complex ca = disk_translate(zc, za), cb = disk_translate(zc, zb);

    const double tiny = 1e-14;
    if (std::abs(ab) < tiny || std::abs(ac) < tiny || std::abs(bc) < tiny) return 0.0;

    double cross = (std::conj(ab) * ac).imag();
    if (std::abs(cross) < tiny * std::abs(ab) * std::abs(ac)) return 0.0;  // collinear
    double sign = cross > 0 ? 1.0 : -1.0;

    double alpha = origin_angle(ab, ac);
    double beta = origin_angle(ba, bc);
    double gamma = origin_angle(ca, cb);
    return sign * (M_PI - alpha - beta - gamma);
}

double check_dlambda(const ManifoldModel& model, const Point& p, double h_step)
{
    int d = model.dim();
    Mat W_fd = Mat::Zero(d, d);
    std::vector<Covector> plus(d), minus(d);
    for (int i = 0; i < d; ++i) {
        Point pp = p, pm = p;
        pp[i] += h_step;
        pm[i] -= h_step;
        plus[i] = lambda_at(model, pp);
        minus[i] = lambda_at(model, pm);
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            W_fd(i, j) = (plus[i][j] - minus[i][j]) / (2.0 * h_step) -
                         (plus[j][i] - minus[j][i]) / (2.0 * h_step);
    Mat W = symplectic_matrix(model, p);
    return (W_fd - W).cwiseAbs().maxCoeff();
}

}  // namespace symplab

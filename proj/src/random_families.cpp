#include <symplab/random_families.hpp>

#include <cmath>

namespace symplab {

std::vector<Point> random_points(Rng& rng, const ManifoldModel& model, int count, double radius)
{
    if (model.kind == ModelKind::HyperbolicDisk) radius = std::min(radius, 0.9);
    std::vector<Point> pts;
    pts.reserve(count);
    while (static_cast<int>(pts.size()) < count) {
        Point p(model.dim());
        for (int i = 0; i < p.size(); ++i) p[i] = rng.symmetric(radius);
        if (model.kind == ModelKind::HyperbolicDisk && p.norm() > radius) continue;
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<SympMap> random_translations(Rng& rng, int count, int pairs, double scale)
{
    std::vector<SympMap> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        Vec t(2 * pairs);
        for (int i = 0; i < t.size(); ++i) t[i] = rng.symmetric(scale);
        out.push_back(SympMap::translation(std::move(t)));
    }
    return out;
}

std::vector<SympMap> random_affine_maps(Rng& rng, int count, int pairs, double scale)
{
    std::vector<SympMap> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        Mat A = Mat::Zero(2 * pairs, 2 * pairs);
        for (int blk = 0; blk < pairs; ++blk) {
            double a = 0.0, b, c;
            while (std::abs(a) < 0.3) a = rng.symmetric(1.0 + scale);
            b = rng.symmetric(scale);
            c = rng.symmetric(scale);
            double d = (1.0 + b * c) / a;
            A.block<2, 2>(2 * blk, 2 * blk) << a, b, c, d;
        }
        Vec t(2 * pairs);
        for (int i = 0; i < t.size(); ++i) t[i] = rng.symmetric(scale);
        out.push_back(SympMap::affine(std::move(A), std::move(t)));
    }
    return out;
}

std::vector<SympMap> random_moebius_maps(Rng& rng, int count, double scale)
{
    std::vector<SympMap> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        Complex b = std::polar(rng.uniform(0.0, scale), rng.uniform(0.0, 2.0 * M_PI));
        Complex a = std::polar(std::sqrt(1.0 + std::norm(b)), rng.uniform(0.0, 2.0 * M_PI));
        out.push_back(SympMap::moebius(a, b));
    }
    return out;
}

std::vector<SympMap> random_bump_flows(Rng& rng, const ManifoldModel& model, int count,
                                       double reach, double radius_min, double radius_max,
                                       double amplitude)
{
    std::vector<SympMap> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        double R = rng.uniform(radius_min, radius_max);
        Vec c(model.dim());
        for (int i = 0; i < c.size(); ++i) c[i] = rng.symmetric(reach);
        if (model.kind == ModelKind::HyperbolicDisk && c.norm() + R > 0.85) continue;
        double A = rng.symmetric(amplitude);
        out.push_back(bump_flow(std::move(c), R, A));
    }
    return out;
}

}  // namespace symplab

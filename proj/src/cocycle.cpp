#include <symplab/cocycle.hpp>

#include <cmath>

namespace symplab {

namespace {

std::function<Covector(const Point&)> delta_lambda_form(const ManifoldModel& model,
                                                        const SympMap& g)
{
    return [&model, &g](const Point& p) { return pullback_delta_lambda(model, g, p); };
}

}  // namespace

double K_tilde(const CocycleContext& ctx, const SympMap& g, const Point& y)
{
    PathSpec path = geodesic(ctx.model, ctx.x, y);
    return integrate_one_form(ctx.model, delta_lambda_form(ctx.model, g), path, ctx.quad_tol)
        .value;
}

double G(const CocycleContext& ctx, const SympMap& g, const SympMap& h)
{
    return K_tilde(ctx, g, apply(ctx.model, h, ctx.x));
}

double coboundary2_residual(const CocycleContext& ctx, const SympMap& g, const SympMap& h,
                            const SympMap& k)
{
    double a = G(ctx, g, h);
    double b = G(ctx, g, compose(h, k));
    double c = G(ctx, compose(g, h), k);
    double d = G(ctx, h, k);
    return std::abs(a - b + c - d);
}

double k_chain(const CocycleContext& ctx, const SympMap& g)
{
    Point gx = apply(ctx.model, g, ctx.x);
    auto lam = [&](const Point& p) { return lambda_at(ctx.model, p); };
    return integrate_one_form(ctx.model, lam, geodesic(ctx.model, ctx.x, gx), ctx.quad_tol).value;
}

TrilateralReport trilateral_identity(const CocycleContext& ctx, const SympMap& g, const SympMap& h)
{
    const ManifoldModel model = ctx.model;
    SympMap gh = compose(g, h);

    double lhs = G(ctx, g, h) + k_chain(ctx, g) - k_chain(ctx, gh) + k_chain(ctx, h);

    Point gx = apply(model, g, ctx.x);
    Point hx = apply(model, h, ctx.x);
    Point ghx = apply(model, g, hx);
    auto lam = [&](const Point& p) { return lambda_at(model, p); };

    PathSpec first = geodesic(model, ctx.x, gx);
    PathSpec middle_pre = geodesic(model, ctx.x, hx);
    PathSpec middle = PathSpec::parametrized(
        [model, g, middle_pre](double t) {
            return apply(model, g, path_point(model, middle_pre, t));
        },
        [model, g, middle_pre](double t) -> Vec {
            Point p = path_point(model, middle_pre, t);
            return differential(model, g, p) * path_velocity(model, middle_pre, t);
        });
    PathSpec last = reverse(geodesic(model, ctx.x, ghx));

    double rhs = integrate_one_form(model, lam, first, ctx.quad_tol).value +
                 integrate_one_form(model, lam, middle, ctx.quad_tol).value +
                 integrate_one_form(model, lam, last, ctx.quad_tol).value;

    return {lhs, rhs, std::abs(lhs - rhs)};
}

double kahler_cocycle(const CocycleContext& ctx, const SympMap& g, const SympMap& h)
{
    if (ctx.model.kind != ModelKind::HyperbolicDisk)
        throw PreconditionError("the area cocycle lives on the disk model");
    Point gx = apply(ctx.model, g, ctx.x);
    Point ghx = apply(ctx.model, g, apply(ctx.model, h, ctx.x));
    return triangle_area_gauss_bonnet(ctx.model, ctx.x, gx, ghx);
}

double b_chain(const CocycleContext& ctx, const SympMap& g, Vec direction)
{
    auto support = compact_support(g);
    if (!support) throw PreconditionError("needs a map with known compact support");

    int d = ctx.model.dim();
    Vec dir = direction.size() ? Vec(direction.normalized()) : Vec(Vec::Unit(d, 0));

    double t_end = 0.0;
    for (const SupportBall& ball : *support) {
        Vec w = ctx.x - ball.center;
        double bq = dir.dot(w);
        double disc = bq * bq - (w.squaredNorm() - ball.radius * ball.radius);
        if (disc > 0.0) t_end = std::max(t_end, -bq + std::sqrt(disc));
    }

    double pad = 1.0;
    if (ctx.model.kind == ModelKind::HyperbolicDisk) {
        double R = 1.0 - 1e-6;
        double bq = dir.dot(ctx.x);
        double t_edge = -bq + std::sqrt(bq * bq + R * R - ctx.x.squaredNorm());
        if (t_end >= t_edge) throw DomainError("support reaches the chart boundary");
        pad = 0.5 * (t_edge - t_end);
    }

    PathSpec ray = PathSpec::ray(ctx.x, dir, t_end + pad);
    return integrate_one_form(ctx.model, delta_lambda_form(ctx.model, g), ray, ctx.quad_tol)
        .value;
}

std::vector<PowerTableRow> hom_power_table(const CocycleContext& ctx, const SympMap& g,
                                           const SympMap& h, int n_max)
{
    if (n_max < 1) throw PreconditionError("need n_max >= 1");
    std::vector<PowerTableRow> rows;
    rows.reserve(n_max);
    double base = G(ctx, g, h);
    for (int n = 1; n <= n_max; ++n) {
        double value = std::abs(G(ctx, power(g, n), h));
        double reference = n * std::abs(base);
        double denom = std::max(std::abs(reference), 1e-300);
        rows.push_back({n, value, reference, std::abs(value - reference) / denom});
    }
    return rows;
}

double action_functional(const CocycleContext& ctx, const IsotopySpec& iso, const Point& p)
{
    return flow_trajectory(ctx.model, *iso.H, p, iso.T, 4, iso.settings).back().action;
}

double action_difference(const CocycleContext& ctx, const IsotopySpec& iso, const SympMap& h)
{
    Point hx = apply(ctx.model, h, ctx.x);
    return action_functional(ctx, iso, hx) - action_functional(ctx, iso, ctx.x);
}

double isotopy_independence_residual(const CocycleContext& ctx, const IsotopySpec& a,
                                     const IsotopySpec& b, const Point& y)
{
    double da = action_functional(ctx, a, y) - action_functional(ctx, a, ctx.x);
    double db = action_functional(ctx, b, y) - action_functional(ctx, b, ctx.x);
    return std::abs(da - db);
}

}  // namespace symplab

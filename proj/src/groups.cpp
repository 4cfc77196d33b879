#include <symplab/groups.hpp>

#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace symplab {

namespace {

constexpr double kFixedPointTol = 1e-8;

// Deterministic probe points whose images identify a map numerically.
std::vector<Point> fingerprint_points(const ManifoldModel& model)
{
    static const double coords[] = {0.13, 0.21, -0.32, 0.17, 0.25, -0.41,
                                    0.37, -0.11, -0.23, 0.29, 0.19, 0.31};
    std::vector<Point> pts;
    int d = model.dim();
    int idx = 0;
    for (int k = 0; k < 3; ++k) {
        Point p(d);
        for (int i = 0; i < d; ++i) p[i] = coords[(idx++) % 12];
        pts.push_back(std::move(p));
    }
    return pts;
}

using Fingerprint = std::vector<int64_t>;

Fingerprint quantize(const std::vector<Point>& images)
{
    Fingerprint key;
    for (const Point& p : images)
        for (int i = 0; i < p.size(); ++i) key.push_back(llround(p[i] * 1e7));
    return key;
}

}  // namespace

int GeneratingSet::find(const std::string& name) const
{
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    return -1;
}

GroupWord GroupWord::inverse_word() const
{
    GroupWord out;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.letters.emplace_back(it->first, -it->second);
    return out;
}

GroupWord GroupWord::repeated(int n) const
{
    if (n < 0) throw PreconditionError("repeat count must be nonnegative");
    GroupWord out;
    out.letters.reserve(letters.size() * n);
    for (int i = 0; i < n; ++i)
        out.letters.insert(out.letters.end(), letters.begin(), letters.end());
    return out;
}

SympMap GroupWord::to_map(const GeneratingSet& S) const
{
    std::vector<SympMap> factors;
    factors.reserve(letters.size());
    for (auto [i, sign] : letters) {
        if (i < 0 || i >= static_cast<int>(S.gens.size()))
            throw PreconditionError("letter outside the generating set");
        factors.push_back(sign > 0 ? S.gens[i].map : inverse(S.gens[i].map));
    }
    return SympMap::word(std::move(factors));
}

int GroupWord::reduced_letter_count() const
{
    std::vector<std::pair<int, int>> stack;
    for (auto [i, sign] : letters) {
        if (!stack.empty() && stack.back().first == i && stack.back().second == -sign)
            stack.pop_back();
        else
            stack.emplace_back(i, sign);
    }
    return static_cast<int>(stack.size());
}

WordLengthResult word_length(const ManifoldModel& model, const GeneratingSet& S,
                             const GroupWord& w)
{
    int reduced = w.reduced_letter_count();
    if (S.free_hint) return {reduced, true};
    if (reduced == 0) return {0, true};

    std::vector<Point> base = fingerprint_points(model);
    std::vector<Point> target_images;
    SympMap wm = w.to_map(S);
    for (const Point& p : base) target_images.push_back(apply(model, wm, p));
    Fingerprint target = quantize(target_images);
    if (target == quantize(base)) return {0, true};

    std::vector<SympMap> moves;
    for (const Generator& g : S.gens) {
        moves.push_back(g.map);
        moves.push_back(inverse(g.map));
    }

    std::map<Fingerprint, int> visited;
    std::deque<std::pair<std::vector<Point>, int>> frontier;
    visited[quantize(base)] = 0;
    frontier.emplace_back(base, 0);
    while (!frontier.empty()) {
        auto [images, dist] = std::move(frontier.front());
        frontier.pop_front();
        if (dist >= S.bfs_radius_cap) continue;
        for (const SympMap& s : moves) {
            std::vector<Point> next;
            next.reserve(images.size());
            for (const Point& p : images) next.push_back(apply(model, s, p));
            Fingerprint key = quantize(next);
            if (key == target) return {dist + 1, true};
            auto [it, inserted] = visited.emplace(std::move(key), dist + 1);
            if (inserted) frontier.emplace_back(std::move(next), dist + 1);
        }
    }
    return {reduced, false};
}

TranslationLengthEstimate translation_length_estimate(const ManifoldModel& model,
                                                      const GeneratingSet& S, const GroupWord& g,
                                                      int n_max)
{
    if (n_max < 1) throw PreconditionError("need n_max >= 1");
    TranslationLengthEstimate est;
    est.value = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        WordLengthResult wl = word_length(model, S, g.repeated(n));
        double ratio = static_cast<double>(wl.length) / n;
        est.table.push_back({n, wl.length, ratio, wl.exact});
        est.exact = est.exact && wl.exact;
        est.value = std::min(est.value, ratio);
    }
    return est;
}

double sampled_norm_lower_bound(const CocycleContext& ctx, const SympMap& g,
                                const std::vector<SympMap>& probes)
{
    if (probes.empty()) throw PreconditionError("need at least one probe map");
    double best = 0.0;
    for (const SympMap& h : probes) best = std::max(best, std::abs(G(ctx, g, h)));
    return best;
}

double analytic_norm_upper_bound(const CocycleContext& ctx, const IsotopySpec& iso, int grid)
{
    if (!iso.H || !iso.H->support)
        throw PreconditionError("needs a hamiltonian with a known support ball");
    if (ctx.model.dim() != 2)
        throw PreconditionError("grid bound implemented for two dimensional models");
    const SupportBall& ball = *iso.H->support;

    std::vector<double> times{0.0};
    if (!iso.H->autonomous) {
        for (int i = 0; i <= 16; ++i) times.push_back(i / 16.0);
        for (double b : iso.H->breakpoints)
            if (b > 0.0 && b < 1.0) times.push_back(b);
    }

    double C = 0.0, L = 0.0, Hm = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            Point p(2);
            p << ball.center[0] + ball.radius * (2.0 * i / (grid - 1) - 1.0),
                ball.center[1] + ball.radius * (2.0 * j / (grid - 1) - 1.0);
            if ((p - ball.center).norm() > ball.radius) continue;
            if (!in_domain(ctx.model, p)) continue;
            C = std::max(C, covector_norm(ctx.model, p, lambda_at(ctx.model, p)));
            for (double t : times) {
                L = std::max(L, covector_norm(ctx.model, p, iso.H->gradient_at(t, p)));
                Hm = std::max(Hm, std::abs(iso.H->value_at(t, p)));
            }
        }
    }
    return 2.0 * std::abs(iso.T) * (C * L + Hm);
}

NormEstimate semibounded_norm_estimate(const CocycleContext& ctx, const IsotopySpec& iso,
                                       const std::vector<SympMap>& probes, int grid)
{
    return {sampled_norm_lower_bound(ctx, iso.time_one_map(), probes),
            analytic_norm_upper_bound(ctx, iso, grid)};
}

double lemma_two_check(const CocycleContext& ctx, const SympMap& f, const SympMap& g,
                       const std::vector<SympMap>& probes)
{
    if (probes.empty()) throw PreconditionError("need at least one probe map");
    SympMap fg = compose(f, g);
    double fg_pair = std::abs(G(ctx, f, g));
    double worst = -std::numeric_limits<double>::infinity();
    for (const SympMap& h : probes) {
        double lhs = std::abs(G(ctx, fg, h));
        double slack = lhs - fg_pair - std::abs(G(ctx, f, compose(g, h))) -
                       std::abs(G(ctx, g, h));
        worst = std::max(worst, slack);
    }
    return worst;
}

PolterovichReport polterovich_report(const CocycleContext& ctx, const IsotopySpec& g_iso,
                                     const SympMap& h, const GeneratingSet& S,
                                     const std::vector<SympMap>& probes, int n_max)
{
    SympMap g = g_iso.time_one_map();
    Point p = ctx.x;
    Point q = apply(ctx.model, h, p);
    if ((apply(ctx.model, g, p) - p).cwiseAbs().maxCoeff() > kFixedPointTol ||
        (apply(ctx.model, g, q) - q).cwiseAbs().maxCoeff() > kFixedPointTol)
        throw PreconditionError("needs g to fix both the basepoint and its image under h");

    PolterovichReport rep;
    rep.cocycle_value = G(ctx, g, h);
    rep.action_difference = action_difference(ctx, g_iso, h);
    rep.cross_residual = std::abs(rep.cocycle_value - rep.action_difference);
    rep.linearity = hom_power_table(ctx, g, h, n_max);
    rep.growth_monotone = true;
    double prev = 0.0;
    for (const PowerTableRow& row : rep.linearity) {
        rep.max_linearity_rel_error = std::max(rep.max_linearity_rel_error, row.rel_error);
        rep.growth_monotone = rep.growth_monotone && row.value > prev;
        prev = row.value;
    }
    for (const Generator& s : S.gens)
        rep.max_generator_norm_lower =
            std::max(rep.max_generator_norm_lower, sampled_norm_lower_bound(ctx, s.map, probes));
    double denom = 2.0 * rep.max_generator_norm_lower;
    rep.translation_length_bound = denom > 0.0 ? std::abs(rep.cocycle_value) / denom : 0.0;
    rep.caveat =
        "generator norms are sampled lower bounds, so the translation length "
        "bound is an upper estimate of the certified quotient";
    return rep;
}

}  // namespace symplab

#include <symplab/groups.hpp>
#include <symplab/random_families.hpp>

#include <doctest.h>

#include <cmath>

using namespace symplab;

namespace {

Vec v2(double x, double y)
{
    Vec v(2);
    v << x, y;
    return v;
}

FlowSettings coarse()
{
    return {5e-3, 1e-6, 6, false};
}

GeneratingSet free_pair()
{
    GeneratingSet S;
    S.free_hint = true;
    S.gens.push_back({"a", SympMap::translation(v2(1.0, 0.0)), std::nullopt});
    S.gens.push_back({"b", SympMap::translation(v2(0.0, 1.0)), std::nullopt});
    return S;
}

}  // namespace

TEST_CASE("free reduction word lengths")
{
    ManifoldModel plane = ManifoldModel::plane();
    GeneratingSet S = free_pair();

    CHECK(word_length(plane, S, GroupWord{}).length == 0);

    GroupWord w{{{0, 1}, {1, 1}, {1, -1}, {0, 1}}};  // a b b^-1 a
    WordLengthResult r = word_length(plane, S, w);
    CHECK(r.length == 2);
    CHECK(r.exact);

    GroupWord ab{{{0, 1}, {1, 1}}};
    for (int n : {1, 2, 5}) {
        CHECK(word_length(plane, S, ab.repeated(n)).length == 2 * n);
        CHECK(ab.repeated(n).reduced_letter_count() == 2 * n);
    }

    GroupWord conj{{{0, 1}, {1, 1}, {0, -1}}};  // a b a^-1
    CHECK(word_length(plane, S, conj).length == 3);
    CHECK(word_length(plane, S, conj.inverse_word()).length == 3);
    CHECK(conj.repeated(4).reduced_letter_count() == 6);  // a b^4 a^-1
}

TEST_CASE("translation length estimates from the power table")
{
    ManifoldModel plane = ManifoldModel::plane();
    GeneratingSet S = free_pair();

    CHECK(translation_length_estimate(plane, S, GroupWord{}, 8).value == 0.0);
    CHECK(translation_length_estimate(plane, S, GroupWord::single(0), 8).value == 1.0);

    GroupWord conj{{{0, 1}, {1, 1}, {0, -1}}};
    TranslationLengthEstimate est = translation_length_estimate(plane, S, conj, 8);
    CHECK(est.exact);
    REQUIRE(est.table.size() == 8);
    for (const TranslationLengthRow& row : est.table) {
        CHECK(row.length == row.n + 2);
        CHECK(row.ratio == doctest::Approx((row.n + 2.0) / row.n));
    }
    CHECK(est.value == doctest::Approx(10.0 / 8.0));  // inf over the finite table

    // Ratios along doubling powers never increase (subadditivity).
    CHECK(est.table[1].ratio <= est.table[0].ratio);
    CHECK(est.table[3].ratio <= est.table[1].ratio);
    CHECK(est.table[7].ratio <= est.table[3].ratio);
}

TEST_CASE("BFS word length identifies relations the free reduction misses")
{
    ManifoldModel disk = ManifoldModel::disk();
    GeneratingSet S;
    S.free_hint = false;
    S.bfs_radius_cap = 6;
    constexpr double kPi = 3.14159265358979323846;
    S.gens.push_back({"r", SympMap::moebius_rotation(kPi / 2.0), std::nullopt});

    auto len = [&](int n) { return word_length(disk, S, GroupWord::single(0).repeated(n)); };
    CHECK(len(4).length == 0);  // full turn
    CHECK(len(4).exact);
    CHECK(len(3).length == 1);  // r^3 = r^-1
    CHECK(len(2).length == 2);
    CHECK(len(1).length == 1);

    // An irrational rotation has infinite order, so q^5 lies outside a
    // radius-2 ball and the reduced letter count comes back flagged.
    GeneratingSet irr;
    irr.free_hint = false;
    irr.bfs_radius_cap = 2;
    irr.gens.push_back({"q", SympMap::moebius_rotation(0.37), std::nullopt});
    WordLengthResult capped = word_length(disk, irr, GroupWord::single(0).repeated(5));
    CHECK(capped.length == 5);
    CHECK(!capped.exact);
}

TEST_CASE("pointwise product-norm inequality slack is never positive")
{
    // Quadrature tolerance above the flow refinement jitter near bump edges.
    CocycleContext ctx{ManifoldModel::plane(1, Primitive::Radial), Vec::Zero(2), 1e-7};
    std::vector<SympMap> probes{SympMap::translation(v2(0.9, 0.4)),
                                SympMap::translation(v2(-0.3, 1.1))};

    SympMap f = SympMap::translation(v2(0.7, -0.2));
    SympMap g = SympMap::translation(v2(0.1, 0.8));
    CHECK(lemma_two_check(ctx, f, g, probes) < 1e-10);

    SympMap bf = bump_flow(v2(0.3, 0.1), 0.5, 0.45, 1.0, coarse());
    SympMap bg = bump_flow(v2(-0.4, 0.2), 0.55, -0.5, 1.0, coarse());
    CHECK(lemma_two_check(ctx, bf, bg, probes) < 1e-6);
    CHECK(lemma_two_check(ctx, SympMap::identity(), SympMap::identity(), probes) <= 0.0);
}

TEST_CASE("norm estimates: identity at zero, lower below upper, nondegeneracy")
{
    CocycleContext ctx{ManifoldModel::plane(1, Primitive::Radial), Vec::Zero(2), 1e-8};
    std::vector<SympMap> probes{SympMap::translation(v2(1.4, 0.0)),
                                SympMap::translation(v2(0.0, 1.4)),
                                SympMap::translation(v2(-1.4, -0.4))};

    CHECK(sampled_norm_lower_bound(ctx, SympMap::identity(), probes) == 0.0);

    // Bump pinned at the basepoint: critical values A at x and 0 outside, and
    // every probe moves x off the support.
    double A = 0.55;
    auto H = std::make_shared<HamiltonianSpec>(bump_hamiltonian(v2(0.0, 0.0), 0.6, A));
    IsotopySpec iso{H, 1.0, coarse()};
    NormEstimate est = semibounded_norm_estimate(ctx, iso, probes);
    CHECK(est.lower <= est.upper);
    CHECK(est.lower >= A - 1e-6);  // the action difference is attained
    CHECK(est.upper >= A);
}

TEST_CASE("norm of a word grows at most linearly in its length")
{
    CocycleContext ctx{ManifoldModel::plane(1, Primitive::Radial), Vec::Zero(2), 1e-7};
    auto H = std::make_shared<HamiltonianSpec>(bump_hamiltonian(v2(0.0, 0.0), 0.5, 0.4));
    IsotopySpec iso{H, 1.0, coarse()};

    GeneratingSet S;
    S.free_hint = true;
    S.gens.push_back({"g", iso.time_one_map(), iso});
    double upper = analytic_norm_upper_bound(ctx, iso);
    std::vector<SympMap> probes{SympMap::translation(v2(1.2, 0.1)),
                                SympMap::translation(v2(-1.3, 0.2))};

    for (int k : {1, 2, 3}) {
        GroupWord w = GroupWord::single(0).repeated(k);
        double norm_lower = sampled_norm_lower_bound(ctx, w.to_map(S), probes);
        int len = word_length(ctx.model, S, w).length;
        CHECK(len == k);
        CHECK(norm_lower <= 2.0 * upper * len + 1e-5);
    }
}

TEST_CASE("distortion report: cross-check, linearity, growth, and caveat")
{
    CocycleContext ctx{ManifoldModel::plane(1, Primitive::Radial), Vec::Zero(2), 1e-7};
    double A = 0.5;
    auto H = std::make_shared<HamiltonianSpec>(bump_hamiltonian(v2(0.0, 0.0), 0.5, A));
    IsotopySpec iso{H, 1.0, coarse()};
    SympMap h = SympMap::translation(v2(1.4, 0.0));

    GeneratingSet S;
    S.free_hint = true;
    S.gens.push_back({"g", iso.time_one_map(), iso});
    std::vector<SympMap> probes{h, inverse(h)};

    PolterovichReport rep = polterovich_report(ctx, iso, h, S, probes, 4);
    CHECK(std::abs(std::abs(rep.cocycle_value) - A) < 1e-6);
    CHECK(rep.cross_residual < 1e-6);
    REQUIRE(rep.linearity.size() == 4);
    CHECK(rep.max_linearity_rel_error < 1e-6);
    CHECK(rep.growth_monotone);
    CHECK(rep.translation_length_bound > 0.0);
    CHECK(!rep.caveat.empty());

    // A mover that drags the basepoint inside the support violates the
    // two-fixed-points precondition.
    SympMap bad = SympMap::translation(v2(0.2, 0.0));
    CHECK_THROWS_AS(polterovich_report(ctx, iso, bad, S, probes, 2), PreconditionError);
}

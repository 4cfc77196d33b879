#include <symplab/suites.hpp>

#include <symplab/groups.hpp>
#include <symplab/random_families.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

namespace symplab {

namespace {

std::string pad3(int i)
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", i);
    return buf;
}

Json jvec(const Vec& v)
{
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

struct NamedMap {
    std::string name;
    SympMap map;
};

bool is_translation(const SympMap& m)
{
    const auto* a = std::get_if<SympMap::AffineSymplectic>(&m.rep);
    return a && a->A.isIdentity(1e-14);
}

// Declared maps plus seeded closed-form families; flows only if declared.
std::vector<NamedMap> closed_form_pool(const Scenario& sc, Rng& rng)
{
    std::vector<NamedMap> pool;
    for (const auto& [n, m] : sc.maps) pool.push_back({n, m});
    if (sc.model.kind == ModelKind::EuclideanPlane) {
        auto tr = random_translations(rng, 4, sc.model.pairs, 0.8);
        auto af = random_affine_maps(rng, 4, sc.model.pairs, 0.5);
        for (size_t i = 0; i < tr.size(); ++i) pool.push_back({"rand-tr-" + pad3(i), tr[i]});
        for (size_t i = 0; i < af.size(); ++i) pool.push_back({"rand-aff-" + pad3(i), af[i]});
    } else {
        auto mo = random_moebius_maps(rng, 8, 0.6);
        for (size_t i = 0; i < mo.size(); ++i) pool.push_back({"rand-mob-" + pad3(i), mo[i]});
    }
    return pool;
}

double heisenberg_expected(const ManifoldModel& model, const Vec& u, const Vec& v)
{
    double acc = 0.0;
    for (int k = 0; k + 1 < u.size(); k += 2) {
        if (model.primitive == Primitive::Radial)
            acc += 0.5 * (u[k] * v[k + 1] - u[k + 1] * v[k]);
        else
            acc += u[k] * v[k + 1];
    }
    return acc;
}

std::string csv_sibling(const std::string& out_path)
{
    size_t dot = out_path.find_last_of('.');
    size_t slash = out_path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out_path + ".csv";
    return out_path.substr(0, dot) + ".csv";
}

}  // namespace

void suite_verify(const Scenario& sc, ReportWriter& rep)
{
    Rng rng(sc.seed);
    CocycleContext ctx = sc.context();
    std::vector<NamedMap> pool = closed_form_pool(sc, rng);
    if (pool.empty()) throw ConfigError("verify suite needs at least one map", 0, "maps");
    auto pick = [&]() -> const NamedMap& {
        return pool[rng.integer(0, static_cast<int>(pool.size()) - 1)];
    };

    int n_triples = std::min(sc.samples, 10);
    for (int i = 0; i < n_triples; ++i) {
        const NamedMap &g = pick(), &h = pick(), &k = pick();
        double r = coboundary2_residual(ctx, g.map, h.map, k.map);
        rep.add_check("cocycle-identity/" + pad3(i), "two-cocycle coboundary",
                      Json{{"g", g.name}, {"h", h.name}, {"k", k.name}}, 0.0, r, sc.check_tol);
    }

    if (sc.model.kind == ModelKind::EuclideanPlane) {
        std::vector<NamedMap> tr;
        for (const auto& nm : pool)
            if (is_translation(nm.map)) tr.push_back(nm);
        int idx = 0;
        for (size_t i = 0; i < tr.size() && idx < 12; ++i) {
            for (size_t j = 0; j < tr.size() && idx < 12; ++j) {
                if (i == j) continue;
                Vec u = std::get<SympMap::AffineSymplectic>(tr[i].map.rep).t;
                Vec v = std::get<SympMap::AffineSymplectic>(tr[j].map.rep).t;
                double expected = heisenberg_expected(sc.model, u, v);
                double value = G(ctx, tr[i].map, tr[j].map);
                rep.add_check("heisenberg/" + pad3(idx++) + "-" + tr[i].name + "-" + tr[j].name,
                              "translation pair closed form",
                              Json{{"u", jvec(u)}, {"v", jvec(v)}}, value,
                              std::abs(value - expected), 1e-8);
            }
        }
    }

    int n_base = std::min(sc.samples, 8);
    auto alt_points = random_points(rng, sc.model, n_base, 0.7);
    for (int i = 0; i < n_base; ++i) {
        const NamedMap &g = pick(), &h = pick();
        const Point& x2 = alt_points[i];
        CocycleContext ctx2{sc.model, x2, sc.quad_tol};
        SympMap gh = compose(g.map, h.map);
        double dc = K_tilde(ctx, g.map, x2) - K_tilde(ctx, gh, x2) + K_tilde(ctx, h.map, x2);
        double r = std::abs(G(ctx, g.map, h.map) - G(ctx2, g.map, h.map) - dc);
        rep.add_check("basepoint-change/" + pad3(i), "basepoint change coboundary",
                      Json{{"g", g.name}, {"h", h.name}, {"x2", jvec(x2)}}, dc, r, sc.check_tol);
    }

    int n_tri = std::min(sc.samples, 6);
    for (int i = 0; i < n_tri; ++i) {
        const NamedMap &g = pick(), &h = pick();
        TrilateralReport t = trilateral_identity(ctx, g.map, h.map);
        rep.add_check("trilateral/" + pad3(i), "bent triangle boundary integral",
                      Json{{"g", g.name}, {"h", h.name}}, t.lhs, t.residual, sc.check_tol);
    }

    for (int i = 0; i < std::min<int>(pool.size(), 4); ++i) {
        double r = std::abs(K_tilde(ctx, pool[i].map, ctx.x));
        rep.add_check("ktilde-normalization/" + pad3(i), "potential vanishes at the basepoint",
                      Json{{"g", pool[i].name}}, 0.0, r, 1e-12);
    }

    auto targets = random_points(rng, sc.model, 3, 0.7);
    for (int i = 0; i < 3 && i < static_cast<int>(pool.size()); ++i) {
        const SympMap& g = pool[i].map;
        auto form = [&](const Point& p) { return pullback_delta_lambda(sc.model, g, p); };
        double r = path_independence_residual(sc.model, form, ctx.x, targets[i], sc.quad_tol);
        rep.add_check("path-independence/" + pad3(i), "exact one-form line integral",
                      Json{{"g", pool[i].name}, {"to", jvec(targets[i])}}, 0.0, r, sc.check_tol);
    }

    double dl_tol = std::max(sc.check_tol, 1e-6);
    auto dpoints = random_points(rng, sc.model, std::min(sc.samples, 10), 0.7);
    for (size_t i = 0; i < dpoints.size(); ++i) {
        double r = check_dlambda(sc.model, dpoints[i]);
        rep.add_check("dlambda/" + pad3(i), "derivative of the primitive is the form",
                      Json{{"p", jvec(dpoints[i])}}, 0.0, r, dl_tol);
    }

    auto spoints = random_points(rng, sc.model, 5, 0.7);
    for (int i = 0; i < std::min<int>(pool.size(), 5); ++i) {
        double r = verify_symplectic(sc.model, pool[i].map, spoints);
        rep.add_check("symplectic/" + pad3(i), "pullback preserves the form",
                      Json{{"g", pool[i].name}}, 0.0, r, std::max(sc.check_tol, 1e-6));
    }

    if (sc.model.kind == ModelKind::HyperbolicDisk) {
        auto npoints = random_points(rng, sc.model, std::min(sc.samples, 20), 0.85);
        for (size_t i = 0; i < npoints.size(); ++i) {
            const Point& p = npoints[i];
            double nrm = covector_norm(sc.model, p, lambda_at(sc.model, p));
            double rho = distance(sc.model, sc.model.basepoint, p);
            double r = std::abs(nrm - std::tanh(rho / 2.0));
            rep.add_check("primitive-norm/" + pad3(i), "norm of the radial primitive",
                          Json{{"p", jvec(p)}}, nrm, r, 1e-6);
            rep.add_check("primitive-bounded/" + pad3(i), "primitive norm below one",
                          Json{{"p", jvec(p)}}, nrm, std::max(0.0, nrm - 1.0), 0.0);
        }
    }
}

void suite_table(const Scenario& sc, ReportWriter& rep, const std::string& csv_path)
{
    if (sc.maps.size() < 2) throw ConfigError("table suite needs at least two maps", 0, "maps");
    CocycleContext ctx = sc.context();
    std::string csv = "g,h,value\n";
    int idx = 0;
    for (const auto& [gn, g] : sc.maps) {
        for (const auto& [hn, h] : sc.maps) {
            double v = G(ctx, g, h);
            char row[256];
            std::snprintf(row, sizeof(row), "%s,%s,%.17g\n", gn.c_str(), hn.c_str(), v);
            csv += row;
            rep.add_check("table/" + pad3(idx++) + "-" + gn + "-" + hn, "cocycle value grid",
                          Json{{"g", gn}, {"h", hn}}, v, 0.0, 0.0);
        }
    }
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw PreconditionError("cannot open csv file: " + csv_path);
    f << csv;
}

void suite_kahler(const Scenario& sc, ReportWriter& rep)
{
    if (sc.model.kind != ModelKind::HyperbolicDisk)
        throw ConfigError("kahler suite needs the disk model", 0, "model.kind");
    Rng rng(sc.seed);
    CocycleContext ctx = sc.context();

    std::vector<NamedMap> pool;
    for (const auto& [n, m] : sc.maps)
        if (std::holds_alternative<SympMap::MoebiusIsometry>(m.rep)) pool.push_back({n, m});
    auto extra = random_moebius_maps(rng, std::min(sc.samples, 25) * 2, 0.6);
    for (size_t i = 0; i < extra.size(); ++i) pool.push_back({"rand-mob-" + pad3(i), extra[i]});

    int n_pairs = std::min(sc.samples, static_cast<int>(pool.size() / 2));
    auto lam = [&](const Point& p) { return lambda_at(sc.model, p); };
    for (int i = 0; i < n_pairs; ++i) {
        const NamedMap& g = pool[2 * i];
        const NamedMap& h = pool[2 * i + 1];
        double gv = G(ctx, g.map, h.map);
        double kv = kahler_cocycle(ctx, g.map, h.map);
        Json inputs{{"g", g.name}, {"h", h.name}};
        rep.add_check("kahler-match/" + pad3(i), "cocycle equals signed triangle area", inputs,
                      gv, std::abs(gv - kv), sc.check_tol);
        rep.add_check("kahler-range/" + pad3(i), "triangle area below pi", inputs, kv,
                      std::max(0.0, std::abs(kv) - std::numbers::pi), 0.0);

        Point gx = apply(sc.model, g.map, ctx.x);
        Point ghx = apply(sc.model, g.map, apply(sc.model, h.map, ctx.x));
        double loop =
            integrate_one_form(sc.model, lam, geodesic(sc.model, ctx.x, gx), sc.quad_tol).value +
            integrate_one_form(sc.model, lam, geodesic(sc.model, gx, ghx), sc.quad_tol).value +
            integrate_one_form(sc.model, lam, geodesic(sc.model, ghx, ctx.x), sc.quad_tol).value;
        rep.add_check("area-loop/" + pad3(i), "triangle area equals boundary integral", inputs,
                      loop, std::abs(loop - kv), 1e-6);
    }
}

void suite_distortion(const Scenario& sc, ReportWriter& rep)
{
    const Json& sec = sc.section("distortion");
    std::string gen_name =
        sec.contains("generator") ? sec["generator"].get<std::string>() : std::string();
    if (gen_name.empty()) throw ConfigError("missing generator", 0, "distortion.generator");
    std::string mover_name =
        sec.contains("mover") ? sec["mover"].get<std::string>() : std::string();
    if (mover_name.empty()) throw ConfigError("missing mover", 0, "distortion.mover");
    int n_max = sec.contains("n_max") ? sec["n_max"].get<int>() : 8;
    if (n_max < 1 || n_max > 64) throw ConfigError("n_max out of range", 0, "distortion.n_max");

    CocycleContext ctx = sc.context();
    const IsotopySpec& iso = sc.isotopy(gen_name);
    const SympMap& mover = sc.map(mover_name);

    GeneratingSet S;
    S.free_hint = true;
    if (sec.contains("generators"))
        for (const auto& n : sec["generators"])
            S.gens.push_back({n.get<std::string>(), sc.map(n.get<std::string>()), std::nullopt});
    else
        S.gens.push_back({gen_name, sc.map(gen_name), std::nullopt});

    std::vector<SympMap> probes{mover, inverse(mover)};

    PolterovichReport pr = polterovich_report(ctx, iso, mover, S, probes, n_max);
    rep.add_check("distortion/action-cross", "cocycle equals action difference",
                  Json{{"g", gen_name}, {"h", mover_name}}, pr.cocycle_value, pr.cross_residual,
                  1e-5);
    for (const PowerTableRow& row : pr.linearity)
        rep.add_check("distortion/linearity-" + pad3(row.n), "power table linear growth",
                      Json{{"n", row.n}}, row.value, row.rel_error, 1e-4);
    rep.add_check("distortion/monotone", "cocycle grows with the power",
                  Json{{"n_max", n_max}}, pr.linearity.back().value,
                  pr.growth_monotone ? 0.0 : 1.0, 0.0);
    rep.add_check("distortion/bound", "translation length lower bound (diagnostic)",
                  Json{{"caveat", pr.caveat}}, pr.translation_length_bound, 0.0, 0.0);

    GroupWord w = GroupWord::single(0);
    TranslationLengthEstimate tl = translation_length_estimate(sc.model, S, w, n_max);
    rep.add_check("distortion/word-growth", "free power word length is linear",
                  Json{{"n_max", n_max}}, tl.value, std::abs(tl.value - 1.0), 0.0);

    NormEstimate ne{sampled_norm_lower_bound(ctx, iso.time_one_map(), probes),
                    analytic_norm_upper_bound(ctx, iso)};
    rep.add_check("distortion/norm-order", "sampled lower bound below analytic upper",
                  Json{{"lower", ne.lower}, {"upper", ne.upper}}, ne.lower,
                  std::max(0.0, ne.lower - ne.upper), 0.0);
}

void suite_hamiltonian(const Scenario& sc, ReportWriter& rep)
{
    if (sc.isotopies.empty())
        throw ConfigError("hamiltonian suite needs at least one flow map", 0, "maps");
    Rng rng(sc.seed);
    CocycleContext ctx = sc.context();

    int iso_idx = 0;
    for (const auto& [name, iso] : sc.isotopies) {
        if (iso_idx >= 5) break;
        SympMap g = iso.time_one_map();
        std::string tag = pad3(iso_idx++) + "-" + name;

        auto pts = random_points(rng, sc.model, 4, 0.8);
        for (size_t i = 0; i < pts.size(); ++i) {
            double dF = action_functional(ctx, iso, pts[i]) - action_functional(ctx, iso, ctx.x);
            double kt = K_tilde(ctx, g, pts[i]);
            rep.add_check("action-increment/" + tag + "-" + pad3(i),
                          "action difference equals potential",
                          Json{{"flow", name}, {"p", jvec(pts[i])}}, dF, std::abs(dF - kt),
                          sc.check_tol);
        }

        if (iso.H->autonomous) {
            auto a = [](double t) { return t * t * (3.0 - 2.0 * t); };
            auto ap = [](double t) { return 6.0 * t * (1.0 - t); };
            IsotopySpec rep_iso{
                std::make_shared<HamiltonianSpec>(reparametrize(*iso.H, a, ap)), iso.T,
                iso.settings};
            double r = isotopy_independence_residual(ctx, iso, rep_iso, pts[0]);
            rep.add_check("reparametrization/" + tag, "schedule change keeps the action",
                          Json{{"flow", name}}, 0.0, r, 1e-5);
        }

        if (iso.H->support) {
            Point c = iso.H->support->center;
            double F = action_functional(ctx, iso, c);
            double Hc = iso.H->value_at(0.0, c) * iso.T;
            rep.add_check("rest-point/" + tag, "action at a rest point is the energy",
                          Json{{"flow", name}, {"p", jvec(c)}}, F, std::abs(F - Hc), 1e-6);
        }
    }
}

int run_scenario(const std::string& config_path, const std::string& out_path,
                 const RunOverrides& overrides, std::ostream& log)
{
    Scenario sc;
    try {
        sc = load_scenario(config_path);
        if (overrides.suite) {
            sc.suite = *overrides.suite;
            static const char* suites[] = {"verify", "table", "kahler", "distortion",
                                           "hamiltonian"};
            bool known = false;
            for (const char* s : suites) known = known || sc.suite == s;
            if (!known) throw ConfigError("unknown suite '" + sc.suite + "'", 0, "run.suite");
        }
        if (overrides.seed) sc.seed = *overrides.seed;
        if (overrides.tol) {
            if (*overrides.tol <= 0.0) throw ConfigError("tolerance must be positive", 0, "tol");
            sc.check_tol = *overrides.tol;
        }
    } catch (const ConfigError& e) {
        log << "config error";
        if (e.line > 0) log << " (line " << e.line << ")";
        if (!e.field.empty()) log << " [" << e.field << "]";
        log << ": " << e.what() << "\n";
        return 2;
    }

    ReportWriter rep(sc.suite, sc.seed);
    rep.set_meta("scenario", config_path);
    rep.set_meta("model", sc.model.kind == ModelKind::HyperbolicDisk ? "disk" : "plane");

    int status = 0;
    try {
        if (sc.suite == "verify")
            suite_verify(sc, rep);
        else if (sc.suite == "table")
            suite_table(sc, rep, csv_sibling(out_path));
        else if (sc.suite == "kahler")
            suite_kahler(sc, rep);
        else if (sc.suite == "distortion")
            suite_distortion(sc, rep);
        else
            suite_hamiltonian(sc, rep);
    } catch (const ConfigError& e) {
        log << "config error";
        if (!e.field.empty()) log << " [" << e.field << "]";
        log << ": " << e.what() << "\n";
        return 2;
    } catch (const AccuracyError& e) {
        rep.set_meta("aborted", e.what());
        rep.write_file(out_path);
        log << "numerical non-convergence: " << e.what() << " (partial report kept)\n";
        return 3;
    } catch (const DomainError& e) {
        rep.set_meta("aborted", e.what());
        rep.write_file(out_path);
        log << "numerical failure: " << e.what() << " (partial report kept)\n";
        return 3;
    }

    rep.write_file(out_path);
    log << "suite=" << sc.suite << " checks=" << rep.records().size()
        << " failures=" << rep.failures() << " report=" << out_path << "\n";
    for (const CheckRecord& r : rep.records())
        if (!r.pass)
            log << "  FAIL " << r.check_id << " residual=" << r.residual << " tol=" << r.tol
                << "\n";
    return rep.all_pass() ? 0 : 1;
}

}  // namespace symplab

#include <symplab/scenario.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace symplab;

namespace {

// Minimal valid prologue shared by the validation tests.
const char* kBase =
    "[model]\n"
    "kind = \"plane\"\n"
    "[run]\n"
    "suite = \"verify\"\n";

// Expects a ConfigError and hands it to the inspector.
template <typename F>
void expect_config_error(const std::string& text, F&& inspect)
{
    try {
        (void)parse_scenario(text);
    } catch (const ConfigError& e) {
        inspect(e);
        return;
    }
    FAIL("expected a ConfigError for:\n" << text);
}

}  // namespace

TEST_CASE("config text parses into a typed tree")
{
    std::string text =
        "# comment line\n"
        "title = \"demo\"\n"
        "\n"
        "[model]\n"
        "kind = \"plane\"   # trailing comment\n"
        "pairs = 2\n"
        "basepoint = [0.5, -1, 0, 0]\n"
        "[run]\n"
        "suite = \"verify\"\n"
        "seed = 7\n"
        "quad_tol = 1e-9\n"
        "flag = true\n"
        "[maps.a]\n"
        "kind = \"translation\"\n"
        "vector = [1, 0, 0, 0]\n";
    Json tree = parse_config_text(text);

    CHECK(tree["title"] == "demo");
    CHECK(tree["model"]["kind"] == "plane");
    CHECK(tree["model"]["pairs"] == 2);
    CHECK(tree["model"]["pairs"].is_number_integer());
    CHECK(tree["model"]["basepoint"] == Json::array({0.5, -1, 0, 0}));
    CHECK(tree["run"]["seed"].is_number_integer());
    CHECK(tree["run"]["quad_tol"].is_number_float());
    CHECK(tree["run"]["quad_tol"] == 1e-9);
    CHECK(tree["run"]["flag"] == true);
    CHECK(tree["maps"]["a"]["kind"] == "translation");
}

TEST_CASE("serialize then parse reproduces the tree, types and order included")
{
    std::string text =
        "name = \"top\"\n"
        "[model]\n"
        "kind = \"disk\"\n"
        "[run]\n"
        "suite = \"kahler\"\n"
        "seed = 3\n"
        "check_tol = 0.001\n"
        "tags = [\"x\", \"y\"]\n"
        "mixed = [1, 2.5]\n"
        "[maps.m]\n"
        "kind = \"moebius_rotation\"\n"
        "angle = 0.75\n";
    Json tree = parse_config_text(text);
    Json again = parse_config_text(serialize_config(tree));
    CHECK(again == tree);
    // The integer never silently becomes a float on the way through.
    CHECK(again["run"]["seed"].is_number_integer());
    CHECK(again["run"]["check_tol"].is_number_float());
    CHECK(again["run"]["mixed"][0].is_number_integer());
    CHECK(again["run"]["mixed"][1].is_number_float());
}

TEST_CASE("parse errors carry the offending line number")
{
    auto line_of = [](const std::string& text) {
        try {
            (void)parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.line;
        }
        return -1;
    };

    CHECK(line_of("a = 1\na = 2\n") == 2);                       // duplicate key
    CHECK(line_of("[s]\nx = 1\n[s]\n") == 3);                    // duplicate section
    CHECK(line_of("[s\n") == 1);                                 // unterminated header
    CHECK(line_of("[a.b.c]\n") == 1);                            // too deep
    CHECK(line_of("x = 1\nnot an assignment\n") == 2);           // junk line
    CHECK(line_of("s = \"open\n") == 1);                         // unterminated string
    CHECK(line_of("v = [1, [2]]\n") == 1);                       // nested array
    CHECK(line_of("v = [1, 2\n") == 1);                          // unterminated array
    CHECK(line_of("k = @\n") == 1);                              // unknown scalar

    try {
        (void)parse_config_text("ok = 1\nv = [1, [2]]\n");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("nested arrays") != std::string::npos);
        CHECK(e.line == 2);
        CHECK(e.field == "v");
    }
}

TEST_CASE("validation errors name the field that failed")
{
    expect_config_error("[model]\nkind = \"plane\"\n[run]\nsamples = 4\n",
                        [](const ConfigError& e) {
                            CHECK(e.field == "run.suite");
                            CHECK(std::string(e.what()).find("suite") != std::string::npos);
                        });
    expect_config_error("[model]\nkind = \"plane\"\n[run]\nsuite = \"fly\"\n",
                        [](const ConfigError& e) {
                            CHECK(e.field == "run.suite");
                            CHECK(std::string(e.what()).find("fly") != std::string::npos);
                        });
    expect_config_error(std::string(kBase) + "seed = -4\n",
                        [](const ConfigError& e) { CHECK(e.field == "run.seed"); });
    expect_config_error(std::string(kBase) + "seed = 1.5\n",
                        [](const ConfigError& e) { CHECK(e.field == "run.seed"); });
    expect_config_error(std::string(kBase) + "quad_tol = 0.5\n",
                        [](const ConfigError& e) { CHECK(e.field == "run.quad_tol"); });
    expect_config_error("[model]\nkind = \"disk\"\npairs = 2\n[run]\nsuite = \"verify\"\n",
                        [](const ConfigError& e) { CHECK(e.field == "model.pairs"); });
    expect_config_error(
        "[model]\nkind = \"disk\"\nprimitive = \"liouville\"\n[run]\nsuite = \"verify\"\n",
        [](const ConfigError& e) { CHECK(e.field == "model.primitive"); });
    expect_config_error(
        "[model]\nkind = \"disk\"\nbasepoint = [1.5, 0]\n[run]\nsuite = \"verify\"\n",
        [](const ConfigError& e) { CHECK(e.field == "model.basepoint"); });
    expect_config_error(
        "[model]\nkind = \"disk\"\n[run]\nsuite = \"verify\"\n"
        "[hamiltonians.h]\npreset = \"bump\"\ncenter = [0.8, 0]\nradius = 0.5\namplitude = 1\n",
        [](const ConfigError& e) {
            CHECK(e.field == "hamiltonians.h");
            CHECK(std::string(e.what()).find("inside the disk") != std::string::npos);
        });
    expect_config_error(
        std::string(kBase) + "[maps.f]\nkind = \"flow\"\nhamiltonian = \"ghost\"\n",
        [](const ConfigError& e) {
            CHECK(e.field == "maps.f.hamiltonian");
            CHECK(std::string(e.what()).find("ghost") != std::string::npos);
        });
    // Words may only reference maps declared before them.
    expect_config_error(std::string(kBase) +
                            "[maps.w]\nkind = \"word\"\nletters = [\"later\"]\n"
                            "[maps.later]\nkind = \"identity\"\n",
                        [](const ConfigError& e) {
                            CHECK(e.field == "maps.w.letters");
                            CHECK(std::string(e.what()).find("later") != std::string::npos);
                        });
    // A non-symplectic matrix is rejected by the map factory and reported
    // against the section that declared it.
    expect_config_error(std::string(kBase) +
                            "[maps.bad]\nkind = \"affine\"\nmatrix = [2, 0, 0, 1]\n",
                        [](const ConfigError& e) { CHECK(e.field == "maps.bad"); });
    expect_config_error(std::string(kBase) + "[maps.bad]\nkind = \"shear\"\n",
                        [](const ConfigError& e) { CHECK(e.field == "maps.bad.kind"); });
    expect_config_error("[model]\nkind = \"disk\"\n[run]\nsuite = \"verify\"\n"
                        "[maps.t]\nkind = \"translation\"\nvector = [1, 0]\n",
                        [](const ConfigError& e) { CHECK(e.field == "maps.t"); });
}

TEST_CASE("scenario construction: defaults, declaration order, isotopies")
{
    std::string text =
        "[model]\n"
        "kind = \"plane\"\n"
        "primitive = \"liouville\"\n"
        "[run]\n"
        "suite = \"table\"\n"
        "seed = 42\n"
        "x = [0.25, -0.5]\n"
        "[hamiltonians.pulse]\n"
        "preset = \"bump\"\n"
        "center = [0, 0]\n"
        "radius = 0.5\n"
        "amplitude = 0.3\n"
        "[maps.shift]\n"
        "kind = \"translation\"\n"
        "vector = [1, 0]\n"
        "[maps.stir]\n"
        "kind = \"flow\"\n"
        "hamiltonian = \"pulse\"\n"
        "time = 2.0\n"
        "step = 0.01\n"
        "[maps.back]\n"
        "kind = \"word\"\n"
        "letters = [\"shift\", \"-shift\"]\n";
    Scenario sc = parse_scenario(text);

    CHECK(sc.suite == "table");
    CHECK(sc.seed == 42);
    CHECK(sc.quad_tol == 1e-9);   // defaults survive
    CHECK(sc.check_tol == 1e-6);
    CHECK(sc.samples == 50);
    CHECK(sc.model.primitive == Primitive::Liouville);
    CHECK(sc.x[0] == 0.25);
    CHECK(sc.x[1] == -0.5);

    REQUIRE(sc.maps.size() == 3);
    CHECK(sc.maps[0].first == "shift");
    CHECK(sc.maps[1].first == "stir");
    CHECK(sc.maps[2].first == "back");

    // The flow registered its isotopy with the declared schedule.
    const IsotopySpec& iso = sc.isotopy("stir");
    CHECK(iso.T == 2.0);
    CHECK(iso.settings.step == 0.01);
    CHECK(sc.hamiltonians.count("pulse") == 1);

    // shift . shift^-1 collapses to the identity.
    Vec p(2);
    p << 0.7, 0.2;
    CHECK((apply(sc.model, sc.map("back"), p) - p).norm() < 1e-14);

    CHECK_THROWS_AS((void)sc.map("nope"), ConfigError);
    CHECK(sc.has_section("hamiltonians"));
    CHECK(!sc.has_section("distortion"));

    CocycleContext ctx = sc.context();
    CHECK(ctx.quad_tol == sc.quad_tol);
    CHECK((ctx.x - sc.x).norm() == 0.0);
}

TEST_CASE("report writer sorts by check id and emits stable bytes")
{
    auto build = []() {
        ReportWriter w("verify", 99);
        w.set_meta("scenario", "unit");
        w.add_check("b-check", "second", Json::object(), 2.0, 1e-9, 1e-6);
        w.add_check("a-check", "first", Json{{"n", 1}}, 1.0, 2e-3, 1e-6);  // fails
        w.add_check("c-check", "third", Json::object(), 3.0, 0.0, 1e-12);
        return w;
    };

    ReportWriter w = build();
    CHECK(!w.all_pass());
    CHECK(w.failures() == 1);
    CHECK(w.to_jsonl() == build().to_jsonl());  // byte determinism

    std::vector<Json> lines;
    std::istringstream in(w.to_jsonl());
    for (std::string line; std::getline(in, line);) lines.push_back(Json::parse(line));
    REQUIRE(lines.size() == 5);

    CHECK(lines[0]["record"] == "meta");
    CHECK(lines[0]["tool"] == "symplab 0.1.0");
    CHECK(lines[0]["suite"] == "verify");
    CHECK(lines[0]["seed"] == 99);
    CHECK(lines[0]["scenario"] == "unit");

    CHECK(lines[1]["check_id"] == "a-check");
    CHECK(lines[2]["check_id"] == "b-check");
    CHECK(lines[3]["check_id"] == "c-check");
    CHECK(lines[1]["pass"] == false);
    CHECK(lines[2]["pass"] == true);
    CHECK(lines[1]["inputs"]["n"] == 1);

    CHECK(lines[4]["record"] == "summary");
    CHECK(lines[4]["checks"] == 3);
    CHECK(lines[4]["failures"] == 1);
    CHECK(lines[4]["pass"] == false);

    // A NaN residual can never pass.
    ReportWriter bad("verify", 0);
    bad.add_check("nan", "guard", Json::object(), 0.0, std::nan(""), 1.0);
    CHECK(bad.failures() == 1);
}

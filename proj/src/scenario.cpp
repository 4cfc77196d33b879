#include <symplab/scenario.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace symplab {

namespace {

bool valid_name(const std::string& s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Cut at the first '#' that is not inside a quoted string.
std::string strip_comment(const std::string& line)
{
    bool in_string = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (c == '\\')
                ++i;
            else if (c == '"')
                in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

Json parse_string_token(const std::string& s, int line)
{
    if (s.size() < 2 || s.back() != '"')
        throw ConfigError("unterminated string", line);
    std::string out;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        char c = s[i];
        if (c == '\\') {
            if (i + 2 >= s.size()) throw ConfigError("dangling escape in string", line);
            char e = s[++i];
            if (e == '"' || e == '\\')
                out.push_back(e);
            else
                throw ConfigError("unsupported escape in string (only \\\" and \\\\)", line);
        } else if (c == '"') {
            throw ConfigError("stray quote inside string", line);
        } else {
            out.push_back(c);
        }
    }
    return out;
}

Json parse_scalar(const std::string& tok, int line)
{
    if (tok.empty()) throw ConfigError("missing value", line);
    if (tok.front() == '"') return parse_string_token(tok, line);
    if (tok == "true") return true;
    if (tok == "false") return false;

    bool integral = true;
    for (size_t i = 0; i < tok.size(); ++i) {
        char c = tok[i];
        if ((c == '+' || c == '-') && i == 0) continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            integral = false;
            break;
        }
    }
    if (integral && tok != "+" && tok != "-") {
        try {
            return static_cast<int64_t>(std::stoll(tok));
        } catch (const std::out_of_range&) {
            // fall through to double
        }
    }
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
        throw ConfigError("expected a number, \"string\", bool, or [array]: got '" + tok + "'",
                          line);
    return v;
}

// Split a flat array body at top-level commas (strings may contain commas).
Json parse_array(const std::string& tok, int line)
{
    if (tok.back() != ']') throw ConfigError("unterminated array", line);
    Json arr = Json::array();
    std::string body = trim(tok.substr(1, tok.size() - 2));
    if (body.empty()) return arr;
    std::vector<std::string> parts;
    std::string cur;
    bool in_string = false;
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (in_string) {
            cur.push_back(c);
            if (c == '\\' && i + 1 < body.size())
                cur.push_back(body[++i]);
            else if (c == '"')
                in_string = false;
        } else if (c == '"') {
            cur.push_back(c);
            in_string = true;
        } else if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    for (const std::string& p : parts) {
        std::string el = trim(p);
        if (el.empty()) throw ConfigError("empty array element", line);
        if (el.front() == '[') throw ConfigError("nested arrays are not supported", line);
        arr.push_back(parse_scalar(el, line));
    }
    return arr;
}

Json parse_value(const std::string& tok, int line)
{
    if (!tok.empty() && tok.front() == '[') return parse_array(tok, line);
    return parse_scalar(tok, line);
}

}  // namespace

Json parse_config_text(const std::string& text)
{
    Json root = Json::object();
    Json* current = &root;
    std::string current_path;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<std::string> seen_sections;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
            std::string path = trim(line.substr(1, line.size() - 2));
            for (const std::string& s : seen_sections)
                if (s == path) throw ConfigError("duplicate section [" + path + "]", lineno, path);
            seen_sections.push_back(path);

            std::vector<std::string> segs;
            std::string seg;
            std::istringstream ps(path);
            while (std::getline(ps, seg, '.')) segs.push_back(trim(seg));
            if (segs.empty() || segs.size() > 2)
                throw ConfigError("section nesting is limited to two levels", lineno, path);
            current = &root;
            for (const std::string& s : segs) {
                if (!valid_name(s)) throw ConfigError("bad section name '" + s + "'", lineno, path);
                if (current->contains(s) && !(*current)[s].is_object())
                    throw ConfigError("section name collides with a key", lineno, path);
                current = &(*current)[s];
                if (current->is_null()) *current = Json::object();
            }
            current_path = path;
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' or a [section] header", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string field = current_path.empty() ? key : current_path + "." + key;
        if (!valid_name(key)) throw ConfigError("bad key name '" + key + "'", lineno, field);
        if (current->contains(key))
            throw ConfigError("duplicate key '" + key + "'", lineno, field);
        std::string tok = trim(line.substr(eq + 1));
        try {
            (*current)[key] = parse_value(tok, lineno);
        } catch (ConfigError& e) {
            throw ConfigError(std::string(e.what()), e.line ? e.line : lineno, field);
        }
    }
    return root;
}

namespace {

void emit_assignments(std::string& out, const Json& obj)
{
    for (const auto& [k, v] : obj.items()) {
        if (v.is_object()) continue;
        out += k + " = " + v.dump() + "\n";
    }
}

bool has_leaves(const Json& obj)
{
    for (const auto& [k, v] : obj.items())
        if (!v.is_object()) return true;
    return false;
}

bool has_subobjects(const Json& obj)
{
    for (const auto& [k, v] : obj.items())
        if (v.is_object()) return true;
    return false;
}

}  // namespace

std::string serialize_config(const Json& tree)
{
    if (!tree.is_object()) throw PreconditionError("config root must be a table");
    std::string out;
    emit_assignments(out, tree);  // top-level bare keys, if any
    for (const auto& [k, v] : tree.items()) {
        if (!v.is_object()) continue;
        if (has_leaves(v) || !has_subobjects(v)) {
            out += "[" + k + "]\n";
            emit_assignments(out, v);
            out += "\n";
        }
        for (const auto& [k2, v2] : v.items()) {
            if (!v2.is_object()) continue;
            if (has_subobjects(v2))
                throw PreconditionError("config sections nest at most two levels");
            out += "[" + k + "." + k2 + "]\n";
            emit_assignments(out, v2);
            out += "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Typed scenario construction
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& msg, const std::string& field)
{
    throw ConfigError(msg, 0, field);
}

const Json& need(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key)) fail("missing required key '" + key + "'", where + "." + key);
    return obj[key];
}

double num(const Json& v, const std::string& field)
{
    if (!v.is_number()) fail("expected a number", field);
    return v.get<double>();
}

double num_or(const Json& obj, const std::string& key, double dflt, const std::string& where)
{
    if (!obj.contains(key)) return dflt;
    return num(obj[key], where + "." + key);
}

int64_t integer(const Json& v, const std::string& field)
{
    if (!v.is_number_integer()) fail("expected an integer", field);
    return v.get<int64_t>();
}

std::string str(const Json& v, const std::string& field)
{
    if (!v.is_string()) fail("expected a string", field);
    return v.get<std::string>();
}

Vec vec(const Json& v, int size, const std::string& field)
{
    if (!v.is_array()) fail("expected an array of numbers", field);
    if (size >= 0 && static_cast<int>(v.size()) != size)
        fail("expected " + std::to_string(size) + " numbers", field);
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = num(v[i], field);
    return out;
}

Mat matrix(const Json& v, int dim, const std::string& field)
{
    Vec flat = vec(v, dim * dim, field);
    Mat M(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) M(i, j) = flat[i * dim + j];
    return M;
}

Complex cplx(const Json& v, const std::string& field)
{
    Vec re_im = vec(v, 2, field);
    return {re_im[0], re_im[1]};
}

FlowSettings flow_settings(const Json& obj, const std::string& where)
{
    FlowSettings s;
    s.step = num_or(obj, "step", s.step, where);
    s.refine_target = num_or(obj, "refine_target", s.refine_target, where);
    if (obj.contains("max_halvings"))
        s.max_halvings = static_cast<int>(integer(obj["max_halvings"], where + ".max_halvings"));
    if (s.step <= 0.0 || s.refine_target <= 0.0 || s.max_halvings < 0)
        fail("flow settings out of range", where);
    return s;
}

}  // namespace

const SympMap& Scenario::map(const std::string& name) const
{
    for (const auto& [n, m] : maps)
        if (n == name) return m;
    throw ConfigError("undefined map name '" + name + "'", 0, "maps." + name);
}

const IsotopySpec& Scenario::isotopy(const std::string& name) const
{
    auto it = isotopies.find(name);
    if (it == isotopies.end())
        throw ConfigError("map '" + name + "' is not a flow with a known hamiltonian", 0,
                          "maps." + name);
    return it->second;
}

const Json& Scenario::section(const std::string& name) const
{
    if (!raw.contains(name)) throw ConfigError("missing section [" + name + "]", 0, name);
    return raw[name];
}

Scenario scenario_from_tree(const Json& tree)
{
    Scenario sc;
    sc.raw = tree;

    const Json& model = need(tree, "model", "config");
    std::string kind = str(need(model, "kind", "model"), "model.kind");
    int pairs = model.contains("pairs")
                    ? static_cast<int>(integer(model["pairs"], "model.pairs"))
                    : 1;
    std::string prim = model.contains("primitive")
                           ? str(model["primitive"], "model.primitive")
                           : std::string("radial");
    Primitive primitive;
    if (prim == "radial")
        primitive = Primitive::Radial;
    else if (prim == "liouville")
        primitive = Primitive::Liouville;
    else
        fail("primitive must be \"radial\" or \"liouville\"", "model.primitive");

    if (kind == "plane") {
        if (pairs < 1 || pairs > 16) fail("pairs must be in 1..16", "model.pairs");
        sc.model = ManifoldModel::plane(pairs, primitive);
    } else if (kind == "disk") {
        if (pairs != 1) fail("the disk model is two dimensional", "model.pairs");
        if (primitive != Primitive::Radial) fail("the disk carries the radial primitive",
                                                 "model.primitive");
        sc.model = ManifoldModel::disk();
    } else {
        fail("model kind must be \"plane\" or \"disk\"", "model.kind");
    }
    if (model.contains("basepoint")) {
        Point bp = vec(model["basepoint"], sc.model.dim(), "model.basepoint");
        if (!in_domain(sc.model, bp)) fail("basepoint outside the chart", "model.basepoint");
        sc.model.basepoint = bp;
    }

    const Json& run = need(tree, "run", "config");
    sc.suite = str(need(run, "suite", "run"), "run.suite");
    static const char* suites[] = {"verify", "table", "kahler", "distortion", "hamiltonian"};
    bool known = false;
    for (const char* s : suites) known = known || sc.suite == s;
    if (!known) fail("unknown suite '" + sc.suite + "'", "run.suite");
    if (run.contains("seed")) {
        int64_t s = integer(run["seed"], "run.seed");
        if (s < 0) fail("seed must be nonnegative", "run.seed");
        sc.seed = static_cast<uint64_t>(s);
    }
    sc.quad_tol = num_or(run, "quad_tol", 1e-9, "run");
    sc.check_tol = num_or(run, "check_tol", 1e-6, "run");
    if (sc.quad_tol <= 0.0 || sc.quad_tol > 1e-2) fail("quad_tol out of range", "run.quad_tol");
    if (sc.check_tol <= 0.0) fail("check_tol out of range", "run.check_tol");
    if (run.contains("samples")) {
        int64_t n = integer(run["samples"], "run.samples");
        if (n < 1 || n > 100000) fail("samples out of range", "run.samples");
        sc.samples = static_cast<int>(n);
    }
    sc.x = sc.model.basepoint;
    if (run.contains("x")) {
        sc.x = vec(run["x"], sc.model.dim(), "run.x");
        if (!in_domain(sc.model, sc.x)) fail("basepoint x outside the chart", "run.x");
    }

    if (tree.contains("hamiltonians")) {
        for (const auto& [name, h] : tree["hamiltonians"].items()) {
            std::string where = "hamiltonians." + name;
            if (!h.is_object()) fail("expected a [hamiltonians.NAME] section", where);
            std::string preset = str(need(h, "preset", where), where + ".preset");
            HamiltonianSpec spec;
            if (preset == "bump") {
                Vec center = vec(need(h, "center", where), sc.model.dim(), where + ".center");
                double radius = num(need(h, "radius", where), where + ".radius");
                double amplitude = num(need(h, "amplitude", where), where + ".amplitude");
                if (radius <= 0.0) fail("radius must be positive", where + ".radius");
                if (sc.model.kind == ModelKind::HyperbolicDisk &&
                    center.norm() + radius > 1.0 - 1e-3)
                    fail("support ball must stay inside the disk", where);
                spec = bump_hamiltonian(center, radius, amplitude);
            } else if (preset == "rotation") {
                double omega = num(need(h, "omega", where), where + ".omega");
                spec = rotation_hamiltonian(omega, sc.model.pairs);
            } else if (preset == "polynomial") {
                Mat S = matrix(need(h, "matrix", where), sc.model.dim(), where + ".matrix");
                Vec b = h.contains("linear") ? vec(h["linear"], sc.model.dim(), where + ".linear")
                                             : Vec(Vec::Zero(sc.model.dim()));
                double c = num_or(h, "constant", 0.0, where);
                spec = quadratic_hamiltonian(S, b, c);
            } else {
                fail("preset must be \"bump\", \"rotation\", or \"polynomial\"",
                     where + ".preset");
            }
            sc.hamiltonians[name] = std::make_shared<HamiltonianSpec>(std::move(spec));
        }
    }

    if (tree.contains("maps")) {
        for (const auto& [name, m] : tree["maps"].items()) {
            std::string where = "maps." + name;
            if (!m.is_object()) fail("expected a [maps.NAME] section", where);
            std::string mk = str(need(m, "kind", where), where + ".kind");
            bool disk = sc.model.kind == ModelKind::HyperbolicDisk;
            try {
                if (mk == "identity") {
                    sc.maps.emplace_back(name, SympMap::identity());
                } else if (mk == "translation") {
                    if (disk) fail("translations act on the plane model", where);
                    sc.maps.emplace_back(
                        name, SympMap::translation(
                                  vec(need(m, "vector", where), sc.model.dim(), where + ".vector")));
                } else if (mk == "affine") {
                    if (disk) fail("affine maps act on the plane model", where);
                    Mat A = matrix(need(m, "matrix", where), sc.model.dim(), where + ".matrix");
                    Vec t = m.contains("vector")
                                ? vec(m["vector"], sc.model.dim(), where + ".vector")
                                : Vec(Vec::Zero(sc.model.dim()));
                    sc.maps.emplace_back(name, SympMap::affine(A, t));
                } else if (mk == "moebius") {
                    if (!disk) fail("moebius maps act on the disk model", where);
                    sc.maps.emplace_back(name,
                                         SympMap::moebius(cplx(need(m, "a", where), where + ".a"),
                                                          cplx(need(m, "b", where), where + ".b")));
                } else if (mk == "moebius_rotation") {
                    if (!disk) fail("moebius maps act on the disk model", where);
                    sc.maps.emplace_back(name, SympMap::moebius_rotation(
                                                   num(need(m, "angle", where), where + ".angle")));
                } else if (mk == "moebius_translation") {
                    if (!disk) fail("moebius maps act on the disk model", where);
                    Complex p = cplx(need(m, "point", where), where + ".point");
                    sc.maps.emplace_back(name, SympMap::moebius_translation(p));
                } else if (mk == "moebius_axis") {
                    if (!disk) fail("moebius maps act on the disk model", where);
                    sc.maps.emplace_back(name, SympMap::moebius_axis_translation(num(
                                                   need(m, "length", where), where + ".length")));
                } else if (mk == "flow") {
                    std::string hname = str(need(m, "hamiltonian", where), where + ".hamiltonian");
                    auto it = sc.hamiltonians.find(hname);
                    if (it == sc.hamiltonians.end())
                        fail("undefined hamiltonian '" + hname + "'", where + ".hamiltonian");
                    double time = num_or(m, "time", 1.0, where);
                    FlowSettings settings = flow_settings(m, where);
                    sc.maps.emplace_back(name, SympMap::flow(it->second, time, settings));
                    sc.isotopies.emplace(name, IsotopySpec{it->second, time, settings});
                } else if (mk == "cotangent_lift") {
                    if (disk || sc.model.pairs != 1)
                        fail("cotangent lifts act on the two dimensional plane model", where);
                    sc.maps.emplace_back(
                        name, SympMap::cotangent_lift(num(need(m, "a", where), where + ".a"),
                                                      num(need(m, "b", where), where + ".b"),
                                                      num(need(m, "c", where), where + ".c")));
                } else if (mk == "word") {
                    const Json& letters = need(m, "letters", where);
                    if (!letters.is_array()) fail("letters must be an array", where + ".letters");
                    std::vector<SympMap> factors;
                    for (const auto& l : letters) {
                        std::string lname = str(l, where + ".letters");
                        bool inv = !lname.empty() && lname.front() == '-';
                        if (inv) lname = lname.substr(1);
                        const SympMap* found = nullptr;
                        for (const auto& [n2, m2] : sc.maps)
                            if (n2 == lname) found = &m2;
                        if (!found) fail("undefined map name '" + lname + "'", where + ".letters");
                        factors.push_back(inv ? inverse(*found) : *found);
                    }
                    sc.maps.emplace_back(name, SympMap::word(std::move(factors)));
                } else {
                    fail("unknown map kind '" + mk + "'", where + ".kind");
                }
            } catch (const PreconditionError& e) {
                fail(e.what(), where);
            }
        }
    }

    return sc;
}

Scenario parse_scenario(const std::string& text)
{
    return scenario_from_tree(parse_config_text(text));
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace symplab

#include "wigner/cli/config.hpp"

#include "wigner/cli/manifest.hpp"
#include "wigner/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace wigner::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw SchemaError(path + "/" + k, "unknown key");
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "must be finite");
    return v;
}

long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<long>();
}

std::string text(const json& j, const std::string& path, const std::set<std::string>& choices = {}) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    const auto s = j.get<std::string>();
    if (!choices.empty() && !choices.count(s)) {
        std::string list;
        for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
        throw SchemaError(path, "'" + s + "' is not one of: " + list);
    }
    return s;
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
    return out;
}

}  // namespace

ScenarioConfig parse_config(const json& j) {
    only_keys(j, "", {"name", "potential", "eps", "mu_rule", "initial", "expansion", "order", "times", "grid", "rays",
                      "focal_nu", "reference", "output"});
    ScenarioConfig c;
    if (j.contains("name")) c.name = text(j["name"], "/name");

    if (j.contains("potential")) {
        const auto& p = j["potential"];
        only_keys(p, "/potential", {"kind", "mu"});
        if (!p.contains("kind")) throw SchemaError("/potential/kind", "required");
        c.potential.kind = text(p["kind"], "/potential/kind", {"harmonic", "quartic"});
        c.potential.mu = c.potential.kind == "harmonic" ? 0.0 : 0.1;
        if (p.contains("mu")) c.potential.mu = number(p["mu"], "/potential/mu");
        if (c.potential.kind == "quartic" && !(c.potential.mu > 0.0))
            throw SchemaError("/potential/mu", "quartic coupling must be positive");
        if (c.potential.kind == "harmonic" && c.potential.mu != 0.0)
            throw SchemaError("/potential/mu", "harmonic potential takes no coupling");
    }

    if (j.contains("eps")) c.eps = numbers(j["eps"], "/eps");
    if (c.eps.empty()) throw SchemaError("/eps", "needs at least one value");
    for (std::size_t i = 0; i < c.eps.size(); ++i)
        if (!(c.eps[i] > 0.0 && c.eps[i] < 1.0)) throw SchemaError("/eps/" + std::to_string(i), "must lie in (0, 1)");

    if (j.contains("mu_rule")) {
        const auto& m = j["mu_rule"];
        only_keys(m, "/mu_rule", {"coefficient", "exponent"});
        MuRuleSpec r;
        if (m.contains("coefficient")) r.coefficient = number(m["coefficient"], "/mu_rule/coefficient");
        if (m.contains("exponent")) r.exponent = number(m["exponent"], "/mu_rule/exponent");
        if (!(r.coefficient > 0.0)) throw SchemaError("/mu_rule/coefficient", "must be positive");
        if (c.potential.kind != "quartic") throw SchemaError("/mu_rule", "only meaningful for the quartic potential");
        c.mu_rule = r;
    }

    if (j.contains("initial")) {
        const auto& d = j["initial"];
        only_keys(d, "/initial", {"kind", "xi0", "eta0", "k0", "re", "im"});
        if (!d.contains("kind")) throw SchemaError("/initial/kind", "required");
        c.initial.kind = text(d["kind"], "/initial/kind", {"coherent", "wkb-gauss-fresnel", "wkb-linear-phase", "custom"});
        if (d.contains("xi0")) c.initial.xi0 = number(d["xi0"], "/initial/xi0");
        if (d.contains("eta0")) c.initial.eta0 = number(d["eta0"], "/initial/eta0");
        if (d.contains("k0")) c.initial.k0 = number(d["k0"], "/initial/k0");
        if (d.contains("re")) c.initial.re = numbers(d["re"], "/initial/re");
        if (d.contains("im")) c.initial.im = numbers(d["im"], "/initial/im");
        if (c.initial.kind == "custom") {
            if (c.initial.re.empty()) throw SchemaError("/initial/re", "custom data needs samples");
            if (!c.initial.im.empty() && c.initial.im.size() != c.initial.re.size())
                throw SchemaError("/initial/im", "length differs from /initial/re");
        } else if (!c.initial.re.empty() || !c.initial.im.empty()) {
            throw SchemaError("/initial/re", "samples are only accepted for custom data");
        }
    }

    if (j.contains("expansion"))
        c.expansion = text(j["expansion"], "/expansion", {"harmonic", "classical", "both", "none"});
    if (j.contains("order")) {
        const long o = integer(j["order"], "/order");
        if (o < 0 || o > 6) throw SchemaError("/order", "must lie in [0, 6]");
        c.order = int(o);
    }
    if (j.contains("times")) c.times = numbers(j["times"], "/times");
    for (std::size_t i = 0; i < c.times.size(); ++i)
        if (c.times[i] < 0.0) throw SchemaError("/times/" + std::to_string(i), "must be non-negative");

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        only_keys(g, "/grid", {"L", "n", "L_scaled"});
        if (g.contains("L")) c.grid.L = number(g["L"], "/grid/L");
        if (g.contains("n")) c.grid.n = integer(g["n"], "/grid/n");
        if (g.contains("L_scaled")) c.grid.L_scaled = number(g["L_scaled"], "/grid/L_scaled");
        if (!(c.grid.L > 0.0)) throw SchemaError("/grid/L", "must be positive");
        if (c.grid.n < 8 || (c.grid.n & (c.grid.n - 1)) != 0)
            throw SchemaError("/grid/n", "must be a power of two >= 8");
        if (c.grid.L_scaled < 0.0) throw SchemaError("/grid/L_scaled", "must be non-negative");
    }
    if (c.initial.kind == "custom" && long(c.initial.re.size()) != c.grid.n)
        throw SchemaError("/initial/re", "custom samples must match /grid/n");

    if (j.contains("rays")) {
        const auto& r = j["rays"];
        only_keys(r, "/rays", {"q_min", "q_max", "t_min", "t_max", "resolution", "flow"});
        RaySpec s;
        if (r.contains("q_min")) s.q_min = number(r["q_min"], "/rays/q_min");
        if (r.contains("q_max")) s.q_max = number(r["q_max"], "/rays/q_max");
        if (r.contains("t_min")) s.t_min = number(r["t_min"], "/rays/t_min");
        if (r.contains("t_max")) s.t_max = number(r["t_max"], "/rays/t_max");
        if (r.contains("resolution")) s.resolution = int(integer(r["resolution"], "/rays/resolution"));
        if (r.contains("flow")) s.flow = text(r["flow"], "/rays/flow", {"harmonic", "exact", "integrator"});
        if (!(s.q_max > s.q_min)) throw SchemaError("/rays/q_max", "must exceed q_min");
        if (!(s.t_max > s.t_min)) throw SchemaError("/rays/t_max", "must exceed t_min");
        if (s.resolution < 64) throw SchemaError("/rays/resolution", "must be >= 64");
        if (c.potential.kind == "harmonic" && s.flow != "harmonic")
            throw SchemaError("/rays/flow", "the harmonic potential uses the harmonic flow");
        c.rays = s;
    }

    if (j.contains("focal_nu")) {
        const auto& f = j["focal_nu"];
        if (!f.is_array()) throw SchemaError("/focal_nu", "expected an array");
        for (std::size_t i = 0; i < f.size(); ++i) {
            const long v = integer(f[i], "/focal_nu/" + std::to_string(i));
            if (v < 1) throw SchemaError("/focal_nu/" + std::to_string(i), "must be >= 1");
            c.focal_nu.push_back(int(v));
        }
    }
    if (j.contains("reference")) {
        if (!j["reference"].is_boolean()) throw SchemaError("/reference", "expected a boolean");
        c.reference = j["reference"].get<bool>();
    }
    if (j.contains("output")) c.output = text(j["output"], "/output");
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("/", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["potential"] = {{"kind", c.potential.kind}, {"mu", c.potential.mu}};
    j["eps"] = c.eps;
    if (c.mu_rule) j["mu_rule"] = {{"coefficient", c.mu_rule->coefficient}, {"exponent", c.mu_rule->exponent}};
    json d = {{"kind", c.initial.kind}, {"xi0", c.initial.xi0}, {"eta0", c.initial.eta0}, {"k0", c.initial.k0}};
    if (c.initial.kind == "custom") {
        d["re"] = c.initial.re;
        d["im"] = c.initial.im;
    }
    j["initial"] = d;
    j["expansion"] = c.expansion;
    j["order"] = c.order;
    j["times"] = c.times;
    j["grid"] = {{"L", c.grid.L}, {"n", c.grid.n}, {"L_scaled", c.grid.L_scaled}};
    if (c.rays)
        j["rays"] = {{"q_min", c.rays->q_min},   {"q_max", c.rays->q_max},
                     {"t_min", c.rays->t_min},   {"t_max", c.rays->t_max},
                     {"resolution", c.rays->resolution}, {"flow", c.rays->flow}};
    j["focal_nu"] = c.focal_nu;
    j["reference"] = c.reference;
    j["output"] = c.output;
    return j;
}

std::string config_hash(const ScenarioConfig& c) { return sha256_hex(to_json(c).dump()); }

}  // namespace wigner::cli

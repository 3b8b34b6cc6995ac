#include "qheat/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qheat/io.hpp"
#include "qheat/qlattice.hpp"

namespace qheat {

using json = nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!j.is_object()) throw std::invalid_argument("config: " + ctx + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown field '" + it.key() + "' in " + ctx);
}

double need_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw std::invalid_argument("config: missing field '" + key + "' in " + ctx);
    if (!j[key].is_number())
        throw std::invalid_argument("config: field '" + key + "' in " + ctx + " must be a number");
    return j[key].get<double>();
}

double opt_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw std::invalid_argument("config: field '" + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<double> need_number_list(const json& j, const std::string& key,
                                     const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_array())
        throw std::invalid_argument("config: '" + key + "' in " + ctx + " must be an array");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number())
            throw std::invalid_argument("config: '" + key + "' in " + ctx +
                                        " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

RunConfig::ProfileSpec parse_profile(const json& j, const std::string& ctx, const char* lo_key,
                                     const char* hi_key) {
    check_keys(j, {"type", "a", "b", lo_key, hi_key}, ctx);
    RunConfig::ProfileSpec p;
    std::string type = j.value("type", "");
    if (type == "constant") {
        p.affine = false;
        p.a = need_number(j, "a", ctx);
    } else if (type == "affine") {
        p.affine = true;
        p.a = need_number(j, "a", ctx);
        p.b = need_number(j, "b", ctx);
    } else {
        throw std::invalid_argument("config: " + ctx +
                                    ".type must be 'constant' or 'affine', got '" + type + "'");
    }
    p.lower = need_number(j, lo_key, ctx);
    p.upper = need_number(j, hi_key, ctx);
    p.provided = true;
    return p;
}

RunConfig::DataSpec parse_data(const json& j, const std::string& ctx) {
    RunConfig::DataSpec d;
    check_keys(j, {"coeffs", "spatial_csv"}, ctx);
    if (j.contains("coeffs") == j.contains("spatial_csv"))
        throw std::invalid_argument("config: " + ctx +
                                    " needs exactly one of 'coeffs' or 'spatial_csv'");
    if (j.contains("coeffs")) d.coeffs = need_number_list(j, "coeffs", ctx);
    if (j.contains("spatial_csv")) d.spatial_csv = j["spatial_csv"].get<std::string>();
    d.provided = true;
    return d;
}

RunConfig::OperatorSpec parse_operator(const json& j) {
    RunConfig::OperatorSpec op;
    std::string type = j.value("type", "");
    if (type == "involution") {
        check_keys(j, {"type", "epsilon", "grid_points"}, "operator");
        op.kind = RunConfig::OperatorSpec::Kind::involution;
        op.epsilon = need_number(j, "epsilon", "operator");
        op.grid_points = static_cast<int>(opt_number(j, "grid_points", 0));
    } else if (type == "landau") {
        check_keys(j, {"type", "B"}, "operator");
        op.kind = RunConfig::OperatorSpec::Kind::landau;
        op.field = need_number(j, "B", "operator");
    } else if (type == "custom") {
        check_keys(j, {"type", "eigenvalues", "lambda0"}, "operator");
        op.kind = RunConfig::OperatorSpec::Kind::custom;
        op.eigenvalues = need_number_list(j, "eigenvalues", "operator");
        op.lambda0 = need_number(j, "lambda0", "operator");
    } else {
        throw std::invalid_argument(
            "config: operator.type must be 'involution', 'landau' or 'custom', got '" + type +
            "'");
    }
    return op;
}

RunConfig::SourceSpec parse_source(const json& j) {
    RunConfig::SourceSpec s;
    check_keys(j, {"amplitudes", "decay", "ratio", "shape", "spatial_csv"}, "source");
    int ways = (j.contains("amplitudes") ? 1 : 0) + (j.contains("decay") ? 1 : 0) +
               (j.contains("spatial_csv") ? 1 : 0);
    if (ways != 1)
        throw std::invalid_argument(
            "config: source needs exactly one of 'amplitudes', 'decay', 'spatial_csv'");
    if (j.contains("amplitudes")) {
        s.amp = RunConfig::SourceSpec::Amplitudes::list;
        s.amplitudes = need_number_list(j, "amplitudes", "source");
    } else if (j.contains("decay")) {
        std::string decay = j["decay"].get<std::string>();
        if (decay == "exponential") {
            s.amp = RunConfig::SourceSpec::Amplitudes::exponential;
        } else if (decay == "geometric") {
            s.amp = RunConfig::SourceSpec::Amplitudes::geometric;
            s.ratio = need_number(j, "ratio", "source");
        } else {
            throw std::invalid_argument(
                "config: source.decay must be 'exponential' or 'geometric'");
        }
    } else {
        s.spatial_csv = j["spatial_csv"].get<std::string>();
    }
    if (!j.contains("shape"))
        throw std::invalid_argument("config: source.shape is required");
    check_keys(j["shape"], {"type", "a", "b"}, "source.shape");
    std::string type = j["shape"].value("type", "");
    if (type == "constant") {
        s.shape_affine = false;
        s.shape_a = need_number(j["shape"], "a", "source.shape");
    } else if (type == "affine") {
        s.shape_affine = true;
        s.shape_a = need_number(j["shape"], "a", "source.shape");
        s.shape_b = need_number(j["shape"], "b", "source.shape");
    } else {
        throw std::invalid_argument("config: source.shape.type must be 'constant' or 'affine'");
    }
    s.provided = true;
    return s;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    check_keys(j,
               {"command", "q", "T", "modes", "d", "lattice_depth", "n_terms", "tol", "operator",
                "upsilon", "g", "phi", "eta", "source", "sweep"},
               "top level");

    RunConfig c;
    std::string cmd = j.value("command", "");
    if (cmd == "direct") c.command = Command::direct;
    else if (cmd == "inverse") c.command = Command::inverse;
    else if (cmd == "verify") c.command = Command::verify;
    else if (cmd == "sweep") c.command = Command::sweep;
    else
        throw std::invalid_argument(
            "config: command must be one of direct|inverse|verify|sweep, got '" + cmd + "'");

    c.q = need_number(j, "q", "top level");
    c.horizon = opt_number(j, "T", 1.0);
    c.modes = static_cast<int>(opt_number(j, "modes", 8));
    c.sobolev_order = opt_number(j, "d", 0.0);
    c.lattice_depth = static_cast<int>(opt_number(j, "lattice_depth", 0));
    c.n_terms = static_cast<int>(opt_number(j, "n_terms", 0));
    c.tol = opt_number(j, "tol", 1e-12);

    if (j.contains("operator")) c.op = parse_operator(j["operator"]);
    else if (c.command != Command::sweep)
        throw std::invalid_argument("config: missing field 'operator'");

    if (j.contains("upsilon")) c.upsilon = parse_profile(j["upsilon"], "upsilon", "alpha", "beta");
    if (j.contains("g")) c.g = parse_profile(j["g"], "g", "alpha0", "beta0");
    if (j.contains("phi")) c.phi = parse_data(j["phi"], "phi");
    if (j.contains("eta")) c.eta = parse_data(j["eta"], "eta");
    if (j.contains("source")) c.source = parse_source(j["source"]);
    if (j.contains("sweep")) {
        check_keys(j["sweep"], {"q_values", "lambda", "phi"}, "sweep");
        c.sweep.q_values = need_number_list(j["sweep"], "q_values", "sweep");
        c.sweep.lambda = opt_number(j["sweep"], "lambda", 1.0);
        c.sweep.phi = opt_number(j["sweep"], "phi", 1.0);
        c.sweep.provided = true;
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::string& path) { return parse(read_text_file(path)); }

void RunConfig::validate() const {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("config: q must satisfy 0 < q < 1 (strict), got " +
                                    std::to_string(q));
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("config: T must be > 0");
    if (modes < 1) throw std::invalid_argument("config: modes must be >= 1");
    if (lattice_depth < 0 || n_terms < 0)
        throw std::invalid_argument("config: lattice_depth and n_terms must be >= 0 (0 = auto)");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be > 0");

    const bool needs_solver = command != Command::sweep;
    if (needs_solver && !upsilon.provided)
        throw std::invalid_argument("config: missing field 'upsilon'");
    if (command == Command::direct && !phi.provided)
        throw std::invalid_argument("config: missing field 'phi'");
    if (command == Command::inverse) {
        if (!phi.provided) throw std::invalid_argument("config: missing field 'phi'");
        if (!eta.provided) throw std::invalid_argument("config: missing field 'eta'");
        if (!g.provided) throw std::invalid_argument("config: missing field 'g'");
    }
    if (command == Command::sweep) {
        if (!sweep.provided) throw std::invalid_argument("config: missing field 'sweep'");
        if (sweep.q_values.empty())
            throw std::invalid_argument("config: sweep.q_values must be non-empty");
        for (double qv : sweep.q_values)
            if (!(qv > 0.0) || !(qv < 1.0))
                throw std::invalid_argument("config: sweep q values must satisfy 0 < q < 1");
        if (!(sweep.lambda > 0.0))
            throw std::invalid_argument("config: sweep.lambda must be > 0");
    }
}

int RunConfig::effective_n_terms() const {
    if (n_terms > 0) return n_terms;
    return QParams::make(q, tol).n_terms;
}

int RunConfig::effective_depth() const {
    return lattice_depth > 0 ? lattice_depth : effective_n_terms();
}

}  // namespace qheat

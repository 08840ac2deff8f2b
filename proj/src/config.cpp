#include "dzl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dzl/util.hpp"

namespace dzl {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

bool valid_key(const std::string& k) {
    if (k.empty() || k.front() == '.' || k.back() == '.') return false;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const char c = k[i];
        if (c == '.' && k[i + 1] == '.') return false;
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
    }
    return true;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + shortest(v[i]);
    return s;
}

}  // namespace

std::string to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::E1_zero_free: return "E1_zero_free";
        case ExperimentId::E2_optimality: return "E2_optimality";
        case ExperimentId::E3_fourier: return "E3_fourier";
        case ExperimentId::E4_quadrature: return "E4_quadrature";
        case ExperimentId::E5_model_m: return "E5_model_m";
    }
    return "?";
}

ExperimentId parse_experiment_id(const std::string& s) {
    for (auto id : {ExperimentId::E1_zero_free, ExperimentId::E2_optimality, ExperimentId::E3_fourier,
                    ExperimentId::E4_quadrature, ExperimentId::E5_model_m}) {
        const std::string name = to_string(id);
        if (s == name || s == name.substr(0, 2)) return id;
    }
    throw std::invalid_argument("unknown experiment id '" + s + "'");
}

double parse_number(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    const auto caret = s.find('^');
    if (caret != std::string::npos) {
        const double base = parse_number(s.substr(0, caret));
        const double exp = parse_number(s.substr(caret + 1));
        const double v = std::pow(base, exp);
        if (!std::isfinite(v)) throw std::invalid_argument("number out of range: " + s);
        return v;
    }
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& part : split(s, ','))
        if (!part.empty()) out.push_back(parse_number(part));
    return out;
}

FunctionSpec FunctionSpec::parse(const std::string& text) {
    FunctionSpec f;
    const std::string t = trim(text);
    const auto colon = t.find(':');
    f.label = trim(t.substr(0, colon));
    if (f.label == "ones") {
        f.k = 1.0;
        f.m = 1.0;
    } else if (f.label == "mu") {
        f.k = 1.0;
        f.m = 0.0;
    } else if (f.label == "dk") {
        f.k = 2.0;
        f.m = 2.0;
    } else if (f.label == "dedekind") {
        f.k = 2.0;
        f.m = 1.0;
    } else {
        throw std::invalid_argument("unknown function family '" + f.label + "'");
    }
    if (colon == std::string::npos) return f;
    bool m_set = false;
    for (const auto& kv : split(t.substr(colon + 1), ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("function parameter without '=': '" + kv + "'");
        const std::string key = trim(kv.substr(0, eq));
        const std::string val = trim(kv.substr(eq + 1));
        if (key == "k" && f.label == "dk") {
            f.k = parse_number(val);
            if (!m_set) f.m = f.k;
        } else if (key == "m") {
            f.m = parse_number(val);
            m_set = true;
        } else if (key == "D" && f.label == "dedekind") {
            f.D = static_cast<std::int64_t>(parse_number(val));
        } else if (key == "delta") {
            f.delta = parse_number(val);
        } else if (key == "c") {
            f.c = parse_number(val);
        } else {
            throw std::invalid_argument("parameter '" + key + "' not valid for '" + f.label + "'");
        }
    }
    return f;
}

std::string FunctionSpec::to_string() const {
    std::vector<std::string> params;
    if (label == "dk") params.push_back("k=" + shortest(k));
    if (label == "dedekind") params.push_back("D=" + std::to_string(D));
    const double default_m = label == "mu" ? 0.0 : label == "dk" ? k : 1.0;
    if (m != default_m) params.push_back("m=" + shortest(m));
    if (delta) params.push_back("delta=" + shortest(*delta));
    if (c) params.push_back("c=" + shortest(*c));
    std::string s = label;
    for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : ":") + params[i];
    return s;
}

void ExperimentConfig::validate() const {
    if (N.empty()) throw std::invalid_argument("config: N list is empty");
    for (std::size_t i = 0; i < N.size(); ++i) {
        if (!(N[i] >= 1.0) || !std::isfinite(N[i])) throw std::invalid_argument("config: N values must be finite and >= 1");
        if (i && !(N[i] > N[i - 1])) throw std::invalid_argument("config: N list must be strictly ascending");
    }
    if (!(t_lo < t_hi)) throw std::invalid_argument("config: t range must satisfy t_lo < t_hi");
    if (!(tol.zero_margin > 0 && tol.refine > 0 && tol.quad_abs > 0))
        throw std::invalid_argument("config: tolerances must be positive");
    if (function.delta && !(*function.delta >= 0.0 && *function.delta <= 0.5))
        throw std::invalid_argument("config: delta must lie in [0, 1/2]");
}

double ExperimentConfig::extra_double(const std::string& key, double fallback) const {
    auto it = extra.find(key);
    return it == extra.end() ? fallback : parse_number(it->second);
}

std::vector<double> ExperimentConfig::extra_list(const std::string& key, const std::vector<double>& fallback) const {
    auto it = extra.find(key);
    return it == extra.end() ? fallback : parse_number_list(it->second);
}

std::string ExperimentConfig::extra_string(const std::string& key, const std::string& fallback) const {
    auto it = extra.find(key);
    return it == extra.end() ? fallback : it->second;
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
    std::map<std::string, std::string> e = extra;
    e["experiment"] = to_string(id);
    e["function"] = function.to_string();
    e["N"] = join(N);
    e["t_range"] = join({t_lo, t_hi});
    e["tol.zero_margin"] = shortest(tol.zero_margin);
    e["tol.refine"] = shortest(tol.refine);
    e["tol.quad_abs"] = shortest(tol.quad_abs);
    e["output.stem"] = output_stem.empty() ? to_string(id) : output_stem;
    e["seed"] = std::to_string(seed);
    return e;
}

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    bool have_id = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!valid_key(key)) fail("bad key '" + key + "'");
        try {
            if (key == "experiment") {
                cfg.id = parse_experiment_id(val);
                have_id = true;
            } else if (key == "function") {
                cfg.function = FunctionSpec::parse(val);
            } else if (key == "N") {
                cfg.N = parse_number_list(val);
            } else if (key == "t_range") {
                const auto v = parse_number_list(val);
                if (v.size() != 2) fail("t_range needs two numbers");
                cfg.t_lo = v[0];
                cfg.t_hi = v[1];
            } else if (key == "tol.zero_margin") {
                cfg.tol.zero_margin = parse_number(val);
            } else if (key == "tol.refine") {
                cfg.tol.refine = parse_number(val);
            } else if (key == "tol.quad_abs") {
                cfg.tol.quad_abs = parse_number(val);
            } else if (key == "output.dir") {
                cfg.output_dir = val;
            } else if (key == "output.stem") {
                cfg.output_stem = val;
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(std::stoull(val));
            } else {
                cfg.extra[key] = val;
            }
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            if (msg.rfind("config line", 0) == 0) throw;
            fail(msg);
        }
    }
    if (!have_id) throw std::invalid_argument("config: missing 'experiment'");
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    return parse_config(in);
}

}  // namespace dzl

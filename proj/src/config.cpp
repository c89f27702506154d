#include "otto/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace otto {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
        throw ConfigError("key '" + key + "': not a finite number: '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

void check_keys(const IniData& ini, const std::map<std::string, std::set<std::string>>& allowed) {
    for (const auto& [sec, kv] : ini) {
        auto it = allowed.find(sec);
        if (it == allowed.end()) throw ConfigError("unknown section '[" + sec + "]'");
        for (const auto& [k, v] : kv) {
            (void)v;
            if (!it->second.count(k)) {
                std::string where = sec.empty() ? k : sec + "." + k;
                throw ConfigError("unknown key '" + k + "' (" + where + ")");
            }
        }
    }
}

const std::string* find(const IniData& ini, const std::string& sec, const std::string& key) {
    auto s = ini.find(sec);
    if (s == ini.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

BathParams parse_bath(const IniData& ini, const std::string& sec) {
    const std::string* beta = find(ini, sec, "beta");
    const std::string* omega = find(ini, sec, "omega");
    const std::string* gm = find(ini, sec, "gamma_minus");
    const std::string* gp = find(ini, sec, "gamma_plus");
    const std::string* teq = find(ini, sec, "tau_eq");
    if (!beta || !omega) throw ConfigError("[" + sec + "] needs beta and omega");
    double b = to_double(sec + ".beta", *beta), w = to_double(sec + ".omega", *omega);
    try {
        if (teq) {
            if (gm || gp) throw ConfigError("[" + sec + "] gives both tau_eq and rates");
            return BathParams::from_equilibration_time(b, w, to_double(sec + ".tau_eq", *teq));
        }
        if (!gm) throw ConfigError("[" + sec + "] needs gamma_minus or tau_eq");
        if (gp)
            return BathParams::from_rates(b, w, to_double(sec + ".gamma_plus", *gp),
                                          to_double(sec + ".gamma_minus", *gm));
        return BathParams::from_damping(b, w, to_double(sec + ".gamma_minus", *gm));
    } catch (const std::domain_error& e) {
        throw ConfigError("[" + sec + "] " + e.what());
    }
}

const std::set<std::string> kFamilyParams{"eta", "omega_c", "g_tau_eq", "beta_c_over_beta_h", "beta_h_omega_h"};
const std::set<std::string> kCustomParams{"omega_c", "g"};

}  // namespace

IniData parse_ini(const std::string& text, const std::string& origin) {
    IniData out;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (out[section].count(key)) throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out[section][key] = val;
    }
    return out;
}

IniData read_ini_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ini(ss.str(), path);
}

const char* engine_name(EngineKind k) {
    switch (k) {
        case EngineKind::otto: return "otto";
        case EngineKind::qubit_catalyst: return "qubit_catalyst";
        default: return "custom";
    }
}

std::vector<double> SweepRange::values() const {
    std::vector<double> v;
    if (points == 1) {
        v.push_back(start);
        return v;
    }
    for (int i = 0; i < points; ++i) v.push_back(start + (stop - start) * i / (points - 1));
    std::sort(v.begin(), v.end());
    return v;
}

SweepConfig parse_sweep_config(const IniData& ini, const std::string& base_dir) {
    check_keys(ini, {{"engine", {"type", "spec_file"}},
                     {"fixed", {"beta_h_omega_h", "beta_c_over_beta_h", "g_tau_eq", "tau_eq", "omega_h", "eta", "omega_c"}},
                     {"sweep", {"parameter", "start", "stop", "points"}},
                     {"output", {"columns"}},
                     {"run", {"seed", "threads"}}});
    SweepConfig c;
    if (auto t = find(ini, "engine", "type")) {
        c.engines.clear();
        for (const auto& name : split(*t, ',')) {
            if (name == "otto") c.engines.push_back(EngineKind::otto);
            else if (name == "qubit_catalyst") c.engines.push_back(EngineKind::qubit_catalyst);
            else if (name == "custom") c.engines.push_back(EngineKind::custom);
            else throw ConfigError("engine.type: unknown engine '" + name + "'");
        }
        if (c.engines.empty()) throw ConfigError("engine.type is empty");
    }
    bool has_custom = std::count(c.engines.begin(), c.engines.end(), EngineKind::custom) > 0;
    bool has_family = std::any_of(c.engines.begin(), c.engines.end(), [](EngineKind k) { return k != EngineKind::custom; });
    if (auto p = find(ini, "engine", "spec_file")) c.spec_file = *p;
    if (has_custom) {
        if (c.spec_file.empty()) throw ConfigError("engine.type = custom needs engine.spec_file");
        std::filesystem::path sp(c.spec_file);
        if (sp.is_relative()) sp = std::filesystem::path(base_dir) / sp;
        c.custom = parse_engine_spec(read_ini_file(sp.string()));
    } else if (!c.spec_file.empty()) {
        throw ConfigError("engine.spec_file given but no custom engine selected");
    }

    auto num = [&](const char* key, double& dst) {
        if (auto v = find(ini, "fixed", key)) dst = to_double(std::string("fixed.") + key, *v);
    };
    num("beta_h_omega_h", c.beta_h_omega_h);
    num("beta_c_over_beta_h", c.beta_c_over_beta_h);
    num("g_tau_eq", c.g_tau_eq);
    num("tau_eq", c.tau_eq);
    num("omega_h", c.omega_h);
    if (auto v = find(ini, "fixed", "eta")) c.eta = to_double("fixed.eta", *v);
    if (auto v = find(ini, "fixed", "omega_c")) c.omega_c = to_double("fixed.omega_c", *v);
    if (c.eta && c.omega_c) throw ConfigError("fixed.eta and fixed.omega_c are mutually exclusive");

    if (ini.count("sweep")) {
        SweepRange r;
        auto p = find(ini, "sweep", "parameter");
        auto a = find(ini, "sweep", "start");
        if (!p || !a) throw ConfigError("[sweep] needs parameter and start");
        r.parameter = *p;
        r.start = to_double("sweep.start", *a);
        r.stop = r.start;
        if (auto b = find(ini, "sweep", "stop")) r.stop = to_double("sweep.stop", *b);
        if (auto n = find(ini, "sweep", "points")) {
            long long pts = to_int("sweep.points", *n);
            if (pts < 1 || pts > 1000000) throw ConfigError("sweep.points must be in [1, 1000000]");
            r.points = static_cast<int>(pts);
        }
        if (has_family && !kFamilyParams.count(r.parameter))
            throw ConfigError("sweep.parameter '" + r.parameter + "' not valid for family engines");
        if (has_custom && !kCustomParams.count(r.parameter))
            throw ConfigError("sweep.parameter '" + r.parameter + "' not valid for custom engines");
        c.sweep = r;
    }

    // Physical domain of every value that will be evaluated.
    auto check_param = [&](const std::string& name, double v) {
        bool ok = true;
        if (name == "eta") ok = v > 0 && v < 1;
        else if (name == "beta_c_over_beta_h") ok = v > 1;
        else ok = v > 0;
        if (!ok) throw ConfigError(name + " = " + std::to_string(v) + " outside its physical domain");
    };
    check_param("beta_h_omega_h", c.beta_h_omega_h);
    check_param("beta_c_over_beta_h", c.beta_c_over_beta_h);
    check_param("g_tau_eq", c.g_tau_eq);
    check_param("tau_eq", c.tau_eq);
    check_param("omega_h", c.omega_h);
    if (c.eta) check_param("eta", *c.eta);
    if (c.omega_c) check_param("omega_c", *c.omega_c);
    if (c.sweep) {
        check_param(c.sweep->parameter, c.sweep->start);
        check_param(c.sweep->parameter, c.sweep->stop);
    }
    if (has_family) {
        bool point_set = c.eta || c.omega_c || (c.sweep && (c.sweep->parameter == "eta" || c.sweep->parameter == "omega_c"));
        if (!point_set) throw ConfigError("no operating point: set fixed.eta, fixed.omega_c, or sweep one of them");
    }

    if (auto cols = find(ini, "output", "columns")) c.columns = split(*cols, ',');
    if (auto s = find(ini, "run", "seed")) {
        long long v = to_int("run.seed", *s);
        if (v < 0) throw ConfigError("run.seed must be >= 0");
        c.seed = static_cast<std::uint64_t>(v);
    }
    if (auto t = find(ini, "run", "threads")) {
        long long v = to_int("run.threads", *t);
        if (v < 0 || v > 1024) throw ConfigError("run.threads must be in [0, 1024]");
        c.threads = static_cast<int>(v);
    }
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    auto dir = std::filesystem::path(path).parent_path();
    return parse_sweep_config(read_ini_file(path), dir.empty() ? "." : dir.string());
}

EngineSpec parse_engine_spec(const IniData& ini) {
    std::map<std::string, std::set<std::string>> allowed{
        {"", {"catalyst_dim"}},
        {"hot", {"beta", "omega", "gamma_plus", "gamma_minus", "tau_eq"}},
        {"cold", {"beta", "omega", "gamma_plus", "gamma_minus", "tau_eq"}},
        {"swaps", {}}};
    if (auto s = ini.find("swaps"); s != ini.end())
        for (const auto& [k, v] : s->second) allowed["swaps"].insert(k);
    check_keys(ini, allowed);

    EngineSpec spec;
    auto cd = find(ini, "", "catalyst_dim");
    if (!cd) throw ConfigError("engine spec needs catalyst_dim");
    long long d = to_int("catalyst_dim", *cd);
    if (d < 1 || d > 64) throw ConfigError("catalyst_dim must be in [1, 64]");
    spec.catalyst_dim = static_cast<int>(d);
    spec.hot = parse_bath(ini, "hot");
    spec.cold = parse_bath(ini, "cold");
    if (auto s = ini.find("swaps"); s != ini.end()) {
        // Keys are labels; pairs are ordered by numeric label when possible.
        std::vector<std::pair<long long, std::string>> keys;
        for (const auto& [k, v] : s->second) keys.emplace_back(to_int("swaps." + k, k), v);
        std::sort(keys.begin(), keys.end());
        for (const auto& [k, v] : keys) {
            auto parts = split(v, ' ');
            if (parts.size() != 3) throw ConfigError("swaps." + std::to_string(k) + ": expected 'u d g'");
            SwapPair p;
            p.u = static_cast<int>(to_int("swaps.u", parts[0]));
            p.d = static_cast<int>(to_int("swaps.d", parts[1]));
            p.g = to_double("swaps.g", parts[2]);
            spec.swaps.push_back(p);
        }
    }
    auto bad = validate(spec);
    if (!bad.empty()) throw ConfigError("invalid engine spec: " + bad.front());
    return spec;
}

std::string format_engine_spec(const EngineSpec& spec) {
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "catalyst_dim = " << spec.catalyst_dim << "\n";
    for (auto [name, b] : {std::pair<const char*, const BathParams*>{"hot", &spec.hot}, {"cold", &spec.cold}}) {
        os << "\n[" << name << "]\n";
        os << "beta = " << num(b->beta) << "\nomega = " << num(b->omega) << "\ngamma_plus = " << num(b->gamma_plus)
           << "\ngamma_minus = " << num(b->gamma_minus) << "\n";
    }
    os << "\n[swaps]\n";
    for (std::size_t i = 0; i < spec.swaps.size(); ++i)
        os << i + 1 << " = " << spec.swaps[i].u << ' ' << spec.swaps[i].d << ' ' << num(spec.swaps[i].g) << "\n";
    return os.str();
}

}  // namespace otto

#include "sns/config.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "sns/io.hpp"

namespace sns {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("config: bad seed value for '" + key + "': " + v);
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// "name(k=v,k=v)" -> map, for the u0 grammar.
std::map<std::string, std::string> parse_args(const std::string& key, const std::string& inside) {
    std::map<std::string, std::string> out;
    std::string cur;
    std::istringstream is(inside);
    while (std::getline(is, cur, ',')) {
        cur = trim(cur);
        if (cur.empty()) continue;
        const size_t eq = cur.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected k=v in '" + key + "' argument '" + cur + "'");
        out[trim(cur.substr(0, eq))] = trim(cur.substr(eq + 1));
    }
    return out;
}

void apply_kv(StudyConfig& cfg, const std::string& section, const std::string& key,
              const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "grid") {
        if (key == "N") cfg.grid_n = static_cast<int>(parse_int(full, value));
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "noise") {
        if (key == "K") {
            const int k = static_cast<int>(parse_int(full, value));
            if (k < 0) throw ConfigError("config: noise.K must be >= 0");
            cfg.noise.sigmas.resize(k);
        } else if (key.rfind("sigma_", 0) == 0) {
            const int idx = static_cast<int>(parse_int(full, key.substr(6)));
            if (idx < 1 || idx > cfg.noise.channels())
                throw ConfigError("config: '" + full + "' out of range (set noise.K first)");
            const auto parts = split_ws(value);
            if (parts.size() != 2)
                throw ConfigError("config: '" + full + "' expects two components, got '" +
                                  value + "'");
            cfg.noise.sigmas[idx - 1] = Vec2{parse_double(full, parts[0]),
                                             parse_double(full, parts[1])};
        } else {
            throw ConfigError("config: unknown key '" + full + "'");
        }
    } else if (section == "scheme") {
        if (key == "mu") cfg.mu = parse_double(full, value);
        else if (key == "T") cfg.horizon = parse_double(full, value);
        else if (key == "M") cfg.simulate_steps = static_cast<int>(parse_int(full, value));
        else if (key == "fp_tol") cfg.fp_tol = parse_double(full, value);
        else if (key == "fp_max_iters") cfg.fp_max_iters = static_cast<int>(parse_int(full, value));
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "study") {
        if (key == "levels") {
            cfg.levels.clear();
            for (const auto& tok : split_ws(value))
                cfg.levels.push_back(static_cast<int>(parse_int(full, tok)));
            std::sort(cfg.levels.begin(), cfg.levels.end());
        } else if (key == "reference_steps") {
            cfg.reference_steps = static_cast<int>(parse_int(full, value));
        } else if (key == "samples") {
            cfg.samples = static_cast<int>(parse_int(full, value));
        } else if (key == "master_seed") {
            cfg.master_seed = parse_u64(full, value);
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_int(full, value));
        } else if (key == "u0") {
            cfg.u0 = parse_u0_spec(value);
        } else if (key == "reference") {
            if (value == "scheme") cfg.reference = StudyConfig::Reference::scheme;
            else if (value == "exact") cfg.reference = StudyConfig::Reference::exact_single_mode;
            else throw ConfigError("config: study.reference must be 'scheme' or 'exact', got '" +
                                   value + "'");
        } else {
            throw ConfigError("config: unknown key '" + full + "'");
        }
    } else {
        throw ConfigError("config: unknown section '" + section + "'");
    }
}

}  // namespace

U0Spec parse_u0_spec(const std::string& text) {
    U0Spec spec;
    const std::string t = trim(text);
    if (t == "taylor-green") {
        spec.kind = U0Spec::Kind::taylor_green;
        return spec;
    }
    if (t.rfind("file:", 0) == 0) {
        spec.kind = U0Spec::Kind::snapshot;
        spec.snapshot_path = trim(t.substr(5));
        if (spec.snapshot_path.empty()) throw ConfigError("config: u0 file: path is empty");
        return spec;
    }
    const size_t open = t.find('(');
    std::string name = t, inside;
    if (open != std::string::npos) {
        if (t.back() != ')') throw ConfigError("config: unbalanced parentheses in u0 '" + t + "'");
        name = trim(t.substr(0, open));
        inside = t.substr(open + 1, t.size() - open - 2);
    }
    auto args = parse_args("u0", inside);
    auto take = [&](const char* k, double dflt) {
        auto it = args.find(k);
        if (it == args.end()) return dflt;
        const double v = parse_double(std::string("u0.") + k, it->second);
        args.erase(it);
        return v;
    };
    if (name == "random" || name == "taylor-green+random") {
        spec.kind = name == "random" ? U0Spec::Kind::random
                                     : U0Spec::Kind::taylor_green_plus_random;
        spec.decay = take("decay", 5.0);
        spec.amplitude = take("amplitude", 0.1);
    } else if (name == "single-mode") {
        spec.kind = U0Spec::Kind::single_mode;
        spec.k1 = static_cast<int>(take("k1", 1.0));
        spec.k2 = static_cast<int>(take("k2", 0.0));
        spec.mode_amplitude = take("amplitude", 1.0);
    } else {
        throw ConfigError("config: unknown u0 kind '" + name + "'");
    }
    if (!args.empty()) throw ConfigError("config: unknown u0 argument '" + args.begin()->first + "'");
    return spec;
}

StudyConfig parse_study_config(const std::string& text,
                               const std::vector<std::string>& overrides) {
    StudyConfig cfg;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno) +
                              ": " + line);
        if (section.empty())
            throw ConfigError("config: key outside any section at line " + std::to_string(lineno));
        apply_kv(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    for (const std::string& ov : overrides) {
        const size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: override must be section.key=value, got '" + ov + "'");
        const std::string path = trim(ov.substr(0, eq));
        const size_t dot = path.find('.');
        if (dot == std::string::npos)
            throw ConfigError("config: override must be section.key=value, got '" + ov + "'");
        apply_kv(cfg, path.substr(0, dot), path.substr(dot + 1), trim(ov.substr(eq + 1)));
    }
    return cfg;
}

StudyConfig load_study_config(const std::string& path,
                              const std::vector<std::string>& overrides) {
    if (path.empty()) return parse_study_config("", overrides);
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_study_config(text, overrides);
}

}  // namespace sns

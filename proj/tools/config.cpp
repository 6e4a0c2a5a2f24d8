#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ifscli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, const std::string& key) {
    const std::string s = trim(raw);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(key + ": not a number: '" + s + "'");
    return v;
}

long long to_integer(const std::string& raw, const std::string& key, long long lo) {
    const std::string s = trim(raw);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key + ": not an integer: '" + s + "'");
    if (v < lo) throw ConfigError(key + ": must be >= " + std::to_string(lo));
    return v;
}

double positive(const std::string& s, const std::string& key) {
    const double v = to_double(s, key);
    if (!(v > 0)) throw ConfigError(key + ": must be > 0");
    return v;
}

std::pair<double, double> pair_of(const std::string& s, const std::string& key) {
    const auto v = parse_list(s);
    if (v.size() != 2) throw ConfigError(key + ": expected two numbers");
    return {v[0], v[1]};
}

MapSpec parse_map_line(const std::string& key, const std::string& value, int line) {
    MapSpec m;
    m.line = line;
    if (key == "vertices") {
        m.kind = MapSpec::Kind::Vertices;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (trim(item).empty()) continue;
            std::istringstream xy(item);
            std::string xs, ys, extra;
            if (!(xy >> xs >> ys) || (xy >> extra)) throw ConfigError("vertices: expected 'x y' pairs separated by ';'");
            m.vertices.emplace_back(to_double(xs, key), to_double(ys, key));
        }
        if (m.vertices.size() < 2) throw ConfigError("vertices: need at least two points");
    } else if (key == "quadratic") {
        const auto v = parse_list(value);
        if (v.size() != 3) throw ConfigError("quadratic: expected a, b, c");
        m.kind = MapSpec::Kind::Quadratic;
        m.a = v[0], m.b = v[1], m.c = v[2];
    } else if (key == "linear") {
        const auto v = parse_list(value);
        if (v.size() != 2) throw ConfigError("linear: expected slope, intercept");
        m.kind = MapSpec::Kind::Linear;
        m.b = v[0], m.c = v[1];
    } else {
        throw ConfigError("unknown key '" + key + "' in [map] block");
    }
    return m;
}

}  // namespace

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t') {
            if (!trim(cur).empty()) out.push_back(to_double(cur, "list"));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "preset") cfg.preset = v;
    else if (key == "domain") cfg.domain = pair_of(v, key);
    else if (key == "weights") cfg.weights = parse_list(v);
    else if (key == "matrix") {
        // An inline matrix is a list of numbers; anything else is a path.
        try {
            cfg.matrix = parse_list(v);
        } catch (const ConfigError&) {
            cfg.matrix_path = v;
        }
    } else if (key == "reference") cfg.reference_path = v;
    else if (key == "tol") cfg.tol = positive(v, key);
    else if (key == "w1_tol") cfg.w1_tol = positive(v, key);
    else if (key == "merge_eps") cfg.merge_eps = positive(v, key);
    else if (key == "max_depth") cfg.max_depth = static_cast<int>(to_integer(v, key, 1));
    else if (key == "max_iter") cfg.max_iter = static_cast<int>(to_integer(v, key, 1));
    else if (key == "samples") cfg.samples = static_cast<std::size_t>(to_integer(v, key, 1));
    else if (key == "bins") cfg.bins = static_cast<std::size_t>(to_integer(v, key, 1));
    else if (key == "prefix") cfg.prefix = static_cast<int>(to_integer(v, key, 1));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_integer(v, key, 0));
    else if (key == "workers") cfg.workers = static_cast<int>(to_integer(v, key, 1));
    else if (key == "budget") cfg.budget = positive(v, key);
    else if (key == "mode") {
        if (v != "disjunctive" && v != "bernoulli") throw ConfigError("mode: expected disjunctive or bernoulli");
        cfg.mode = v;
    } else if (key == "x0") cfg.x0 = to_double(v, key);
    else if (key == "tail") cfg.tail = static_cast<std::size_t>(to_integer(v, key, 0));
    else if (key == "resolution") cfg.resolution = positive(v, key);
    else if (key == "conley_eps") cfg.conley_eps = positive(v, key);
    else if (key == "j") cfg.j = pair_of(v, key);
    else throw ConfigError("unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool in_map = false, map_filled = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line != "[map]") throw ConfigError(where + "unknown block " + line);
            if (in_map && !map_filled) throw ConfigError(where + "empty [map] block");
            in_map = true;
            map_filled = false;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (in_map && (key == "vertices" || key == "quadratic" || key == "linear")) {
                if (map_filled) throw ConfigError("a [map] block holds one definition");
                cfg.maps.push_back(parse_map_line(key, value, line_no));
                map_filled = true;
            } else {
                apply_setting(cfg, key, value);
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    if (in_map && !map_filled) throw ConfigError("empty [map] block at end of file");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
    if (cfg.preset.has_value() == !cfg.maps.empty())
        throw ConfigError("give exactly one of a preset or inline [map] blocks");
    if (!cfg.maps.empty() && !cfg.domain) throw ConfigError("inline maps need domain = lo, hi");
    if (cfg.matrix && cfg.matrix_path) throw ConfigError("matrix given twice");
}

}  // namespace ifscli

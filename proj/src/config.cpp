#include "dwell/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v, int line) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
        throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'", line);
    }
    return out;
}

int to_int(std::string_view key, std::string_view v, int line) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'", line);
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v, int line) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("'" + std::string(key) + "' expects a boolean, got '" + std::string(v) + "'", line);
}

ModelKind to_model(std::string_view v, int line) {
    if (v == "m1") return ModelKind::M1;
    if (v == "m2") return ModelKind::M2;
    if (v == "m3") return ModelKind::M3;
    if (v == "m4") return ModelKind::M4;
    throw ConfigError("unknown model '" + std::string(v) + "' (expected m1, m2, m3 or m4)", line);
}

struct Preset {
    std::string_view name;
    std::vector<std::pair<std::string_view, std::string_view>> settings;
};

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        {"fig3", {{"model", "m1"}, {"u", "1"}, {"v0", "10"}, {"a", "2"}, {"b", "2"},
                  {"lambda_min", "0.1"}, {"lambda_max", "5"}, {"levels", "4"}}},
        {"fig4", {{"model", "m1"}, {"u", "0.2625"}, {"v0", "20"}, {"a", "5"}, {"b", "5"},
                  {"lambda_min", "0.5"}, {"lambda_max", "25"}, {"levels", "4"}}},
        {"fig5", {{"model", "m2"}, {"u", "1"}, {"v0", "10"}, {"a", "2"}, {"b", "1"}, {"c", "3"},
                  {"lambda_min", "1.05"}, {"lambda_max", "6"}, {"levels", "5"}}},
        {"fig6a", {{"model", "m3"}, {"u", "1"}, {"v0", "10"}, {"hw1", "2"}, {"hw2", "2"},
                   {"lambda_min", "0.06"}, {"lambda_max", "3"}, {"levels", "5"}}},
        {"fig6b", {{"model", "m4"}, {"u", "1"}, {"v0", "10"}, {"hw1", "2"}, {"hw2", "2"}, {"a", "1"},
                   {"lambda_min", "0.06"}, {"lambda_max", "3"}, {"levels", "5"}}},
    };
    return table;
}

double need(const std::optional<double>& v, std::string_view name, ModelKind kind) {
    if (!v) {
        throw ConfigError("model " + std::string(model_name(kind)) + " requires '" + std::string(name) + "'");
    }
    return *v;
}

}  // namespace

const std::vector<std::string_view>& preset_names() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> n;
        for (const Preset& p : presets()) n.push_back(p.name);
        return n;
    }();
    return names;
}

void apply_preset(RunConfig& cfg, std::string_view name) {
    for (const Preset& p : presets()) {
        if (p.name != name) continue;
        cfg = RunConfig{};
        for (const auto& [k, v] : p.settings) apply_setting(cfg, k, v);
        return;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
    const std::string_view v = trim(value);
    if (key == "preset") apply_preset(cfg, v);
    else if (key == "model") cfg.model = to_model(v, line);
    else if (key == "v0") cfg.v0 = to_double(key, v, line);
    else if (key == "a") cfg.a = to_double(key, v, line);
    else if (key == "b") cfg.b = to_double(key, v, line);
    else if (key == "c") cfg.c = to_double(key, v, line);
    else if (key == "hw1") cfg.hw1 = to_double(key, v, line);
    else if (key == "hw2") cfg.hw2 = to_double(key, v, line);
    else if (key == "u") cfg.u = to_double(key, v, line);
    else if (key == "lambda_min") cfg.lambda_min = to_double(key, v, line);
    else if (key == "lambda_max") cfg.lambda_max = to_double(key, v, line);
    else if (key == "steps") cfg.steps = to_int(key, v, line);
    else if (key == "levels") cfg.levels = to_int(key, v, line);
    else if (key == "coarse_steps") cfg.coarse_steps = to_int(key, v, line);
    else if (key == "max_depth") cfg.max_depth = to_int(key, v, line);
    else if (key == "tol_abs") cfg.tol_abs = to_double(key, v, line);
    else if (key == "n_points") cfg.n_points = to_int(key, v, line);
    else if (key == "richardson") cfg.richardson = to_bool(key, v, line);
    else if (key == "margin") cfg.margin = to_double(key, v, line);
    else if (key == "tolerance") cfg.tolerance = to_double(key, v, line);
    else if (key == "gap_ceiling") cfg.gap_ceiling = to_double(key, v, line);
    else if (key == "depth_ratio") cfg.depth_ratio = to_double(key, v, line);
    else if (key == "out") cfg.out = std::string(v);
    else if (key == "svg") cfg.svg = std::string(v);
    else if (key == "effective") cfg.effective = to_bool(key, v, line);
    else if (key == "threads") {
        const int t = to_int(key, v, line);
        if (t < 0) throw ConfigError("'threads' must be >= 0", line);
        cfg.threads = static_cast<unsigned>(t);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'", line);
    }
}

void parse_config(std::string_view text, RunConfig& cfg) {
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected key=value", line_no);
        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key", line_no);
        apply_setting(cfg, key, line.substr(eq + 1), line_no);
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    parse_config(text, cfg);
    return cfg;
}

ResolvedRun resolve(const RunConfig& cfg) {
    if (!cfg.model) throw ConfigError("no model selected (set model=m1..m4 or a preset)");
    const ModelKind kind = *cfg.model;
    ResolvedRun run;
    run.units.u = cfg.u;
    const double v0 = cfg.v0.value_or(0.0);
    SweepParam param = SweepParam::B;
    switch (kind) {
        case ModelKind::M1:
            run.model = M1Params{v0, need(cfg.a, "a", kind), need(cfg.b, "b", kind)};
            param = SweepParam::B;
            break;
        case ModelKind::M2:
            run.model = M2Params{v0, need(cfg.a, "a", kind), need(cfg.b, "b", kind), need(cfg.c, "c", kind)};
            param = SweepParam::C;
            break;
        case ModelKind::M3:
            run.model = M3Params{v0, need(cfg.hw1, "hw1", kind), need(cfg.hw2, "hw2", kind)};
            param = SweepParam::Hw2;
            break;
        case ModelKind::M4:
            run.model = M4Params{v0, need(cfg.hw1, "hw1", kind), need(cfg.hw2, "hw2", kind), cfg.a.value_or(0.0)};
            param = SweepParam::Hw2;
            break;
    }
    try {
        validate(run.model, run.units);
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }

    if (cfg.levels < 1) throw ConfigError("'levels' must be >= 1");
    run.levels = cfg.levels;

    run.sweep.param = param;
    run.sweep.n_levels = cfg.levels;
    run.sweep.steps = cfg.steps;
    run.sweep.lambda_min = cfg.lambda_min.value_or(0.0);
    run.sweep.lambda_max = cfg.lambda_max.value_or(0.0);

    if (cfg.coarse_steps) run.rootfind.coarse_steps = *cfg.coarse_steps;
    if (cfg.max_depth) run.rootfind.max_subdivision_depth = *cfg.max_depth;
    if (cfg.tol_abs) run.rootfind.tol_abs = *cfg.tol_abs;
    run.rootfind.e_max = std::max(10.0, 2.0 * run.rootfind.e_min);
    try {
        validate(run.rootfind);
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }

    if (cfg.n_points) run.oracle.n_points = *cfg.n_points;
    run.oracle.richardson = cfg.richardson;
    if (cfg.margin) run.oracle.turning_point_margin = *cfg.margin;
    try {
        validate(run.oracle);
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }

    run.criteria.gap_ceiling = cfg.gap_ceiling;
    run.criteria.depth_ratio = cfg.depth_ratio;
    if (cfg.depth_ratio < 0.0 || cfg.depth_ratio > 1.0) throw ConfigError("'depth_ratio' must lie in [0, 1]");
    if (cfg.gap_ceiling && *cfg.gap_ceiling < 0.0) throw ConfigError("'gap_ceiling' must be >= 0");

    const bool harmonic = kind == ModelKind::M3 || kind == ModelKind::M4;
    run.tolerance = cfg.tolerance.value_or(harmonic ? 5e-3 : 2e-3);
    if (!(run.tolerance > 0.0)) throw ConfigError("'tolerance' must be > 0");
    return run;
}

}  // namespace dwell

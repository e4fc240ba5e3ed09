// dwell: bound-state spectra and avoided crossings of 1D double wells.
//
//   dwell solve   --preset fig3 --b 2
//   dwell sweep   --preset fig4 --effective --out fig4.csv --svg fig4.svg
//   dwell detect  --preset fig5 --out fig5_ac.csv
//   dwell compare --model m3 --v0 10 --hw1 2 --hw2 2 --levels 5

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dwell/commands.hpp"

namespace {

struct FlagSet {
    std::string preset;
    std::string config_path;
    // (config key, raw value) in a fixed order so later keys cannot be shadowed.
    std::vector<std::pair<std::string, std::string>> values;
    bool effective = false;
    bool no_richardson = false;
};

void add_value_flags(CLI::App& cmd, FlagSet& flags) {
    static const std::vector<std::pair<const char*, const char*>> table = {
        {"model", "m1 | m2 | m3 | m4"},
        {"v0", "barrier strength / height (eV, or eV*A for m1)"},
        {"a", "left width (A); m4 half-separation"},
        {"b", "m1 right width; m2 barrier edge (A)"},
        {"c", "m2 right wall (A)"},
        {"hw1", "left oscillator quantum (eV)"},
        {"hw2", "right oscillator quantum (eV)"},
        {"u", "2*mu/hbar^2 (1/(eV*A^2))"},
        {"lambda-min", "sweep start"},
        {"lambda-max", "sweep end"},
        {"lambda-steps", "sweep grid points"},
        {"levels", "number of levels"},
        {"out", "output CSV (default stdout)"},
        {"svg", "sweep line chart"},
        {"tolerance", "compare gate (eV)"},
        {"n-points", "oracle interior grid points"},
        {"gap-ceiling", "detect: gap threshold (eV)"},
        {"threads", "sweep worker threads (0 = auto)"},
    };
    flags.values.reserve(table.size());  // option bindings hold references into values
    for (const auto& [name, help] : table) {
        std::string key = name;
        for (char& ch : key) {
            if (ch == '-') ch = '_';
        }
        if (key == "lambda_steps") key = "steps";
        flags.values.emplace_back(key, std::string{});
        cmd.add_option(std::string("--") + name, flags.values.back().second, help)->type_name("VALUE");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw dwell::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

dwell::RunConfig build_config(const CLI::App& cmd, const FlagSet& flags) {
    dwell::RunConfig cfg;
    if (!flags.preset.empty()) dwell::apply_preset(cfg, flags.preset);
    if (!flags.config_path.empty()) dwell::parse_config(read_file(flags.config_path), cfg);
    for (const auto& [key, value] : flags.values) {
        std::string flag = "--" + key;
        for (char& ch : flag) {
            if (ch == '_') ch = '-';
        }
        if (key == "steps") flag = "--lambda-steps";
        if (cmd.count(flag) > 0) dwell::apply_setting(cfg, key, value);
    }
    if (flags.effective) cfg.effective = true;
    if (flags.no_richardson) cfg.richardson = false;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound-state spectra and avoided crossings of one-dimensional double wells"};
    app.require_subcommand(1);

    using Runner = int (*)(const dwell::RunConfig&, std::ostream&, std::ostream&);
    const std::vector<std::tuple<const char*, const char*, Runner>> commands = {
        {"solve", "lowest levels at one parameter point", dwell::cmd_solve},
        {"sweep", "levels across a parameter window", dwell::cmd_sweep},
        {"detect", "locate avoided crossings in a sweep", dwell::cmd_detect},
        {"compare", "analytic levels vs finite-difference oracle", dwell::cmd_compare},
    };

    std::vector<FlagSet> flag_sets(commands.size());
    std::vector<CLI::App*> subs;
    std::string presets;
    for (auto p : dwell::preset_names()) presets += (presets.empty() ? "" : " | ") + std::string(p);
    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto& [name, help, run] = commands[i];
        CLI::App* cmd = app.add_subcommand(name, help);
        FlagSet& fs = flag_sets[i];
        cmd->add_option("--preset", fs.preset, presets);
        cmd->add_option("--config", fs.config_path, "key=value configuration file");
        add_value_flags(*cmd, fs);
        cmd->add_flag("--effective", fs.effective, "sweep: append u*(a+b)^2*E columns (m1)");
        cmd->add_flag("--no-richardson", fs.no_richardson, "compare: single-grid oracle");
        subs.push_back(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : dwell::kExitConfig;
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        dwell::RunConfig cfg;
        try {
            cfg = build_config(*subs[i], flag_sets[i]);
        } catch (const std::exception& e) {
            std::cerr << std::get<0>(commands[i]) << ": config error: " << e.what() << '\n';
            return dwell::kExitConfig;
        }
        return std::get<2>(commands[i])(cfg, std::cout, std::cerr);
    }
    return dwell::kExitConfig;
}

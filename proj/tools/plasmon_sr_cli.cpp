// plasmon-sr: grid sweeps over the steady-state, dynamics, oracle and
// near-field models, written as CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "plasmon_sr/config.hpp"
#include "plasmon_sr/sweep.hpp"
#include "plasmon_sr/table.hpp"

namespace {

using namespace plasmon_sr;

enum ExitCode { kOk = 0, kRuntimeFailure = 1, kUsage = 2, kBadConfig = 3, kWriteFailure = 4 };

int report(int code, const std::string& kind, const std::vector<std::string>& messages) {
    nlohmann::ordered_json j;
    j["status"] = "error";
    j["kind"] = kind;
    j["messages"] = messages;
    std::cerr << j.dump() << "\n";
    return code;
}

struct WriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw WriteError("cannot open " + *path + " for writing");
    out << text;
    out.close();
    if (!out) throw WriteError("failed writing " + *path);
}

struct Options {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<int> workers;
    std::string format = "csv";
};

int execute(Mode mode, const Options& opt) {
    SweepConfig config;
    try {
        if (!opt.config_path.empty()) {
            config = load_config(opt.config_path, mode);
        } else {
            config = default_config(mode);
            validate(config);
        }
        if (opt.workers) {
            config.workers = *opt.workers;
            validate(config);
        }
    } catch (const ConfigError& e) {
        return report(kBadConfig, "config", e.messages());
    }

    const std::optional<std::string> out = opt.out ? opt.out : config.output;
    try {
        Table table;
        std::optional<std::string> summary;
        if (mode == Mode::OracleCompare) {
            auto campaign = run_oracle_compare(config);
            table = std::move(campaign.rows);
            summary = std::move(campaign.summary_json);
        } else {
            table = run(config);
        }
        write_text(out, opt.format == "json" ? to_json(table) : to_csv(table));
        if (summary) {
            if (out) {
                write_text(*out + ".summary.json", *summary);
            } else {
                std::cerr << *summary;
            }
        }
    } catch (const WriteError& e) {
        return report(kWriteFailure, "write", {e.what()});
    } catch (const std::exception& e) {
        return report(kRuntimeFailure, "runtime", {e.what()});
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state, dynamics, oracle and near-field sweeps for two emitters coupled to an SPP mode"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        Mode mode;
        const char* help;
        bool needs_config;
    };
    const Command commands[] = {
        {"steady", Mode::Steady, "closed-form steady state over a grid", true},
        {"dynamics", Mode::Dynamics, "moment-equation trajectories over a grid", true},
        {"oracle", Mode::OracleCompare, "master-equation vs adiabatic comparison campaign", true},
        {"field", Mode::FieldMap, "dark-mode near-field map and coupling rates", true},
        {"fig2", Mode::Figure2, "plasmon number vs pump, one and two emitters", false},
        {"fig3", Mode::Figure3, "relative quantum efficiency vs pump", false},
        {"fig4", Mode::Figure4, "maximum RQE and optimal coupling vs dephasing", false},
    };

    Options opt;
    std::vector<std::pair<CLI::App*, Mode>> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        auto* cfg = sub->add_option("--config", opt.config_path, "JSON sweep configuration");
        if (c.needs_config) cfg->required();
        sub->add_option("--out", opt.out, "output path (default: config output, else stdout)");
        sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        subs.emplace_back(sub, c.mode);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(kUsage, "usage", {e.what()});
    }

    for (const auto& [sub, mode] : subs) {
        if (sub->parsed()) return execute(mode, opt);
    }
    return report(kUsage, "usage", {"no subcommand"});
}

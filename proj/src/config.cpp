#include "plasmon_sr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace plasmon_sr {

using nlohmann::json;

namespace {

struct GridRule {
    const char* key;
    bool required;
    double min;
    bool strict;  // value must exceed min rather than reach it
};

std::vector<GridRule> grid_rules(Mode mode) {
    switch (mode) {
        case Mode::Steady:
            return {{"pump", true, 0.0, false},       {"tau_ratio", true, 0.0, true},
                    {"dephasing", false, 0.0, false}, {"gamma_tau_b", true, 0.0, false},
                    {"kappa", false, 0.0, true}};
        case Mode::Dynamics:
            return {{"pump", true, 0.0, false},         {"tau_ratio", true, 0.0, true},
                    {"dephasing", false, 0.0, false},   {"gamma_tau_b", true, 0.0, false},
                    {"gamma2_tau_b", false, 0.0, false}};
        case Mode::OracleCompare:
            return {{"pump", true, 0.0, false},
                    {"tau_ratio", true, 0.0, true},
                    {"dephasing", false, 0.0, false},
                    {"gamma_tau_b", false, 0.0, false},
                    {"kappa", false, 0.0, true},
                    {"omega_over_kappa", true, 0.0, false}};
        case Mode::FieldMap:
            return {{"z", true, -HUGE_VAL, false}, {"rho", true, 0.0, false}};
        case Mode::Figure2:
        case Mode::Figure3:
            return {{"dephasing", true, 0.0, false},
                    {"tau_ratio", true, 0.0, true},
                    {"gamma_factor", true, 0.0, false},
                    {"pump", true, 0.0, false}};
        case Mode::Figure4:
            return {{"tau_ratio", true, 0.0, true}, {"two_deph_tau_b", true, 0.0, false}};
    }
    return {};
}

std::set<std::string> allowed_keys(Mode mode) {
    std::set<std::string> keys{"mode", "grid", "output", "workers", "regime_threshold"};
    switch (mode) {
        case Mode::Dynamics: keys.insert({"tolerance", "horizon", "samples", "initial"}); break;
        case Mode::OracleCompare: keys.insert("fock_cutoff"); break;
        case Mode::FieldMap: keys.insert({"nanorod", "emitter_dipole"}); break;
        default: break;
    }
    return keys;
}

std::vector<double> log_space(double start, double stop, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = start;
        return v;
    }
    const double ls = std::log10(start);
    const double le = std::log10(stop);
    for (int i = 0; i < count; ++i) v[i] = std::pow(10.0, ls + (le - ls) * i / (count - 1));
    v.front() = start;
    v.back() = stop;
    return v;
}

std::vector<double> lin_space(double start, double stop, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = start;
        return v;
    }
    for (int i = 0; i < count; ++i) v[i] = start + (stop - start) * i / (count - 1);
    v.back() = stop;
    return v;
}

class Parser {
public:
    std::vector<std::string> errors;

    void error(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }

    std::optional<double> number(const json& j, const std::string& where) {
        if (!j.is_number()) {
            error(where, "expected a number");
            return std::nullopt;
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            error(where, "must be finite");
            return std::nullopt;
        }
        return v;
    }

    std::optional<int> integer(const json& j, const std::string& where) {
        if (!j.is_number_integer()) {
            error(where, "expected an integer");
            return std::nullopt;
        }
        return j.get<int>();
    }

    std::vector<double> grid(const json& j, const std::string& where) {
        std::vector<double> out;
        if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (auto v = number(j[i], where + "/" + std::to_string(i))) out.push_back(*v);
            }
            if (j.empty()) error(where, "grid must not be empty");
            return out;
        }
        if (j.is_number()) {
            if (auto v = number(j, where)) out.push_back(*v);
            return out;
        }
        if (!j.is_object()) {
            error(where, "expected a list of numbers or a range object");
            return out;
        }
        static const std::set<std::string> range_keys{"start", "stop", "step", "count", "spacing"};
        for (const auto& [k, _] : j.items()) {
            if (!range_keys.count(k)) error(where + "/" + k, "unknown key");
        }
        if (!j.contains("start")) error(where, "range needs \"start\"");
        if (!j.contains("stop")) error(where, "range needs \"stop\"");
        if (!j.contains("start") || !j.contains("stop")) return out;
        const auto start = number(j["start"], where + "/start");
        const auto stop = number(j["stop"], where + "/stop");
        if (!start || !stop) return out;
        if (*stop < *start) {
            error(where, "stop must not be below start");
            return out;
        }
        std::string spacing = "linear";
        if (j.contains("spacing")) {
            if (!j["spacing"].is_string()) {
                error(where + "/spacing", "expected \"linear\" or \"log\"");
                return out;
            }
            spacing = j["spacing"].get<std::string>();
            if (spacing != "linear" && spacing != "log") {
                error(where + "/spacing", "expected \"linear\" or \"log\"");
                return out;
            }
        }
        if (j.contains("step") && j.contains("count")) {
            error(where, "give either \"step\" or \"count\", not both");
            return out;
        }
        if (j.contains("step")) {
            if (spacing == "log") {
                error(where, "log spacing needs \"count\"");
                return out;
            }
            const auto step = number(j["step"], where + "/step");
            if (!step) return out;
            if (!(*step > 0.0)) {
                error(where + "/step", "step must be positive");
                return out;
            }
            const double span = (*stop - *start) / *step;
            if (span > 1e7) {
                error(where, "range has too many points");
                return out;
            }
            const auto n = static_cast<long>(std::floor(span + 1e-9)) + 1;
            for (long i = 0; i < n; ++i) out.push_back(*start + i * *step);
            return out;
        }
        if (!j.contains("count")) {
            error(where, "range needs \"step\" or \"count\"");
            return out;
        }
        const auto count = integer(j["count"], where + "/count");
        if (!count) return out;
        if (*count < 1 || *count > 10'000'000) {
            error(where + "/count", "count must be between 1 and 1e7");
            return out;
        }
        if (spacing == "log") {
            if (!(*start > 0.0)) {
                error(where + "/start", "log spacing needs a positive start");
                return out;
            }
            return log_space(*start, *stop, *count);
        }
        return lin_space(*start, *stop, *count);
    }
};

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error(messages.empty() ? std::string("invalid config") : messages.front()),
      messages_(std::move(messages)) {}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Steady: return "steady";
        case Mode::Dynamics: return "dynamics";
        case Mode::OracleCompare: return "oracle-compare";
        case Mode::FieldMap: return "field-map";
        case Mode::Figure2: return "figure2";
        case Mode::Figure3: return "figure3";
        case Mode::Figure4: return "figure4";
    }
    return "unknown";
}

std::optional<Mode> parse_mode(const std::string& name) {
    for (Mode m : {Mode::Steady, Mode::Dynamics, Mode::OracleCompare, Mode::FieldMap, Mode::Figure2,
                   Mode::Figure3, Mode::Figure4}) {
        if (name == mode_name(m)) return m;
    }
    return std::nullopt;
}

const std::vector<double>& SweepConfig::grid(const std::string& key) const {
    const auto it = grids.find(key);
    if (it == grids.end()) throw std::out_of_range("grid \"" + key + "\" is not configured");
    return it->second;
}

SweepConfig default_config(Mode mode) {
    SweepConfig c;
    c.mode = mode;
    switch (mode) {
        case Mode::Figure2:
        case Mode::Figure3:
            c.grids["dephasing"] = {0.0, 10.0};
            c.grids["tau_ratio"] = {0.1};
            c.grids["gamma_factor"] = {0.5, 1.0, 1.5};
            c.grids["pump"] = log_space(1e-2, 1e4, 60);
            break;
        case Mode::Figure4:
            c.grids["tau_ratio"] = {0.05, 0.5, 1.0};
            c.grids["two_deph_tau_b"] = lin_space(0.0, 10.0, 101);
            break;
        case Mode::Steady:
        case Mode::Dynamics:
        case Mode::OracleCompare:
            c.grids["dephasing"] = {0.0};
            break;
        case Mode::FieldMap:
            break;
    }
    return c;
}

void validate(const SweepConfig& c) {
    std::vector<std::string> errors;
    for (const auto& rule : grid_rules(c.mode)) {
        const auto it = c.grids.find(rule.key);
        const std::string where = std::string("/grid/") + rule.key;
        if (it == c.grids.end()) {
            if (rule.required) errors.push_back(where + ": required for mode " + mode_name(c.mode));
            continue;
        }
        if (it->second.empty()) errors.push_back(where + ": grid must not be empty");
        for (double v : it->second) {
            if (!std::isfinite(v) || (rule.strict ? !(v > rule.min) : v < rule.min)) {
                std::ostringstream os;
                os << where << ": value " << v << (rule.strict ? " must be > " : " must be >= ") << rule.min;
                errors.push_back(os.str());
                break;
            }
        }
    }
    for (const auto& [key, _] : c.grids) {
        const auto rules = grid_rules(c.mode);
        const bool known = std::any_of(rules.begin(), rules.end(), [&](const GridRule& r) { return key == r.key; });
        if (!known) errors.push_back("/grid/" + key + ": not used by mode " + mode_name(c.mode));
    }
    if (c.workers < 1) errors.push_back("/workers: must be >= 1");
    if (!(c.regime_threshold > 0.0)) errors.push_back("/regime_threshold: must be positive");
    if (c.mode == Mode::Dynamics) {
        if (!(c.tolerance > 0.0)) errors.push_back("/tolerance: must be positive");
        if (!(c.horizon > 0.0)) errors.push_back("/horizon: must be positive");
        if (c.samples < 1) errors.push_back("/samples: must be >= 1");
    }
    if (c.mode == Mode::OracleCompare && c.has_grid("gamma_tau_b") == c.has_grid("kappa")) {
        errors.push_back("/grid: oracle-compare needs exactly one of gamma_tau_b or kappa");
    }
    if (c.mode == Mode::OracleCompare && (c.fock_cutoff < 1 || c.fock_cutoff > 6)) {
        errors.push_back("/fock_cutoff: must be between 1 and 6");
    }
    if (c.mode == Mode::FieldMap) {
        if (!c.nanorod) {
            errors.push_back("/nanorod: required for mode field-map");
        } else {
            try {
                c.nanorod->validate();
            } catch (const std::exception& e) {
                errors.push_back(std::string("/nanorod: ") + e.what());
            }
        }
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

SweepConfig parse_config(const std::string& text, std::optional<Mode> mode_hint) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({"parse error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what()});
    }
    if (!doc.is_object()) throw ConfigError({"/: top level must be an object"});

    Parser ps;
    std::optional<Mode> mode = mode_hint;
    if (doc.contains("mode")) {
        const auto& m = doc["mode"];
        const auto parsed = m.is_string() ? parse_mode(m.get<std::string>()) : std::nullopt;
        if (!parsed) {
            throw ConfigError({"/mode: unknown mode (expected steady, dynamics, oracle-compare, field-map, "
                               "figure2, figure3 or figure4)"});
        }
        if (mode_hint && *parsed != *mode_hint) {
            throw ConfigError({std::string("/mode: config is for mode ") + mode_name(*parsed) +
                               " but the command runs " + mode_name(*mode_hint)});
        }
        mode = parsed;
    }
    if (!mode) throw ConfigError({"/mode: required when no subcommand selects it"});

    SweepConfig c = default_config(*mode);
    const auto allowed = allowed_keys(*mode);
    for (const auto& [key, value] : doc.items()) {
        const std::string where = "/" + key;
        if (!allowed.count(key)) {
            ps.error(where, "unknown key for mode " + std::string(mode_name(*mode)));
            continue;
        }
        if (key == "mode") continue;
        if (key == "grid") {
            if (!value.is_object()) {
                ps.error(where, "expected an object of grids");
                continue;
            }
            const auto rules = grid_rules(*mode);
            for (const auto& [gk, gv] : value.items()) {
                const bool known =
                    std::any_of(rules.begin(), rules.end(), [&](const GridRule& r) { return gk == r.key; });
                if (!known) {
                    ps.error(where + "/" + gk, "unknown grid for mode " + std::string(mode_name(*mode)));
                    continue;
                }
                c.grids[gk] = ps.grid(gv, where + "/" + gk);
            }
        } else if (key == "output") {
            if (value.is_string()) {
                c.output = value.get<std::string>();
            } else {
                ps.error(where, "expected a path string");
            }
        } else if (key == "workers") {
            if (auto v = ps.integer(value, where)) c.workers = *v;
        } else if (key == "regime_threshold") {
            if (auto v = ps.number(value, where)) c.regime_threshold = *v;
        } else if (key == "tolerance") {
            if (auto v = ps.number(value, where)) c.tolerance = *v;
        } else if (key == "horizon") {
            if (auto v = ps.number(value, where)) c.horizon = *v;
        } else if (key == "samples") {
            if (auto v = ps.integer(value, where)) c.samples = *v;
        } else if (key == "fock_cutoff") {
            if (auto v = ps.integer(value, where)) c.fock_cutoff = *v;
        } else if (key == "emitter_dipole") {
            if (auto v = ps.number(value, where)) c.emitter_dipole = *v;
        } else if (key == "initial") {
            if (!value.is_object()) {
                ps.error(where, "expected an object");
                continue;
            }
            for (const auto& [ik, iv] : value.items()) {
                const std::string w = where + "/" + ik;
                double* slot = ik == "sigma"            ? &c.initial.sigma
                               : ik == "inversion_corr" ? &c.initial.inversion_corr
                               : ik == "inversion1"     ? &c.initial.inversion1
                               : ik == "inversion2"     ? &c.initial.inversion2
                                                        : nullptr;
                if (!slot) {
                    ps.error(w, "unknown key");
                } else if (auto v = ps.number(iv, w)) {
                    *slot = *v;
                }
            }
        } else if (key == "nanorod") {
            if (!value.is_object()) {
                ps.error(where, "expected an object");
                continue;
            }
            NanorodSpec rod;
            for (const auto& [nk, nv] : value.items()) {
                const std::string w = where + "/" + nk;
                double* slot = nk == "z1"             ? &rod.z1
                               : nk == "z2"           ? &rod.z2
                               : nk == "omega"        ? &rod.omega
                               : nk == "split"        ? &rod.split
                               : nk == "dipole"       ? &rod.dipole
                               : nk == "index"        ? &rod.index
                               : nk == "kappa"        ? &rod.kappa
                               : nk == "exclusion_kr" ? &rod.exclusion_kr
                                                      : nullptr;
                if (!slot) {
                    ps.error(w, "unknown key");
                } else if (auto v = ps.number(nv, w)) {
                    *slot = *v;
                }
            }
            c.nanorod = rod;
        }
    }
    if (!ps.errors.empty()) throw ConfigError(std::move(ps.errors));
    validate(c);
    return c;
}

SweepConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode_hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({path.string() + ": cannot open config file"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), mode_hint);
}

}  // namespace plasmon_sr

#include "plasmon_sr/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "plasmon_sr/lindblad.hpp"
#include "plasmon_sr/model.hpp"
#include "plasmon_sr/moments.hpp"
#include "plasmon_sr/nearfield.hpp"
#include "plasmon_sr/steady.hpp"

namespace plasmon_sr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Point = std::vector<double>;

// Cartesian product in lexicographic index order, first axis outermost.
std::vector<Point> cartesian(const std::vector<std::vector<double>>& axes) {
    std::vector<Point> out{{}};
    for (const auto& axis : axes) {
        std::vector<Point> next;
        next.reserve(out.size() * axis.size());
        for (const auto& prefix : out) {
            for (double v : axis) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<double> grid_or(const SweepConfig& c, const std::string& key, std::vector<double> fallback) {
    return c.has_grid(key) ? c.grid(key) : std::move(fallback);
}

std::string append_flag(std::string flags, const std::string& flag) {
    if (!flags.empty()) flags += ';';
    return flags + flag;
}

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(kNaN); }

double rel_diff(double value, double reference) {
    const double diff = std::abs(value - reference);
    const double scale = std::abs(reference);
    return scale < 1e-14 ? diff : diff / scale;
}

}  // namespace

Table run_steady(const SweepConfig& c) {
    const auto points = cartesian({c.grid("tau_ratio"), grid_or(c, "dephasing", {0.0}), c.grid("gamma_tau_b"),
                                   grid_or(c, "kappa", {kNaN}), c.grid("pump")});
    Table t;
    t.header = {"tau_ratio",        "dephasing_tau_a",      "gamma_tau_b",  "kappa_tau_a",  "pump_tau_a",
                "inversion0",       "inversion_two",        "inversion_single", "superradiance", "rqe",
                "plasmons_norm_two", "plasmons_norm_single", "plasmons_two", "plasmons_single", "sigma",
                "inversion_corr",   "flags"};
    auto rows = parallel_map<std::vector<Cell>>(points.size(), c.workers, [&](std::size_t i) {
        const auto& pt = points[i];
        const double tau_ratio = pt[0], deph = pt[1], gamma_tb = pt[2], kappa = pt[3], pump = pt[4];
        const auto p = EmitterParams::normalized(pump, tau_ratio, deph);
        const double gamma = gamma_tb / p.tau_b();
        const std::optional<double> k = std::isnan(kappa) ? std::nullopt : std::optional<double>(kappa);
        const auto r = steady_report(p, gamma, k);

        auto coupling = CouplingSpec::symmetric(gamma);
        if (k) coupling = CouplingSpec::from_rabi(std::sqrt(gamma * *k), std::sqrt(gamma * *k), *k);
        std::string flags = join_tags(validate_regime(p, coupling, k, c.regime_threshold));
        if (!r.rqe) flags = append_flag(flags, "rqe_undefined");

        return std::vector<Cell>{tau_ratio,
                                 deph,
                                 gamma_tb,
                                 kappa,
                                 pump,
                                 derive_scalars(p, gamma).inversion0,
                                 r.inversion_two,
                                 r.inversion_single,
                                 r.superradiance,
                                 opt(r.rqe),
                                 r.plasmons_norm_two,
                                 r.plasmons_norm_single,
                                 opt(r.plasmons_two),
                                 opt(r.plasmons_single),
                                 r.sigma,
                                 r.inversion_corr,
                                 flags};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

Table run_dynamics(const SweepConfig& c) {
    const auto points = cartesian({c.grid("tau_ratio"), grid_or(c, "dephasing", {0.0}), c.grid("gamma_tau_b"),
                                   grid_or(c, "gamma2_tau_b", {kNaN}), c.grid("pump")});
    Table t;
    t.header = {"tau_ratio",  "dephasing_tau_a", "gamma_tau_b", "gamma2_tau_b", "pump_tau_a", "time_tau_a",
                "sigma",      "inversion_corr",  "inversion1",  "inversion2",   "physical",   "flags"};
    auto blocks = parallel_map<std::vector<std::vector<Cell>>>(points.size(), c.workers, [&](std::size_t i) {
        const auto& pt = points[i];
        const double tau_ratio = pt[0], deph = pt[1], g1_tb = pt[2], pump = pt[4];
        const double g2_tb = std::isnan(pt[3]) ? g1_tb : pt[3];
        const auto p = EmitterParams::normalized(pump, tau_ratio, deph);
        const double g1 = g1_tb / p.tau_b();
        const double g2 = g2_tb / p.tau_b();
        const auto traj = integrate_moments(c.initial, p, g1, g2, c.horizon, c.tolerance, c.samples);

        std::string flags = join_tags(validate_regime(p, CouplingSpec{g1, g2, {}, {}, {}}, std::nullopt,
                                                      c.regime_threshold));
        if (traj.left_physical_region) flags = append_flag(flags, "left_physical_region");

        std::vector<std::vector<Cell>> out;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const auto& s = traj.states[k];
            out.push_back({tau_ratio, deph, g1_tb, g2_tb, pump, traj.times[k], s.sigma, s.inversion_corr,
                           s.inversion1, s.inversion2, static_cast<long long>(s.physical() ? 1 : 0), flags});
        }
        return out;
    });
    for (auto& b : blocks) {
        for (auto& r : b) t.add_row(std::move(r));
    }
    return t;
}

Table run_field_map(const SweepConfig& c) {
    const NanorodSpec rod = *c.nanorod;
    const auto points = cartesian({c.grid("z"), c.grid("rho")});
    Table t;
    t.header = {"z", "rho", "magnitude", "theta", "cos_theta", "phase_z", "phase_rho", "rabi", "gamma", "flags"};
    const std::string base_flags = rod.modes_overlap() ? "modes_overlap" : "";
    auto rows = parallel_map<std::vector<Cell>>(points.size(), c.workers, [&](std::size_t i) {
        const EmitterSite site{points[i][0], points[i][1]};
        try {
            const auto f = dark_mode_field(rod, site);
            const auto cp = coupling_from_position(rod, site, c.emitter_dipole);
            return std::vector<Cell>{site.z,      site.rho,    f.magnitude, f.theta, f.cos_theta,
                                     f.phase_z,   f.phase_rho, cp.rabi,     cp.gamma, base_flags};
        } catch (const std::domain_error&) {
            return std::vector<Cell>{site.z, site.rho, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN,
                                     append_flag(base_flags, "excluded")};
        }
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

namespace {

// gamma tau_b for a figure curve: factor * x_opt(b) / 2.
double figure_gamma_tau_b(double tau_ratio, double deph_tau_a, double factor) {
    const double b = 1.0 + 2.0 * deph_tau_a * tau_ratio + tau_ratio;
    return factor * 0.5 * optimal_coupling(b);
}

}  // namespace

Table run_figure2(const SweepConfig& c) {
    const auto points = cartesian({c.grid("dephasing"), c.grid("tau_ratio"), c.grid("gamma_factor"), c.grid("pump")});
    Table t;
    t.header = {"dephasing_tau_a", "tau_ratio", "gamma_factor", "gamma_tau_b", "pump_tau_a", "emitters",
                "plasmons_norm", "flags"};
    auto blocks = parallel_map<std::vector<std::vector<Cell>>>(points.size(), c.workers, [&](std::size_t i) {
        const auto& pt = points[i];
        const double deph = pt[0], tau_ratio = pt[1], factor = pt[2], pump = pt[3];
        const double gamma_tb = figure_gamma_tau_b(tau_ratio, deph, factor);
        const auto p = EmitterParams::normalized(pump, tau_ratio, deph);
        const double gamma = gamma_tb / p.tau_b();
        const std::string flags =
            join_tags(validate_regime(p, CouplingSpec::symmetric(gamma), std::nullopt, c.regime_threshold));
        const double n1 = plasmon_number_normalized(p, stationary_single_emitter(p, gamma));
        const double n2 = plasmon_number_normalized(p, stationary_two_emitters(p, gamma).inversion);
        return std::vector<std::vector<Cell>>{
            {deph, tau_ratio, factor, gamma_tb, pump, 1LL, n1, flags},
            {deph, tau_ratio, factor, gamma_tb, pump, 2LL, n2, flags},
        };
    });
    for (auto& b : blocks) {
        for (auto& r : b) t.add_row(std::move(r));
    }
    return t;
}

Table run_figure3(const SweepConfig& c) {
    const auto points = cartesian({c.grid("dephasing"), c.grid("tau_ratio"), c.grid("gamma_factor"), c.grid("pump")});
    Table t;
    t.header = {"dephasing_tau_a", "tau_ratio", "gamma_factor", "gamma_tau_b", "pump_tau_a", "rqe",
                "rqe_asymptote", "flags"};
    auto rows = parallel_map<std::vector<Cell>>(points.size(), c.workers, [&](std::size_t i) {
        const auto& pt = points[i];
        const double deph = pt[0], tau_ratio = pt[1], factor = pt[2], pump = pt[3];
        const double gamma_tb = figure_gamma_tau_b(tau_ratio, deph, factor);
        const auto p = EmitterParams::normalized(pump, tau_ratio, deph);
        const double gamma = gamma_tb / p.tau_b();
        const auto s = derive_scalars(p, gamma);
        std::string flags =
            join_tags(validate_regime(p, CouplingSpec::symmetric(gamma), std::nullopt, c.regime_threshold));
        double r = kNaN;
        if (gamma > 0.0 && pump > 0.0) {
            r = rqe(p, gamma);
        } else {
            flags = append_flag(flags, "rqe_undefined");
        }
        return std::vector<Cell>{deph, tau_ratio, factor, gamma_tb, pump, r, rqe_high_pump(s.x, s.b), flags};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

Table run_figure4(const SweepConfig& c) {
    const auto points = cartesian({c.grid("tau_ratio"), c.grid("two_deph_tau_b")});
    Table t;
    t.header = {"tau_ratio", "two_deph_tau_b", "b", "x_opt", "gamma_opt_tau_b", "gamma_opt_tau_a", "rqe_max"};
    auto rows = parallel_map<std::vector<Cell>>(points.size(), c.workers, [&](std::size_t i) {
        const double tau_ratio = points[i][0], two_deph_tb = points[i][1];
        const double b = 1.0 + two_deph_tb + tau_ratio;
        const double x = optimal_coupling(b);
        return std::vector<Cell>{tau_ratio, two_deph_tb, b, x, 0.5 * x, 0.5 * x / tau_ratio, rqe_high_pump(x, b)};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

OracleCampaign run_oracle_compare(const SweepConfig& c) {
    const bool fixed_gamma = c.has_grid("gamma_tau_b");
    const auto coupling_axis = fixed_gamma ? c.grid("gamma_tau_b") : c.grid("kappa");
    const auto points = cartesian({c.grid("tau_ratio"), grid_or(c, "dephasing", {0.0}), coupling_axis,
                                   c.grid("pump"), c.grid("omega_over_kappa")});
    const std::array<PumpModel, 2> models{PumpModel::FromGround, PumpModel::FromGroundAndLower};

    Table t;
    t.header = {"tau_ratio", "dephasing_tau_a", "gamma_tau_b", "pump_tau_a", "omega_over_kappa", "kappa_tau_a",
                "rabi_tau_a", "adiabatic_inversion", "adiabatic_sigma", "adiabatic_plasmons"};
    for (PumpModel m : models) {
        const std::string pre = pump_model_name(m);
        for (const char* col : {"_inversion", "_sigma", "_plasmons", "_rel_inversion", "_rel_sigma",
                                "_rel_plasmons", "_discrepancy", "_top_fock"}) {
            t.header.push_back(pre + col);
        }
    }
    t.header.insert(t.header.end(), {"variant_gap", "flags", "error"});

    struct Outcome {
        std::vector<Cell> row;
        std::array<double, 2> discrepancy{kNaN, kNaN};
    };

    auto outcomes = parallel_map<Outcome>(points.size(), c.workers, [&](std::size_t i) {
        const auto& pt = points[i];
        const double tau_ratio = pt[0], deph = pt[1], coupling = pt[2], pump = pt[3], ratio = pt[4];
        Outcome out;
        double gamma_tb = kNaN, kappa = kNaN, rabi = kNaN;
        try {
            const auto p = EmitterParams::normalized(pump, tau_ratio, deph);
            if (fixed_gamma) {
                gamma_tb = coupling;
                const double gamma = gamma_tb / p.tau_b();
                if (!(ratio > 0.0)) throw std::invalid_argument("fixed-gamma campaigns need omega_over_kappa > 0");
                kappa = gamma / (ratio * ratio);
                rabi = ratio * kappa;
            } else {
                kappa = coupling;
                rabi = ratio * kappa;
                gamma_tb = rabi * rabi / kappa * p.tau_b();
            }

            std::array<AdiabaticComparison, 2> cmp;
            for (std::size_t m = 0; m < models.size(); ++m) {
                cmp[m] = compare_with_adiabatic(SystemSpec::symmetric(p, rabi, kappa, c.fock_cutoff, models[m]),
                                                c.regime_threshold);
            }
            const auto& adi = cmp[0].adiabatic;
            out.row = {tau_ratio, deph, gamma_tb, pump, ratio, kappa, rabi,
                       0.5 * (adi.inversion1 + adi.inversion2), adi.sigma, cmp[0].adiabatic_plasmons};
            for (std::size_t m = 0; m < models.size(); ++m) {
                const auto& r = cmp[m];
                out.discrepancy[m] = r.discrepancy();
                out.row.insert(out.row.end(),
                               {0.5 * (r.oracle.inversion1 + r.oracle.inversion2), r.oracle.sigma, r.oracle.plasmons,
                                r.rel_mean_inversion, r.rel_sigma, r.rel_plasmons, r.discrepancy(),
                                r.oracle.top_fock_population});
            }
            const auto& o0 = cmp[0].oracle;
            const auto& o1 = cmp[1].oracle;
            const double gap = std::max({rel_diff(0.5 * (o1.inversion1 + o1.inversion2),
                                                  0.5 * (o0.inversion1 + o0.inversion2)),
                                         rel_diff(o1.sigma, o0.sigma), rel_diff(o1.plasmons, o0.plasmons)});
            std::string flags = join_tags(cmp[0].diagnostics);
            if (std::max(o0.top_fock_population, o1.top_fock_population) >= 1e-8) {
                flags = append_flag(flags, "fock_cutoff_inadequate");
            }
            out.row.insert(out.row.end(), {gap, flags, std::string()});
        } catch (const std::exception& e) {
            out.row = {tau_ratio, deph, gamma_tb, pump, ratio, kappa, rabi, kNaN, kNaN, kNaN};
            for (std::size_t k = 0; k < 8 * models.size(); ++k) out.row.emplace_back(kNaN);
            out.row.insert(out.row.end(), {kNaN, std::string(), std::string(e.what())});
        }
        return out;
    });

    OracleCampaign campaign;
    campaign.rows = std::move(t);
    for (auto& o : outcomes) campaign.rows.add_row(o.row);

    // Group consecutive rows sharing everything but omega_over_kappa and check
    // that the discrepancy shrinks as omega_over_kappa decreases.
    using nlohmann::ordered_json;
    ordered_json summary;
    ordered_json groups = ordered_json::array();
    bool all_monotone = true;
    long failures = 0;
    const std::size_t per_group = c.grid("omega_over_kappa").size();
    for (std::size_t g = 0; g * per_group < points.size(); ++g) {
        const auto& first = points[g * per_group];
        ordered_json entry;
        entry["tau_ratio"] = first[0];
        entry["dephasing_tau_a"] = first[1];
        entry[fixed_gamma ? "gamma_tau_b" : "kappa_tau_a"] = first[2];
        entry["pump_tau_a"] = first[3];

        std::vector<std::size_t> order(per_group);
        for (std::size_t k = 0; k < per_group; ++k) order[k] = g * per_group + k;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[a][4] > points[b][4]; });
        ordered_json ratios = ordered_json::array();
        for (std::size_t idx : order) ratios.push_back(points[idx][4]);
        entry["omega_over_kappa"] = ratios;

        for (std::size_t m = 0; m < models.size(); ++m) {
            ordered_json seq = ordered_json::array();
            bool monotone = true;
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t idx : order) {
                const double d = outcomes[idx].discrepancy[m];
                if (std::isnan(d)) {
                    monotone = false;
                    ++failures;
                    seq.push_back(nullptr);
                    continue;
                }
                seq.push_back(d);
                if (!(d < prev)) monotone = false;
                prev = d;
            }
            entry[pump_model_name(models[m])] = {{"discrepancy", seq}, {"monotone", monotone}};
            all_monotone = all_monotone && monotone;
        }
        groups.push_back(std::move(entry));
    }
    summary["groups"] = std::move(groups);
    summary["failed_points"] = failures;
    summary["monotone"] = all_monotone;
    summary["verdict"] = all_monotone ? "pass" : "fail";
    campaign.monotone = all_monotone;
    campaign.summary_json = summary.dump(2) + "\n";
    return campaign;
}

Table run(const SweepConfig& c) {
    switch (c.mode) {
        case Mode::Steady: return run_steady(c);
        case Mode::Dynamics: return run_dynamics(c);
        case Mode::OracleCompare: return run_oracle_compare(c).rows;
        case Mode::FieldMap: return run_field_map(c);
        case Mode::Figure2: return run_figure2(c);
        case Mode::Figure3: return run_figure3(c);
        case Mode::Figure4: return run_figure4(c);
    }
    throw std::logic_error("unhandled mode");
}

}  // namespace plasmon_sr

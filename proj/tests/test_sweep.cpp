#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <sstream>

#include <json.hpp>

#include "plasmon_sr/config.hpp"
#include "plasmon_sr/steady.hpp"
#include "plasmon_sr/sweep.hpp"
#include "plasmon_sr/table.hpp"

using namespace plasmon_sr;

namespace {

std::vector<std::size_t> rows_where(const Table& t, const std::string& col, double value) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.number(i, col) == value) out.push_back(i);
    }
    return out;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(2.0 / 3.0) == "0.66666666666666663");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(HUGE_VAL) == "inf");
    CHECK(format_double(-HUGE_VAL) == "-inf");
    // 17 digits survive a round trip
    const double x = 1.0 / 3.0;
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv and json serialization") {
    Table t;
    t.header = {"a", "n", "flags"};
    t.add_row({0.5, 3LL, std::string("x;y")});
    t.add_row({std::nan(""), -1LL, std::string("needs,quote")});
    CHECK(to_csv(t) == "a,n,flags\n0.5,3,x;y\nnan,-1,\"needs,quote\"\n");
    const auto j = nlohmann::json::parse(to_json(t));
    REQUIRE(j.size() == 2);
    CHECK(j[0]["a"] == 0.5);
    CHECK(j[0]["n"] == 3);
    CHECK(j[1]["a"].is_null());
    CHECK(j[1]["flags"] == "needs,quote");
    CHECK_THROWS_AS(t.add_row({1.0}), std::logic_error);
    CHECK_THROWS_AS(t.column("missing"), std::out_of_range);
}

TEST_CASE("parallel_map keeps index order and rethrows") {
    for (int workers : {1, 2, 7}) {
        const auto v = parallel_map<int>(100, workers, [](std::size_t i) { return static_cast<int>(i * i); });
        REQUIRE(v.size() == 100);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    }
    std::atomic<int> calls{0};
    CHECK_THROWS_AS(parallel_map<int>(50, 4,
                                      [&](std::size_t i) -> int {
                                          ++calls;
                                          if (i == 13) throw std::runtime_error("boom");
                                          return 0;
                                      }),
                    std::runtime_error);
    CHECK(parallel_map<int>(0, 3, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("steady sweep rows and flags") {
    auto c = parse_config(R"({"mode": "steady", "grid": {
        "pump": [0, 100], "tau_ratio": [0.1], "gamma_tau_b": [0, 0.1865, 1.5], "kappa": [1000]}})");
    const auto t = run_steady(c);
    CHECK(t.rows.size() == 6);
    CHECK(t.header.front() == "tau_ratio");
    CHECK(t.header.back() == "flags");
    // pump is the innermost axis
    CHECK(t.number(0, "pump_tau_a") == 0.0);
    CHECK(t.number(1, "pump_tau_a") == 100.0);

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double g = t.number(i, "gamma_tau_b");
        const auto& flags = t.text(i, "flags");
        CHECK((flags.find("inversion_bound") != std::string::npos) == (g >= 1.0));
        if (g == 0.0 || t.number(i, "pump_tau_a") == 0.0) {
            CHECK(std::isnan(t.number(i, "rqe")));
            CHECK(flags.find("rqe_undefined") != std::string::npos);
        }
    }
    const auto p = EmitterParams::normalized(100.0, 0.1);
    CHECK(t.number(3, "inversion_two") == stationary_two_emitters(p, 1.865).inversion);
    CHECK(t.number(3, "rqe") == rqe(p, 1.865));
}

TEST_CASE("dynamics sweep emits one trajectory block per point") {
    auto c = parse_config(R"({"mode": "dynamics", "horizon": 5, "samples": 4,
        "grid": {"pump": [1, 10], "tau_ratio": [0.1], "gamma_tau_b": [0.2]}})");
    const auto t = run_dynamics(c);
    REQUIRE(t.rows.size() == 10);
    CHECK(t.number(0, "time_tau_a") == 0.0);
    CHECK(t.number(4, "time_tau_a") == 5.0);
    CHECK(t.number(5, "pump_tau_a") == 10.0);
    CHECK(t.number(0, "gamma2_tau_b") == 0.2);  // defaults to the symmetric case
}

TEST_CASE("field map flags excluded sites") {
    auto c = parse_config(R"({"mode": "field-map", "nanorod": {"split": 0.5},
        "grid": {"z": [-0.5, 0], "rho": [0, 1]}})");
    const auto t = run_field_map(c);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.text(0, "flags") == "excluded");
    CHECK(std::isnan(t.number(0, "magnitude")));
    CHECK(t.number(1, "magnitude") > 0.0);
    CHECK(t.number(2, "magnitude") == 0.0);  // rod centre
    CHECK(t.text(3, "flags").empty());
}

TEST_CASE("figure 2") {
    auto c = parse_config(R"({"grid": {"pump": [0, 1, 10000], "gamma_factor": [1]}})", Mode::Figure2);
    const auto t = run_figure2(c);
    REQUIRE(t.rows.size() == 2 * 3 * 2);
    for (std::size_t i : rows_where(t, "pump_tau_a", 0.0)) CHECK(t.number(i, "plasmons_norm") == 0.0);

    auto value = [&](double deph, double pump, long long n) {
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            if (t.number(i, "dephasing_tau_a") == deph && t.number(i, "pump_tau_a") == pump &&
                std::get<long long>(t.rows[i][t.column("emitters")]) == n) {
                return t.number(i, "plasmons_norm");
            }
        }
        FAIL("row not found");
        return 0.0;
    };
    CHECK(value(0.0, 1e4, 2) > value(0.0, 1e4, 1));
    CHECK(value(10.0, 1e4, 2) > value(0.0, 1e4, 2));
    CHECK(value(10.0, 1e4, 1) > value(0.0, 1e4, 1));
}

TEST_CASE("figure 3 high-pump values") {
    const auto t = run_figure3(default_config(Mode::Figure3));
    REQUIRE(t.rows.size() == 2 * 3 * 60);
    for (std::size_t i : rows_where(t, "pump_tau_a", 1e4)) {
        const double factor = t.number(i, "gamma_factor");
        const double deph = t.number(i, "dephasing_tau_a");
        if (factor == 1.0) {
            CHECK(t.number(i, "rqe") == doctest::Approx(deph == 0.0 ? 1.145 : 1.07).epsilon(0.01));
        }
    }
    // off-optimal asymptotes sit below the optimal one
    for (double deph : {0.0, 10.0}) {
        double best = 0.0, others = 0.0;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            if (t.number(i, "dephasing_tau_a") != deph) continue;
            const double a = t.number(i, "rqe_asymptote");
            if (t.number(i, "gamma_factor") == 1.0) {
                best = a;
            } else {
                others = std::max(others, a);
            }
        }
        CHECK(others < best);
    }
}

TEST_CASE("figure 4 trends") {
    const auto t = run_figure4(default_config(Mode::Figure4));
    REQUIRE(t.rows.size() == 3 * 101);
    for (std::size_t block = 0; block < 3; ++block) {
        for (std::size_t k = 1; k < 101; ++k) {
            const std::size_t i = block * 101 + k;
            CHECK(t.number(i, "rqe_max") < t.number(i - 1, "rqe_max"));
            CHECK(t.number(i, "gamma_opt_tau_b") > t.number(i - 1, "gamma_opt_tau_b"));
        }
    }
    auto tiny = parse_config(R"({"grid": {"tau_ratio": [1e-9], "two_deph_tau_b": [0]}})", Mode::Figure4);
    CHECK(run_figure4(tiny).number(0, "rqe_max") == doctest::Approx(1.155).epsilon(0.001));
}

TEST_CASE("oracle campaign: zero coupling row and failing rows") {
    auto c = parse_config(R"({"mode": "oracle-compare", "fock_cutoff": 1,
        "grid": {"pump": [1], "tau_ratio": [0.1], "kappa": [20], "omega_over_kappa": [0.05, 0]}})");
    const auto camp = run_oracle_compare(c);
    REQUIRE(camp.rows.rows.size() == 2);
    CHECK(camp.rows.number(1, "rabi_tau_a") == 0.0);
    CHECK(camp.rows.number(1, "ground_discrepancy") < 1e-10);
    CHECK(camp.rows.number(1, "ground_and_lower_discrepancy") < 1e-10);
    CHECK(camp.rows.number(0, "variant_gap") > 0.0);
    const auto summary = nlohmann::json::parse(camp.summary_json);
    CHECK(summary["groups"].size() == 1);
    CHECK(summary["monotone"] == camp.monotone);

    // omega_over_kappa = 0 cannot hold gamma fixed: the row fails, the run goes on
    auto bad = parse_config(R"({"mode": "oracle-compare", "fock_cutoff": 1,
        "grid": {"pump": [1], "tau_ratio": [0.1], "gamma_tau_b": [0.02], "omega_over_kappa": [0.1, 0]}})");
    const auto b = run_oracle_compare(bad);
    REQUIRE(b.rows.rows.size() == 2);
    CHECK(b.rows.text(0, "error").empty());
    CHECK_FALSE(b.rows.text(1, "error").empty());
    CHECK(std::isnan(b.rows.number(1, "ground_discrepancy")));
    CHECK_FALSE(b.monotone);
    CHECK(nlohmann::json::parse(b.summary_json)["failed_points"] == 2);
}

TEST_CASE("output does not depend on the worker count") {
    auto c = default_config(Mode::Figure3);
    c.workers = 1;
    const auto one = to_csv(run(c));
    c.workers = 4;
    CHECK(to_csv(run(c)) == one);
    CHECK(to_csv(run(c)) == one);

    auto s = parse_config(R"({"mode": "steady", "grid": {
        "pump": {"start": 0.01, "stop": 1e4, "count": 40, "spacing": "log"},
        "tau_ratio": [0.05, 0.1], "dephasing": [0, 5], "gamma_tau_b": [0.1, 0.2, 0.9]}})");
    const auto base = to_csv(run(s));
    s.workers = 3;
    CHECK(to_csv(run(s)) == base);
}

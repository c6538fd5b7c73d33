// Grid sweeps over the library operations. Each runner returns a Table whose
// header is fixed per mode and whose rows follow the nested grid order
// (first listed grid outermost), independent of the worker count.

#pragma once

#include <functional>
#include <string>

#include "plasmon_sr/config.hpp"
#include "plasmon_sr/table.hpp"

namespace plasmon_sr {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Results keep
/// index order. The first exception thrown by fn is rethrown after all
/// workers stop.
template <class T>
std::vector<T> parallel_map(std::size_t count, int workers, const std::function<T(std::size_t)>& fn);

Table run_steady(const SweepConfig& config);
Table run_dynamics(const SweepConfig& config);
Table run_field_map(const SweepConfig& config);
Table run_figure2(const SweepConfig& config);
Table run_figure3(const SweepConfig& config);
Table run_figure4(const SweepConfig& config);

struct OracleCampaign {
    Table rows;
    std::string summary_json;  // per base point discrepancy sequences + monotone verdict
    bool monotone = false;
};

OracleCampaign run_oracle_compare(const SweepConfig& config);

/// Dispatches on config.mode. For oracle-compare the summary is discarded.
Table run(const SweepConfig& config);

}  // namespace plasmon_sr

#include "plasmon_sr/detail/parallel.hpp"

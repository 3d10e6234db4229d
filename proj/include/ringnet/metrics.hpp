#pragma once

#include "ringnet/common.hpp"

#include <string>
#include <vector>

namespace ringnet {

struct MetricsRow {
  long episode = 0;
  std::string condition_id;
  double mean_return = 0;
  double min_return = 0;
  double value_pred = 0;     // mean over t of the horizon-summed value prediction
  double value_band_lo = 0;  // mean over t of that prediction minus the value deviation
  Index active_subnetwork = 0;
  Index subnetwork_count = 1;
  std::vector<double> primary;  // empty when undefined
  std::vector<double> supplementary;
  bool grew = false;
};

// `width` is the number of per-subnetwork contribution columns.
std::string metrics_header(Index width);
std::string emit_metrics_row(const MetricsRow& row, Index width);
// Header plus every row, sized to the largest subnetwork count seen.
std::string metrics_csv(const std::vector<MetricsRow>& rows);

}  // namespace ringnet

#include "ringnet/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace ringnet {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void contrib_fields(std::string& line, const std::vector<double>& v, Index width) {
  for (Index k = 0; k < width; ++k) {
    line += ',';
    if (k < static_cast<Index>(v.size())) line += num(v[k]);
  }
}

}  // namespace

std::string metrics_header(Index width) {
  std::string h = "episode,condition_id,mean_return,min_return,value_pred,value_band_lo,active_subnetwork,subnetwork_count";
  for (Index k = 0; k < width; ++k) h += ",primary_contrib_" + std::to_string(k);
  for (Index k = 0; k < width; ++k) h += ",supplementary_contrib_" + std::to_string(k);
  return h + ",grew\n";
}

std::string emit_metrics_row(const MetricsRow& r, Index width) {
  std::string line = std::to_string(r.episode) + ',' + field(r.condition_id) + ',' + num(r.mean_return) + ',' +
                     num(r.min_return) + ',' + num(r.value_pred) + ',' + num(r.value_band_lo) + ',' +
                     std::to_string(r.active_subnetwork) + ',' + std::to_string(r.subnetwork_count);
  contrib_fields(line, r.primary, width);
  contrib_fields(line, r.supplementary, width);
  line += r.grew ? ",1\n" : ",0\n";
  return line;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  Index width = 1;
  for (const auto& r : rows) width = std::max(width, r.subnetwork_count);
  std::string out = metrics_header(width);
  for (const auto& r : rows) out += emit_metrics_row(r, width);
  return out;
}

}  // namespace ringnet

#pragma once

#include "hyperqaoa/experiments.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hyperqaoa {

// Column order: instance_id, n, m1..m5, D, beta_star, scheme, p, energy,
// e_min, ratio, method, seed, gammas, betas (angle lists joined by ';').
// The optional first line "# generated <UTC time>" is skipped on read.
inline constexpr std::string_view kRecordCsvHeader =
    "instance_id,n,m1,m2,m3,m4,m5,D,beta_star,scheme,p,energy,e_min,ratio,"
    "method,seed,gammas,betas";

std::string records_to_csv(const std::vector<ExperimentRecord> &records,
                           bool with_timestamp);
std::vector<ExperimentRecord> records_from_csv(std::string_view text);

enum class RecordFilter {
  All,   // every instance
  K2Only // instances whose terms all have locality <= 2
};

RecordFilter parse_filter(std::string_view token);

struct AggregateRow {
  Scheme scheme;
  std::size_t p;
  double mean_ratio;
  std::size_t count;
};

// Mean approximation ratio per (scheme, p), ordered by scheme then p.
// Throws EmptySelection when the filter keeps nothing.
std::vector<AggregateRow> aggregate_report(
    const std::vector<ExperimentRecord> &records, RecordFilter filter);

std::string aggregate_to_csv(const std::vector<AggregateRow> &rows);

// Static line chart of mean ratio against p, one series per scheme.
std::string render_svg(const std::vector<AggregateRow> &rows,
                       std::string_view title);

} // namespace hyperqaoa

#include "hyperqaoa/report.hpp"

#include "hyperqaoa/config.hpp"
#include "hyperqaoa/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

namespace hyperqaoa {

namespace {

std::string utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

std::string records_to_csv(const std::vector<ExperimentRecord> &records,
                           bool with_timestamp) {
  std::string out;
  if (with_timestamp)
    out += "# generated " + utc_now() + "\n";
  out += kRecordCsvHeader;
  out += '\n';
  for (const auto &r : records) {
    out += r.instance_id + ',' + std::to_string(r.n);
    for (std::size_t k = 0; k < 5; ++k)
      out += ',' + std::to_string(k < r.m.size() ? r.m[k] : 0);
    out += ',' + format_double(r.degree) + ',' + format_double(r.beta_star);
    out += ',' + std::string(scheme_name(r.scheme)) + ',' + std::to_string(r.p);
    out += ',' + format_double(r.energy) + ',' + format_double(r.e_min) + ',' +
           format_double(r.ratio);
    out += ',' + r.method + ',' + std::to_string(r.seed);
    out += ',' + join_doubles(r.gammas, ';') + ',' + join_doubles(r.betas, ';');
    out += '\n';
  }
  return out;
}

std::vector<ExperimentRecord> records_from_csv(std::string_view text) {
  std::vector<ExperimentRecord> out;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    if (!header_seen) {
      if (line != kRecordCsvHeader)
        throw ParseError("results csv: unexpected header");
      header_seen = true;
      continue;
    }
    const auto cols = split_list(line);
    if (cols.size() != 18)
      throw ParseError("results csv line " + std::to_string(line_no) +
                       ": expected 18 columns");
    ExperimentRecord r;
    r.instance_id = cols[0];
    r.n = static_cast<int>(parse_int(cols[1]));
    for (std::size_t k = 0; k < 5; ++k)
      r.m.push_back(static_cast<std::size_t>(parse_uint64(cols[2 + k])));
    r.degree = parse_double(cols[7]);
    r.beta_star = parse_double(cols[8]);
    r.scheme = parse_scheme(cols[9]);
    r.p = static_cast<std::size_t>(parse_uint64(cols[10]));
    r.energy = parse_double(cols[11]);
    r.e_min = parse_double(cols[12]);
    r.ratio = parse_double(cols[13]);
    r.method = cols[14];
    r.seed = parse_uint64(cols[15]);
    for (const auto &g : split_list(cols[16], ';'))
      r.gammas.push_back(parse_double(g));
    for (const auto &b : split_list(cols[17], ';'))
      r.betas.push_back(parse_double(b));
    out.push_back(std::move(r));
  }
  if (!header_seen)
    throw ParseError("results csv: missing header");
  return out;
}

RecordFilter parse_filter(std::string_view token) {
  token = trim(token);
  if (token == "all")
    return RecordFilter::All;
  if (token == "k2only")
    return RecordFilter::K2Only;
  throw ConfigError("unknown filter '" + std::string(token) +
                    "' (expected all or k2only)");
}

std::vector<AggregateRow> aggregate_report(
    const std::vector<ExperimentRecord> &records, RecordFilter filter) {
  std::map<std::pair<Scheme, std::size_t>, std::pair<double, std::size_t>> acc;
  for (const auto &r : records) {
    if (filter == RecordFilter::K2Only && !r.only_low_locality())
      continue;
    auto &slot = acc[{r.scheme, r.p}];
    slot.first += r.ratio;
    ++slot.second;
  }
  if (acc.empty())
    throw EmptySelection("aggregate_report: no records match the filter");
  std::vector<AggregateRow> rows;
  for (const auto &[key, sum] : acc)
    rows.push_back({key.first, key.second,
                    sum.first / static_cast<double>(sum.second), sum.second});
  return rows;
}

std::string aggregate_to_csv(const std::vector<AggregateRow> &rows) {
  std::string out = "scheme,p,mean_ratio,instances\n";
  for (const auto &r : rows)
    out += std::string(scheme_name(r.scheme)) + ',' + std::to_string(r.p) +
           ',' + format_double(r.mean_ratio) + ',' + std::to_string(r.count) +
           '\n';
  return out;
}

std::string render_svg(const std::vector<AggregateRow> &rows,
                       std::string_view title) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 170, top = 40, bottom = 55;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t p_min = SIZE_MAX, p_max = 0;
  double y_min = 1.0, y_max = 0.0;
  for (const auto &r : rows) {
    p_min = std::min(p_min, r.p);
    p_max = std::max(p_max, r.p);
    y_min = std::min(y_min, r.mean_ratio);
    y_max = std::max(y_max, r.mean_ratio);
  }
  if (rows.empty()) {
    p_min = p_max = 1;
    y_min = 0.0;
    y_max = 1.0;
  }
  y_min = std::floor(y_min * 20.0) / 20.0;
  y_max = std::ceil(y_max * 20.0) / 20.0;
  if (y_max <= y_min)
    y_max = y_min + 0.05;
  const double p_span = p_max > p_min ? static_cast<double>(p_max - p_min) : 1.0;

  auto px = [&](std::size_t p) {
    return left + plot_w * (static_cast<double>(p - p_min) / p_span);
  };
  auto py = [&](double y) {
    return top + plot_h * (1.0 - (y - y_min) / (y_max - y_min));
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << title
     << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
     << left + plot_w << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  for (std::size_t p = p_min; p <= p_max; ++p)
    os << "<text x=\"" << num(px(p)) << "\" y=\"" << top + plot_h + 18
       << "\" text-anchor=\"middle\">" << p << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = y_min + (y_max - y_min) * i / 4.0;
    os << "<text x=\"" << left - 8 << "\" y=\"" << num(py(y) + 4)
       << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\">p</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2
     << "\" transform=\"rotate(-90 16 " << top + plot_h / 2
     << ")\" text-anchor=\"middle\">mean approximation ratio</text>\n";

  const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  int series = 0;
  for (Scheme s : {Scheme::Variational, Scheme::GammaOnly, Scheme::GammaBeta}) {
    std::string points;
    for (const auto &r : rows)
      if (r.scheme == s)
        points += num(px(r.p)) + "," + num(py(r.mean_ratio)) + " ";
    if (points.empty())
      continue;
    const char *color = colors[static_cast<int>(s)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
    for (const auto &r : rows)
      if (r.scheme == s)
        os << "<circle cx=\"" << num(px(r.p)) << "\" cy=\"" << num(py(r.mean_ratio))
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = top + 10 + 20.0 * series++;
    os << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
       << left + plot_w + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << ly + 4 << "\">"
       << scheme_name(s) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace hyperqaoa

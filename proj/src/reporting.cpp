// Copyright 2026 The psi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psi/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace psi {

namespace {

const char kCsvHeader[] = "team_id,date,facet,indicator,value,n_messages,flagged";

std::string facet_of(const std::string& indicator) {
  const IndicatorSpec* spec = find_indicator(indicator);
  return spec != nullptr ? std::string(facet_name(spec->facet)) : "other";
}

// RFC 4180 quoting, applied only when needed; plain ids stay plain.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<const IndicatorScore*> sorted_rows(const IndicatorSeries& series) {
  std::vector<const IndicatorScore*> rows;
  rows.reserve(series.scores.size());
  for (const IndicatorScore& s : series.scores) rows.push_back(&s);
  std::sort(rows.begin(), rows.end(), [](const IndicatorScore* a, const IndicatorScore* b) {
    if (a->indicator != b->indicator) return a->indicator < b->indicator;
    if (a->team_id != b->team_id) return a->team_id < b->team_id;
    return a->day < b->day;
  });
  return rows;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << content;
  if (!out) throw ValidationError("write failed: " + path.string());
}

struct Rgb {
  int r, g, b;
};

// Single-hue blue ramp; darker = safer.
Rgb colour_for(double t) {
  const Rgb lo{247, 251, 255};
  const Rgb hi{8, 48, 107};
  auto mix = [&](int a, int b) {
    return static_cast<int>(std::lround(a + (b - a) * t));
  };
  return {mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b)};
}

}  // namespace

std::string format_value(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

size_t flag_count(size_t n_non_missing, double q) {
  if (q <= 0.0 || n_non_missing == 0) return 0;
  const double raw = q * static_cast<double>(n_non_missing);
  const auto k = static_cast<size_t>(std::ceil(raw - 1e-9));
  return std::min(k, n_non_missing);
}

void flag_low_quantile(IndicatorSeries& series, double q) {
  std::map<std::string, std::vector<IndicatorScore*>> by_indicator;
  for (IndicatorScore& s : series.scores) {
    s.flagged = false;
    if (s.value.has_value()) by_indicator[s.indicator].push_back(&s);
  }
  for (auto& [indicator, cells] : by_indicator) {
    std::sort(cells.begin(), cells.end(), [](IndicatorScore* a, IndicatorScore* b) {
      if (*a->value != *b->value) return *a->value < *b->value;
      if (a->team_id != b->team_id) return a->team_id < b->team_id;
      return a->day < b->day;
    });
    const size_t k = flag_count(cells.size(), q);
    for (size_t i = 0; i < k; ++i) cells[i]->flagged = true;
  }
}

std::string series_to_csv(const IndicatorSeries& series) {
  std::string out(kCsvHeader);
  out += "\n";
  for (const IndicatorScore* s : sorted_rows(series)) {
    out += csv_field(s->team_id);
    out += ",";
    out += format_date(s->day);
    out += ",";
    out += facet_of(s->indicator);
    out += ",";
    out += csv_field(s->indicator);
    out += ",";
    if (s->value.has_value()) out += format_value(*s->value);
    out += ",";
    out += std::to_string(s->n_messages);
    out += ",";
    out += s->flagged ? "true" : "false";
    out += "\n";
  }
  return out;
}

void write_series_csv(const IndicatorSeries& series, const std::filesystem::path& path) {
  write_file(path, series_to_csv(series));
}

std::string series_to_jsonl(const IndicatorSeries& series) {
  std::string out;
  for (const IndicatorScore* s : sorted_rows(series)) {
    nlohmann::ordered_json row;
    row["team_id"] = s->team_id;
    row["date"] = format_date(s->day);
    row["facet"] = facet_of(s->indicator);
    row["indicator"] = s->indicator;
    if (s->value.has_value()) {
      row["value"] = *s->value;
    } else {
      row["value"] = nullptr;
    }
    row["n_messages"] = s->n_messages;
    row["flagged"] = s->flagged;
    out += row.dump();
    out += "\n";
  }
  return out;
}

void write_series_jsonl(const IndicatorSeries& series, const std::filesystem::path& path) {
  write_file(path, series_to_jsonl(series));
}

IndicatorSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read series file: " + path.string());
  IndicatorSeries series;
  std::string line;
  const std::string ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson") {
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json row;
      try {
        row = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      for (const char* key : {"team_id", "date", "indicator", "value", "n_messages", "flagged"}) {
        if (!row.contains(key)) {
          throw ParseError(path.string() + ":" + std::to_string(line_no) +
                           ": missing field " + key);
        }
      }
      IndicatorScore s;
      s.team_id = row["team_id"].get<std::string>();
      s.day = parse_date(row["date"].get<std::string>());
      s.indicator = row["indicator"].get<std::string>();
      if (!row["value"].is_null()) s.value = row["value"].get<double>();
      s.n_messages = row["n_messages"].get<int>();
      s.flagged = row["flagged"].get<bool>();
      series.scores.push_back(std::move(s));
    }
    return series;
  }

  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty series file");
  {
    const auto header = split_csv_line(line);
    const std::vector<std::string> expected{"team_id", "date",       "facet",  "indicator",
                                            "value",   "n_messages", "flagged"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected) {
      throw ParseError(path.string() + ": series is missing required columns (header must be '" +
                       kCsvHeader + "')");
    }
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 7 fields, got " + std::to_string(fields.size()));
    }
    IndicatorScore s;
    s.team_id = fields[0];
    s.day = parse_date(fields[1]);
    s.indicator = fields[3];
    if (!fields[4].empty()) {
      try {
        s.value = std::stod(fields[4]);
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad value field '" +
                         fields[4] + "'");
      }
    }
    try {
      s.n_messages = std::stoi(fields[5]);
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad n_messages '" +
                       fields[5] + "'");
    }
    s.flagged = fields[6] == "true";
    series.scores.push_back(std::move(s));
  }
  return series;
}

void render_heatmaps(const IndicatorSeries& series, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  // Group by indicator; the day axis and team rows are shared across panels
  // so the 15 files line up visually.
  std::map<std::string, std::vector<const IndicatorScore*>> by_indicator;
  std::vector<std::string> teams;
  int64_t day_min = 0, day_max = 0;
  bool have_days = false;
  for (const IndicatorScore& s : series.scores) {
    by_indicator[s.indicator].push_back(&s);
    if (std::find(teams.begin(), teams.end(), s.team_id) == teams.end()) {
      teams.push_back(s.team_id);
    }
    if (!have_days) {
      day_min = day_max = s.day;
      have_days = true;
    } else {
      day_min = std::min(day_min, s.day);
      day_max = std::max(day_max, s.day);
    }
  }
  if (!have_days) throw ValidationError("cannot render heatmaps from an empty series");
  std::sort(teams.begin(), teams.end());

  const int cell = 12;
  const int ml = 110, mt = 52, mb = 30, mr = 18;
  const auto cols = static_cast<int>(day_max - day_min + 1);
  const auto rows = static_cast<int>(teams.size());
  const int width = ml + cols * cell + mr;
  const int height = mt + rows * cell + mb;

  for (const auto& [indicator, cells] : by_indicator) {
    double lo = 0.0, hi = 0.0;
    bool have = false;
    for (const IndicatorScore* s : cells) {
      if (!s->value.has_value()) continue;
      if (!have) {
        lo = hi = *s->value;
        have = true;
      } else {
        lo = std::min(lo, *s->value);
        hi = std::max(hi, *s->value);
      }
    }

    const std::string facet = facet_of(indicator);
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    svg += "<!-- flagged cells mark the lowest-quantile values of this indicator across all "
           "teams and days; blank cells mark days without a computable score -->\n";
    svg += "<style>\n"
           "text { font-family: sans-serif; fill: #222; }\n"
           ".title { font-size: 13px; font-weight: bold; }\n"
           ".label { font-size: 10px; }\n"
           ".tick { font-size: 8px; fill: #555; }\n"
           "rect.cell { stroke: #ffffff; stroke-width: 0.5; }\n"
           "rect.missing { fill: #ffffff; stroke: #dddddd; stroke-width: 0.5; }\n"
           "circle.flag { fill: none; stroke: #d62728; stroke-width: 1.5; }\n"
           "</style>\n";
    svg += "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">"
           "<stop offset=\"0\" stop-color=\"rgb(247,251,255)\"/>"
           "<stop offset=\"1\" stop-color=\"rgb(8,48,107)\"/>"
           "</linearGradient></defs>\n";
    svg += "<text class=\"title\" x=\"8\" y=\"18\">" + facet + " / " + indicator + "</text>\n";

    // colour legend with the indicator's own range
    const int legend_w = 110, legend_x = width - mr - legend_w - 100, legend_y = 8;
    svg += "<rect x=\"" + std::to_string(legend_x) + "\" y=\"" + std::to_string(legend_y) +
           "\" width=\"" + std::to_string(legend_w) +
           "\" height=\"10\" fill=\"url(#scale)\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
    svg += "<text class=\"tick\" x=\"" + std::to_string(legend_x - 4) + "\" y=\"" +
           std::to_string(legend_y + 9) + "\" text-anchor=\"end\">" +
           (have ? format_value(lo) : "") + "</text>\n";
    svg += "<text class=\"tick\" x=\"" + std::to_string(legend_x + legend_w + 4) + "\" y=\"" +
           std::to_string(legend_y + 9) + "\">" + (have ? format_value(hi) : "") + "</text>\n";

    for (int r = 0; r < rows; ++r) {
      svg += "<text class=\"label\" x=\"" + std::to_string(ml - 6) + "\" y=\"" +
             std::to_string(mt + r * cell + cell - 3) + "\" text-anchor=\"end\">" + teams[r] +
             "</text>\n";
    }
    for (int c = 0; c < cols; c += 7) {
      svg += "<text class=\"tick\" x=\"" + std::to_string(ml + c * cell + cell / 2) +
             "\" y=\"" + std::to_string(mt + rows * cell + 14) +
             "\" text-anchor=\"middle\">" + format_date(day_min + c) + "</text>\n";
    }

    std::map<std::pair<std::string, int64_t>, const IndicatorScore*> grid;
    for (const IndicatorScore* s : cells) grid[{s->team_id, s->day}] = s;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int x = ml + c * cell;
        const int y = mt + r * cell;
        const auto it = grid.find({teams[r], day_min + c});
        if (it == grid.end() || !it->second->value.has_value()) {
          svg += "<rect class=\"missing\" x=\"" + std::to_string(x) + "\" y=\"" +
                 std::to_string(y) + "\" width=\"" + std::to_string(cell) + "\" height=\"" +
                 std::to_string(cell) + "\"/>\n";
          continue;
        }
        const double v = *it->second->value;
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        const Rgb rgb = colour_for(t);
        svg += "<rect class=\"cell\" x=\"" + std::to_string(x) + "\" y=\"" +
               std::to_string(y) + "\" width=\"" + std::to_string(cell) + "\" height=\"" +
               std::to_string(cell) + "\" fill=\"rgb(" + std::to_string(rgb.r) + "," +
               std::to_string(rgb.g) + "," + std::to_string(rgb.b) + ")\"/>\n";
        if (it->second->flagged) {
          svg += "<circle class=\"flag\" cx=\"" + std::to_string(x + cell / 2) + "\" cy=\"" +
                 std::to_string(y + cell / 2) + "\" r=\"3.5\"/>\n";
        }
      }
    }
    svg += "</svg>\n";
    write_file(out_dir / (facet + "__" + indicator + ".svg"), svg);
  }
}

}  // namespace psi

// Copyright 2026 The stylegap Authors.
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

#include "stylegap/report.hpp"

#include <cmath>
#include <cstdio>

namespace stylegap::report {
namespace {

using nlohmann::json;

json condition_json(const protocol::ConditionMetrics& m) {
  json per_clip = json::array();
  for (std::size_t i = 0; i < m.dmin.per_clip.size(); ++i) {
    per_clip.push_back({{"clip_id", m.dmin.per_clip[i].clip_id},
                        {"d_min", m.dmin.per_clip[i].d_min},
                        {"centroid_sim", m.centroid_sims[i]}});
  }
  json out = {{"condition", m.condition.label()},
              {"fad", m.fad},
              {"dmin_median", m.dmin_median},
              {"centroid_sim_mean", m.centroid_sim_mean},
              {"n_clips", m.n_clips},
              {"per_clip", std::move(per_clip)}};
  if (m.condition.set_index > 0) out["set_index"] = m.condition.set_index;
  if (!m.condition.source_artist.empty()) out["source_artist"] = m.condition.source_artist;
  return out;
}

json artist_space_json(const protocol::ArtistSpaceReport& r) {
  json conditions = json::array();
  conditions.push_back(condition_json(r.baseline));
  conditions.push_back(condition_json(r.artist_name));
  for (const auto& m : r.styled) conditions.push_back(condition_json(m));
  for (const auto& m : r.cross_styled) conditions.push_back(condition_json(m));

  json per_set_fad = json::array();
  for (const auto& m : r.styled) per_set_fad.push_back(m.fad);
  return {{"artist", r.artist},
          {"space", r.space},
          {"conditions", std::move(conditions)},
          {"styled_summary",
           {{"fad_per_set", std::move(per_set_fad)},
            {"fad_mean", r.styled_fad_mean},
            {"fad_std", r.styled_fad_std},
            {"dmin_median_pooled", r.styled_dmin_median_pooled},
            {"dmin_median_per_set", r.styled_dmin_median_per_set}}},
          {"name_free_gap", {{"fad", r.name_free_gap_fad}, {"dmin_median", r.name_free_gap_dmin}}}};
}

json cross_json(const protocol::CrossArtistMatrix& x) {
  json delta = json::array();
  json cells = json::array();
  for (const auto& row : x.cells) {
    json drow = json::array();
    for (const auto& c : row) {
      drow.push_back(c.stat.delta);
      cells.push_back({{"target", c.target},
                       {"source", c.source},
                       {"styled_mean_sim", c.stat.styled_mean_sim},
                       {"baseline_mean_sim", c.stat.baseline_mean_sim},
                       {"delta", c.stat.delta},
                       {"per_set_delta", c.per_set_delta}});
    }
    delta.push_back(std::move(drow));
  }
  return {{"space", x.space},
          {"targets", x.artists},
          {"sources", x.artists},
          {"delta", std::move(delta)},
          {"cells", std::move(cells)}};
}

std::string panel_letter(std::size_t index) {
  return std::string(1, static_cast<char>('A' + index));
}

void render(const json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, child] : v.items()) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        render(child, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        render(v[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_float(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_float(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

json build_report(const protocol::AggregateReport& report) {
  json results = json::array();
  for (const auto& cell : report.cells) results.push_back(artist_space_json(cell));
  json cross = json::array();
  for (const auto& x : report.cross) cross.push_back(cross_json(x));

  json panels = json::object();
  for (std::size_t i = 0; i < report.spaces.size(); ++i) {
    const std::string& space = report.spaces[i];
    json fad_rows = json::array();
    json dmin_rows = json::array();
    for (const auto& cell : report.cells) {
      if (cell.space != space) continue;
      fad_rows.push_back({{"artist", cell.artist}, {"condition", "baseline"}, {"value", cell.baseline.fad}});
      fad_rows.push_back({{"artist", cell.artist}, {"condition", "artist_name"}, {"value", cell.artist_name.fad}});
      fad_rows.push_back({{"artist", cell.artist},
                          {"condition", "styled"},
                          {"value", cell.styled_fad_mean},
                          {"std", cell.styled_fad_std}});
      dmin_rows.push_back({{"artist", cell.artist}, {"condition", "baseline"}, {"value", cell.baseline.dmin_median}});
      dmin_rows.push_back({{"artist", cell.artist}, {"condition", "artist_name"}, {"value", cell.artist_name.dmin_median}});
      dmin_rows.push_back({{"artist", cell.artist},
                           {"condition", "styled"},
                           {"value", cell.styled_dmin_median_pooled},
                           {"per_set", cell.styled_dmin_median_per_set}});
    }
    json delta = nullptr;
    for (const auto& x : report.cross) {
      if (x.space == space) delta = cross_json(x);
    }
    panels[panel_letter(3 * i)] = {{"kind", "fad_bars"}, {"space", space}, {"rows", std::move(fad_rows)}};
    panels[panel_letter(3 * i + 1)] = {{"kind", "dmin_bars"}, {"space", space}, {"rows", std::move(dmin_rows)}};
    panels[panel_letter(3 * i + 2)] = {{"kind", "cross_artist_delta"}, {"space", space}, {"matrix", std::move(delta)}};
  }

  return {{"schema_version", kSchemaVersion},
          {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
          {"config",
           {{"cov_divisor",
             report.options.cov_divisor == metrics::CovDivisor::kUnbiased ? "n-1" : "n"},
            {"pooling", report.options.frame_level ? "frame" : "clip"},
            {"spaces", report.spaces}}},
          {"results", std::move(results)},
          {"cross_artist", std::move(cross)},
          {"panels", std::move(panels)}};
}

std::string canonical_json(const json& value) {
  std::string out;
  render(value, out, 0);
  out += "\n";
  return out;
}

std::string render_csv(const protocol::AggregateReport& report) {
  std::string out =
      "artist,space,condition,set_index,source_artist,n_clips,fad,dmin_median,"
      "centroid_sim_mean,delta_vs_baseline\n";
  for (const auto& cell : report.cells) {
    std::vector<const protocol::ConditionMetrics*> rows = {&cell.baseline, &cell.artist_name};
    for (const auto& m : cell.styled) rows.push_back(&m);
    for (const auto& m : cell.cross_styled) rows.push_back(&m);
    for (const auto* m : rows) {
      out += csv_field(cell.artist) + "," + csv_field(cell.space) + "," +
             csv_field(m->condition.label()) + "," + std::to_string(m->condition.set_index) + "," +
             csv_field(m->condition.source_artist) + "," + std::to_string(m->n_clips) + "," +
             format_float(m->fad) + "," + format_float(m->dmin_median) + "," +
             format_float(m->centroid_sim_mean) + "," +
             format_float(m->centroid_sim_mean - cell.baseline.centroid_sim_mean) + "\n";
    }
  }
  return out;
}

}  // namespace stylegap::report

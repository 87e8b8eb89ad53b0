#pragma once

// JSON form of CampaignReport. Complex matrix entries are [re, im] pairs;
// NaN margins (errored samples) are written as null.

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "mxent/campaign.hpp"
#include "mxent/errors.hpp"

namespace mxent {

using Json = nlohmann::json;

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) throw InputError("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row.at(static_cast<std::size_t>(c));
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

inline Json config_to_json(const CampaignConfig& c) {
  return Json{{"campaign", to_string(c.campaign)},
              {"d1", c.d1},
              {"d2", c.d2},
              {"samples", c.samples},
              {"seed", c.seed},
              {"tolerance", c.tolerance},
              {"tolerance_mode", c.relative_tolerance ? "relative" : "absolute"},
              {"function", c.function},
              {"p", c.p},
              {"convexity_weights", c.weights},
              {"fd_step", c.fd_step},
              {"eig_range", {c.eig_lo, c.eig_hi}},
              {"direction_scale", c.direction_scale},
              {"normalize", c.normalize},
              {"channel", to_string(c.channel)}};
}

inline CampaignConfig config_from_json(const Json& j) {
  CampaignConfig c;
  c.campaign = parse_campaign(j.at("campaign").get<std::string>());
  c.d1 = j.at("d1").get<Eigen::Index>();
  c.d2 = j.at("d2").get<Eigen::Index>();
  c.samples = j.at("samples").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tolerance = j.at("tolerance").get<double>();
  c.relative_tolerance = j.at("tolerance_mode").get<std::string>() == "relative";
  c.function = j.at("function").get<std::string>();
  c.p = j.at("p").get<double>();
  c.weights = j.at("convexity_weights").get<std::vector<double>>();
  c.fd_step = j.at("fd_step").get<double>();
  c.eig_lo = j.at("eig_range").at(0).get<double>();
  c.eig_hi = j.at("eig_range").at(1).get<double>();
  c.direction_scale = j.at("direction_scale").get<double>();
  c.normalize = j.at("normalize").get<bool>();
  c.channel = parse_channel_family(j.at("channel").get<std::string>());
  return c;
}

inline Json witness_to_json(const Witness& w) {
  Json matrices = Json::object();
  for (const auto& [name, m] : w.matrices) matrices[name] = matrix_to_json(m);
  return Json{{"sample", w.sample},
              {"margin", w.margin},
              {"matrices", std::move(matrices)},
              {"scalars", w.scalars},
              {"labels", w.labels}};
}

inline Witness witness_from_json(const Json& j) {
  Witness w;
  w.sample = j.at("sample").get<std::size_t>();
  w.margin = j.at("margin").get<double>();
  for (const auto& [name, m] : j.at("matrices").items()) w.matrices[name] = matrix_from_json(m);
  w.scalars = j.at("scalars").get<std::map<std::string, double>>();
  w.labels = j.at("labels").get<std::map<std::string, std::string>>();
  return w;
}

/// `include_timing` adds wall_time; leave it off for byte-reproducible output.
inline Json report_to_json(const CampaignReport& r, bool include_timing = true) {
  Json margins = Json::array();
  for (double m : r.margins) margins.push_back(std::isnan(m) ? Json(nullptr) : Json(m));
  Json errors = Json::array();
  for (const auto& e : r.errors) errors.push_back({{"sample", e.sample}, {"message", e.message}});
  Json j{{"campaign", to_string(r.config.campaign)},
         {"config", config_to_json(r.config)},
         {"margins", std::move(margins)},
         {"violations", r.violations},
         {"worst_margin", r.worst_margin ? Json(*r.worst_margin) : Json(nullptr)},
         {"witness", r.witness ? witness_to_json(*r.witness) : Json(nullptr)},
         {"errors", std::move(errors)},
         {"outcome", r.outcome}};
  if (include_timing) j["wall_time"] = r.wall_time;
  return j;
}

inline CampaignReport report_from_json(const Json& j) {
  CampaignReport r;
  r.config = config_from_json(j.at("config"));
  for (const auto& m : j.at("margins"))
    r.margins.push_back(m.is_null() ? std::numeric_limits<double>::quiet_NaN() : m.get<double>());
  r.violations = j.at("violations").get<std::size_t>();
  if (!j.at("worst_margin").is_null()) r.worst_margin = j.at("worst_margin").get<double>();
  if (!j.at("witness").is_null()) r.witness = witness_from_json(j.at("witness"));
  for (const auto& e : j.at("errors"))
    r.errors.push_back({e.at("sample").get<std::size_t>(), e.at("message").get<std::string>()});
  r.outcome = j.at("outcome").get<std::string>();
  if (j.contains("wall_time")) r.wall_time = j.at("wall_time").get<double>();
  return r;
}

inline void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline void emit_report(const CampaignReport& r, const std::string& path,
                        bool include_timing = true) {
  write_json(report_to_json(r, include_timing), path);
}

}  // namespace mxent

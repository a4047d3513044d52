// Copyright 2026 The eprlab Authors.
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

#include "eprlab/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eprlab {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) {
      throw ConfigError(path.empty() ? item.key() : path + "." + item.key(),
                        "unknown key");
    }
  }
}

double get_number(const json& obj, const std::string& key,
                  const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "must be a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const std::string& key,
                        const std::string& path, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    throw ConfigError(path + "." + key, "must be a non-negative integer");
  }
  throw ConfigError(path + "." + key, "must be an integer");
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& path, std::string fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path + "." + key, "must be a string");
  return v.get<std::string>();
}

Vec2 get_vec2(const json& obj, const std::string& key, const std::string& path,
              Vec2 fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw ConfigError(path + "." + key, "must be a [x, y] pair of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

double angle_value(const json& v, const std::string& field) {
  if (!v.is_string()) {
    throw ConfigError(field, "angles must be strings with a unit, e.g. \"45 deg\"");
  }
  return parse_angle(v.get<std::string>(), field);
}

ModelSpec parse_model(const json& obj, const std::string& path) {
  reject_unknown(obj, path, {"kind", "epsilon", "amplitude", "profile", "scale"});
  ModelSpec m;
  if (!obj.contains("kind")) throw ConfigError(path + ".kind", "is required");
  const std::string kind = get_string(obj, "kind", path, "");
  try {
    m.kind = model_kind_from_string(kind);
  } catch (const ConfigError&) {
    throw ConfigError(path + ".kind", "unknown model '" + kind + "'");
  }
  const std::string profile =
      get_string(obj, "profile", path, std::string(to_string(m.shape.profile)));
  try {
    m.shape.profile = radial_profile_from_string(profile);
  } catch (const ConfigError&) {
    throw ConfigError(path + ".profile",
                      "unknown radial profile '" + profile + "'");
  }
  m.epsilon = get_number(obj, "epsilon", path, m.epsilon);
  m.amplitude = get_number(obj, "amplitude", path, m.amplitude);
  m.shape.scale = get_number(obj, "scale", path, m.shape.scale);
  m.validate(path);
  return m;
}

nlohmann::ordered_json model_json(const ModelSpec& m) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(m.kind);
  j["epsilon"] = m.epsilon;
  j["amplitude"] = m.amplitude;
  j["profile"] = to_string(m.shape.profile);
  j["scale"] = m.shape.scale;
  return j;
}

}  // namespace

double parse_angle(std::string_view text, const std::string& field) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  double scale = 0;
  if (s.ends_with("deg")) {
    scale = kPi / 180;
    s.remove_suffix(3);
  } else if (s.ends_with("rad")) {
    scale = 1;
    s.remove_suffix(3);
  } else {
    throw ConfigError(field, "angle '" + std::string(text) +
                                 "' needs a unit suffix (deg or rad)");
  }
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(value)) {
    throw ConfigError(field, "cannot read angle '" + std::string(text) + "'");
  }
  return scale == 1 ? value : value * scale;
}

std::string format_angle(double radians) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g rad", radians);
  return buf;
}

void ExperimentConfig::validate() const {
  geometry.validate();
  model1.validate("model.device1");
  model2.validate("model.device2");
  if ((model1.kind == ModelKind::qm_reference) !=
      (model2.kind == ModelKind::qm_reference)) {
    throw ConfigError("model", "qm-reference must be used on both devices");
  }
  if (events < 1) throw ConfigError("run.events", "must be >= 1");
  if (events >= EventStream::kMaxEvents) {
    throw ConfigError("run.events", "must be below 2^48");
  }
  switch (settings_kind) {
    case SettingsKind::none:
      break;
    case SettingsKind::pair:
      if (settings.size() != 2) throw ConfigError("settings.pair", "needs 2 angles");
      break;
    case SettingsKind::quad:
      if (settings.size() != 4) throw ConfigError("settings.quad", "needs 4 angles");
      quad().validate();
      break;
    case SettingsKind::list:
      if (settings.empty()) throw ConfigError("settings.list", "is empty");
      break;
  }
}

RunConfig ExperimentConfig::run_config() const {
  RunConfig r;
  r.geometry = geometry;
  r.model1 = model1;
  r.model2 = model2;
  r.events = events;
  r.seed = seed;
  r.threads = threads;
  if (settings_kind == SettingsKind::pair || settings_kind == SettingsKind::quad) {
    r.alpha = settings[0];
    r.beta = settings_kind == SettingsKind::pair ? settings[1] : settings[2];
  }
  return r;
}

SettingsQuad ExperimentConfig::quad() const {
  if (settings_kind != SettingsKind::quad || settings.size() != 4) {
    throw ConfigError("settings.quad", "no settings quad configured");
  }
  return {settings[0], settings[1], settings[2], settings[3]};
}

ExperimentConfig config_from_json(const json& doc) {
  reject_unknown(doc, "",
                 {"source", "geometry", "lattice", "model", "run", "settings"});
  ExperimentConfig c;

  if (doc.contains("source")) {
    const json& s = doc.at("source");
    reject_unknown(s, "source", {"kind", "center", "spread", "cone_half_angle"});
    auto& src = c.geometry.source;
    src.kind = source_kind_from_string(
        get_string(s, "kind", "source", std::string(to_string(src.kind))));
    src.center = get_vec2(s, "center", "source", src.center);
    if (src.kind == SourceKind::point && !s.contains("spread")) src.spread = 0;
    src.spread = get_number(s, "spread", "source", src.spread);
    if (s.contains("cone_half_angle")) {
      src.cone_half_angle =
          angle_value(s.at("cone_half_angle"), "source.cone_half_angle");
    }
  }
  if (doc.contains("geometry")) {
    const json& g = doc.at("geometry");
    reject_unknown(g, "geometry", {"arm_length_1", "arm_length_2"});
    c.geometry.arms.length1 =
        get_number(g, "arm_length_1", "geometry", c.geometry.arms.length1);
    c.geometry.arms.length2 =
        get_number(g, "arm_length_2", "geometry", c.geometry.arms.length2);
  }
  if (doc.contains("lattice")) {
    const json& l = doc.at("lattice");
    reject_unknown(l, "lattice", {"constant", "rotation_center"});
    c.geometry.lattice.constant =
        get_number(l, "constant", "lattice", c.geometry.lattice.constant);
    c.geometry.lattice.rotation_center = get_vec2(
        l, "rotation_center", "lattice", c.geometry.lattice.rotation_center);
  }
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    if (!m.is_object()) throw ConfigError("model", "must be an object");
    if (m.contains("kind")) {
      c.model1 = c.model2 = parse_model(m, "model");
    } else {
      reject_unknown(m, "model", {"device1", "device2"});
      if (!m.contains("device1") || !m.contains("device2")) {
        throw ConfigError("model", "needs 'kind' or both 'device1' and 'device2'");
      }
      c.model1 = parse_model(m.at("device1"), "model.device1");
      c.model2 = parse_model(m.at("device2"), "model.device2");
    }
  }
  if (doc.contains("run")) {
    const json& r = doc.at("run");
    reject_unknown(r, "run", {"events", "seed", "threads"});
    c.events = get_count(r, "events", "run", c.events);
    c.seed = get_count(r, "seed", "run", c.seed);
    c.threads = static_cast<unsigned>(get_count(r, "threads", "run", c.threads));
  }
  if (doc.contains("settings")) {
    const json& s = doc.at("settings");
    reject_unknown(s, "settings", {"pair", "quad", "list"});
    if (s.size() != 1) {
      throw ConfigError("settings", "give exactly one of pair, quad or list");
    }
    const auto first = s.begin();
    const std::string key = first.key();
    const json& arr = first.value();
    const std::string path = "settings." + key;
    if (!arr.is_array()) throw ConfigError(path, "must be an array of angles");
    c.settings_kind = key == "pair"   ? SettingsKind::pair
                      : key == "quad" ? SettingsKind::quad
                                      : SettingsKind::list;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      c.settings.push_back(
          angle_value(arr[i], path + "[" + std::to_string(i) + "]"));
    }
  }
  c.validate();
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return config_from_json(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  const auto& src = c.geometry.source;
  j["source"] = {{"kind", to_string(src.kind)},
                 {"center", {src.center.x, src.center.y}},
                 {"spread", src.spread},
                 {"cone_half_angle", format_angle(src.cone_half_angle)}};
  j["geometry"] = {{"arm_length_1", c.geometry.arms.length1},
                   {"arm_length_2", c.geometry.arms.length2}};
  const auto& lat = c.geometry.lattice;
  j["lattice"] = {{"constant", lat.constant},
                  {"rotation_center", {lat.rotation_center.x, lat.rotation_center.y}}};
  j["model"] = {{"device1", model_json(c.model1)},
                {"device2", model_json(c.model2)}};
  j["run"] = {{"events", c.events}, {"seed", c.seed}, {"threads", c.threads}};
  if (c.settings_kind != SettingsKind::none) {
    const char* key = c.settings_kind == SettingsKind::pair   ? "pair"
                      : c.settings_kind == SettingsKind::quad ? "quad"
                                                              : "list";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double a : c.settings) arr.push_back(format_angle(a));
    j["settings"] = {{key, arr}};
  }
  return j;
}

}  // namespace eprlab

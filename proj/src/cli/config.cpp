// Copyright 2026 The qhartley Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhartley/cli/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "qhartley/types.hpp"

namespace qh::cli {

namespace {

using nlohmann::json;

enum class Type { integer, unsigned_integer, real, boolean, string };

struct Key {
  const char* section;
  const char* name;
  Type type;
  json fallback;  // null means "unset" for optional keys
};

const std::vector<Key>& schema() {
  static const std::vector<Key> keys = {
      {"model", "feature", Type::string, "hartley"},
      {"model", "n", Type::integer, 5},
      {"model", "ansatz", Type::string, "hera"},
      {"model", "depth", Type::integer, 4},
      {"model", "scheme", Type::string, "ry"},
      {"model", "overlap_regularizer", Type::boolean, true},

      {"target", "kind", Type::string, "ou"},
      {"target", "mu", Type::real, nullptr},
      {"target", "sigma", Type::real, nullptr},
      {"target", "nu", Type::real, nullptr},
      {"target", "x_i", Type::real, nullptr},
      {"target", "t", Type::real, nullptr},
      {"target", "lambda", Type::real, nullptr},
      {"target", "mu_x", Type::real, nullptr},
      {"target", "mu_y", Type::real, nullptr},
      {"target", "sigma_x", Type::real, nullptr},
      {"target", "sigma_y", Type::real, nullptr},
      {"target", "rho", Type::real, nullptr},

      {"train", "epochs", Type::integer, 5000},
      {"train", "learning_rate", Type::real, 0.01},
      {"train", "seed", Type::unsigned_integer, 1},
      {"train", "loss_report_stride", Type::integer, 1},
      {"train", "init_scale", Type::real, std::numbers::pi},
      {"train", "early_stop_loss", Type::real, 1e-8},
      {"train", "train_beta", Type::boolean, true},
      {"train", "alpha_init", Type::real, nullptr},
      {"train", "grid", Type::string, "full"},
      {"train", "freeze_correlation", Type::boolean, false},
      {"train", "gradient_gate", Type::boolean, true},

      {"sample", "model", Type::string, nullptr},
      {"sample", "shots", Type::unsigned_integer, 100000},
      {"sample", "S", Type::integer, 0},
      {"sample", "variant", Type::string, "bitstring-network"},
      {"sample", "seed", Type::unsigned_integer, 1},
      {"sample", "compare", Type::boolean, true},

      {"output", "directory", Type::string, "run"},

      {"verify", "n_min", Type::integer, 1},
      {"verify", "n_max", Type::integer, 5},
      {"verify", "corrupt_qht", Type::boolean, false},
      {"verify", "seed", Type::unsigned_integer, 7},

      {"compare", "schemes", Type::string, "hera,ryrx,rzry,rxrz,rx,ry,rz"},
      {"compare", "n_min", Type::integer, 2},
      {"compare", "n_max", Type::integer, 5},
      {"compare", "depth", Type::integer, 1},
      {"compare", "seeds", Type::integer, 5},
      {"compare", "grid", Type::string, "integers"},

      {"overlap", "n", Type::integer, 5},
      {"overlap", "step", Type::real, 0.1},
      {"overlap", "regularizer", Type::boolean, true},
  };
  return keys;
}

const Key& find_key(std::string_view section, std::string_view name) {
  for (const Key& k : schema()) {
    if (section == k.section && name == k.name) return k;
  }
  bool known_section = false;
  for (const Key& k : schema()) known_section |= section == k.section;
  if (!known_section) throw ConfigError(fmt::format("unknown config section '{}'", section));
  throw ConfigError(fmt::format("unknown config key '{}.{}'", section, name));
}

json check_value(const Key& k, const json& v) {
  if (v.is_null()) return v;
  const std::string where = fmt::format("{}.{}", k.section, k.name);
  switch (k.type) {
    case Type::integer:
      if (!v.is_number_integer()) throw ConfigError(fmt::format("'{}' must be an integer", where));
      return v.get<std::int64_t>();
    case Type::unsigned_integer:
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError(fmt::format("'{}' must be a non-negative integer", where));
      }
      return v.get<std::uint64_t>();
    case Type::real:
      if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be a number", where));
      return v.get<double>();
    case Type::boolean:
      if (!v.is_boolean()) throw ConfigError(fmt::format("'{}' must be true or false", where));
      return v;
    case Type::string:
      if (!v.is_string()) throw ConfigError(fmt::format("'{}' must be a string", where));
      return v;
  }
  return v;
}

json parse_text_value(const Key& k, const std::string& raw) {
  const std::string where = fmt::format("{}.{}", k.section, k.name);
  auto fail = [&](const char* what) { return ConfigError(fmt::format("'{}' must be {}, got '{}'", where, what, raw)); };
  switch (k.type) {
    case Type::integer:
    case Type::unsigned_integer: {
      if (raw.empty()) throw fail("an integer");
      char* end = nullptr;
      errno = 0;
      if (k.type == Type::unsigned_integer) {
        if (raw[0] == '-') throw fail("a non-negative integer");
        const unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
        if (*end != '\0' || errno != 0) throw fail("a non-negative integer");
        return static_cast<std::uint64_t>(v);
      }
      const long long v = std::strtoll(raw.c_str(), &end, 10);
      if (*end != '\0' || errno != 0) throw fail("an integer");
      return static_cast<std::int64_t>(v);
    }
    case Type::real: {
      char* end = nullptr;
      const double v = std::strtod(raw.c_str(), &end);
      if (raw.empty() || *end != '\0') throw fail("a number");
      return v;
    }
    case Type::boolean:
      if (raw == "true") return true;
      if (raw == "false") return false;
      throw fail("true or false");
    case Type::string: return raw;
  }
  return raw;
}

template <class Enum, class Parser>
Enum parse_enum(const RunConfig& c, std::string_view section, std::string_view key, Parser parser) {
  const std::string v = c.string(section, key);
  const auto parsed = parser(v);
  if (!parsed) throw ConfigError(fmt::format("invalid value '{}' for '{}.{}'", v, section, key));
  return *parsed;
}

int as_int(std::int64_t v, std::string_view what) {
  if (v < -1'000'000'000 || v > 1'000'000'000) throw ConfigError(fmt::format("'{}' is out of range", what));
  return static_cast<int>(v);
}

}  // namespace

RunConfig::RunConfig() {
  data_ = json::object();
  for (const Key& k : schema()) data_[k.section][k.name] = k.fallback;
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object of sections");
  RunConfig c;
  for (const auto& [section, body] : j.items()) {
    if (!body.is_object()) throw ConfigError(fmt::format("config section '{}' must be an object", section));
    for (const auto& [key, value] : body.items()) c.set(section, key, value);
  }
  return c;
}

RunConfig RunConfig::from_ini(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed INI config: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(fmt::format("config key '{}' must live in a [section]", section));
    for (const auto& [key, value] : body) {
      if (!value.empty()) throw ConfigError(fmt::format("nested key under '{}.{}'", section, key));
      const Key& k = find_key(section, key);
      c.data_[k.section][k.name] = parse_text_value(k, value.data());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json = path.ends_with(".json") || (first != std::string::npos && text[first] == '{');
  if (!is_json) return from_ini(text);
  try {
    return from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
}

json RunConfig::snapshot() const {
  json s = data_;
  s["output"].erase("directory");
  if (s["output"].empty()) s.erase("output");
  return s;
}

void RunConfig::set(std::string_view section, std::string_view key, const json& value) {
  const Key& k = find_key(section, key);
  data_[k.section][k.name] = check_value(k, value);
}

bool RunConfig::is_set(std::string_view section, std::string_view key) const {
  const Key& k = find_key(section, key);
  return !data_[k.section][k.name].is_null();
}

namespace {

const json& lookup(const json& data, std::string_view section, std::string_view key) {
  const Key& k = find_key(section, key);
  const json& v = data[k.section][k.name];
  if (v.is_null()) throw ConfigError(fmt::format("config key '{}.{}' is required", section, key));
  return v;
}

}  // namespace

std::int64_t RunConfig::integer(std::string_view s, std::string_view k) const {
  return lookup(data_, s, k).get<std::int64_t>();
}
std::uint64_t RunConfig::unsigned_integer(std::string_view s, std::string_view k) const {
  return lookup(data_, s, k).get<std::uint64_t>();
}
double RunConfig::real(std::string_view s, std::string_view k) const { return lookup(data_, s, k).get<double>(); }
bool RunConfig::boolean(std::string_view s, std::string_view k) const { return lookup(data_, s, k).get<bool>(); }
std::string RunConfig::string(std::string_view s, std::string_view k) const {
  return lookup(data_, s, k).get<std::string>();
}

ModelSpec RunConfig::model_spec() const {
  ModelSpec m;
  m.feature = parse_enum<FeatureKind>(*this, "model", "feature", parse_feature_kind);
  m.n = as_int(integer("model", "n"), "model.n");
  m.ansatz = parse_enum<AnsatzKind>(*this, "model", "ansatz", parse_ansatz_kind);
  m.depth = as_int(integer("model", "depth"), "model.depth");
  m.scheme = parse_enum<RotationScheme>(*this, "model", "scheme", parse_scheme);
  m.overlap_regularizer = boolean("model", "overlap_regularizer");
  const int width = m.feature == FeatureKind::bivariate_hartley ? 2 * m.n + 2 : m.n + 1;
  if (m.n < 1 || width > 20) throw ConfigError(fmt::format("model.n = {} is outside the supported range", m.n));
  if (m.depth < 0) throw ConfigError("model.depth must be non-negative");
  if (m.ansatz == AnsatzKind::hera && m.scheme != RotationScheme::ry) {
    throw ConfigError("model.scheme applies to the hea ansatz only (hera uses ry)");
  }
  return m;
}

TargetSpec RunConfig::target_spec() const {
  const TargetKind kind = parse_enum<TargetKind>(*this, "target", "kind", parse_target_kind);
  TargetSpec t = default_target(kind);
  for (const auto& [name, value] : data_["target"].items()) {
    if (name == "kind" || value.is_null()) continue;
    t.params[name] = value.get<double>();
  }
  validate_target(t);
  return t;
}

TrainConfig RunConfig::train_config() const {
  TrainConfig t;
  t.epochs = as_int(integer("train", "epochs"), "train.epochs");
  t.learning_rate = real("train", "learning_rate");
  t.seed = unsigned_integer("train", "seed");
  t.loss_report_stride = as_int(integer("train", "loss_report_stride"), "train.loss_report_stride");
  t.init_scale = real("train", "init_scale");
  t.early_stop_loss = real("train", "early_stop_loss");
  t.train_beta = boolean("train", "train_beta");
  if (is_set("train", "alpha_init")) t.alpha_init = real("train", "alpha_init");
  const std::string grid = string("train", "grid");
  if (grid != "full" && grid != "integers") throw ConfigError("train.grid must be 'full' or 'integers'");
  t.grid = grid == "full" ? GridKind::full : GridKind::integers;
  t.freeze_correlation = boolean("train", "freeze_correlation");
  t.gradient_gate = boolean("train", "gradient_gate");
  if (t.epochs < 1) throw ConfigError("train.epochs must be at least 1");
  if (!(t.learning_rate > 0.0)) throw ConfigError("train.learning_rate must be positive");
  if (t.loss_report_stride < 1) throw ConfigError("train.loss_report_stride must be at least 1");
  if (!(t.init_scale >= 0.0)) throw ConfigError("train.init_scale must be non-negative");
  return t;
}

RunConfig::Sample RunConfig::sample() const {
  Sample s;
  if (is_set("sample", "model")) s.model = string("sample", "model");
  s.shots = unsigned_integer("sample", "shots");
  s.S = as_int(integer("sample", "S"), "sample.S");
  s.variant = parse_enum<FineVariant>(*this, "sample", "variant", parse_fine_variant);
  s.seed = unsigned_integer("sample", "seed");
  s.compare = boolean("sample", "compare");
  if (s.S < 0 || s.S > 6) throw ConfigError("sample.S must lie in [0, 6]");
  return s;
}

RunConfig::Compare RunConfig::compare() const {
  Compare c;
  std::stringstream list(string("compare", "schemes"));
  std::string item;
  while (std::getline(list, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(' ') - b + 1);
    if (item != "hera" && !parse_scheme(item)) throw ConfigError(fmt::format("unknown scheme '{}' in compare.schemes", item));
    c.schemes.push_back(item);
  }
  if (c.schemes.empty()) throw ConfigError("compare.schemes is empty");
  c.n_min = as_int(integer("compare", "n_min"), "compare.n_min");
  c.n_max = as_int(integer("compare", "n_max"), "compare.n_max");
  c.depth = as_int(integer("compare", "depth"), "compare.depth");
  c.seeds = as_int(integer("compare", "seeds"), "compare.seeds");
  const std::string grid = string("compare", "grid");
  if (grid != "full" && grid != "integers") throw ConfigError("compare.grid must be 'full' or 'integers'");
  c.grid = grid == "full" ? GridKind::full : GridKind::integers;
  if (c.n_min < 1 || c.n_max < c.n_min || c.n_max > 10) throw ConfigError("compare n range is invalid");
  if (c.seeds < 1) throw ConfigError("compare.seeds must be at least 1");
  return c;
}

}  // namespace qh::cli

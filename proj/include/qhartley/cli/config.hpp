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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qhartley/model.hpp"
#include "qhartley/sampler.hpp"
#include "qhartley/targets.hpp"
#include "qhartley/trainer.hpp"

namespace qh::cli {

/// Fully resolved run configuration: every schema key present with its typed
/// value (null for unset optionals). Unknown sections or keys are rejected.
///
/// Sections: model, target, train, sample, output, verify, compare, overlap.
class RunConfig {
 public:
  RunConfig();

  /// Reads INI (`[section]` / `key = value`) or JSON (a `.json` path or text
  /// starting with `{`). Throws ConfigError.
  static RunConfig load(const std::string& path);
  static RunConfig from_ini(const std::string& text);
  static RunConfig from_json(const nlohmann::json& j);

  const nlohmann::json& data() const noexcept { return data_; }
  /// Resolved config minus the output location, embedded in every output.
  nlohmann::json snapshot() const;

  /// Type-checked override of one key.
  void set(std::string_view section, std::string_view key, const nlohmann::json& value);

  std::int64_t integer(std::string_view section, std::string_view key) const;
  std::uint64_t unsigned_integer(std::string_view section, std::string_view key) const;
  double real(std::string_view section, std::string_view key) const;
  bool boolean(std::string_view section, std::string_view key) const;
  std::string string(std::string_view section, std::string_view key) const;
  bool is_set(std::string_view section, std::string_view key) const;

  ModelSpec model_spec() const;
  /// Target with defaults of its kind filled in for unset parameters.
  TargetSpec target_spec() const;
  TrainConfig train_config() const;

  struct Sample {
    std::optional<std::string> model;
    std::uint64_t shots = 0;
    int S = 0;
    FineVariant variant = FineVariant::bitstring_network;
    std::uint64_t seed = 0;
    bool compare = true;
  };
  Sample sample() const;

  struct Compare {
    std::vector<std::string> schemes;
    int n_min = 2;
    int n_max = 5;
    int depth = 1;
    int seeds = 5;
    GridKind grid = GridKind::integers;
  };
  Compare compare() const;

 private:
  nlohmann::json data_;
};

}  // namespace qh::cli

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
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qh::cli {

std::string sha256_hex(std::string_view bytes);
/// Throws ConfigError if the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
/// Pretty-printed, trailing newline. Doubles round-trip exactly.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

using Cell = std::variant<double, std::int64_t, std::string>;

/// CSV with `# key: value` metadata lines ahead of the header row. Doubles are
/// written with 17 significant digits.
class CsvWriter {
 public:
  using Metadata = std::vector<std::pair<std::string, std::string>>;

  CsvWriter(const std::filesystem::path& path, const Metadata& metadata, const std::vector<std::string>& columns);

  void row(const std::vector<Cell>& cells);
  void close();

 private:
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t columns_;
};

std::string format_real(double v);

}  // namespace qh::cli

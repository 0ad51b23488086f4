// Copyright 2026 The vfsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vfsynth/harness/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {
namespace {

// Splits one CSV record. Doubled quotes inside a quoted field stand for one
// quote character.
std::vector<std::string> SplitRecord(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  for (std::string& f : out) {
    const size_t b = f.find_first_not_of(" \t\r");
    const size_t e = f.find_last_not_of(" \t\r");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

absl::StatusOr<DomainInfo> ParseDomain(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("attributes") ||
      !json["attributes"].is_array()) {
    return absl::InvalidArgumentError(
        "domain file needs an \"attributes\" array");
  }
  std::vector<Attribute> attrs;
  DomainInfo info;
  for (const nlohmann::json& a : json["attributes"]) {
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
      return absl::InvalidArgumentError("every attribute needs a name");
    }
    Attribute attr{a["name"].get<std::string>(), 0};
    std::vector<std::string> cats;
    if (a.contains("categories")) {
      for (const nlohmann::json& c : a["categories"]) {
        if (!c.is_string()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "categories of '", attr.name, "' must be strings"));
        }
        cats.push_back(c.get<std::string>());
      }
      attr.domain_size = static_cast<int>(cats.size());
    }
    if (a.contains("domain_size")) {
      if (!a["domain_size"].is_number_integer()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "domain_size of '", attr.name, "' must be an integer"));
      }
      const int u = a["domain_size"].get<int>();
      if (!cats.empty() && u != attr.domain_size) {
        return absl::InvalidArgumentError(absl::StrCat(
            "domain_size of '", attr.name, "' disagrees with its categories"));
      }
      attr.domain_size = u;
    }
    attrs.push_back(std::move(attr));
    info.categories.push_back(std::move(cats));
  }
  VFS_ASSIGN_OR_RETURN(info.schema, Schema::Create(std::move(attrs)));
  return info;
}

absl::StatusOr<DomainInfo> LoadDomain(const std::string& path) {
  VFS_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json json = nlohmann::json::parse(text, nullptr, false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain file ", path, " is not valid JSON"));
  }
  return ParseDomain(json);
}

absl::StatusOr<Dataset> ParseCsv(const std::string& text,
                                 const DomainInfo& domain) {
  const Schema& schema = domain.schema;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("CSV has no header row");
  }
  const std::vector<std::string> header = SplitRecord(line);
  // column_of[j] is the CSV column holding attribute j.
  std::vector<int> column_of(schema.size(), -1);
  for (size_t c = 0; c < header.size(); ++c) {
    auto j = schema.IndexOf(header[c]);
    if (!j.ok()) continue;
    if (column_of[*j] != -1) {
      return absl::InvalidArgumentError(
          absl::StrCat("CSV column '", header[c], "' appears twice"));
    }
    column_of[*j] = static_cast<int>(c);
  }
  for (int j = 0; j < schema.size(); ++j) {
    if (column_of[j] == -1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "CSV has no column for attribute '", schema.attribute(j).name, "'"));
    }
  }
  std::vector<uint32_t> values;
  int64_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = SplitRecord(line);
    if (fields.size() != header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", row, ": expected ", header.size(), " fields, got ",
          fields.size()));
    }
    for (int j = 0; j < schema.size(); ++j) {
      const std::string& f = fields[column_of[j]];
      const std::vector<std::string>& cats = domain.categories[j];
      int64_t code = -1;
      const auto it = std::find(cats.begin(), cats.end(), f);
      if (it != cats.end()) {
        code = it - cats.begin();
      } else {
        int64_t v = 0;
        auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || end != f.data() + f.size()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "row ", row, ", attribute '", schema.attribute(j).name,
              "': cannot parse '", f, "'"));
        }
        code = v;
      }
      if (code < 0 || code >= schema.domain_size(j)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "row ", row, ", attribute '", schema.attribute(j).name,
            "': value ", code, " outside domain of size ",
            schema.domain_size(j)));
      }
      values.push_back(static_cast<uint32_t>(code));
    }
    ++row;
  }
  std::vector<int> cols(schema.size());
  for (int j = 0; j < schema.size(); ++j) cols[j] = j;
  return Dataset::Create(schema, std::move(cols), std::move(values));
}

absl::StatusOr<Dataset> LoadCsv(const std::string& csv_path,
                                const std::string& domain_path) {
  VFS_ASSIGN_OR_RETURN(DomainInfo domain, LoadDomain(domain_path));
  VFS_ASSIGN_OR_RETURN(std::string text, ReadFile(csv_path));
  return ParseCsv(text, domain);
}

std::string FormatCsv(const Dataset& data) {
  std::string out;
  for (int p = 0; p < data.num_columns(); ++p) {
    if (p > 0) out += ',';
    out += data.schema().attribute(data.columns()[p]).name;
  }
  out += '\n';
  for (int64_t r = 0; r < data.num_rows(); ++r) {
    for (int p = 0; p < data.num_columns(); ++p) {
      if (p > 0) out += ',';
      out += std::to_string(data.at(r, p));
    }
    out += '\n';
  }
  return out;
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << contents;
  if (!out) return absl::UnavailableError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace vfsynth

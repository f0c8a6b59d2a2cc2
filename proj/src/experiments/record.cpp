// Copyright 2026 The hotspots Authors
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

#include "hotspots/experiments/record.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hotspots::experiments {

using nlohmann::json;

bool ResultRecord::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string content_hash(const json& config) {
  const std::string body = config.dump();
  const std::string blob = "blob " + std::to_string(body.size()) + std::string(1, '\0') + body;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) {
    throw Error("SHA-1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json record_to_json(const ResultRecord& r) {
  json metrics = json::object();
  for (const auto& [name, m] : r.metrics) {
    metrics[name] = {{"value", m.value}};
    if (m.stderr_) metrics[name]["stderr"] = *m.stderr_;
  }
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"invariant", c.invariant}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return {{"scenario_id", r.scenario_id}, {"kind", to_string(r.kind)}, {"timestamp", r.timestamp},
          {"config_hash", r.config_hash},  {"passed", r.passed()},       {"metrics", metrics},
          {"checks", checks},              {"outputs", r.outputs}};
}

std::vector<std::string> emit_report(const std::vector<ResultRecord>& records, const std::filesystem::path& dir) {
  if (records.empty()) throw Error("emit_report needs at least one record");
  std::filesystem::create_directories(dir);

  json summary = json::array();
  std::map<std::string, std::ostringstream> families;
  std::vector<std::string> lines;
  for (const auto& r : records) {
    summary.push_back(record_to_json(r));
    for (const auto& [name, m] : r.metrics) {
      const auto dot = name.find('.');
      const std::string family = dot == std::string::npos ? "metrics" : name.substr(0, dot);
      auto& out = families[family];
      if (out.tellp() == 0) out << "scenario_id,metric,value,stderr\n";
      out << r.scenario_id << ',' << name << ',' << format_number(m.value) << ','
          << (m.stderr_ ? format_number(*m.stderr_) : "") << '\n';
    }
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.pass;
    lines.push_back(r.scenario_id + " " + to_string(r.kind) + " " + (r.passed() ? "PASS" : "FAIL") + " checks " +
                    std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " config " +
                    r.config_hash.substr(0, 12));
  }

  const auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + p.string());
  };
  write(dir / "summary.json", json{{"records", summary}, {"passed", aggregate_exit_code(records) == 0}}.dump(2) + "\n");
  for (const auto& [family, text] : families) write(dir / ("metrics_" + family + ".csv"), text.str());
  return lines;
}

int aggregate_exit_code(const std::vector<ResultRecord>& records) {
  for (const auto& r : records) {
    if (!r.passed()) return 1;
  }
  return 0;
}

}  // namespace hotspots::experiments

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tlg {

inline constexpr const char* kVersion = "0.1.0";

// One JSON document per run: sub-reports, metadata and every flag raised.
class ReportBundle {
 public:
  explicit ReportBundle(std::string command) : command_(std::move(command)) {}

  void set_backend(std::string b) { backend_ = std::move(b); }
  void set_tolerance(double t) { tolerance_ = t; }
  void set_seed(uint64_t s) { seed_ = s; }
  void set_wall_clock(double seconds) { wall_ = seconds; }
  // section must be a JSON document; any "flags" arrays inside are collected
  void add(const std::string& name, const std::string& json);
  void flag(const std::string& note);

  const std::vector<std::string>& flags() const { return flags_; }
  bool empty() const { return sections_.empty(); }
  std::string json() const;

 private:
  std::string command_, backend_;
  std::optional<double> tolerance_, wall_;
  std::optional<uint64_t> seed_;
  std::vector<std::pair<std::string, std::string>> sections_;
  std::vector<std::string> flags_;
};

}  // namespace tlg

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/report.hpp"

#include <algorithm>

#include "json.hpp"
#include "tlg/errors.hpp"

namespace tlg {

namespace {
void collect(const nlohmann::json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "flags" && it->is_array()) {
        for (const auto& f : *it)
          if (f.is_string()) out.push_back(f.get<std::string>());
      } else {
        collect(*it, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) collect(e, out);
  }
}
}  // namespace

void ReportBundle::add(const std::string& name, const std::string& json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    fail(Err::Internal, "section " + name + " is not JSON: " + e.what());
  }
  std::vector<std::string> f;
  collect(j, f);
  for (auto& x : f) flag(x);
  sections_.emplace_back(name, json);
}

void ReportBundle::flag(const std::string& note) {
  if (std::find(flags_.begin(), flags_.end(), note) == flags_.end()) flags_.push_back(note);
}

std::string ReportBundle::json() const {
  if (sections_.empty()) fail(Err::ConfigInvalid, "report bundle has no results");
  nlohmann::json j;
  j["tool"] = "tlg";
  j["version"] = kVersion;
  j["command"] = command_;
  if (!backend_.empty()) j["backend"] = backend_;
  if (tolerance_) j["tolerance"] = *tolerance_;
  if (seed_) j["seed"] = *seed_;
  if (wall_) j["wall_clock_s"] = *wall_;
  nlohmann::json res = nlohmann::json::object();
  for (const auto& [name, body] : sections_) res[name] = nlohmann::json::parse(body);
  j["results"] = res;
  if (!flags_.empty()) j["flags"] = flags_;
  return j.dump(2);
}

}  // namespace tlg

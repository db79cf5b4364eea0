// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <string>
#include <vector>

#include "tlg/lattice.hpp"

namespace tlg {

// "torus:3x3", "disk:2x3", "tri:3x3"
SurfaceLattice parse_lattice(const std::string& spec);
Model parse_model(const std::string& name);  // h0 | hprime | ring

struct CommandOutput {
  std::string json;  // report bundle
  std::string csv;   // empty when the command has no table
};

// Run one request. `request` is a JSON object; see the README for fields.
CommandOutput run_command(const std::string& command, const std::string& request);
std::vector<std::string> command_names();

}  // namespace tlg

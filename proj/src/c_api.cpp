// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/tlg_c.h"

#include <new>
#include <string>

#include "json.hpp"
#include "tlg/commands.hpp"
#include "tlg/errors.hpp"
#include "tlg/lattice.hpp"
#include "tlg/report.hpp"

struct tlg_context {
  std::string error = "", json, csv, scratch;
};

struct tlg_lattice {
  tlg::SurfaceLattice lat;
};

namespace {

static_assert(static_cast<int>(tlg::Err::Internal) == TLG_INTERNAL, "status codes out of sync");

int report(tlg_context* ctx, tlg::Err code, const std::string& msg) {
  if (ctx) {
    nlohmann::json j;
    j["error"] = tlg::err_name(code);
    j["status"] = static_cast<int>(code);
    j["exit_code"] = tlg::exit_code_for(code);
    j["message"] = msg;
    ctx->error = j.dump();
  }
  return static_cast<int>(code);
}

// every entry point funnels exceptions into a status
template <class F>
int guarded(tlg_context* ctx, F&& f) {
  try {
    if (ctx) ctx->error.clear();
    f();
    return TLG_OK;
  } catch (const tlg::Error& e) {
    return report(ctx, e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return report(ctx, tlg::Err::StateSpaceTooLarge, "out of memory");
  } catch (const std::exception& e) {
    return report(ctx, tlg::Err::Internal, e.what());
  }
}

}  // namespace

extern "C" {

const char* tlg_version(void) { return tlg::kVersion; }

const char* tlg_status_name(int status) {
  if (status < 0 || status > TLG_INTERNAL) return "Unknown";
  return tlg::err_name(static_cast<tlg::Err>(status));
}

int tlg_exit_code(int status) {
  if (status < 0 || status > TLG_INTERNAL) return 4;
  return tlg::exit_code_for(static_cast<tlg::Err>(status));
}

tlg_context* tlg_context_new(void) { return new (std::nothrow) tlg_context(); }
void tlg_context_free(tlg_context* ctx) { delete ctx; }
const char* tlg_last_error(const tlg_context* ctx) { return ctx ? ctx->error.c_str() : ""; }

int tlg_run(tlg_context* ctx, const char* command, const char* request_json) {
  if (!ctx) return TLG_CONFIG_INVALID;
  if (!command) return report(ctx, tlg::Err::ConfigInvalid, "no command");
  return guarded(ctx, [&] {
    ctx->json.clear();
    ctx->csv.clear();
    auto out = tlg::run_command(command, request_json ? request_json : "");
    ctx->json = std::move(out.json);
    ctx->csv = std::move(out.csv);
  });
}

const char* tlg_result_json(const tlg_context* ctx) { return ctx ? ctx->json.c_str() : ""; }
const char* tlg_result_csv(const tlg_context* ctx) { return ctx ? ctx->csv.c_str() : ""; }

const char* tlg_commands(tlg_context* ctx) {
  if (!ctx) return "";
  ctx->scratch.clear();
  for (const auto& c : tlg::command_names()) ctx->scratch += c + "\n";
  return ctx->scratch.c_str();
}

int tlg_lattice_new(tlg_context* ctx, const char* spec, tlg_lattice** out) {
  if (!out) return report(ctx, tlg::Err::ConfigInvalid, "null output");
  *out = nullptr;
  if (!spec) return report(ctx, tlg::Err::ConfigInvalid, "no lattice spec");
  return guarded(ctx, [&] { *out = new tlg_lattice{tlg::parse_lattice(spec)}; });
}

void tlg_lattice_free(tlg_lattice* lat) { delete lat; }

int tlg_lattice_sites(const tlg_lattice* lat) { return lat ? lat->lat.sites() : -1; }

int tlg_lattice_describe(tlg_context* ctx, const tlg_lattice* lat, const char** out) {
  if (!ctx || !lat || !out) return report(ctx, tlg::Err::ConfigInvalid, "null argument");
  ctx->scratch = lat->lat.describe();
  *out = ctx->scratch.c_str();
  return TLG_OK;
}

int tlg_loop_count(tlg_context* ctx, const tlg_lattice* lat, const char* config_hex, int* out) {
  if (!lat || !config_hex || !out) return report(ctx, tlg::Err::ConfigInvalid, "null argument");
  return guarded(ctx, [&] { *out = tlg::loop_count(lat->lat, tlg::parse_config_hex(config_hex, lat->lat.sites())); });
}

int tlg_walls(tlg_context* ctx, const tlg_lattice* lat, const char* config_hex, const char** out_json) {
  if (!ctx || !lat || !config_hex || !out_json) return report(ctx, tlg::Err::ConfigInvalid, "null argument");
  return guarded(ctx, [&] {
    ctx->scratch = tlg::extract_walls(lat->lat, tlg::parse_config_hex(config_hex, lat->lat.sites())).json();
    *out_json = ctx->scratch.c_str();
  });
}

}  // extern "C"

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
//
// tlg: batch front-end over the C interface. Each subcommand turns flags
// (and an optional JSON config) into one request, runs it, and writes the
// report bundle (JSON) and table (CSV).
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlg/tlg_c.h"

using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;

struct Output {
  std::string json_path, csv_path, format = "json";
  bool timestamps = true;
};

int emit(const Output& o, const std::string& js, const std::string& csv) {
  if (!o.json_path.empty()) {
    std::ofstream f(o.json_path);
    if (!f) {
      std::cerr << "cannot write " << o.json_path << '\n';
      return kExitConfig;
    }
    f << js << '\n';
  }
  if (!o.csv_path.empty()) {
    std::ofstream f(o.csv_path);
    if (!f) {
      std::cerr << "cannot write " << o.csv_path << '\n';
      return kExitConfig;
    }
    f << csv;
  }
  if (o.format == "csv") {
    std::cout << csv;
  } else if (o.json_path.empty()) {
    std::cout << js << '\n';
  }
  return 0;
}

int run(const std::string& command, json req, const Output& o) {
  if (!o.timestamps) req["timestamps"] = false;
  tlg_context* ctx = tlg_context_new();
  if (!ctx) return 3;
  int st = tlg_run(ctx, command.c_str(), req.dump().c_str());
  int code = 0;
  if (st != TLG_OK) {
    std::cerr << tlg_last_error(ctx) << '\n';
    code = tlg_exit_code(st);
  } else {
    code = emit(o, tlg_result_json(ctx), tlg_result_csv(ctx));
  }
  tlg_context_free(ctx);
  return code;
}

// flags seen on the command line override the config file
struct Fields {
  json req = json::object();
  template <class T>
  void set(CLI::Option* opt, const char* key, const T& v) {
    if (opt && opt->count()) req[key] = v;
  }
};

std::string lattice_spec(const std::string& spec, const std::string& torus, const std::string& disk,
                         const std::string& tri) {
  int n = !spec.empty() + !torus.empty() + !disk.empty() + !tri.empty();
  if (n > 1) throw CLI::ValidationError("lattice", "give one of --lattice, --torus, --disk, --tri");
  if (!torus.empty()) return "torus:" + torus;
  if (!disk.empty()) return "disk:" + disk;
  if (!tri.empty()) return "tri:" + tri;
  return spec;
}

std::string self_dir(const char* argv0) {
  std::error_code ec;
  auto p = std::filesystem::canonical("/proc/self/exe", ec);
  if (ec) p = std::filesystem::absolute(argv0);
  return p.parent_path().string();
}

int run_verify(const std::string& path, const std::string& argv0) {
  std::string exe = path;
  if (exe.empty()) {
    const char* env = std::getenv("TLG_ACCEPTANCE");
    exe = env ? env : self_dir(argv0.c_str()) + "/tlg_acceptance";
  }
  if (!std::filesystem::exists(exe)) {
    std::cerr << "{\"error\":\"ConfigInvalid\",\"message\":\"acceptance binary not found at " << exe << "\"}\n";
    return kExitConfig;
  }
  FILE* p = popen(("\"" + exe + "\"").c_str(), "r");
  if (!p) return kExitConfig;
  char buf[4096];
  while (size_t k = fread(buf, 1, sizeof buf, p)) fwrite(buf, 1, k, stdout);
  int st = pclose(p);
  if (st == 0) return 0;
  return 5;  // a criterion failed against its oracle
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tlg: Temperley-Lieb diagrams, loop-gas Hamiltonians and FK-Potts checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", std::string(tlg_version()));

  Output out;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config; flags override its fields")->check(CLI::ExistingFile);
  app.add_option("--json", out.json_path, "write the JSON report here instead of stdout");
  app.add_option("--csv", out.csv_path, "write the CSV table here");
  app.add_option("--format", out.format, "what to print on stdout")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("!--no-timestamps", out.timestamps, "omit wall-clock fields (byte-identical reruns)");

  // shared values; each subcommand registers the flags it accepts
  int ell = 0, n = 0, m = 0, k = 0, n_max = 0, grade_cap = 0, ell_max = 0, chains = 1;
  double d = 0;
  long state_cap = 0, component_cap = 0;
  unsigned long long sweeps = 0, burn_in = 0, seed = 0, trace_every = 0;
  std::string backend, lattice, torus, disk, tri, model, solver, convention, acceptance;
  std::vector<std::string> seeds;
  bool containment = false, single_window = false, no_tv = false, foam = false;
  std::string action;
  std::map<std::string, CLI::Option*> o;

  auto lattice_opts = [&](CLI::App* s) {
    o["lattice"] = s->add_option("--lattice", lattice, "kind:WxH with kind torus, disk or tri");
    s->add_option("--torus", torus, "square torus WxH");
    s->add_option("--disk", disk, "square disk of WxH faces");
    s->add_option("--tri", tri, "triangular torus WxH");
  };

  auto* tl = app.add_subcommand("tl", "diagrams, Jones-Wenzl projectors, Gram matrices, radicals, ideals");
  tl->add_option("action", action)->required()->check(CLI::IsMember({"diagrams", "jw", "gram", "radical", "ideal"}));
  o["m"] = tl->add_option("--m", m, "top points");
  o["n"] = tl->add_option("--n", n, "bottom points / grade");
  o["k"] = tl->add_option("--k", k, "projector index");
  o["ell"] = tl->add_option("--ell", ell, "level");
  o["d"] = tl->add_option("--d", d, "float value of d (gram)");
  o["backend"] = tl->add_option("--backend", backend)->check(CLI::IsMember({"exact", "float"}));
  o["n_max"] = tl->add_option("--n-max", n_max, "largest grade (ideal)");

  auto* an = app.add_subcommand("annulus", "annular closures, the annular ideal and beta projectors");
  an->add_option("action", action)->required()->check(CLI::IsMember({"closure", "ideal", "beta"}));
  o["ak"] = an->add_option("--k", k, "projector index (closure)");
  o["aell"] = an->add_option("--ell", ell, "level");
  o["grade_cap"] = an->add_option("--grade-cap", grade_cap);

  auto* tb = app.add_subcommand("table", "label-count table and S matrices");
  tb->add_option("name", action)->required()->check(CLI::IsMember({"fig02", "smatrix"}));
  o["ell_max"] = tb->add_option("--ellmax,--ell-max", ell_max);
  o["tell"] = tb->add_option("--ell", ell);
  o["convention"] = tb->add_option("--convention", convention)->check(CLI::IsMember({"shifted", "unshifted"}));

  auto* lt = app.add_subcommand("lattice", "lattices, components, kernels, joint kernels, energies");
  lt->add_option("action", action)
      ->required()
      ->check(CLI::IsMember({"build", "components", "kernel", "joint-kernel", "energy", "pauli"}));
  lattice_opts(lt);
  o["lell"] = lt->add_option("--ell", ell);
  o["model"] = lt->add_option("--model", model)->check(CLI::IsMember({"h0", "hprime", "ring"}));
  o["solver"] = lt->add_option("--solver", solver)->check(CLI::IsMember({"both", "propagate", "dense"}));
  o["seeds"] = lt->add_option("--seed-config", seeds, "hex configuration seeding a component");
  o["state_cap"] = lt->add_option("--state-cap", state_cap);
  o["component_cap"] = lt->add_option("--component-cap", component_cap);
  o["containment"] = lt->add_flag("--containment", containment, "also check G' inside G''");
  o["single_window"] = lt->add_flag("--single-window", single_window);

  auto* gs = app.add_subcommand("gas", "loop-gas / FK-Potts parameters, exact census, sampler");
  gs->add_option("action", action)->required()->check(CLI::IsMember({"params", "exact", "sample"}));
  lattice_opts(gs);
  o["gell"] = gs->add_option("--ell", ell);
  o["sweeps"] = gs->add_option("--sweeps", sweeps);
  o["burn_in"] = gs->add_option("--burn-in", burn_in);
  o["seed"] = gs->add_option("--seed", seed);
  o["chains"] = gs->add_option("--chains", chains);
  o["trace_every"] = gs->add_option("--trace-every", trace_every);
  o["no_tv"] = gs->add_flag("--no-tv", no_tv, "skip the exact-enumeration oracle");
  o["foam"] = gs->add_flag("--foam", foam, "measurement law of the all-minus component vs the cluster form");
  o["gstate_cap"] = gs->add_option("--state-cap", state_cap);

  auto* vf = app.add_subcommand("verify", "run the acceptance suite");
  vf->add_option("--acceptance", acceptance, "path to the acceptance binary");

  CLI11_PARSE(app, argc, argv);

  if (vf->parsed()) return run_verify(acceptance, argv[0]);

  Fields F;
  std::string command;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      F.req = json::parse(f);
      if (!F.req.is_object()) throw std::runtime_error("config must be a JSON object");
      if (F.req.contains("command")) F.req.erase("command");
    }
    auto cmd = [&](CLI::App* s) { return s->get_name() + "." + action; };
    if (tl->parsed()) {
      command = cmd(tl);
      F.set(o["m"], "m", m);
      F.set(o["n"], "n", n);
      F.set(o["k"], "k", k);
      F.set(o["ell"], "ell", ell);
      F.set(o["d"], "d", d);
      F.set(o["backend"], "backend", backend);
      F.set(o["n_max"], "n_max", n_max);
    } else if (an->parsed()) {
      command = cmd(an);
      F.set(o["ak"], "k", k);
      F.set(o["aell"], "ell", ell);
      F.set(o["grade_cap"], "grade_cap", grade_cap);
    } else if (tb->parsed()) {
      command = cmd(tb);
      F.set(o["ell_max"], "ell_max", ell_max);
      F.set(o["tell"], "ell", ell);
      F.set(o["convention"], "convention", convention);
    } else if (lt->parsed() || gs->parsed()) {
      CLI::App* s = lt->parsed() ? lt : gs;
      command = cmd(s);
      std::string spec = lattice_spec(lattice, torus, disk, tri);
      if (!spec.empty()) F.req["lattice"] = spec;
      F.set(o["lell"], "ell", ell);
      F.set(o["gell"], "ell", ell);
      F.set(o["model"], "model", model);
      F.set(o["solver"], "solver", solver);
      F.set(o["seeds"], "seeds", seeds);
      F.set(o["state_cap"], "state_cap", state_cap);
      F.set(o["gstate_cap"], "state_cap", state_cap);
      F.set(o["component_cap"], "component_cap", component_cap);
      if (containment) F.req["containment"] = true;
      if (single_window) F.req["single_window"] = true;
      F.set(o["sweeps"], "sweeps", sweeps);
      F.set(o["burn_in"], "burn_in", burn_in);
      F.set(o["seed"], "seed", seed);
      F.set(o["chains"], "chains", chains);
      F.set(o["trace_every"], "trace_every", trace_every);
      if (no_tv) F.req["tv"] = false;
      if (foam) F.req["foam"] = true;
      if (const char* t = std::getenv("TLG_THREADS")) F.req["threads"] = std::atoi(t);
    }
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "ConfigInvalid"}, {"exit_code", kExitConfig}, {"message", e.what()}}.dump() << '\n';
    return kExitConfig;
  }
  return run(command, F.req, out);
}

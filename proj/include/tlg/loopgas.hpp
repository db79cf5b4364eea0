// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tlg/hamiltonian.hpp"

namespace tlg {

// Loop-gas / FK parameters at level ell: n = d^2, q = d^4, p = sqrt(q)/(1+sqrt(q)).
// Exact over Q(delta) where that backend exists, floats otherwise.
struct GibbsModel {
  int ell = 0;
  Ring ring;
  Scalar d, n, q, p;
  double d_f = 0, n_f = 0, q_f = 0, p_f = 0;
  bool exact = false;
  std::vector<std::string> flags;  // numerical notes raised while building
  std::string json() const;
};
GibbsModel potts_params(int ell);

// ---- measurement ----

struct Distribution {
  std::vector<Config> states;
  std::vector<Scalar> prob;    // exact when the ring is
  std::vector<double> prob_f;
};
// |a_s|^2 for the propagated kernel vector of one component
Distribution measurement_distribution(const ConstraintSystem& cs, const PropagatedKernel& k, uint32_t comp);
// float version for any normalized vector (indices into cs.states)
Distribution measurement_distribution(const ConstraintSystem& cs, const std::vector<std::pair<uint32_t, double>>& v);

// p(v)/p(u) = (d^2)^(loops(v) - loops(u)) inside every component
struct GibbsLawReport {
  int ell = 0;
  size_t components = 0, states = 0, pairs = 0, violations = 0;
  bool ok() const { return violations == 0 && pairs > 0; }
  std::string json() const;
};
GibbsLawReport gibbs_law_check(const SurfaceLattice& lat, const ConstraintSystem& cs, const PropagatedKernel& k);

// ---- FK weights ----

struct FkWeight {
  int L = 0, C = 0, Cstar = 0, E = 0, Estar = 0;  // Cstar excludes the exterior region on a disk
  int wrap_rank = 0, dual_wrap_rank = 0;
  Scalar loop_form, cluster_form;  // (d^2)^L and q^C p^E (1-p)^E*
  std::string json() const;
};
FkWeight fk_weight(const SurfaceLattice& lat, Config s, const GibbsModel& g);

// Exhaustive census: loop identity and loop/cluster ratio per homology class.
struct FkClass {
  std::string key;     // "planar" or "r+=a,r-=b"
  int correction = 0;  // L - C - C*, when constant
  bool identity_holds = true;
  size_t count = 0;
  Scalar ratio;        // loop form / cluster form
  bool single_constant = true;
};
struct FkCensus {
  int ell = 0;
  std::string lattice;
  size_t configs = 0;
  std::vector<FkClass> classes;
  bool ok() const;
  std::string json() const;
};
FkCensus fk_census(const SurfaceLattice& lat, const GibbsModel& g);

// W(swap s)/W(s) in cluster form, where swap exchanges (C, E) <-> (C*, E*):
// constant over configurations exactly at the self-dual p.
struct SelfDuality {
  int ell = 0;
  bool symbolic = false;       // (p/(1-p))^2 = q with p = d^2/(1+d^2), over Q(d)
  bool constant_at_p = false;  // over all configurations of the lattice
  bool varies_off_p = false;   // p perturbed
  std::string json() const;
};
SelfDuality self_duality_check(const SurfaceLattice& lat, int ell);

// Measurement law of a kernel component against the cluster form: one constant.
struct PottsMatch {
  int ell = 0;
  size_t states = 0;
  bool single_constant = false;
  Scalar constant;
  std::vector<std::string> classes;
  std::string json() const;
};
PottsMatch potts_match(const SurfaceLattice& lat, const ConstraintSystem& cs, const PropagatedKernel& k, uint32_t comp,
                       const GibbsModel& g);

// ---- sampler ----

// splitmix64 on a counter: value i of stream `seed` is mix(seed + (i+1) * gamma)
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}
  uint64_t next();
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  uint64_t below(uint64_t n);
  uint64_t counter() const { return ctr_; }

 private:
  uint64_t seed_, ctr_ = 0;
};

struct SampleOptions {
  uint64_t sweeps = 1000;
  uint64_t burn_in = 0;  // sweeps discarded first
  uint64_t seed = 1;
  int chains = 1;                 // independent chains on seeds seed, seed+1, ...
  int threads = 0;                // chains run at once; 0 = all (results do not depend on it)
  bool tally_configs = false;     // per-update tallies over all 2^sites states
  uint64_t trace_every = 0;       // trace row every so many sweeps; 0 off
};

struct TraceRow {
  uint64_t sweep;
  int loops, C, Cstar;
  double acceptance;
};

struct SampleRecord {
  int ell = 0;
  std::string lattice;
  uint64_t seed = 0, sweeps = 0, burn_in = 0;
  int chains = 1;
  uint64_t steps = 0, accepted = 0, recounts = 0;
  double acceptance = 0;
  // per-sweep observables, batch-means standard errors
  double mean_loops = 0, se_loops = 0, mean_clusters = 0, se_clusters = 0;
  std::vector<uint64_t> tallies;  // when requested
  uint64_t tally_total = 0;
  std::vector<TraceRow> trace;
  std::string json() const;  // tallies omitted
  std::string csv() const;   // trace
};

// Metropolis ratio of flipping one bond: q^dC p^dE (1-p)^dE*, from local connectivity
struct FlipRatio {
  int dC = 0, dE = 0;
  double ratio = 0;
};
FlipRatio flip_ratio(const SurfaceLattice& lat, Config s, int bond, const GibbsModel& g);

SampleRecord metropolis_sample(const SurfaceLattice& lat, const GibbsModel& g, const SampleOptions& opt);

// exact cluster-form law over all 2^sites configurations
struct ExactLaw {
  std::vector<double> prob;
  double mean_loops = 0, mean_clusters = 0;
};
ExactLaw exact_cluster_law(const SurfaceLattice& lat, const GibbsModel& g);
double tv_distance(const std::vector<uint64_t>& tallies, uint64_t total, const std::vector<double>& prob);

// pi(s) A(s->s') = pi(s') A(s'->s) exactly, for every single flip
struct BalanceReport {
  size_t pairs = 0, violations = 0;
  bool ok() const { return pairs > 0 && violations == 0; }
};
BalanceReport detailed_balance_check(const SurfaceLattice& lat, const GibbsModel& g);

}  // namespace tlg

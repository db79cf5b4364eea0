// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tlg/errors.hpp"

namespace tlg {

enum class LatticeKind { SquareTorus, TriangularTorus, SquareDisk };
enum class Model { H0, HPrime, RingExchange };
const char* kind_name(LatticeKind k);
const char* model_name(Model m);

using Config = uint64_t;  // bit i = spin of site i, 1 = |+>

struct Vec2 {
  double x = 0, y = 0;
};

// Bond-spin lattices (square torus, square disk) carry the mid-lattice
// structure. Ports are (bond, end, side): 4 per bond, id = 4*bond + 2*end + side.
struct Bond {
  int v[2];    // endpoints
  int f[2];    // faces on either side
  int dx, dy;  // lattice displacement v[0] -> v[1]
};

class SurfaceLattice {
 public:
  static SurfaceLattice square_torus(int w, int h);
  static SurfaceLattice square_disk(int w, int h);  // w x h faces, exterior is one dual region
  static SurfaceLattice triangular_torus(int w, int h);

  LatticeKind kind() const { return kind_; }
  int width() const { return w_; }
  int height() const { return h_; }
  int sites() const { return sites_; }
  bool is_torus() const { return kind_ != LatticeKind::SquareDisk; }
  bool bond_model() const { return kind_ != LatticeKind::TriangularTorus; }
  std::string describe() const;
  int euler_characteristic() const;

  // bond model
  int vertex_count() const { return nverts_; }
  int face_count() const { return nfaces_; }  // includes the exterior on a disk
  int exterior_face() const { return exterior_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const std::vector<std::vector<int>>& face_bonds() const { return face_bonds_; }   // cyclic
  const std::vector<std::vector<int>>& vertex_bonds() const { return vert_bonds_; }  // cyclic
  int port_count() const { return 4 * static_cast<int>(bonds_.size()); }
  int medial(int port) const { return medial_[port]; }
  int split(Config s, int port) const;
  Vec2 port_position(int port) const { return port_pos_[port]; }
  Vec2 face_center(int f) const { return face_pos_[f]; }
  Vec2 bond_mid(int b) const { return bond_pos_[b]; }
  int bond_index(char kind, int x, int y) const;  // 'h' or 'v'

  // plaque model (triangular torus): 6 neighbours in cyclic order
  const std::array<int, 6>& neighbours(int site) const { return nbr_[site]; }
  // honeycomb: triangles of mutually adjacent plaques; wall edges = adjacent
  // plaque pairs
  struct Adjacency {
    int a, b;      // plaques
    int t[2];      // triangles on either side
  };
  const std::vector<Adjacency>& adjacencies() const { return adj_; }
  int triangle_count() const { return ntri_; }
  Vec2 triangle_center(int t) const { return tri_pos_[t]; }

  // minimal-image displacement on the torus (identity on a disk)
  Vec2 wrap(Vec2 d) const;

 private:
  void build_medial();
  LatticeKind kind_ = LatticeKind::SquareTorus;
  int w_ = 0, h_ = 0, sites_ = 0;
  int nverts_ = 0, nfaces_ = 0, exterior_ = -1;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> face_bonds_, vert_bonds_;
  std::vector<std::vector<int>> vert_wedge_face_;  // face between vert_bonds[i] and [i+1]
  std::vector<int> medial_;
  std::vector<Vec2> port_pos_, face_pos_, bond_pos_, vert_pos_;
  std::vector<std::array<int, 6>> nbr_;
  std::vector<Adjacency> adj_;
  int ntri_ = 0;
  std::vector<Vec2> tri_pos_;
};

struct EssentialLoop {
  int a, b;  // winding, normalized so the first nonzero entry is positive
};

struct WallCensus {
  int loops = 0;  // all mid-lattice loops
  int trivial_loops = 0;
  std::vector<EssentialLoop> essential;
  int clusters = 0, dual_clusters = 0;  // isolated (dual) vertices count
  int edges = 0, dual_edges = 0;        // E = #|+> bonds, E* = #|-> bonds
  int wrap_rank = 0, dual_wrap_rank = 0;  // rank of the homology spanned by clusters / dual clusters
  int wrapping_clusters = 0, wrapping_dual_clusters = 0;
  std::string json() const;
};

WallCensus extract_walls(const SurfaceLattice& lat, Config s);
int loop_count(const SurfaceLattice& lat, Config s);  // fast path, loops only

enum class MoveKind { Isotopy, LoopCreate, LoopRemove, RingExchange };
const char* move_kind_name(MoveKind k);

struct Move {
  int site;          // plaque, or the cell/vertex hosting the term (bond model)
  bool dual;         // bond model: vertex-centred term
  int bond;          // bond model: the flipped (or moved) bond
  MoveKind kind;
  Config partner;
  int dloops;        // amplitude(partner) = d^dloops * amplitude(s)
};

std::vector<Move> local_moves(const SurfaceLattice& lat, Config s, Model m);
bool model_fits(const SurfaceLattice& lat, Model m);

struct Component {
  std::vector<Config> states;  // sorted
  struct Edge {
    uint32_t u, v;  // indices into states
    int dloops;
    MoveKind kind;
  };
  std::vector<Edge> edges;
  std::vector<int> potential;  // amplitude exponent relative to states[0]
  bool consistent = true;
  size_t index_of(Config s) const;  // states.size() when absent
};

inline constexpr size_t kDefaultComponentCap = 5000000;

Component explore_component(const SurfaceLattice& lat, Config seed, Model m, size_t cap = kDefaultComponentCap);

// Full partition of the configuration space (sites <= 26).
struct Partition {
  std::vector<uint32_t> label;  // per configuration
  std::vector<uint32_t> sizes;
  std::vector<Config> seeds;  // smallest configuration in each component
  uint32_t count() const { return static_cast<uint32_t>(sizes.size()); }
};
Partition partition_components(const SurfaceLattice& lat, Model m);

// slope-1 staircases on a square torus: bonds along a diagonal path
std::vector<Config> staircases(const SurfaceLattice& lat);

Config global_swap(const SurfaceLattice& lat, Config s);
std::string config_hex(Config s, int sites);
Config parse_config_hex(const std::string& s, int sites);

}  // namespace tlg

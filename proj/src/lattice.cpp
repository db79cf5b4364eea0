// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace tlg {

const char* kind_name(LatticeKind k) {
  switch (k) {
    case LatticeKind::SquareTorus: return "square-torus";
    case LatticeKind::TriangularTorus: return "triangular-torus";
    case LatticeKind::SquareDisk: return "square-disk";
  }
  return "?";
}

const char* model_name(Model m) {
  switch (m) {
    case Model::H0: return "H0";
    case Model::HPrime: return "Hprime";
    case Model::RingExchange: return "ring-exchange";
  }
  return "?";
}

const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::Isotopy: return "isotopy";
    case MoveKind::LoopCreate: return "loop-create";
    case MoveKind::LoopRemove: return "loop-remove";
    case MoveKind::RingExchange: return "ring-exchange";
  }
  return "?";
}

namespace {
int md(int a, int n) { return ((a % n) + n) % n; }

// union-find with Z^2 potentials, used for homology ranks of cluster graphs
struct PotentialUF {
  std::vector<int> par;
  std::vector<std::pair<int, int>> pot;  // position of node relative to its parent
  explicit PotentialUF(int n) : par(n), pot(n, {0, 0}) { std::iota(par.begin(), par.end(), 0); }
  int find(int x) {
    if (par[x] == x) return x;
    int r = find(par[x]);
    auto p = pot[par[x]];
    pot[x].first += p.first;
    pot[x].second += p.second;
    par[x] = r;
    return r;
  }
  // returns the cycle vector when u,v were already joined, else (0,0) with joined=true
  bool unite(int u, int v, int dx, int dy, std::pair<int, int>* cycle) {
    int ru = find(u), rv = find(v);
    auto pu = pot[u], pv = pot[v];
    if (ru == rv) {
      cycle->first = pu.first + dx - pv.first;
      cycle->second = pu.second + dy - pv.second;
      return false;
    }
    par[rv] = ru;
    // pos(v) = pos(u) + d; pos(v) = pot_v + pos(rv) -> pos(rv) = pos(u) + d - pot_v
    pot[rv] = {pu.first + dx - pv.first, pu.second + dy - pv.second};
    return true;
  }
};

int rank2(const std::vector<std::pair<int, int>>& vs) {
  int r = 0;
  std::pair<int, int> first{0, 0};
  for (auto v : vs) {
    if (v.first == 0 && v.second == 0) continue;
    if (r == 0) {
      first = v;
      r = 1;
    } else if (static_cast<long>(first.first) * v.second - static_cast<long>(first.second) * v.first != 0) {
      return 2;
    }
  }
  return r;
}
}  // namespace

SurfaceLattice SurfaceLattice::square_torus(int w, int h) {
  if (w < 2 || h < 2) fail(Err::ConfigInvalid, "square torus needs w, h >= 2");
  if (w * h > 4096) fail(Err::ConfigInvalid, "square torus too large");
  SurfaceLattice L;
  L.kind_ = LatticeKind::SquareTorus;
  L.w_ = w;
  L.h_ = h;
  L.nverts_ = w * h;
  L.nfaces_ = w * h;
  auto V = [&](int x, int y) { return md(y, h) * w + md(x, w); };
  auto F = V;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // h(x,y): (x,y)-(x+1,y), faces below/above; v(x,y): (x,y)-(x,y+1), faces left/right
      L.bonds_.push_back({{V(x, y), V(x + 1, y)}, {F(x, y - 1), F(x, y)}, 1, 0});
      L.bonds_.push_back({{V(x, y), V(x, y + 1)}, {F(x - 1, y), F(x, y)}, 0, 1});
    }
  L.sites_ = static_cast<int>(L.bonds_.size());
  auto hb = [&](int x, int y) { return 2 * V(x, y); };
  auto vb = [&](int x, int y) { return 2 * V(x, y) + 1; };
  L.face_bonds_.resize(L.nfaces_);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) L.face_bonds_[F(x, y)] = {hb(x, y), vb(x + 1, y), hb(x, y + 1), vb(x, y)};
  L.vert_bonds_.resize(L.nverts_);
  L.vert_wedge_face_.resize(L.nverts_);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // counterclockwise E, N, W, S; wedges NE, NW, SW, SE
      L.vert_bonds_[V(x, y)] = {hb(x, y), vb(x, y), hb(x - 1, y), vb(x, y - 1)};
      L.vert_wedge_face_[V(x, y)] = {F(x, y), F(x - 1, y), F(x - 1, y - 1), F(x, y - 1)};
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      L.vert_pos_.push_back({double(x), double(y)});
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) L.face_pos_.push_back({x + 0.5, y + 0.5});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      L.bond_pos_.push_back({x + 0.5, double(y)});
      L.bond_pos_.push_back({double(x), y + 0.5});
    }
  L.build_medial();
  return L;
}

SurfaceLattice SurfaceLattice::square_disk(int w, int h) {
  if (w < 1 || h < 1) fail(Err::ConfigInvalid, "disk needs w, h >= 1");
  SurfaceLattice L;
  L.kind_ = LatticeKind::SquareDisk;
  L.w_ = w;
  L.h_ = h;
  int vw = w + 1, vh = h + 1;
  L.nverts_ = vw * vh;
  L.nfaces_ = w * h + 1;
  L.exterior_ = w * h;
  auto V = [&](int x, int y) { return y * vw + x; };
  auto F = [&](int x, int y) { return (x < 0 || y < 0 || x >= w || y >= h) ? w * h : y * w + x; };
  std::vector<int> hidx(vw * vh, -1), vidx(vw * vh, -1);
  for (int y = 0; y < vh; ++y)
    for (int x = 0; x < vw; ++x) {
      if (x + 1 < vw) {
        hidx[V(x, y)] = static_cast<int>(L.bonds_.size());
        L.bonds_.push_back({{V(x, y), V(x + 1, y)}, {F(x, y - 1), F(x, y)}, 1, 0});
        L.bond_pos_.push_back({x + 0.5, double(y)});
      }
      if (y + 1 < vh) {
        vidx[V(x, y)] = static_cast<int>(L.bonds_.size());
        L.bonds_.push_back({{V(x, y), V(x, y + 1)}, {F(x - 1, y), F(x, y)}, 0, 1});
        L.bond_pos_.push_back({double(x), y + 0.5});
      }
    }
  L.sites_ = static_cast<int>(L.bonds_.size());
  if (L.sites_ > 8192) fail(Err::ConfigInvalid, "disk too large");
  L.face_bonds_.resize(L.nfaces_);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      L.face_bonds_[F(x, y)] = {hidx[V(x, y)], vidx[V(x + 1, y)], hidx[V(x, y + 1)], vidx[V(x, y)]};
  L.vert_bonds_.resize(L.nverts_);
  L.vert_wedge_face_.resize(L.nverts_);
  for (int y = 0; y < vh; ++y)
    for (int x = 0; x < vw; ++x) {
      int dirs[4] = {x + 1 < vw ? hidx[V(x, y)] : -1, y + 1 < vh ? vidx[V(x, y)] : -1,
                     x > 0 ? hidx[V(x - 1, y)] : -1, y > 0 ? vidx[V(x, y - 1)] : -1};
      int wedge[4] = {F(x, y), F(x - 1, y), F(x - 1, y - 1), F(x, y - 1)};
      std::vector<int> bs, dir_of;
      for (int k = 0; k < 4; ++k)
        if (dirs[k] >= 0) {
          bs.push_back(dirs[k]);
          dir_of.push_back(k);
        }
      std::vector<int> wf;
      for (size_t i = 0; i < bs.size(); ++i) {
        int a = dir_of[i], b = dir_of[(i + 1) % bs.size()];
        wf.push_back(((a + 1) % 4 == b) ? wedge[a] : L.exterior_);
      }
      L.vert_bonds_[V(x, y)] = bs;
      L.vert_wedge_face_[V(x, y)] = wf;
      L.vert_pos_.push_back({double(x), double(y)});
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) L.face_pos_.push_back({x + 0.5, y + 0.5});
  L.face_pos_.push_back({w / 2.0, h / 2.0});  // exterior, unused for geometry
  L.build_medial();
  return L;
}

void SurfaceLattice::build_medial() {
  int nb = static_cast<int>(bonds_.size());
  medial_.assign(4 * nb, -1);
  auto port = [&](int b, int v, int f) {
    const Bond& B = bonds_[b];
    int e = B.v[0] == v ? 0 : 1;
    int s = B.f[0] == f ? 0 : 1;
    if (B.v[e] != v || B.f[s] != f) fail(Err::Internal, "port lookup failed");
    return 4 * b + 2 * e + s;
  };
  for (int v = 0; v < nverts_; ++v) {
    const auto& bs = vert_bonds_[v];
    const auto& wf = vert_wedge_face_[v];
    for (size_t i = 0; i < bs.size(); ++i) {
      int b1 = bs[i], b2 = bs[(i + 1) % bs.size()], f = wf[i];
      int a = port(b1, v, f), c = port(b2, v, f);
      medial_[a] = c;
      medial_[c] = a;
    }
  }
  for (int p = 0; p < 4 * nb; ++p)
    if (medial_[p] < 0) fail(Err::Internal, "unpaired medial port");
  port_pos_.resize(4 * nb);
  for (int b = 0; b < nb; ++b)
    for (int e = 0; e < 2; ++e)
      for (int s = 0; s < 2; ++s) {
        Vec2 m = bond_pos_[b];
        Vec2 tv = wrap({vert_pos_[bonds_[b].v[e]].x - m.x, vert_pos_[bonds_[b].v[e]].y - m.y});
        Vec2 tf{0, 0};
        if (bonds_[b].f[s] != exterior_)
          tf = wrap({face_pos_[bonds_[b].f[s]].x - m.x, face_pos_[bonds_[b].f[s]].y - m.y});
        else  // exterior side: mirror the interior face
          tf = wrap({m.x - face_pos_[bonds_[b].f[1 - s]].x, m.y - face_pos_[bonds_[b].f[1 - s]].y});
        port_pos_[4 * b + 2 * e + s] = {m.x + 0.3 * tv.x + 0.2 * tf.x, m.y + 0.3 * tv.y + 0.2 * tf.y};
      }
}

SurfaceLattice SurfaceLattice::triangular_torus(int w, int h) {
  if (w < 3 || h < 3) fail(Err::ConfigInvalid, "triangular torus needs w, h >= 3");
  if (w * h > 4096) fail(Err::ConfigInvalid, "triangular torus too large");
  SurfaceLattice L;
  L.kind_ = LatticeKind::TriangularTorus;
  L.w_ = w;
  L.h_ = h;
  L.sites_ = w * h;
  auto S = [&](int x, int y) { return md(y, h) * w + md(x, w); };
  const int off[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  L.nbr_.resize(L.sites_);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int k = 0; k < 6; ++k) L.nbr_[S(x, y)][k] = S(x + off[k][0], y + off[k][1]);
  // up triangle u(x,y) = {(x,y),(x+1,y),(x,y+1)}; down t(x,y) = {(x+1,y),(x,y+1),(x+1,y+1)}
  auto up = [&](int x, int y) { return 2 * S(x, y); };
  auto dn = [&](int x, int y) { return 2 * S(x, y) + 1; };
  L.ntri_ = 2 * w * h;
  L.tri_pos_.resize(L.ntri_);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      L.tri_pos_[up(x, y)] = {x + 1.0 / 3, y + 1.0 / 3};
      L.tri_pos_[dn(x, y)] = {x + 2.0 / 3, y + 2.0 / 3};
      // (x,y)-(x+1,y): up(x,y) and dn(x,y-1)
      L.adj_.push_back({S(x, y), S(x + 1, y), {up(x, y), dn(x, y - 1)}});
      // (x,y)-(x,y+1): up(x,y) and dn(x-1,y)
      L.adj_.push_back({S(x, y), S(x, y + 1), {up(x, y), dn(x - 1, y)}});
      // (x+1,y)-(x,y+1): up(x,y) and dn(x,y)
      L.adj_.push_back({S(x + 1, y), S(x, y + 1), {up(x, y), dn(x, y)}});
    }
  return L;
}

std::string SurfaceLattice::describe() const {
  std::ostringstream o;
  o << kind_name(kind_) << ' ' << w_ << 'x' << h_;
  return o.str();
}

int SurfaceLattice::euler_characteristic() const {
  if (kind_ == LatticeKind::TriangularTorus) return sites_ - static_cast<int>(adj_.size()) + ntri_;
  int f = nfaces_ - (exterior_ >= 0 ? 1 : 0);
  return nverts_ - static_cast<int>(bonds_.size()) + f;
}

int SurfaceLattice::bond_index(char k, int x, int y) const {
  if (kind_ == LatticeKind::SquareTorus) return 2 * (md(y, h_) * w_ + md(x, w_)) + (k == 'v' ? 1 : 0);
  if (kind_ == LatticeKind::SquareDisk) {
    for (size_t b = 0; b < bonds_.size(); ++b) {
      const Bond& B = bonds_[b];
      int vx = B.v[0] % (w_ + 1), vy = B.v[0] / (w_ + 1);
      if (vx == x && vy == y && ((k == 'h') == (B.dx == 1))) return static_cast<int>(b);
    }
  }
  fail(Err::IndexOutOfRange, "no such bond");
}

Vec2 SurfaceLattice::wrap(Vec2 d) const {
  if (!is_torus()) return d;
  d.x -= w_ * std::round(d.x / w_);
  d.y -= h_ * std::round(d.y / h_);
  return d;
}

int SurfaceLattice::split(Config s, int port) const {
  int b = port >> 2;
  bool plus = (s >> b) & 1;
  // |+>: along the bond on the same side; |->: around the same end
  return plus ? (port ^ 2) : (port ^ 1);
}

namespace {
// configurations are packed into 64 bits; bigger lattices only support counting
void need_config(const SurfaceLattice& lat) {
  if (lat.sites() > 64)
    fail(Err::ConfigInvalid, lat.describe() + " has more than 64 sites, configurations do not fit");
}
}  // namespace

int loop_count(const SurfaceLattice& lat, Config s) {
  need_config(lat);
  if (!lat.bond_model()) return extract_walls(lat, s).loops;
  int np = lat.port_count();
  uint64_t seen[4] = {0, 0, 0, 0};  // up to 256 ports
  std::vector<char> seenv;
  bool big = np > 256;
  if (big) seenv.assign(np, 0);
  auto is_seen = [&](int p) { return big ? seenv[p] != 0 : ((seen[p >> 6] >> (p & 63)) & 1); };
  auto mark = [&](int p) {
    if (big)
      seenv[p] = 1;
    else
      seen[p >> 6] |= 1ULL << (p & 63);
  };
  int n = 0;
  for (int st = 0; st < np; ++st) {
    if (is_seen(st)) continue;
    ++n;
    int p = st;
    while (!is_seen(p)) {
      mark(p);
      int q = lat.split(s, p);
      mark(q);
      p = lat.medial(q);
    }
  }
  return n;
}

namespace {
EssentialLoop normalize_winding(int a, int b) {
  if (a < 0 || (a == 0 && b < 0)) a = -a, b = -b;
  return {a, b};
}

int iround(double x) { return static_cast<int>(std::lround(x)); }
}  // namespace

WallCensus extract_walls(const SurfaceLattice& lat, Config s) {
  need_config(lat);
  WallCensus c;
  if (lat.bond_model()) {
    int np = lat.port_count();
    std::vector<char> seen(np, 0);
    for (int st = 0; st < np; ++st) {
      if (seen[st]) continue;
      ++c.loops;
      int p = st;
      double dx = 0, dy = 0;
      while (!seen[p]) {
        seen[p] = 1;
        int q = lat.split(s, p);
        seen[q] = 1;
        int r = lat.medial(q);
        Vec2 a = lat.port_position(p), b = lat.port_position(q), e = lat.port_position(r);
        Vec2 s1 = lat.wrap({b.x - a.x, b.y - a.y}), s2 = lat.wrap({e.x - b.x, e.y - b.y});
        dx += s1.x + s2.x;
        dy += s1.y + s2.y;
        p = r;
      }
      int a = lat.is_torus() ? iround(dx / lat.width()) : 0;
      int b = lat.is_torus() ? iround(dy / lat.height()) : 0;
      if (a == 0 && b == 0)
        ++c.trivial_loops;
      else
        c.essential.push_back(normalize_winding(a, b));
    }
    // clusters over vertices via |+> bonds, dual clusters over faces via |-> bonds
    PotentialUF uf(lat.vertex_count()), duf(lat.face_count());
    std::vector<std::pair<int, int>> cyc, dcyc;
    std::vector<std::vector<std::pair<int, int>>> per_root_unused;
    std::vector<std::pair<int, std::pair<int, int>>> cyc_at, dcyc_at;
    for (size_t b = 0; b < lat.bonds().size(); ++b) {
      const Bond& B = lat.bonds()[b];
      std::pair<int, int> z;
      if ((s >> b) & 1) {
        ++c.edges;
        if (!uf.unite(B.v[0], B.v[1], B.dx, B.dy, &z)) cyc_at.push_back({B.v[0], z});
      } else {
        ++c.dual_edges;
        // crossing the bond from f[0] to f[1] moves by (dy, dx) in face coordinates
        if (!duf.unite(B.f[0], B.f[1], B.dy, B.dx, &z)) dcyc_at.push_back({B.f[0], z});
      }
    }
    for (int v = 0; v < lat.vertex_count(); ++v)
      if (uf.find(v) == v) ++c.clusters;
    for (int f = 0; f < lat.face_count(); ++f)
      if (duf.find(f) == f) ++c.dual_clusters;
    if (lat.is_torus()) {
      std::unordered_map<int, std::vector<std::pair<int, int>>> by_root, by_droot;
      for (auto& [v, z] : cyc_at) {
        cyc.push_back(z);
        by_root[uf.find(v)].push_back(z);
      }
      for (auto& [f, z] : dcyc_at) {
        dcyc.push_back(z);
        by_droot[duf.find(f)].push_back(z);
      }
      c.wrap_rank = rank2(cyc);
      c.dual_wrap_rank = rank2(dcyc);
      for (auto& [r, zs] : by_root)
        if (rank2(zs) > 0) ++c.wrapping_clusters;
      for (auto& [r, zs] : by_droot)
        if (rank2(zs) > 0) ++c.wrapping_dual_clusters;
    }
    return c;
  }
  // plaque model: walls on honeycomb edges between differing plaques
  int nt = lat.triangle_count();
  std::vector<std::vector<int>> inc(nt);
  const auto& adj = lat.adjacencies();
  for (size_t e = 0; e < adj.size(); ++e) {
    bool diff = ((s >> adj[e].a) & 1) != ((s >> adj[e].b) & 1);
    if (diff) {
      inc[adj[e].t[0]].push_back(static_cast<int>(e));
      inc[adj[e].t[1]].push_back(static_cast<int>(e));
      ++c.edges;
    } else {
      ++c.dual_edges;
    }
  }
  std::vector<char> used(adj.size(), 0);
  for (size_t e0 = 0; e0 < adj.size(); ++e0) {
    if (used[e0] || inc[adj[e0].t[0]].empty()) continue;
    bool diff = ((s >> adj[e0].a) & 1) != ((s >> adj[e0].b) & 1);
    if (!diff) continue;
    ++c.loops;
    int t = adj[e0].t[0];
    int e = static_cast<int>(e0);
    double dx = 0, dy = 0;
    while (!used[e]) {
      used[e] = 1;
      int t2 = adj[e].t[0] == t ? adj[e].t[1] : adj[e].t[0];
      Vec2 a = lat.triangle_center(t), b = lat.triangle_center(t2);
      Vec2 st = lat.wrap({b.x - a.x, b.y - a.y});
      dx += st.x;
      dy += st.y;
      t = t2;
      const auto& ie = inc[t];
      if (ie.size() != 2) fail(Err::Internal, "wall vertex of odd degree");
      e = ie[0] == e ? ie[1] : ie[0];
      if (ie[0] == ie[1]) e = ie[0];
    }
    int a = iround(dx / lat.width()), b = iround(dy / lat.height());
    if (a == 0 && b == 0)
      ++c.trivial_loops;
    else
      c.essential.push_back(normalize_winding(a, b));
  }
  // clusters: same-spin plaque regions, split by sign
  PotentialUF uf(lat.sites());
  std::vector<std::pair<int, std::pair<int, int>>> cyc_at;
  for (const auto& A : adj) {
    if (((s >> A.a) & 1) != ((s >> A.b) & 1)) continue;
    int ax = A.a % lat.width(), ay = A.a / lat.width(), bx = A.b % lat.width(), by = A.b / lat.width();
    Vec2 d = lat.wrap({double(bx - ax), double(by - ay)});
    std::pair<int, int> z;
    if (!uf.unite(A.a, A.b, iround(d.x), iround(d.y), &z)) cyc_at.push_back({A.a, z});
  }
  std::vector<std::pair<int, int>> cp, cm;
  std::unordered_map<int, std::vector<std::pair<int, int>>> by_root;
  for (auto& [v, z] : cyc_at) {
    ((s >> v) & 1 ? cp : cm).push_back(z);
    by_root[uf.find(v)].push_back(z);
  }
  for (int v = 0; v < lat.sites(); ++v)
    if (uf.find(v) == v) ((s >> v) & 1 ? c.clusters : c.dual_clusters)++;
  c.wrap_rank = rank2(cp);
  c.dual_wrap_rank = rank2(cm);
  for (auto& [r, zs] : by_root)
    if (rank2(zs) > 0) ((s >> r) & 1 ? c.wrapping_clusters : c.wrapping_dual_clusters)++;
  return c;
}

std::string WallCensus::json() const {
  nlohmann::json j;
  j["loops"] = loops;
  j["trivial_loops"] = trivial_loops;
  j["essential"] = nlohmann::json::array();
  for (auto e : essential) j["essential"].push_back({e.a, e.b});
  j["C"] = clusters;
  j["C_dual"] = dual_clusters;
  j["E"] = edges;
  j["E_dual"] = dual_edges;
  j["wrap_rank"] = wrap_rank;
  j["dual_wrap_rank"] = dual_wrap_rank;
  j["wrapping_clusters"] = wrapping_clusters;
  j["wrapping_dual_clusters"] = wrapping_dual_clusters;
  return j.dump();
}

bool model_fits(const SurfaceLattice& lat, Model m) {
  return m == Model::H0 ? !lat.bond_model() : lat.bond_model();
}

std::vector<Move> local_moves(const SurfaceLattice& lat, Config s, Model m) {
  need_config(lat);
  if (!model_fits(lat, m)) fail(Err::ConfigInvalid, std::string(model_name(m)) + " does not live on " + lat.describe());
  std::vector<Move> out;
  if (m == Model::H0) {
    for (int c = 0; c < lat.sites(); ++c) {
      bool sc = (s >> c) & 1;
      const auto& nb = lat.neighbours(c);
      int mask = 0, cnt = 0;
      for (int k = 0; k < 6; ++k)
        if ((((s >> nb[k]) & 1) != 0) != sc) mask |= 1 << k, ++cnt;
      Config t = s ^ (Config(1) << c);
      if (cnt == 0) {
        out.push_back({c, false, -1, MoveKind::LoopCreate, t, 1});
      } else if (cnt == 6) {
        out.push_back({c, false, -1, MoveKind::LoopRemove, t, -1});
      } else {
        // one contiguous cyclic arc: exactly one 0->1 transition around the hexagon
        int rises = 0;
        for (int k = 0; k < 6; ++k)
          if (!((mask >> k) & 1) && ((mask >> ((k + 1) % 6)) & 1)) ++rises;
        if (rises == 1) out.push_back({c, false, -1, MoveKind::Isotopy, t, 0});
      }
    }
    return out;
  }
  if (lat.kind() == LatticeKind::SquareDisk && m != Model::HPrime && m != Model::RingExchange)
    fail(Err::ConfigInvalid, "unsupported model on disk");
  auto bit = [&](int b) { return static_cast<int>((s >> b) & 1); };
  // cells: plus = 1 (box terms); vertices: plus = 0 (dual-box terms)
  for (int pass = 0; pass < 2; ++pass) {
    bool dual = pass == 1;
    int want = dual ? 0 : 1;
    const auto& cyc = dual ? lat.vertex_bonds() : lat.face_bonds();
    int ncyc = static_cast<int>(cyc.size());
    for (int ci = 0; ci < ncyc; ++ci) {
      if (!dual && ci == lat.exterior_face()) continue;
      const auto& c = cyc[ci];
      if (c.size() != 4) continue;  // terms at cells meeting the boundary are excluded
      for (int i = 0; i < 4; ++i) {
        int b = c[i];
        bool others = true;
        for (int j = 0; j < 4; ++j)
          if (j != i && bit(c[j]) != want) others = false;
        if (m == Model::HPrime) {
          if (!others) continue;
          Config t = s ^ (Config(1) << b);
          // the all-equal side has the extra small loop around the cell or vertex
          bool s_full = bit(b) == want;
          out.push_back({ci, dual, b, s_full ? MoveKind::LoopRemove : MoveKind::LoopCreate, t, s_full ? -1 : 1});
        } else {
          if (!others || bit(b) == want) continue;
          int nxt = c[(i + 1) % 4];
          Config t = s ^ (Config(1) << b) ^ (Config(1) << nxt);
          out.push_back({ci, dual, b, MoveKind::RingExchange, t, 0});
          int prv = c[(i + 3) % 4];
          Config t2 = s ^ (Config(1) << b) ^ (Config(1) << prv);
          out.push_back({ci, dual, b, MoveKind::RingExchange, t2, 0});
        }
      }
    }
  }
  return out;
}

size_t Component::index_of(Config s) const {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  return (it != states.end() && *it == s) ? static_cast<size_t>(it - states.begin()) : states.size();
}

Component explore_component(const SurfaceLattice& lat, Config seed, Model m, size_t cap) {
  std::unordered_map<Config, uint32_t> idx;
  std::vector<Config> order{seed};
  idx[seed] = 0;
  std::vector<std::tuple<uint32_t, Config, int, MoveKind>> raw;
  for (size_t i = 0; i < order.size(); ++i) {
    Config s = order[i];
    for (const auto& mv : local_moves(lat, s, m)) {
      auto it = idx.find(mv.partner);
      if (it == idx.end()) {
        if (order.size() >= cap)
          fail(Err::ComponentCapExceeded, "component exceeds cap of " + std::to_string(cap) + " states");
        idx.emplace(mv.partner, static_cast<uint32_t>(order.size()));
        order.push_back(mv.partner);
      }
      if (s < mv.partner) raw.emplace_back(static_cast<uint32_t>(i), mv.partner, mv.dloops, mv.kind);
    }
  }
  Component comp;
  comp.states = order;
  std::sort(comp.states.begin(), comp.states.end());
  std::vector<uint32_t> remap(order.size());
  for (size_t i = 0; i < order.size(); ++i) remap[i] = static_cast<uint32_t>(comp.index_of(order[i]));
  for (auto& [u, t, dl, k] : raw)
    comp.edges.push_back({remap[u], static_cast<uint32_t>(comp.index_of(t)), dl, k});
  std::sort(comp.edges.begin(), comp.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v, a.dloops) < std::tie(b.u, b.v, b.dloops);
  });
  // potentials by BFS over the edge list, then verify every edge
  size_t n = comp.states.size();
  std::vector<std::vector<std::pair<uint32_t, int>>> g(n);
  for (const auto& e : comp.edges) {
    g[e.u].push_back({e.v, e.dloops});
    g[e.v].push_back({e.u, -e.dloops});
  }
  comp.potential.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<uint32_t> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    uint32_t u = q.front();
    q.pop_front();
    for (auto [v, dl] : g[u])
      if (!seen[v]) {
        seen[v] = 1;
        comp.potential[v] = comp.potential[u] + dl;
        q.push_back(v);
      }
  }
  for (const auto& e : comp.edges)
    if (comp.potential[e.v] - comp.potential[e.u] != e.dloops) comp.consistent = false;
  return comp;
}

Partition partition_components(const SurfaceLattice& lat, Model m) {
  int n = lat.sites();
  if (n > 26) fail(Err::StateSpaceTooLarge, "full partition needs <= 26 sites");
  size_t S = size_t(1) << n;
  Partition P;
  const uint32_t none = UINT32_MAX;
  P.label.assign(S, none);
  std::vector<Config> stack;
  for (Config s0 = 0; s0 < S; ++s0) {
    if (P.label[s0] != none) continue;
    uint32_t id = P.count();
    P.seeds.push_back(s0);
    P.sizes.push_back(0);
    P.label[s0] = id;
    stack.assign(1, s0);
    while (!stack.empty()) {
      Config s = stack.back();
      stack.pop_back();
      ++P.sizes[id];
      for (const auto& mv : local_moves(lat, s, m))
        if (P.label[mv.partner] == none) {
          P.label[mv.partner] = id;
          stack.push_back(mv.partner);
        }
    }
  }
  return P;
}

std::vector<Config> staircases(const SurfaceLattice& lat) {
  if (lat.kind() != LatticeKind::SquareTorus || lat.width() != lat.height())
    fail(Err::ConfigInvalid, "staircases need a square torus with w = h");
  need_config(lat);
  int w = lat.width();
  std::vector<Config> out;
  for (int t = 0; t < w; ++t) {
    Config a = 0, b = 0;
    for (int x = 0; x < w; ++x) {
      // right then up
      a |= Config(1) << lat.bond_index('h', x + t, x);
      a |= Config(1) << lat.bond_index('v', x + t + 1, x);
      // up then right
      b |= Config(1) << lat.bond_index('v', x + t, x);
      b |= Config(1) << lat.bond_index('h', x + t, x + 1);
    }
    out.push_back(a);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Config global_swap(const SurfaceLattice& lat, Config s) {
  need_config(lat);
  int n = lat.sites();
  Config mask = n == 64 ? ~Config(0) : ((Config(1) << n) - 1);
  return ~s & mask;
}

std::string config_hex(Config s, int sites) {
  int digits = std::max(1, (sites + 3) / 4);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*llx", digits, static_cast<unsigned long long>(s));
  return buf;
}

Config parse_config_hex(const std::string& str, int sites) {
  std::string t = str;
  if (t.rfind("0x", 0) == 0) t = t.substr(2);
  if (t.empty() || t.size() > 16) fail(Err::ConfigInvalid, "bad configuration '" + str + "'");
  Config v = 0;
  for (char ch : t) {
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
    else fail(Err::ConfigInvalid, "bad configuration '" + str + "'");
    v = (v << 4) | static_cast<Config>(d);
  }
  if (sites < 64 && (v >> sites) != 0) fail(Err::ConfigInvalid, "configuration has bits beyond the site count");
  return v;
}

}  // namespace tlg

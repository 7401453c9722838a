#include "pkh/pointed.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace pkh {

std::vector<std::pair<int, int>> PointedComplex::bigradings() const {
  std::vector<std::pair<int, int>> out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = bigrading(i);
  return out;
}

SparseMatrix PointedComplex::y_action(int point) const {
  SparseMatrix a(dim(), dim(), Ring::Z());
  for (int idx = 0; idx < dim(); ++idx) {
    int u = u_of(idx);
    if ((u >> point) & 1) continue;
    int s = wedge_sign(1u << point, (unsigned)u);
    a.set(index(u | (1 << point), kh_of(idx)), idx, s);
  }
  return a;
}

SparseMatrix PointedComplex::zeta_action(int point) const {
  SparseMatrix xi = xi_action(K, point);
  SparseMatrix a(dim(), dim(), Ring::Z());
  for (int idx = 0; idx < dim(); ++idx) {
    int u = u_of(idx);
    if (!((u >> point) & 1)) continue;
    int s = contraction_sign((unsigned)u, point);
    int u2 = u & ~(1 << point);
    for (const auto& [kh2, v] : xi.column(kh_of(idx)))
      a.add(index(u2, kh2), idx, s * v);
  }
  return a;
}

SparseMatrix PointedComplex::contraction_homotopy(int point) const {
  SparseMatrix a(dim(), dim(), Ring::Z());
  for (int idx = 0; idx < dim(); ++idx) {
    int u = u_of(idx);
    if (!((u >> point) & 1)) continue;
    int s = contraction_sign((unsigned)u, point);
    a.set(index(u & ~(1 << point), kh_of(idx)), idx, s);
  }
  return a;
}

SparseMatrix PointedComplex::xi_full(int point) const {
  SparseMatrix xi = xi_action(K, point);
  SparseMatrix a(dim(), dim(), Ring::Z());
  for (int idx = 0; idx < dim(); ++idx)
    for (const auto& [kh2, v] : xi.column(kh_of(idx)))
      a.add(index(u_of(idx), kh2), idx, v);
  return a;
}

PointedComplex build_pointed(const LinkDiagram& d, const Coloring& col,
                             const BasepointSet& pts) {
  PointedComplex P;
  P.K = build_ckh(d, col, pts);
  P.m = pts.size();
  int N = P.dim();
  P.d = SparseMatrix(N, N, Ring::Z());

  // Koszul differential: (-1)^{|u|} id (x) d_Kh  +  sum_p (y_p ^ .) (x) xi_p
  for (int kh = 0; kh < (int)P.K.basis.size(); ++kh) {
    for (const auto& [kh2, v] : P.K.d.column(kh)) {
      for (int u = 0; u < (1 << P.m); ++u) {
        int s = (popcount((unsigned)u) & 1) ? -1 : 1;
        P.d.add(P.index(u, kh2), P.index(u, kh), s * v);
      }
    }
  }
  for (int p = 0; p < P.m; ++p) {
    SparseMatrix xi = xi_action(P.K, p);
    for (int kh = 0; kh < (int)P.K.basis.size(); ++kh) {
      for (const auto& [kh2, v] : xi.column(kh)) {
        for (int u = 0; u < (1 << P.m); ++u) {
          if ((u >> p) & 1) continue;
          int s = wedge_sign(1u << p, (unsigned)u);
          P.d.add(P.index(u | (1 << p), kh2), P.index(u, kh), s * v);
        }
      }
    }
  }
  return P;
}

SparseMatrix xi_action_edge(const KhComplex& K, int edge_id) {
  int N = (int)K.basis.size();
  SparseMatrix m(N, N, Ring::Z());
  int ei = K.diagram.edge_index(edge_id);
  int eps = edge_parity(K.diagram, K.coloring, edge_id);
  int sgn = eps ? -1 : 1;
  for (int i = 0; i < N; ++i) {
    const CubeGenerator& g = K.basis[i];
    int c = K.res[g.vertex].circle_of_edge[ei];
    if ((g.labels >> c) & 1) continue;
    m.add(K.index_of(g.vertex, g.labels | (1 << c)), i, sgn);
  }
  return m;
}

namespace {

// raw crossing homotopy: components along cube edges flipping crossing c
// from 1 to 0, signed by the cube sign assignment of the reversed edge
SparseMatrix crossing_homotopy_raw(const KhComplex& K, int crossing) {
  int N = (int)K.basis.size();
  int n = K.diagram.n();
  SparseMatrix H(N, N, Ring::Z());
  for (int u = 0; u < (1 << n); ++u) {
    if (!((u >> crossing) & 1)) continue;
    int v = u & ~(1 << crossing);
    // cube edge v -> u carries sign s_{v,u}
    SaddleInfo s = classify_edge(K.diagram, K.res[v], K.res[u]);
    int sgn = (s.sign_s & 1) ? -1 : 1;
    // the saddle from L_u to L_v is the reverse of the v -> u saddle
    int lu = K.res[u].l();
    for (int labels = 0; labels < (1 << lu); ++labels) {
      int src = K.index_of(u, labels);
      if (s.is_merge) {
        // v -> u merges, so u -> v splits the merged circle back apart
        int base = 0;
        for (int c = 0; c < K.res[v].l(); ++c) {
          if (c == s.u_circles[0] || c == s.u_circles[1]) continue;
          if ((labels >> s.carry[c]) & 1) base |= 1 << c;
        }
        int c1 = s.u_circles[0], c2 = s.u_circles[1];
        if ((labels >> s.v_circles[0]) & 1) {
          H.add(K.index_of(v, base | (1 << c1) | (1 << c2)), src, sgn);
        } else {
          H.add(K.index_of(v, base | (1 << c1)), src, sgn);
          H.add(K.index_of(v, base | (1 << c2)), src, sgn);
        }
      } else {
        // v -> u splits, so u -> v merges the two children
        int out = 0;
        bool zero = false;
        for (int c = 0; c < K.res[v].l(); ++c) {
          if (c == s.u_circles[0]) continue;
          if ((labels >> s.carry[c]) & 1) out |= 1 << c;
        }
        bool x1 = (labels >> s.v_circles[0]) & 1;
        bool x2 = (labels >> s.v_circles[1]) & 1;
        if (x1 && x2)
          zero = true;
        else if (x1 || x2)
          out |= 1 << s.u_circles[0];
        if (!zero) H.add(K.index_of(v, out), src, sgn);
      }
    }
  }
  return H;
}

// the two edges of the strand passing over (side=1) or under (side=0)
// crossing c, ordered (before, after) along the strand orientation
std::pair<int, int> strand_edges(const LinkDiagram& d, int crossing, int side) {
  const Crossing& c = d.crossings[crossing];
  if (side == 0) return {c.ends[0], c.ends[2]};
  if (c.over_in_d) return {c.ends[3], c.ends[1]};
  return {c.ends[1], c.ends[3]};
}

}  // namespace

SparseMatrix transport_homotopy(const KhComplex& K, int crossing, int side) {
  if (crossing < 0 || crossing >= K.diagram.n())
    throw NotAdjacent("no crossing " + std::to_string(crossing));
  SparseMatrix H = crossing_homotopy_raw(K, crossing);
  auto [before, after] = strand_edges(K.diagram, crossing, side);
  SparseMatrix target = xi_action_edge(K, after) - xi_action_edge(K, before);
  SparseMatrix lhs = K.d * H + H * K.d;
  if (lhs == target) return H;
  if (lhs == target.scaled(-1)) return H.scaled(-1);
  throw std::runtime_error("internal: crossing homotopy does not bound xi difference");
}

namespace {

struct StrandHop {
  int crossing;
  int before, after;  // edge ids
};

// walk from edge `from` to edge `to` along the link component, following the
// orientation through each crossing passed
std::vector<StrandHop> walk_strand(const LinkDiagram& d, int from_id, int to_id) {
  std::vector<StrandHop> path;
  int cur = from_id;
  int guard = 0;
  while (cur != to_id) {
    const Edge& e = d.edge_by_id(cur);
    if (e.is_free_loop()) throw DifferentComponents("free loop has a single edge");
    int x = e.head.crossing, p = e.head.pos;
    int q = p ^ 2;  // the strand continues at the opposite position
    int next_id = -1;
    for (const Edge& e2 : d.edges) {
      if (e2.is_free_loop()) continue;
      if (e2.tail.crossing == x && e2.tail.pos == q) next_id = e2.id;
    }
    assert(next_id > 0);
    path.push_back({x, cur, next_id});
    cur = next_id;
    if (++guard > 4 * d.n() + 4) throw DifferentComponents("points are on different components");
  }
  return path;
}

}  // namespace

MovedComplex basepoint_move_iso(const PointedComplex& P, int which, int target_edge,
                                int target_slot) {
  const LinkDiagram& d = P.K.diagram;
  const Basepoint& bp = P.K.points.points[which];
  int from_idx = d.edge_index(bp.edge_id);
  int to_idx = d.edge_index(target_edge);
  if (d.edge_component[from_idx] != d.edge_component[to_idx])
    throw DifferentComponents("basepoint move must stay on one component");

  BasepointSet moved = P.K.points;
  moved.points[which] = {target_edge, target_slot};
  MovedComplex out{build_pointed(d, P.K.coloring, moved), SparseMatrix()};

  // accumulated homotopy with d H + H d = xi(target) - xi(source)
  int N = (int)P.K.basis.size();
  SparseMatrix H(N, N, Ring::Z());
  if (bp.edge_id != target_edge) {
    for (const StrandHop& hop : walk_strand(d, bp.edge_id, target_edge)) {
      SparseMatrix Hc = crossing_homotopy_raw(P.K, hop.crossing);
      SparseMatrix tgt = xi_action_edge(P.K, hop.after) - xi_action_edge(P.K, hop.before);
      SparseMatrix lhs = P.K.d * Hc + Hc * P.K.d;
      if (lhs == tgt)
        H = H + Hc;
      else if (lhs == tgt.scaled(-1))
        H = H - Hc;
      else
        throw std::runtime_error("internal: transport homotopy mismatch");
    }
  }

  // f(a (x) b) = a' (x) b + (a' ^ y_{p'}) (x) H(b)
  int dim = P.dim();
  SparseMatrix f(dim, dim, Ring::Z());
  for (int idx = 0; idx < dim; ++idx) {
    int u = P.u_of(idx), kh = P.kh_of(idx);
    f.set(idx, idx, 1);
    if (!((u >> which) & 1)) {
      // (a' ^ y_{p'}): sign of appending y_{p'} on the right
      int s = (popcount((unsigned)(u >> (which + 1))) & 1) ? -1 : 1;
      for (const auto& [kh2, v] : H.column(kh))
        f.add(P.index(u | (1 << which), kh2), idx, s * v);
    }
  }
  // chain map check
  if (!(f * P.d == out.complex.d * f))
    throw std::runtime_error("internal: basepoint move is not a chain map");
  out.iso = std::move(f);
  return out;
}

DoublingReport doubling_witness(const LinkDiagram& d, const Coloring& col,
                                const BasepointSet& pts, int p0, const Ring& ring) {
  ComponentInfo info = component_info(d, pts);
  int comp = d.edge_component[d.edge_index(pts.points[p0].edge_id)];
  if (info.points_per_component[comp] < 2)
    throw SameComponentRequired("p0 must share its component with another basepoint");

  BasepointSet rest;
  for (int i = 0; i < pts.size(); ++i)
    if (i != p0) rest.points.push_back(pts.points[i]);

  PointedComplex big = build_pointed(d, col, pts);
  PointedComplex small = build_pointed(d, col, rest);
  DoublingReport rep;
  rep.with_point = homology_summary(big.bigradings(), big.d, ring);
  rep.without = homology_summary(small.bigradings(), small.d, ring);

  rep.bigrading_ok = true;
  std::set<std::pair<int, int>> keys;
  for (auto& [k, e] : rep.with_point.entries) keys.insert(k);
  for (auto& [k, e] : rep.without.entries) {
    keys.insert(k);
    keys.insert({k.first + 1, k.second + 2});
  }
  auto rank_at = [](const BigradedRanks& r, int h, int q) -> long {
    auto it = r.entries.find({h, q});
    return it == r.entries.end() ? 0 : it->second.free_rank;
  };
  for (auto& [h, q] : keys) {
    long lhs = rank_at(rep.with_point, h, q);
    long rhs = rank_at(rep.without, h, q) + rank_at(rep.without, h - 1, q - 2);
    if (lhs != rhs) rep.bigrading_ok = false;
  }
  auto da = rep.with_point.delta_ranks();
  auto db = rep.without.delta_ranks();
  rep.delta_ok = true;
  std::set<int> dk;
  for (auto& [k, v] : da) dk.insert(k);
  for (auto& [k, v] : db) dk.insert(k);
  for (int k : dk) {
    long lhs = da.count(k) ? da[k] : 0;
    long rhs = db.count(k) ? 2 * db[k] : 0;
    if (lhs != rhs) rep.delta_ok = false;
  }
  return rep;
}

ReducedReport reduced_relation(const LinkDiagram& d, const Coloring& col,
                               const BasepointSet& pts, int p0, const Ring& ring) {
  if (!ring.is_field())
    throw std::runtime_error("reduced_relation requires field coefficients");
  PointedComplex P = build_pointed(d, col, pts);
  KhComplex R = build_reduced(d, col, pts, p0);
  ReducedReport rep;
  rep.pointed = homology_summary(P.bigradings(), P.d, ring);
  rep.reduced = homology_summary(R.bigradings(), R.d, ring);

  long total = rep.pointed.total_rank();
  long red = rep.reduced.total_rank();
  long bound = red << pts.size();
  rep.equality = (total == bound);

  // delta-graded inequality rank Kh^delta <= 2^{m-1}(red^{delta+1/2} + red^{delta-1/2})
  rep.inequality = true;
  auto dp = rep.pointed.delta_ranks();
  auto dr = rep.reduced.delta_ranks();
  for (auto& [d2, rank] : dp) {
    long rhs = 0;
    auto a = dr.find(d2 + 1), b = dr.find(d2 - 1);
    if (a != dr.end()) rhs += a->second;
    if (b != dr.end()) rhs += b->second;
    rhs <<= (pts.size() - 1);
    if (rank > rhs) rep.inequality = false;
  }
  return rep;
}

}  // namespace pkh

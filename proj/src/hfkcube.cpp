#include "pkh/hfkcube.hpp"

#include <algorithm>
#include <cassert>

namespace pkh {

HfkVertexModule vertex_module(const Resolution& r, int m, int vertex, int n_plus) {
  PointedUnlink geo = pointed_unlink(r, m);
  if (!geo.nondegenerate())
    throw DegenerateResolution("vertex module needs a point on every circle");
  HfkVertexModule M;
  M.mb = module_basis(geo);
  M.vertex = vertex;
  M.weight = vertex_weight(vertex);
  M.n_plus = n_plus;
  M.l = geo.k();
  M.A.resize(M.mb.dim());
  M.M2.resize(M.mb.dim());
  for (int i = 0; i < M.mb.dim(); ++i) {
    auto [lam, gam] = M.mb.elems[i];
    int t = popcount(lam), g = popcount(gam);
    M.A[i] = -t;
    M.M2[i] = M.l - 2 * t - 2 * g;
  }
  return M;
}

namespace {

// the basepoint reached immediately before each smoothing arc of `crossing`
// when traversing the circle along its orientation
std::array<int, 2> distinguished_points(const LinkDiagram& d, const BasepointSet& pts,
                                        const Resolution& rr, int circle, int crossing) {
  const Circle& c = rr.circles[circle];
  int nit = (int)c.items.size();
  // per edge index: point indices sorted by slot
  std::map<int, std::vector<std::pair<int, int>>> by_edge;
  for (int pi = 0; pi < pts.size(); ++pi) {
    int ei = d.edge_index(pts.points[pi].edge_id);
    by_edge[ei].push_back({pts.points[pi].slot, pi});
  }
  for (auto& [e, v] : by_edge) std::sort(v.begin(), v.end());

  std::array<int, 2> out{-1, -1};
  int found = 0;
  for (int i = 0; i < nit; ++i) {
    if (!c.items[i].is_arc || c.items[i].crossing != crossing) continue;
    for (int back = 1; back <= nit; ++back) {
      const CircleItem& it = c.items[((i - back) % nit + nit) % nit];
      if (it.is_arc) continue;
      auto f = by_edge.find(it.edge_index);
      if (f == by_edge.end() || f->second.empty()) continue;
      // last point on this edge in traversal order
      out[found] = it.forward ? f->second.back().second : f->second.front().second;
      break;
    }
    if (out[found] < 0)
      throw DegenerateResolution("no basepoint before a saddle arc");
    ++found;
    if (found == 2) break;
  }
  if (found != 2) throw NotAnEdge("crossing arcs not found on the circle");
  return out;
}

struct F2Solver {
  int nvars;
  int words;
  std::map<int, std::vector<uint64_t>> pivots;  // leading var -> row

  explicit F2Solver(int nv) : nvars(nv), words((nv + 1 + 63) / 64) {}

  static int lowest_bit(const std::vector<uint64_t>& row, int limit) {
    for (int w = 0; w * 64 < limit; ++w)
      if (row[w]) {
        int b = w * 64 + __builtin_ctzll(row[w]);
        return b < limit ? b : -1;
      }
    return -1;
  }

  // returns false on an inconsistent row
  bool add_row(std::vector<uint64_t> row) {
    for (;;) {
      int lead = lowest_bit(row, nvars);
      if (lead < 0) {
        bool rhs = (row[nvars / 64] >> (nvars % 64)) & 1;
        return !rhs;
      }
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(row));
        return true;
      }
      for (int w = 0; w < words; ++w) row[w] ^= it->second[w];
    }
  }

  bool solvable_unique() const { return (int)pivots.size() == nvars; }

  std::vector<char> extract() const {
    std::vector<char> val(nvars, 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      int v = it->first;
      const auto& row = it->second;
      char x = (row[nvars / 64] >> (nvars % 64)) & 1;
      for (int w = v / 64; w * 64 < nvars; ++w) {
        uint64_t bits = row[w];
        while (bits) {
          int b = w * 64 + __builtin_ctzll(bits);
          bits &= bits - 1;
          if (b > v && b < nvars) x ^= val[b];
        }
      }
      val[v] = x;
    }
    return val;
  }
};

// dense-ish F2 copy of a sparse Z/F2 matrix as column lists
std::vector<std::vector<int>> f2_cols(const SparseMatrix& m) {
  std::vector<std::vector<int>> cols(m.cols());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c))
      if (mpz_odd_p(v.get_mpz_t())) cols[c].push_back(r);
  return cols;
}

std::vector<std::vector<int>> f2_rows(const SparseMatrix& m) {
  std::vector<std::vector<int>> rows(m.rows());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c))
      if (mpz_odd_p(v.get_mpz_t())) rows[r].push_back(c);
  return rows;
}

}  // namespace

HfkEdgeMaps edge_maps(const LinkDiagram& d, const BasepointSet& pts, const Resolution& ru,
                      const Resolution& rv, const HfkVertexModule& Mu,
                      const HfkVertexModule& Mv) {
  SaddleInfo si = classify_edge(d, ru, rv);
  SaddlePairing sp = saddle_pairing(si);
  Ring F2 = Ring::Fp(2);

  HfkEdgeMaps em;
  em.is_merge = si.is_merge;
  {
    const Resolution& host = si.is_merge ? rv : ru;
    auto dist = distinguished_points(d, pts, host, sp.parent_circle, si.crossing);
    em.distinguished[0] = dist[0];
    em.distinguished[1] = dist[1];
  }
  em.f0 = si.is_merge ? formula_merge_map(Mu.mb, Mv.mb, sp).with_ring(F2)
                      : formula_split_map(Mu.mb, Mv.mb, sp).with_ring(F2);

  // f1: the unique A-homogeneous solution of
  //   [f1, gamma] = 0,  [f1, y_p] = delta_dist(p) f0,  base value on x_max
  int shift = si.is_merge ? 0 : 1;  // A(f0) + 1
  int du = Mu.dim(), dv = Mv.dim();
  std::vector<int> var(dv * du, -1);
  int nvars = 0;
  for (int i = 0; i < dv; ++i)
    for (int j = 0; j < du; ++j)
      if (Mv.A[i] == Mu.A[j] + shift) var[i * du + j] = nvars++;

  F2Solver solver(nvars);
  std::set<std::vector<int>> seen;
  std::vector<int> bits;
  auto add_relation = [&](const std::vector<std::vector<int>>& Acols,
                          const std::vector<std::vector<int>>& Brows,
                          const std::vector<std::vector<int>>& Ccols) {
    // F A + B F = C, one equation per (target i, source j)
    for (int j = 0; j < du; ++j) {
      std::vector<char> cvec(dv, 0);
      if (!Ccols.empty())
        for (int r : Ccols[j]) cvec[r] ^= 1;
      for (int i = 0; i < dv; ++i) {
        bits.clear();
        for (int k : Acols[j]) {  // F[i,k] * A[k,j]
          int v = var[i * du + k];
          if (v >= 0) bits.push_back(v);
        }
        for (int k : Brows[i]) {  // B[i,k] * F[k,j]
          int v = var[k * du + j];
          if (v >= 0) bits.push_back(v);
        }
        if (cvec[i]) bits.push_back(nvars);
        if (bits.empty()) continue;
        std::sort(bits.begin(), bits.end());
        if (!seen.insert(bits).second) continue;
        std::vector<uint64_t> row(solver.words, 0);
        for (int b : bits) row[b / 64] ^= 1ull << (b % 64);
        if (!solver.add_row(std::move(row)))
          throw NoSolution("f1 constraints are inconsistent");
      }
    }
  };

  // base value first: singleton rows make cheap pivots
  {
    int j0 = Mu.mb.index.at({0u, 0u});
    int i0 = Mv.mb.index.at({0u, 0u});
    for (int i = 0; i < dv; ++i) {
      int v = var[i * du + j0];
      bool rhs = si.is_merge && (i == i0);
      if (v < 0) {
        if (rhs) throw NoSolution("base value outside the homogeneous band");
        continue;
      }
      std::vector<uint64_t> row(solver.words, 0);
      row[v / 64] ^= 1ull << (v % 64);
      if (rhs) row[nvars / 64] ^= 1ull << (nvars % 64);
      if (!solver.add_row(std::move(row))) throw NoSolution("base value inconsistent");
    }
  }

  std::vector<std::vector<int>> empty;

  // gamma commutation
  if (!si.is_merge) {
    for (int i = 0; i < Mu.l; ++i) {
      auto A = f2_cols(module_gamma(Mu.mb, i));
      std::vector<int> lifts = (i == sp.parent_circle)
                                   ? std::vector<int>{sp.child0, sp.child1}
                                   : std::vector<int>{sp.parent_carry[i]};
      for (int c : lifts) add_relation(A, f2_rows(module_gamma(Mv.mb, c)), empty);
    }
  } else {
    std::vector<int> drop(Mu.l, -1);
    for (int j = 0; j < Mv.l; ++j)
      if (j != sp.parent_circle) drop[sp.parent_carry[j]] = j;
    drop[sp.child0] = sp.parent_circle;
    drop[sp.child1] = sp.parent_circle;
    for (int i = 0; i < Mu.l; ++i)
      add_relation(f2_cols(module_gamma(Mu.mb, i)), f2_rows(module_gamma(Mv.mb, drop[i])),
                   empty);
  }
  // y commutators
  auto f0cols = f2_cols(em.f0);
  for (int p = 0; p < Mu.mb.geo.m; ++p) {
    bool dist = (p == em.distinguished[0] || p == em.distinguished[1]);
    add_relation(f2_cols(module_y(Mu.mb, p)), f2_rows(module_y(Mv.mb, p)),
                 dist ? f0cols : empty);
  }
  if (!solver.solvable_unique())
    throw NonUniqueSolution("f1 solution space has dimension " +
                            std::to_string(nvars - (int)solver.pivots.size()));
  std::vector<char> val = solver.extract();
  em.f1 = SparseMatrix(dv, du, F2);
  for (int i = 0; i < dv; ++i)
    for (int j = 0; j < du; ++j) {
      int v = var[i * du + j];
      if (v >= 0 && val[v]) em.f1.set(i, j, 1);
    }

  // re-check the defining relations directly
  {
    SparseMatrix F = em.f1;
    for (int p = 0; p < Mu.mb.geo.m; ++p) {
      SparseMatrix lhs =
          F * module_y(Mu.mb, p).with_ring(F2) + module_y(Mv.mb, p).with_ring(F2) * F;
      bool dist = (p == em.distinguished[0] || p == em.distinguished[1]);
      if (!(lhs == (dist ? em.f0 : SparseMatrix(dv, du, F2))))
        throw NoSolution("f1 verification failed");
    }
  }
  return em;
}

HfkE1 build_e1(const LinkDiagram& d, const Coloring& col, const BasepointSet& pts,
               bool with_f1) {
  HfkE1 E;
  E.n = d.n();
  E.m = pts.size();
  int nverts = 1 << E.n;
  std::vector<Resolution> res(nverts);
  E.modules.reserve(nverts);
  E.offset.assign(nverts, 0);
  for (int v = 0; v < nverts; ++v) {
    res[v] = resolve(d, vertex_bits(v, E.n), col);
    locate_points(d, res[v], pts);
    PointedUnlink geo = pointed_unlink(res[v], E.m);
    if (!geo.nondegenerate()) throw DegenerateVertex(v);
    E.modules.push_back(vertex_module(res[v], E.m, v, d.n_plus));
    E.offset[v] = E.dim;
    E.dim += E.modules[v].dim();
  }
  E.level.resize(E.dim);
  E.Delta2.resize(E.dim);
  E.G2.resize(E.dim);
  for (int v = 0; v < nverts; ++v)
    for (int i = 0; i < E.modules[v].dim(); ++i) {
      E.level[E.offset[v] + i] = E.modules[v].weight;
      E.Delta2[E.offset[v] + i] = E.modules[v].Delta2(i);
      E.G2[E.offset[v] + i] = E.modules[v].G2(i);
    }
  E.d1 = SparseMatrix(E.dim, E.dim, Ring::Fp(2));
  for (int u = 0; u < nverts; ++u)
    for (int i = 0; i < E.n; ++i) {
      if ((u >> i) & 1) continue;
      int v = u | (1 << i);
      HfkEdgeMaps em = edge_maps(d, pts, res[u], res[v], E.modules[u], E.modules[v]);
      SparseMatrix sum = with_f1 ? em.f0 + em.f1 : em.f0;
      for (int j = 0; j < sum.cols(); ++j)
        for (const auto& [r, val] : sum.column(j))
          E.d1.add(E.offset[v] + r, E.offset[u] + j, val);
      E.edges[{u, v}] = std::move(em);
    }
  if (!(E.d1 * E.d1).is_zero())
    throw std::runtime_error("internal: hfk d1 does not square to zero");
  return E;
}

HfkE1 restrict_to_f0(const HfkE1& full) {
  HfkE1 E = full;
  E.d1 = SparseMatrix(E.dim, E.dim, Ring::Fp(2));
  for (auto& [edge, em] : E.edges) {
    auto [u, v] = edge;
    for (int j = 0; j < em.f0.cols(); ++j)
      for (const auto& [r, val] : em.f0.column(j))
        E.d1.add(E.offset[v] + r, E.offset[u] + j, val);
  }
  if (!(E.d1 * E.d1).is_zero())
    throw std::runtime_error("internal: f0 differential does not square to zero");
  return E;
}

std::map<std::pair<int, int>, long> e2_ranks(const HfkE1& E) {
  std::vector<std::pair<int, int>> keys(E.dim);
  for (int i = 0; i < E.dim; ++i) keys[i] = {E.level[i], E.Delta2[i]};
  return keyed_homology_ranks(keys, {1, 2}, E.d1, Ring::Fp(2));
}

std::map<std::pair<int, int>, long> e2_ranks_by_g(const HfkE1& E) {
  std::vector<std::pair<int, int>> keys(E.dim);
  for (int i = 0; i < E.dim; ++i) keys[i] = {E.level[i], E.G2[i]};
  return keyed_homology_ranks(keys, {1, 0}, E.d1, Ring::Fp(2));
}

CompareE1Report compare_e1(const LinkDiagram& d, const Coloring& col,
                           const BasepointSet& pts, bool throw_on_mismatch) {
  CompareE1Report rep;
  PointedComplex P = build_pointed(d, col, pts);
  CubeE1 kh = cube_e1(P, Ring::Fp(2));
  HfkE1 hf = build_e1(d, col, pts, /*with_f1=*/false);

  // the two sides are built over the same module bases
  rep.gradings_match = true;
  for (int v = 0; v < (1 << d.n()); ++v) {
    assert(kh.modules[v].mb.elems == hf.modules[v].mb.elems);
    for (int i = 0; i < hf.modules[v].dim(); ++i) {
      auto [h, q] = kh.bigradings[kh.offset[v] + i];
      if (2 * h - q != hf.Delta2[hf.offset[v] + i]) rep.gradings_match = false;
    }
  }

  rep.d1_match = true;
  for (auto& [edge, mat] : kh.edge_maps) {
    const HfkEdgeMaps& em = hf.edges.at(edge);
    if (!(mat == em.f0)) {
      rep.d1_match = false;
      if (rep.first_mismatch.first < 0) rep.first_mismatch = edge;
      if (throw_on_mismatch) throw MismatchAt(edge.first, edge.second);
    }
  }

  PageReport pages = spectral_pages(cube_filtration(P, Ring::Fp(2)), d.n() + 1);
  rep.e2_kh = PageReport::by_delta(pages.ranks[std::min(2, pages.r_max)]);
  rep.e2_hfk = e2_ranks(hf);
  rep.e2_match = (rep.e2_kh == rep.e2_hfk);
  return rep;
}

}  // namespace pkh

#include "pkh/spectral.hpp"

#include <algorithm>
#include <cassert>

namespace pkh {

FilteredComplex cube_filtration(const PointedComplex& P, const Ring& field) {
  FilteredComplex F;
  F.bigradings = P.bigradings();
  F.level.resize(P.dim());
  for (int i = 0; i < P.dim(); ++i)
    F.level[i] = vertex_weight(P.K.basis[P.kh_of(i)].vertex);
  F.d = P.d.with_ring(field);
  F.min_level = 0;
  F.max_level = P.K.diagram.n();
  return F;
}

long PageReport::total(int r) const {
  long t = 0;
  for (auto& [k, v] : ranks[r]) t += v;
  return t;
}

std::map<std::pair<int, int>, long> PageReport::by_delta(
    const std::map<std::array<int, 3>, long>& page) {
  std::map<std::pair<int, int>, long> out;
  for (auto& [k, v] : page) out[{k[0], 2 * k[1] - k[2]}] += v;
  return out;
}

PageReport spectral_pages(const FilteredComplex& F, int r_max) {
  assert(F.d.ring().is_field());
  PageReport rep;
  rep.r_max = r_max;
  rep.ranks.assign(r_max + 1, {});
  rep.homology = {};

  int N = (int)F.bigradings.size();
  // sectors by quantum grading (the differential preserves it)
  std::map<int, std::vector<int>> sectors;
  for (int i = 0; i < N; ++i) sectors[F.bigradings[i].second].push_back(i);

  for (auto& [q, idxs] : sectors) {
    std::map<int, int> pos;
    for (int j = 0; j < (int)idxs.size(); ++j) pos[idxs[j]] = j;
    int nn = (int)idxs.size();
    SparseMatrix dq(nn, nn, F.d.ring());
    for (int j = 0; j < nn; ++j)
      for (const auto& [r, v] : F.d.column(idxs[j])) {
        auto it = pos.find(r);
        assert(it != pos.end());  // d preserves the sector
        dq.set(it->second, j, v);
      }

    auto h_of = [&](int j) { return F.bigradings[idxs[j]].first; };
    auto lev_of = [&](int j) { return F.level[idxs[j]]; };

    // Z_r^s at grading h: kernel of the map (columns with level >= s,
    // grading h) -> (rows with level < s+r, grading h+1). r >= 1.
    auto z_space = [&](int r, int s, int h) -> SparseMatrix {
      std::vector<int> vars, rows;
      for (int j = 0; j < nn; ++j) {
        if (h_of(j) == h && lev_of(j) >= s) vars.push_back(j);
        if (h_of(j) == h + 1 && lev_of(j) < s + r) rows.push_back(j);
      }
      std::map<int, int> rpos;
      for (int j = 0; j < (int)rows.size(); ++j) rpos[rows[j]] = j;
      SparseMatrix c((int)rows.size(), (int)vars.size(), F.d.ring());
      for (int j = 0; j < (int)vars.size(); ++j)
        for (const auto& [r2, v] : dq.column(vars[j])) {
          auto it = rpos.find(r2);
          if (it != rpos.end()) c.set(it->second, j, v);
        }
      SparseMatrix kb = c.kernel_basis();  // coords in vars
      SparseMatrix out(nn, kb.cols(), F.d.ring());
      for (int j2 = 0; j2 < kb.cols(); ++j2)
        for (const auto& [r2, v] : kb.column(j2)) out.set(vars[r2], j2, v);
      return out;
    };

    int span = F.max_level - F.min_level + 1;
    for (int r = 0; r <= r_max; ++r) {
      for (int s = F.min_level; s <= F.max_level; ++s) {
        std::set<int> hs;
        for (int j = 0; j < nn; ++j)
          if (lev_of(j) == s) hs.insert(h_of(j));
        for (int h : hs) {
          long dim;
          if (r == 0) {
            dim = 0;
            for (int j = 0; j < nn; ++j)
              if (lev_of(j) == s && h_of(j) == h) ++dim;
          } else {
            int rr = std::min(r, span + 1);  // pages are constant past the span
            SparseMatrix z = z_space(rr, s, h);
            SparseMatrix znext = z_space(rr - 1, s + 1, h);
            SparseMatrix zprev = z_space(rr - 1, s - rr + 1, h - 1);
            SparseMatrix dz = dq * zprev;
            SparseMatrix denom = SparseMatrix::hconcat(znext, dz);
            dim = z.rank() - denom.rank();
          }
          if (dim > 0) rep.ranks[r][{s, h, q}] = dim;
        }
      }
    }

    // homology of the sector per h
    {
      std::map<int, std::vector<int>> by_h;
      for (int j = 0; j < nn; ++j) by_h[h_of(j)].push_back(j);
      for (auto& [h, cols] : by_h) {
        auto fin = by_h.find(h - 1);
        auto fout = by_h.find(h + 1);
        std::vector<int> none;
        auto block = [&](const std::vector<int>& from, const std::vector<int>& to) {
          std::map<int, int> tp;
          for (int j = 0; j < (int)to.size(); ++j) tp[to[j]] = j;
          SparseMatrix b((int)to.size(), (int)from.size(), F.d.ring());
          for (int j = 0; j < (int)from.size(); ++j)
            for (const auto& [r2, v] : dq.column(from[j])) {
              auto it = tp.find(r2);
              if (it != tp.end()) b.set(it->second, j, v);
            }
          return b;
        };
        HomologyEntry e = homology(block(fin != by_h.end() ? fin->second : none, cols),
                                   block(cols, fout != by_h.end() ? fout->second : none));
        if (e.free_rank > 0) rep.homology[{h, q}] += e.free_rank;
      }
    }
  }

  // stabilization page
  for (int r = 0; r <= r_max; ++r) {
    bool stable = true;
    for (int r2 = r + 1; r2 <= r_max; ++r2)
      if (rep.ranks[r2] != rep.ranks[r]) stable = false;
    long htotal = 0;
    for (auto& [k, v] : rep.homology) htotal += v;
    if (stable && rep.total(r) == htotal) {
      rep.stable_page = r;
      break;
    }
  }
  return rep;
}

SaddlePairing saddle_pairing(const SaddleInfo& s) {
  SaddlePairing sp;
  if (s.is_merge) {
    sp.parent_circle = s.v_circles[0];
    sp.child0 = std::min(s.u_circles[0], s.u_circles[1]);
    sp.child1 = std::max(s.u_circles[0], s.u_circles[1]);
    // parent side = target; invert the u->v carry
    int lv = 0;
    for (int cu = 0; cu < (int)s.carry.size(); ++cu) lv = std::max(lv, s.carry[cu] + 1);
    sp.parent_carry.assign(lv, -1);
    for (int cu = 0; cu < (int)s.carry.size(); ++cu) {
      if (cu == s.u_circles[0] || cu == s.u_circles[1]) continue;
      sp.parent_carry[s.carry[cu]] = cu;
    }
  } else {
    sp.parent_circle = s.u_circles[0];
    sp.child0 = std::min(s.v_circles[0], s.v_circles[1]);
    sp.child1 = std::max(s.v_circles[0], s.v_circles[1]);
    sp.parent_carry = s.carry;
  }
  return sp;
}

CubeE1 cube_e1(const PointedComplex& P, const Ring& ring, bool verify_modules) {
  CubeE1 E;
  E.ring = ring;
  E.n = P.K.diagram.n();
  E.m = P.m;
  int nverts = 1 << E.n;

  // parity rescaling: generator (u, kh) -> (-1)^{sum eps(p), p in u}
  std::vector<int> upar(1 << E.m, 0);
  {
    std::vector<int> eps(E.m);
    for (int p = 0; p < E.m; ++p)
      eps[p] = edge_parity(P.K.diagram, P.K.coloring, P.K.points.points[p].edge_id);
    for (int u = 0; u < (1 << E.m); ++u) {
      int t = 0;
      for (int p = 0; p < E.m; ++p)
        if ((u >> p) & 1) t ^= eps[p];
      upar[u] = t;
    }
  }
  SparseMatrix dre(P.dim(), P.dim(), Ring::Z());
  for (int j = 0; j < P.dim(); ++j)
    for (const auto& [r, v] : P.d.column(j)) {
      int s = (upar[P.u_of(r)] ^ upar[P.u_of(j)]) ? -1 : 1;
      dre.set(r, j, v * s);
    }

  // per-vertex modules and the d0 identification
  E.modules.reserve(nverts);
  E.offset.assign(nverts, 0);
  for (int v = 0; v < nverts; ++v) {
    PointedUnlink geo = pointed_unlink(P.K.res[v], E.m);
    if (!geo.nondegenerate()) throw DegenerateVertex(v);
    E.modules.push_back(module_structure(geo, verify_modules));
    E.offset[v] = E.dim;
    E.dim += E.modules[v].mb.dim();
  }

  // identification of each vertex block with the standalone unlink complex
  auto embed = [&](int v, int cx_idx) {
    const UnlinkComplex& C = E.modules[v].cx;
    unsigned y = C.ymask_of(cx_idx), x = C.xmask_of(cx_idx);
    return P.index((int)y, P.K.index_of(v, (int)x));
  };

  // d0 check: the rescaled vertical differential equals the unlink one
  for (int v = 0; v < nverts; ++v) {
    const UnlinkComplex& C = E.modules[v].cx;
    SparseMatrix block(C.dim(), C.dim(), Ring::Z());
    for (int j = 0; j < C.dim(); ++j) {
      int pj = embed(v, j);
      for (const auto& [r, val] : dre.column(pj)) {
        if (P.K.basis[P.kh_of(r)].vertex != v) continue;
        unsigned y = (unsigned)P.u_of(r);
        unsigned x = (unsigned)P.K.basis[P.kh_of(r)].labels;
        block.set(C.index(y, x), j, val);
      }
    }
    if (!(block == C.d))
      throw std::runtime_error("internal: E0 identification failed at a vertex");
  }

  // d1: induced maps of the edge components on the module bases
  E.d1 = SparseMatrix(E.dim, E.dim, ring);
  E.bigradings.assign(E.dim, {0, 0});
  E.level.assign(E.dim, 0);
  for (int v = 0; v < nverts; ++v) {
    const UnlinkModule& M = E.modules[v];
    for (int b = 0; b < M.mb.dim(); ++b) {
      int pidx = embed(v, M.cycle_reps.column(b).begin()->first);
      E.bigradings[E.offset[v] + b] = P.bigrading(pidx);
      E.level[E.offset[v] + b] = vertex_weight(v);
    }
  }
  for (int u = 0; u < nverts; ++u) {
    for (int i = 0; i < E.n; ++i) {
      if ((u >> i) & 1) continue;
      int v = u | (1 << i);
      const UnlinkModule& Mu = E.modules[u];
      const UnlinkModule& Mv = E.modules[v];
      // push representative cycles through the edge component of d
      SparseMatrix images(Mv.cx.dim(), Mu.mb.dim(), Ring::Z());
      for (int b = 0; b < Mu.mb.dim(); ++b) {
        for (const auto& [ci, val] : Mu.cycle_reps.column(b)) {
          int pj = embed(u, ci);
          for (const auto& [r, w] : dre.column(pj)) {
            if (P.K.basis[P.kh_of(r)].vertex != v) continue;
            unsigned y = (unsigned)P.u_of(r);
            unsigned x = (unsigned)P.K.basis[P.kh_of(r)].labels;
            images.add(Mv.cx.index(y, x), b, val * w);
          }
        }
      }
      auto coords = module_coordinates(Mv, images.with_ring(ring), ring);
      if (!coords)
        throw std::runtime_error("internal: edge image is not expressible in the module");
      E.edge_maps[{u, v}] = *coords;
      for (int b = 0; b < Mu.mb.dim(); ++b)
        for (const auto& [r, val] : coords->column(b))
          E.d1.add(E.offset[v] + r, E.offset[u] + b, val);
    }
  }
  if (!(E.d1 * E.d1).is_zero())
    throw std::runtime_error("internal: d1 does not square to zero");
  return E;
}

std::map<std::pair<int, int>, long> keyed_homology_ranks(
    const std::vector<std::pair<int, int>>& keys, std::pair<int, int> shift,
    const SparseMatrix& d, const Ring& ring) {
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int i = 0; i < (int)keys.size(); ++i) blocks[keys[i]].push_back(i);
  SparseMatrix dr = (d.ring() == ring) ? d : d.with_ring(ring);
  std::map<std::pair<int, int>, long> out;
  for (auto& [key, here] : blocks) {
    auto fin = blocks.find({key.first - shift.first, key.second - shift.second});
    auto fout = blocks.find({key.first + shift.first, key.second + shift.second});
    std::vector<int> none;
    auto block = [&](const std::vector<int>& from, const std::vector<int>& to) {
      std::map<int, int> tp;
      for (int j = 0; j < (int)to.size(); ++j) tp[to[j]] = j;
      SparseMatrix b((int)to.size(), (int)from.size(), ring);
      for (int j = 0; j < (int)from.size(); ++j)
        for (const auto& [r2, v] : dr.column(from[j])) {
          auto it = tp.find(r2);
          if (it != tp.end()) b.set(it->second, j, v);
        }
      return b;
    };
    HomologyEntry e = homology(block(fin != blocks.end() ? fin->second : none, here),
                               block(here, fout != blocks.end() ? fout->second : none));
    if (e.free_rank > 0) out[key] = e.free_rank;
  }
  return out;
}

}  // namespace pkh

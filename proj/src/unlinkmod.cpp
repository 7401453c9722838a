#include "pkh/unlinkmod.hpp"

#include "pkh/util.hpp"

#include <algorithm>
#include <cassert>

namespace pkh {

int PointedUnlink::circle_of(int point) const {
  for (int i = 0; i < k(); ++i)
    for (int p : circle_points[i])
      if (p == point) return i;
  return -1;
}

bool PointedUnlink::nondegenerate() const {
  for (const auto& c : circle_points)
    if (c.empty()) return false;
  return true;
}

PointedUnlink pointed_unlink(const Resolution& r, int m) {
  PointedUnlink g;
  g.m = m;
  g.circle_points = r.points_on_circle;
  return g;
}

std::pair<int, int> UnlinkComplex::bigrading(int idx) const {
  int y = popcount(ymask_of(idx));
  int x = popcount(xmask_of(idx));
  return {y, 2 * y - 2 * x + geo.k()};
}

std::vector<std::pair<int, int>> UnlinkComplex::bigradings() const {
  std::vector<std::pair<int, int>> out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = bigrading(i);
  return out;
}

UnlinkComplex build_unlink_complex(const PointedUnlink& geo) {
  UnlinkComplex C;
  C.geo = geo;
  int N = C.dim();
  C.d = SparseMatrix(N, N, Ring::Z());
  for (int idx = 0; idx < N; ++idx) {
    unsigned y = C.ymask_of(idx), x = C.xmask_of(idx);
    for (int i = 0; i < geo.k(); ++i) {
      if ((x >> i) & 1) continue;
      for (int p : geo.circle_points[i]) {
        int s = wedge_sign(1u << p, y);
        if (!s) continue;
        C.d.add(C.index(y | (1u << p), x | (1u << i)), idx, s);
      }
    }
  }
  return C;
}

SparseMatrix chain_y(const UnlinkComplex& C, int point) {
  SparseMatrix a(C.dim(), C.dim(), Ring::Z());
  for (int idx = 0; idx < C.dim(); ++idx) {
    unsigned y = C.ymask_of(idx);
    int s = wedge_sign(1u << point, y);
    if (!s) continue;
    a.set(C.index(y | (1u << point), C.xmask_of(idx)), idx, s);
  }
  return a;
}

SparseMatrix chain_zeta(const UnlinkComplex& C, int point) {
  int circle = C.geo.circle_of(point);
  SparseMatrix a(C.dim(), C.dim(), Ring::Z());
  for (int idx = 0; idx < C.dim(); ++idx) {
    unsigned y = C.ymask_of(idx), x = C.xmask_of(idx);
    if (!((y >> point) & 1)) continue;
    if ((x >> circle) & 1) continue;
    int s = contraction_sign(y, point);
    a.set(C.index(y & ~(1u << point), x | (1u << circle)), idx, s);
  }
  return a;
}

SparseMatrix chain_alpha(const UnlinkComplex& C, int circle) {
  SparseMatrix a(C.dim(), C.dim(), Ring::Z());
  for (int idx = 0; idx < C.dim(); ++idx) {
    unsigned y = C.ymask_of(idx);
    for (int p : C.geo.circle_points[circle]) {
      int s = wedge_sign(1u << p, y);
      if (!s) continue;
      a.add(C.index(y | (1u << p), C.xmask_of(idx)), idx, s);
    }
  }
  return a;
}

SparseMatrix chain_x_contraction(const UnlinkComplex& C, int circle) {
  SparseMatrix a(C.dim(), C.dim(), Ring::Z());
  for (int idx = 0; idx < C.dim(); ++idx) {
    unsigned x = C.xmask_of(idx);
    if (!((x >> circle) & 1)) continue;
    a.set(C.index(C.ymask_of(idx), x & ~(1u << circle)), idx, 1);
  }
  return a;
}

SparseMatrix chain_yy_contraction(const UnlinkComplex& C, int p, int q) {
  SparseMatrix a(C.dim(), C.dim(), Ring::Z());
  for (int idx = 0; idx < C.dim(); ++idx) {
    unsigned y = C.ymask_of(idx);
    if (!((y >> q) & 1)) continue;
    int s1 = contraction_sign(y, q);
    unsigned y1 = y & ~(1u << q);
    if (!((y1 >> p) & 1)) continue;
    int s2 = contraction_sign(y1, p);
    a.set(C.index(y1 & ~(1u << p), C.xmask_of(idx)), idx, s1 * s2);
  }
  return a;
}

SparseMatrix chain_beta_sign(const UnlinkComplex& C, int circle) {
  SparseMatrix a(C.dim(), C.dim(), Ring::Z());
  for (int idx = 0; idx < C.dim(); ++idx)
    a.set(idx, idx, ((C.xmask_of(idx) >> circle) & 1) ? -1 : 1);
  return a;
}

ExtElt ModuleBasis::reduce(unsigned mask) const {
  unsigned pm = mask & pivot_mask;
  if (!pm) return {{mask, 1}};
  int pi = __builtin_ctz(pm);
  int ci = geo.circle_of(pi);
  int s = contraction_sign(mask, pi);  // y_mask = s * y_pi ^ y_rest
  unsigned rest = mask & ~(1u << pi);
  ExtElt out;
  for (int q : geo.circle_points[ci]) {
    if (q == pi) continue;
    int ws = wedge_sign(1u << q, rest);
    if (!ws) continue;
    ExtElt sub = reduce(rest | (1u << q));
    for (auto& [mk, c] : sub) {
      Int v = out[mk] + Int(-s * ws) * c;
      if (v == 0)
        out.erase(mk);
      else
        out[mk] = v;
    }
  }
  return out;
}

ModuleBasis module_basis(const PointedUnlink& geo) {
  if (!geo.nondegenerate())
    throw DegenerateResolution("every circle needs at least one basepoint");
  ModuleBasis mb;
  mb.geo = geo;
  mb.pivot.resize(geo.k());
  for (int i = 0; i < geo.k(); ++i) {
    int p = *std::min_element(geo.circle_points[i].begin(), geo.circle_points[i].end());
    mb.pivot[i] = p;
    mb.pivot_mask |= 1u << p;
  }
  unsigned nonpivot = ((1u << geo.m) - 1) & ~mb.pivot_mask;
  for (unsigned lam = 0; lam < (1u << geo.m); ++lam) {
    if (lam & ~nonpivot) continue;
    for (unsigned gam = 0; gam < (1u << geo.k()); ++gam) {
      mb.index[{lam, gam}] = (int)mb.elems.size();
      mb.elems.push_back({lam, gam});
    }
  }
  return mb;
}

namespace {

// chain of the unlink complex as sparse coefficient map
using Chain = std::map<int, Int>;

void chain_add(Chain& c, int idx, const Int& v) {
  Int nv = c.count(idx) ? c[idx] + v : v;
  if (nv == 0)
    c.erase(idx);
  else
    c[idx] = nv;
}

// expand alpha_0 ^ alpha_1 ^ ... ^ alpha_{k-1} (x) 1
Chain generator_chain(const UnlinkComplex& C) {
  ExtElt acc{{0u, Int(1)}};
  for (int i = 0; i < C.geo.k(); ++i) {
    ExtElt next;
    for (auto& [mask, coef] : acc)
      for (int p : C.geo.circle_points[i]) {
        int s = wedge_sign(mask, 1u << p);  // right multiplication
        if (!s) continue;
        Int v = next.count(mask | (1u << p)) ? next[mask | (1u << p)] : Int(0);
        v += coef * s;
        if (v == 0)
          next.erase(mask | (1u << p));
        else
          next[mask | (1u << p)] = v;
      }
    acc = std::move(next);
  }
  Chain out;
  for (auto& [mask, coef] : acc) chain_add(out, C.index(mask, 0u), coef);
  return out;
}

Chain apply_sparse(const SparseMatrix& m, const Chain& c) {
  Chain out;
  for (auto& [idx, v] : c)
    for (const auto& [r, w] : m.column(idx)) chain_add(out, r, v * w);
  return out;
}

}  // namespace

UnlinkModule module_structure(const PointedUnlink& geo, bool verify) {
  UnlinkModule M;
  M.mb = module_basis(geo);
  M.cx = build_unlink_complex(geo);
  int k = geo.k();

  std::vector<SparseMatrix> zeta(k, SparseMatrix());
  for (int i = 0; i < k; ++i) zeta[i] = chain_zeta(M.cx, M.mb.pivot[i]);

  Chain gen = generator_chain(M.cx);
  M.cycle_reps = SparseMatrix(M.cx.dim(), M.mb.dim(), Ring::Z());
  M.bigradings.resize(M.mb.dim());
  for (int b = 0; b < M.mb.dim(); ++b) {
    auto [lam, gam] = M.mb.elems[b];
    Chain c = gen;
    // gamma action: rightmost factor first
    for (int i = k - 1; i >= 0; --i)
      if ((gam >> i) & 1) c = apply_sparse(zeta[i], c);
    // left wedge by the lambda monomial
    Chain shifted;
    for (auto& [idx, v] : c) {
      unsigned y = M.cx.ymask_of(idx);
      int s = wedge_sign(lam, y);
      if (!s) continue;
      chain_add(shifted, M.cx.index(lam | y, M.cx.xmask_of(idx)), v * Int(s));
    }
    std::pair<int, int> gr{0, 0};
    bool first = true;
    for (auto& [idx, v] : shifted) {
      M.cycle_reps.set(idx, b, v);
      if (first) {
        gr = M.cx.bigrading(idx);
        first = false;
      } else {
        assert(gr == M.cx.bigrading(idx));
      }
    }
    assert(!first);  // representatives never vanish
    M.bigradings[b] = gr;
  }

  if (verify) {
    // cycles
    if (!(M.cx.d * M.cycle_reps).is_zero())
      throw std::runtime_error("module representatives are not cycles");
    // per-bigrading: representatives form a basis of free homology, and
    // homology vanishes where no representative lives
    std::map<std::pair<int, int>, std::vector<int>> cx_blocks, rep_blocks;
    auto cxg = M.cx.bigradings();
    for (int i = 0; i < M.cx.dim(); ++i) cx_blocks[cxg[i]].push_back(i);
    for (int b = 0; b < M.mb.dim(); ++b) rep_blocks[M.bigradings[b]].push_back(b);

    for (auto& [hq, idxs] : cx_blocks) {
      auto fin = cx_blocks.find({hq.first - 1, hq.second});
      auto fout = cx_blocks.find({hq.first + 1, hq.second});
      std::vector<int> empty;
      const std::vector<int>& in = fin != cx_blocks.end() ? fin->second : empty;
      const std::vector<int>& out = fout != cx_blocks.end() ? fout->second : empty;
      std::map<int, int> pos;
      for (int j = 0; j < (int)idxs.size(); ++j) pos[idxs[j]] = j;
      auto restrict_rows = [&](const SparseMatrix& m, const std::vector<int>& cols) {
        SparseMatrix r((int)idxs.size(), (int)cols.size(), Ring::Z());
        for (int j = 0; j < (int)cols.size(); ++j)
          for (const auto& [row, v] : m.column(cols[j])) {
            auto it = pos.find(row);
            if (it != pos.end()) r.set(it->second, j, v);
          }
        return r;
      };
      SparseMatrix d_in = restrict_rows(M.cx.d, in);
      SparseMatrix d_out((int)out.size(), (int)idxs.size(), Ring::Z());
      {
        std::map<int, int> opos;
        for (int j = 0; j < (int)out.size(); ++j) opos[out[j]] = j;
        for (int j = 0; j < (int)idxs.size(); ++j)
          for (const auto& [row, v] : M.cx.d.column(idxs[j])) {
            auto it = opos.find(row);
            if (it != opos.end()) d_out.set(it->second, j, v);
          }
      }
      auto rb = rep_blocks.find(hq);
      int nreps = rb == rep_blocks.end() ? 0 : (int)rb->second.size();
      SparseMatrix kb = d_out.kernel_basis();
      if (nreps == 0) {
        HomologyEntry h = homology(d_in, d_out);
        if (h.free_rank != 0 || !h.torsion.empty())
          throw std::runtime_error("homology exists outside the module representatives");
        continue;
      }
      SparseMatrix reps = restrict_rows(M.cycle_reps, rb->second);
      auto X = kb.solve(reps);
      auto Y = kb.solve(d_in);
      if (!X || !Y)
        throw std::runtime_error("cycles do not lie in the kernel lattice");
      SparseMatrix XY = SparseMatrix::hconcat(*X, *Y);
      SmithResult s = smith_normal_form(XY);
      bool onto = (s.rank == kb.cols()) && s.torsion().empty();
      long indep = XY.with_ring(Ring::Q()).rank() - Y->with_ring(Ring::Q()).rank();
      if (!onto || indep != nreps)
        throw std::runtime_error("module representatives do not present the homology");
    }
  }
  return M;
}

SparseMatrix module_y(const ModuleBasis& mb, int point) {
  SparseMatrix a(mb.dim(), mb.dim(), Ring::Z());
  for (int b = 0; b < mb.dim(); ++b) {
    auto [lam, gam] = mb.elems[b];
    int s = wedge_sign(1u << point, lam);
    if (!s) continue;
    ExtElt red = mb.reduce(lam | (1u << point));
    for (auto& [mk, c] : red) a.add(mb.index.at({mk, gam}), b, Int(s) * c);
  }
  return a;
}

SparseMatrix module_gamma(const ModuleBasis& mb, int circle) {
  SparseMatrix a(mb.dim(), mb.dim(), Ring::Z());
  for (int b = 0; b < mb.dim(); ++b) {
    auto [lam, gam] = mb.elems[b];
    int s = wedge_sign(1u << circle, gam);
    if (!s) continue;
    int t = (popcount(lam) & 1) ? -1 : 1;  // graded commutation past lambda
    a.add(mb.index.at({lam, gam | (1u << circle)}), b, s * t);
  }
  return a;
}

std::optional<SparseMatrix> module_coordinates(const UnlinkModule& M,
                                               const SparseMatrix& cycles,
                                               const Ring& ring) {
  SparseMatrix out(M.mb.dim(), cycles.cols(), ring);
  auto cxg = M.cx.bigradings();
  std::map<std::pair<int, int>, std::vector<int>> cx_blocks, rep_blocks;
  for (int i = 0; i < M.cx.dim(); ++i) cx_blocks[cxg[i]].push_back(i);
  for (int b = 0; b < M.mb.dim(); ++b) rep_blocks[M.bigradings[b]].push_back(b);

  for (int col = 0; col < cycles.cols(); ++col) {
    if (cycles.column(col).empty()) continue;
    std::pair<int, int> hq = cxg[cycles.column(col).begin()->first];
    for (const auto& [r, v] : cycles.column(col))
      if (cxg[r] != hq) return std::nullopt;  // inhomogeneous input
    auto rb = rep_blocks.find(hq);
    auto fin = cx_blocks.find({hq.first - 1, hq.second});
    const auto& here = cx_blocks.at(hq);
    std::map<int, int> pos;
    for (int j = 0; j < (int)here.size(); ++j) pos[here[j]] = j;

    int nreps = rb == rep_blocks.end() ? 0 : (int)rb->second.size();
    int nbd = fin == cx_blocks.end() ? 0 : (int)fin->second.size();
    SparseMatrix A((int)here.size(), nreps + nbd, ring);
    for (int j = 0; j < nreps; ++j)
      for (const auto& [row, v] : M.cycle_reps.column(rb->second[j]))
        A.set(pos.at(row), j, v);
    for (int j = 0; j < nbd; ++j)
      for (const auto& [row, v] : M.cx.d.column(fin->second[j])) {
        auto it = pos.find(row);
        if (it != pos.end()) A.set(it->second, nreps + j, v);
      }
    SparseMatrix B((int)here.size(), 1, ring);
    for (const auto& [row, v] : cycles.column(col)) B.set(pos.at(row), 0, v);
    auto X = solve_rational(A, B);
    if (!X) return std::nullopt;
    for (int j = 0; j < nreps; ++j) {
      const Rat& v = (*X)[j][0];
      if (v == 0) continue;
      if (ring.kind != Ring::Kind::PrimeField && v.get_den() != 1)
        return std::nullopt;  // class is not an integral combination
      out.set(rb->second[j], col, v.get_num());
    }
  }
  return out;
}

int perm_sign(const std::vector<int>& values) {
  int inv = 0;
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j)
      if (values[i] > values[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

namespace {

// map a monomial mask through an index substitution, sorting the result;
// returns (mask, sign), or sign 0 on a repeated target index
std::pair<unsigned, int> map_monomial(unsigned mask, const std::vector<int>& img) {
  std::vector<int> seq;
  for (unsigned mm = mask; mm; mm &= mm - 1) seq.push_back(img[__builtin_ctz(mm)]);
  int inv = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return {0u, 0};
      if (seq[i] > seq[j]) ++inv;
    }
  unsigned out = 0;
  for (int t : seq) out |= 1u << t;
  return {out, (inv & 1) ? -1 : 1};
}

int ordering_correction(const SaddlePairing& sp, int parent_k) {
  // sigma: parent side reordered with the split circle first
  int sgn_sigma = (sp.parent_circle & 1) ? -1 : 1;
  // tau: child side reordered as (child0, child1, carried tail in parent order)
  std::vector<int> order{sp.child0, sp.child1};
  for (int j = 0; j < parent_k; ++j) {
    if (j == sp.parent_circle) continue;
    order.push_back(sp.parent_carry[j]);
  }
  return sgn_sigma * perm_sign(order);
}

}  // namespace

SparseMatrix formula_split_map(const ModuleBasis& src, const ModuleBasis& dst,
                               const SaddlePairing& sp) {
  if ((int)sp.parent_carry.size() != src.geo.k() || dst.geo.k() != src.geo.k() + 1)
    throw OrderingMismatch("split pairing does not match the circle counts");
  int corr = ordering_correction(sp, src.geo.k());
  std::vector<int> lift(src.geo.k());
  for (int j = 0; j < src.geo.k(); ++j)
    lift[j] = (j == sp.parent_circle) ? sp.child0 : sp.parent_carry[j];

  SparseMatrix F(dst.dim(), src.dim(), Ring::Z());
  for (int b = 0; b < src.dim(); ++b) {
    auto [lam, gam] = src.elems[b];
    ExtElt lred = dst.reduce(lam);
    auto [gmapped, gs] = map_monomial(gam, lift);
    if (!gs) continue;
    // gamma-part: mapped monomial wedge (gamma'_{c0} - gamma'_{c1})
    std::vector<std::pair<unsigned, int>> gterms;
    int s0 = wedge_sign(gmapped, 1u << sp.child0);
    if (s0) gterms.push_back({gmapped | (1u << sp.child0), s0});
    int s1 = wedge_sign(gmapped, 1u << sp.child1);
    if (s1) gterms.push_back({gmapped | (1u << sp.child1), -s1});
    for (auto& [lmask, lc] : lred)
      for (auto& [gmask, gc] : gterms)
        F.add(dst.index.at({lmask, gmask}), b, Int(corr * gs * gc) * lc);
  }
  return F;
}

SparseMatrix formula_merge_map(const ModuleBasis& src, const ModuleBasis& dst,
                               const SaddlePairing& sp) {
  if ((int)sp.parent_carry.size() != dst.geo.k() || src.geo.k() != dst.geo.k() + 1)
    throw OrderingMismatch("merge pairing does not match the circle counts");
  int corr = ordering_correction(sp, dst.geo.k());
  // child side index -> parent side index
  std::vector<int> drop(src.geo.k(), -1);
  for (int j = 0; j < dst.geo.k(); ++j) {
    if (j == sp.parent_circle) continue;
    drop[sp.parent_carry[j]] = j;
  }
  drop[sp.child0] = sp.parent_circle;
  drop[sp.child1] = sp.parent_circle;

  SparseMatrix F(dst.dim(), src.dim(), Ring::Z());
  for (int b = 0; b < src.dim(); ++b) {
    auto [lam, gam] = src.elems[b];
    auto [gmapped, gs] = map_monomial(gam, drop);  // mu_Gamma of the monomial
    if (!gs) continue;
    int cross = (popcount(gam) & 1) ? -1 : 1;  // move alpha'_0 past the gamma part
    // lambda-part: (lambda ^ alpha'_0) reduced in the target module
    ExtElt lterms;
    for (int q : src.geo.circle_points[sp.child0]) {
      int ws = wedge_sign(lam, 1u << q);
      if (!ws) continue;
      ExtElt red = dst.reduce(lam | (1u << q));
      for (auto& [mk, c] : red) {
        Int v = lterms.count(mk) ? lterms[mk] : Int(0);
        v += Int(ws) * c;
        if (v == 0)
          lterms.erase(mk);
        else
          lterms[mk] = v;
      }
    }
    for (auto& [lmask, lc] : lterms)
      F.add(dst.index.at({lmask, gmapped}), b, Int(corr * gs * cross) * lc);
  }
  return F;
}

}  // namespace pkh

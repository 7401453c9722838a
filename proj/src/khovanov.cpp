#include "pkh/khovanov.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace pkh {

int KhComplex::index_of(int vertex, int labels) const {
  auto it = index_.find({vertex, labels});
  assert(it != index_.end());
  return it->second;
}

std::vector<std::pair<int, int>> KhComplex::bigradings() const {
  std::vector<std::pair<int, int>> b;
  b.reserve(basis.size());
  for (const auto& g : basis) b.push_back({g.grh, g.grq});
  return b;
}

namespace {

// vertices ordered by (|v|, v) for reproducible matrices
std::vector<int> ordered_vertices(int n) {
  std::vector<int> vs(1 << n);
  std::iota(vs.begin(), vs.end(), 0);
  std::stable_sort(vs.begin(), vs.end(), [](int a, int b) {
    int wa = vertex_weight(a), wb = vertex_weight(b);
    return wa != wb ? wa < wb : a < b;
  });
  return vs;
}

}  // namespace

KhComplex build_ckh(const LinkDiagram& d, const Coloring& col, const BasepointSet& pts) {
  KhComplex K;
  K.diagram = d;
  K.coloring = col;
  K.points = pts;
  int n = d.n();

  K.res.resize(1 << n);
  for (int v = 0; v < (1 << n); ++v) {
    K.res[v] = resolve(d, vertex_bits(v, n), col);
    locate_points(d, K.res[v], pts);
  }

  for (int v : ordered_vertices(n)) {
    int l = K.res[v].l();
    int grh = vertex_weight(v) - d.n_minus;
    int base_q = l + vertex_weight(v) + n - 3 * d.n_minus;
    for (int labels = 0; labels < (1 << l); ++labels) {
      CubeGenerator g;
      g.vertex = v;
      g.labels = labels;
      g.grh = grh;
      g.grq = base_q - 2 * popcount(labels);
      K.index_[{v, labels}] = (int)K.basis.size();
      K.basis.push_back(g);
    }
  }

  K.d = SparseMatrix((int)K.basis.size(), (int)K.basis.size(), Ring::Z());
  for (int u = 0; u < (1 << n); ++u) {
    for (int i = 0; i < n; ++i) {
      if ((u >> i) & 1) continue;
      int v = u | (1 << i);
      SaddleInfo s = classify_edge(d, K.res[u], K.res[v]);
      int sgn = ((s.sign_s + d.n_minus) & 1) ? -1 : 1;
      int lu = K.res[u].l();
      for (int labels = 0; labels < (1 << lu); ++labels) {
        int src = K.index_.at({u, labels});
        if (s.is_merge) {
          // transfer untouched labels; multiply on the merged pair
          int out = 0;
          bool zero = false;
          for (int c = 0; c < lu; ++c) {
            if (c == s.u_circles[0] || c == s.u_circles[1]) continue;
            if ((labels >> c) & 1) out |= 1 << s.carry[c];
          }
          bool x1 = (labels >> s.u_circles[0]) & 1;
          bool x2 = (labels >> s.u_circles[1]) & 1;
          if (x1 && x2)
            zero = true;  // m(x ox x) = 0
          else if (x1 || x2)
            out |= 1 << s.v_circles[0];
          if (!zero) K.d.add(K.index_.at({v, out}), src, sgn);
        } else {
          int base = 0;
          for (int c = 0; c < lu; ++c) {
            if (c == s.u_circles[0]) continue;
            if ((labels >> c) & 1) base |= 1 << s.carry[c];
          }
          int c1 = s.v_circles[0], c2 = s.v_circles[1];
          if ((labels >> s.u_circles[0]) & 1) {
            // Delta(x) = x ox x
            K.d.add(K.index_.at({v, base | (1 << c1) | (1 << c2)}), src, sgn);
          } else {
            // Delta(1) = 1 ox x + x ox 1
            K.d.add(K.index_.at({v, base | (1 << c2)}), src, sgn);
            K.d.add(K.index_.at({v, base | (1 << c1)}), src, sgn);
          }
        }
      }
    }
  }
  return K;
}

SparseMatrix xi_action(const KhComplex& K, int point_index) {
  int N = (int)K.basis.size();
  SparseMatrix m(N, N, Ring::Z());
  int edge_id = K.points.points[point_index].edge_id;
  int eps = edge_parity(K.diagram, K.coloring, edge_id);
  int sgn = eps ? -1 : 1;
  for (int i = 0; i < N; ++i) {
    const CubeGenerator& g = K.basis[i];
    int c = K.res[g.vertex].circle_of_point[point_index];
    if ((g.labels >> c) & 1) continue;  // x * x = 0
    m.add(K.index_of(g.vertex, g.labels | (1 << c)), i, sgn);
  }
  return m;
}

KhComplex build_reduced(const LinkDiagram& d, const Coloring& col, const BasepointSet& pts,
                        int p0_index) {
  KhComplex full = build_ckh(d, col, pts);
  KhComplex R;
  R.diagram = full.diagram;
  R.coloring = full.coloring;
  R.points = full.points;
  R.res = full.res;
  R.qshift = 1;

  std::vector<int> keep;
  std::vector<int> back((int)full.basis.size(), -1);
  for (int i = 0; i < (int)full.basis.size(); ++i) {
    const CubeGenerator& g = full.basis[i];
    int c = full.res[g.vertex].circle_of_point[p0_index];
    if ((g.labels >> c) & 1) {
      back[i] = (int)keep.size();
      keep.push_back(i);
    }
  }
  for (int i : keep) {
    CubeGenerator g = full.basis[i];
    g.grq += 1;
    R.index_[{g.vertex, g.labels}] = (int)R.basis.size();
    R.basis.push_back(g);
  }
  R.d = SparseMatrix((int)keep.size(), (int)keep.size(), Ring::Z());
  for (int j = 0; j < (int)keep.size(); ++j)
    for (const auto& [r, v] : full.d.column(keep[j])) {
      assert(back[r] >= 0);  // ker(xi) is a subcomplex
      R.d.set(back[r], j, v);
    }
  return R;
}

LaurentPoly jones_polynomial(const KhComplex& K) {
  LaurentPoly p;
  for (const CubeGenerator& g : K.basis) p.add_term(g.grq, (g.grh & 1) ? -1 : 1);
  return p;
}

LaurentPoly jones_state_sum(const LinkDiagram& d, const Coloring& col) {
  // (-1)^{n_-} q^{n_+ - 2 n_-} sum_v (-q)^{|v|} (q + q^{-1})^{l_v}
  int n = d.n();
  LaurentPoly qq = LaurentPoly::monomial(1) + LaurentPoly::monomial(-1);
  LaurentPoly total;
  for (int v = 0; v < (1 << n); ++v) {
    Resolution r = resolve(d, vertex_bits(v, n), col);
    int w = vertex_weight(v);
    LaurentPoly term = LaurentPoly::monomial(w, (w & 1) ? -1 : 1) * qq.pow(r.l());
    total = total + term;
  }
  LaurentPoly shift =
      LaurentPoly::monomial(d.n_plus - 2 * d.n_minus, (d.n_minus & 1) ? -1 : 1);
  return shift * total;
}

Int determinant(const LinkDiagram& d, const Coloring& col) {
  if (d.free_loops > 0)
    return (d.n() == 0 && d.free_loops == 1) ? Int(1) : Int(0);  // split diagrams
  if (d.n() == 0) return 1;

  // white faces index the Goeritz matrix; eta(c) = +1 when the white
  // quadrants at c are the pair separated by the 0-smoothing
  std::vector<int> white_faces;
  std::vector<int> white_index(d.num_faces, -1);
  for (int f = 0; f < d.num_faces; ++f)
    if (!col.black[f]) {
      white_index[f] = (int)white_faces.size();
      white_faces.push_back(f);
    }
  int w = (int)white_faces.size();
  SparseMatrix G(w, w, Ring::Z());
  for (int ci = 0; ci < d.n(); ++ci) {
    int q0 = d.quadrant_face[4 * ci + 0];  // between a and b
    int q1 = d.quadrant_face[4 * ci + 1];
    int q2 = d.quadrant_face[4 * ci + 2];
    int q3 = d.quadrant_face[4 * ci + 3];
    int fa, fb, eta;
    if (!col.black[q0]) {
      fa = q0;
      fb = q2;
      eta = 1;
      assert(!col.black[q2]);
    } else {
      fa = q1;
      fb = q3;
      eta = -1;
      assert(!col.black[q1] && !col.black[q3]);
    }
    int i = white_index[fa], j = white_index[fb];
    if (i == j) continue;  // nugatory crossing
    G.add(i, j, -eta);
    G.add(j, i, -eta);
    G.add(i, i, eta);
    G.add(j, j, eta);
  }
  // principal minor: drop the last white face
  if (w <= 1) return 1;
  std::vector<int> idx;
  for (int i = 0; i + 1 < w; ++i) idx.push_back(i);
  SparseMatrix M(w - 1, w - 1, Ring::Z());
  for (int j = 0; j + 1 < w; ++j)
    for (const auto& [r, v] : G.column(j))
      if (r + 1 < w) M.set(r, j, v);
  // determinant via Smith normal form (product of the invariants)
  SmithResult s = smith_normal_form(M);
  if (s.rank < w - 1) return 0;
  Int det = 1;
  for (const Int& x : s.diagonal) det *= x;
  return det;
}

BigradedRanks kh_homology(const KhComplex& K, const Ring& ring, int threads) {
  return homology_summary(K.bigradings(), K.d, ring, threads);
}

}  // namespace pkh

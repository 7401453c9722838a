#pragma once

#include "pkh/khovanov.hpp"

namespace pkh {

struct DifferentComponents : DiagramError {
  explicit DifferentComponents(const std::string& m) : DiagramError("DifferentComponents", m) {}
};
struct SameComponentRequired : DiagramError {
  explicit SameComponentRequired(const std::string& m)
      : DiagramError("SameComponentRequired", m) {}
};
struct NotAdjacent : DiagramError {
  explicit NotAdjacent(const std::string& m) : DiagramError("NotAdjacent", m) {}
};

// Koszul complex Lambda_p (x) CKh(L). Basis element = (exterior mask u,
// cube generator); index = (kh << m) | u.
class PointedComplex {
 public:
  KhComplex K;
  int m = 0;

  int dim() const { return (int)K.basis.size() << m; }
  int index(int u, int kh) const { return (kh << m) | u; }
  int u_of(int idx) const { return idx & ((1 << m) - 1); }
  int kh_of(int idx) const { return idx >> m; }

  std::vector<std::pair<int, int>> bigradings() const;
  std::pair<int, int> bigrading(int idx) const {
    const CubeGenerator& g = K.basis[kh_of(idx)];
    int w = popcount((unsigned)u_of(idx));
    return {w + g.grh, 2 * w + g.grq};
  }

  SparseMatrix d;  // over Z

  // left action by y_p, bidegree (1, 2)
  SparseMatrix y_action(int point) const;
  // zeta_p = contraction (x) xi_p, bidegree (-1, -4)
  SparseMatrix zeta_action(int point) const;
  // H_p(a (x) b) = y_p^*(a) (x) b, the homotopy for [zeta_p, y_p]
  SparseMatrix contraction_homotopy(int point) const;
  // xi_p extended to the pointed complex (identity on the exterior factor)
  SparseMatrix xi_full(int point) const;
};

PointedComplex build_pointed(const LinkDiagram& d, const Coloring& col,
                             const BasepointSet& pts);

// Lemma-style crossing homotopy on CKh(L): components only along cube edges
// reversing crossing c from 1 to 0. Returned H satisfies
//   d H + H d = xi(edge_after) - xi(edge_before)
// exactly, for the two edges of the strand over or under crossing c.
// side = 0 selects the under-strand pair, 1 the over-strand pair.
SparseMatrix transport_homotopy(const KhComplex& K, int crossing, int side);

// xi-action of a virtual point on the given edge (not necessarily in K.points)
SparseMatrix xi_action_edge(const KhComplex& K, int edge_id);

// Chain isomorphism CKh(L,p) -> CKh(L,p') where p' moves point `which` to
// (target_edge, target_slot) along the link component. Returns the new
// complex and the matrix of the isomorphism (verified to be a chain map).
struct MovedComplex {
  PointedComplex complex;
  SparseMatrix iso;
};
MovedComplex basepoint_move_iso(const PointedComplex& P, int which, int target_edge,
                                int target_slot);

// Rank-comparison reports ------------------------------------------------

struct DoublingReport {
  BigradedRanks with_point;    // Kh(L, p)
  BigradedRanks without;       // Kh(L, p \ {p0})
  bool bigrading_ok = false;   // rank^{h,q} = rank^{h,q}_0 + rank^{h-1,q-2}_0
  bool delta_ok = false;       // rank^delta doubles
};
DoublingReport doubling_witness(const LinkDiagram& d, const Coloring& col,
                                const BasepointSet& pts, int p0, const Ring& ring);

struct ReducedReport {
  BigradedRanks pointed;    // Kh(L, p)
  BigradedRanks reduced;    // reduced Khovanov homology at p0
  bool equality = false;    // rank Kh(L,p) = 2^{|p|} rank reduced
  bool inequality = false;  // delta-graded <= bound of the exact sequence
};
ReducedReport reduced_relation(const LinkDiagram& d, const Coloring& col,
                               const BasepointSet& pts, int p0, const Ring& ring);

}  // namespace pkh

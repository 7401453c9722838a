#pragma once

#include "pkh/spectral.hpp"

namespace pkh {

struct NonUniqueSolution : DiagramError {
  explicit NonUniqueSolution(const std::string& m) : DiagramError("NonUniqueSolution", m) {}
};
struct NoSolution : DiagramError {
  explicit NoSolution(const std::string& m) : DiagramError("NoSolution", m) {}
};
struct MismatchAt : DiagramError {
  int u, v;
  MismatchAt(int u_, int v_)
      : DiagramError("MismatchAt", "edge " + std::to_string(u_) + " -> " + std::to_string(v_)),
        u(u_), v(v_) {}
};

// Z2 model of the Floer homology of a pointed planar unlink: the module
// basis of Lambda_{p,L} (x) Gamma_L with (Maslov, Alexander) bookkeeping.
// Maslov-type gradings are stored doubled.
struct HfkVertexModule {
  ModuleBasis mb;
  int vertex = 0;
  int weight = 0;   // |v|
  int n_plus = 0;
  int l = 0;        // circles
  std::vector<int> A;   // Alexander grading, integral here
  std::vector<int> M2;  // doubled Maslov

  int dim() const { return mb.dim(); }
  int delta2(int i) const { return 2 * A[i] - M2[i]; }
  int Delta2(int i) const { return delta2(i) + weight - n_plus; }
  int G2(int i) const { return 2 * A[i] + weight - l; }
};

HfkVertexModule vertex_module(const Resolution& r, int m, int vertex, int n_plus);

struct HfkEdgeMaps {
  bool is_merge = false;
  int distinguished[2] = {-1, -1};  // global basepoint indices
  SparseMatrix f0;                  // F2, the saddle map
  SparseMatrix f1;                  // F2, its Alexander-degree-(+1) partner
};

// f0 via the split/merge formulas mod 2; f1 by solving the commutation
// constraints as a linear system (uniqueness is certified per edge).
HfkEdgeMaps edge_maps(const LinkDiagram& d, const BasepointSet& pts, const Resolution& ru,
                      const Resolution& rv, const HfkVertexModule& Mu,
                      const HfkVertexModule& Mv);

struct HfkE1 {
  int n = 0, m = 0;
  std::vector<HfkVertexModule> modules;  // per vertex mask
  std::vector<int> offset;
  int dim = 0;
  std::vector<int> level, Delta2, G2;
  SparseMatrix d1;  // F2
  std::map<std::pair<int, int>, HfkEdgeMaps> edges;
};

// with_f1 = true gives the full d1 = sum (f0 + f1); false the f0-only variant
HfkE1 build_e1(const LinkDiagram& d, const Coloring& col, const BasepointSet& pts,
               bool with_f1);
// f0-only page reusing the edge maps already computed for a full build
HfkE1 restrict_to_f0(const HfkE1& full);

// homology of (E1, d1) per (cube level, doubled Delta)
std::map<std::pair<int, int>, long> e2_ranks(const HfkE1& E);
// per (cube level, doubled G); meaningful for the f0 variant, whose d1
// preserves the G grading
std::map<std::pair<int, int>, long> e2_ranks_by_g(const HfkE1& E);

struct CompareE1Report {
  bool gradings_match = false;  // Kh delta vs Floer Delta, per generator
  bool d1_match = false;        // edgewise matrix equality over Z2
  bool e2_match = false;        // E2 rank tables per (level, Delta)
  bool isomorphic() const { return gradings_match && d1_match && e2_match; }
  std::pair<int, int> first_mismatch{-1, -1};
  std::map<std::pair<int, int>, long> e2_kh;   // (level, delta2) -> rank
  std::map<std::pair<int, int>, long> e2_hfk;  // (level, Delta2) -> rank
};

// Theorem-level comparison of the two E1 pages over Z2. The Khovanov side is
// extracted from the actual filtered pointed complex, the Floer side from the
// combinatorial edge-map formulas. With throw_on_mismatch, an edgewise
// disagreement raises MismatchAt instead of being reported.
CompareE1Report compare_e1(const LinkDiagram& d, const Coloring& col,
                           const BasepointSet& pts, bool throw_on_mismatch = false);

}  // namespace pkh

#pragma once

#include "pkh/diagram.hpp"
#include "pkh/exactla.hpp"

#include <map>
#include <optional>
#include <vector>

namespace pkh {

struct DegenerateResolution : DiagramError {
  explicit DegenerateResolution(const std::string& m)
      : DiagramError("DegenerateResolution", m) {}
};
struct OrderingMismatch : DiagramError {
  explicit OrderingMismatch(const std::string& m) : DiagramError("OrderingMismatch", m) {}
};

// A pointed planar unlink, combinatorially: circles in canonical order, each
// carrying its global basepoint indices in cyclic order along the circle
// orientation.
struct PointedUnlink {
  int m = 0;
  std::vector<std::vector<int>> circle_points;
  int k() const { return (int)circle_points.size(); }
  int circle_of(int point) const;
  bool nondegenerate() const;
};

PointedUnlink pointed_unlink(const Resolution& r, int m);

// Chain complex Lambda_p (x) Z[x_1..x_k]/(x_i^2) with differential given by
// left multiplication by sum_i alpha_i x_i. Basis index = (ymask << k) | xmask.
struct UnlinkComplex {
  PointedUnlink geo;
  SparseMatrix d;
  int dim() const { return 1 << (geo.m + geo.k()); }
  int index(unsigned ymask, unsigned xmask) const {
    return (int)((ymask << geo.k()) | xmask);
  }
  unsigned ymask_of(int idx) const { return (unsigned)idx >> geo.k(); }
  unsigned xmask_of(int idx) const { return (unsigned)idx & ((1u << geo.k()) - 1); }
  std::pair<int, int> bigrading(int idx) const;  // (|y|, 2|y| - 2|x| + k)
  std::vector<std::pair<int, int>> bigradings() const;
};

UnlinkComplex build_unlink_complex(const PointedUnlink& geo);

// chain-level operators on an UnlinkComplex
SparseMatrix chain_y(const UnlinkComplex& C, int point);           // left mult y_p
SparseMatrix chain_zeta(const UnlinkComplex& C, int point);        // x_{pi(p)} y_p^*
SparseMatrix chain_alpha(const UnlinkComplex& C, int circle);      // left mult alpha_i
SparseMatrix chain_x_contraction(const UnlinkComplex& C, int circle);   // x_i^*
SparseMatrix chain_yy_contraction(const UnlinkComplex& C, int p, int q);  // y_p^* y_q^*
SparseMatrix chain_beta_sign(const UnlinkComplex& C, int circle);  // diag (-1)^[x_i present]

// sparse exterior-algebra element: monomial mask -> coefficient
using ExtElt = std::map<unsigned, Int>;

// Basis of Lambda_{p,L} (x) Gamma_L: per circle the lowest basepoint is the
// pivot; lambda runs over monomials in the non-pivot generators.
struct ModuleBasis {
  PointedUnlink geo;
  std::vector<int> pivot;
  unsigned pivot_mask = 0;
  std::vector<std::pair<unsigned, unsigned>> elems;  // (lambda mask, gamma mask)
  std::map<std::pair<unsigned, unsigned>, int> index;
  int dim() const { return (int)elems.size(); }
  ExtElt reduce(unsigned mask) const;  // quotient by the alpha relations
};

ModuleBasis module_basis(const PointedUnlink& geo);

struct UnlinkModule {
  ModuleBasis mb;
  UnlinkComplex cx;
  SparseMatrix cycle_reps;  // cx.dim() x mb.dim()
  std::vector<std::pair<int, int>> bigradings;  // per module basis element
};

// Builds the module with explicit cycle representatives. With verify=true,
// certifies (per bigrading) that the representatives are cycles, linearly
// independent in homology, and span it over Z.
UnlinkModule module_structure(const PointedUnlink& geo, bool verify = false);

SparseMatrix module_y(const ModuleBasis& mb, int point);
SparseMatrix module_gamma(const ModuleBasis& mb, int circle);

// Coordinates of cycle columns in the module basis, modulo boundaries.
std::optional<SparseMatrix> module_coordinates(const UnlinkModule& M,
                                               const SparseMatrix& cycles,
                                               const Ring& ring);

// A saddle between two pointed unlinks, seen from the side with one circle.
struct SaddlePairing {
  int parent_circle = -1;          // on the one-circle side
  int child0 = -1, child1 = -1;    // ascending, on the two-circle side
  std::vector<int> parent_carry;   // parent-side circle -> other-side circle
};

// Homology-level saddle maps in canonical module coordinates, including the
// component-ordering sign correction.
SparseMatrix formula_split_map(const ModuleBasis& src, const ModuleBasis& dst,
                               const SaddlePairing& sp);
SparseMatrix formula_merge_map(const ModuleBasis& src, const ModuleBasis& dst,
                               const SaddlePairing& sp);

// sign of the permutation written as the list of its values
int perm_sign(const std::vector<int>& values);

}  // namespace pkh

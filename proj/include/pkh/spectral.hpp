#pragma once

#include "pkh/pointed.hpp"
#include "pkh/unlinkmod.hpp"

#include <array>

namespace pkh {

struct DegenerateVertex : DiagramError {
  int vertex;
  explicit DegenerateVertex(int v)
      : DiagramError("DegenerateVertex", "resolution " + std::to_string(v) +
                                             " has an unpointed circle"),
        vertex(v) {}
};

// Filtered bigraded complex over a field; the differential never decreases
// the filtration level and is homogeneous of bidegree (1, 0).
struct FilteredComplex {
  std::vector<std::pair<int, int>> bigradings;
  std::vector<int> level;
  SparseMatrix d;
  int min_level = 0, max_level = 0;
};

FilteredComplex cube_filtration(const PointedComplex& P, const Ring& field);

struct PageReport {
  int r_max = 0;
  // ranks[r]: (level, h, q) -> rank of E_r at that spot
  std::vector<std::map<std::array<int, 3>, long>> ranks;
  int stable_page = -1;
  std::map<std::pair<int, int>, long> homology;  // (h,q) -> rank H_*

  long total(int r) const;
  // aggregate a page by (level, doubled delta)
  static std::map<std::pair<int, int>, long> by_delta(
      const std::map<std::array<int, 3>, long>& page);
};

PageReport spectral_pages(const FilteredComplex& F, int r_max);

// E1 page of the cubical filtration with unlink-module identifications.
// The pointed complex is first rescaled by the parity signs so that each
// vertex block carries the standard unlink differential (checked entrywise).
struct CubeE1 {
  Ring ring;
  int n = 0, m = 0;
  std::vector<UnlinkModule> modules;  // per vertex mask
  std::vector<int> offset;            // basis offset per vertex
  int dim = 0;
  std::vector<std::pair<int, int>> bigradings;  // ambient (gr_h, gr_q)
  std::vector<int> level;
  SparseMatrix d1;
  std::map<std::pair<int, int>, SparseMatrix> edge_maps;  // (u,v) -> block
};

CubeE1 cube_e1(const PointedComplex& P, const Ring& ring, bool verify_modules = true);

// pairing data of a cube edge, from the parent (single-circle) side
SaddlePairing saddle_pairing(const SaddleInfo& s);

// ranks of homology of a complex graded by arbitrary integer pair keys,
// where the differential shifts keys by `shift`
std::map<std::pair<int, int>, long> keyed_homology_ranks(
    const std::vector<std::pair<int, int>>& keys, std::pair<int, int> shift,
    const SparseMatrix& d, const Ring& ring);

}  // namespace pkh

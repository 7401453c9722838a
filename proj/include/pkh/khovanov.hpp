#pragma once

#include "pkh/diagram.hpp"
#include "pkh/exactla.hpp"
#include "pkh/report.hpp"
#include "pkh/util.hpp"

#include <map>
#include <vector>

namespace pkh {

// One tensor generator of the cube: a vertex and a circle labeling.
// Bit i of labels set means circle i of that resolution carries x.
struct CubeGenerator {
  int vertex = 0;
  int labels = 0;
  int grh = 0, grq = 0;
};

class KhComplex {
 public:
  LinkDiagram diagram;
  Coloring coloring;
  BasepointSet points;             // may be empty; located in each resolution
  std::vector<Resolution> res;     // indexed by vertex mask
  std::vector<CubeGenerator> basis;
  SparseMatrix d;                  // over Z, bidegree (1, 0)
  int qshift = 0;                  // applied to grq already (reduced complex)

  int n() const { return diagram.n(); }
  int index_of(int vertex, int labels) const;
  std::vector<std::pair<int, int>> bigradings() const;

 private:
  std::map<std::pair<int, int>, int> index_;
  friend KhComplex build_ckh(const LinkDiagram&, const Coloring&, const BasepointSet&);
  friend KhComplex build_reduced(const LinkDiagram&, const Coloring&, const BasepointSet&, int);
};

KhComplex build_ckh(const LinkDiagram& d, const Coloring& col,
                    const BasepointSet& pts = {});

// xi_p: multiply the label of p's circle by x, with the parity sign.
// Bidegree (0, -2); squares to zero; commutes with the differential.
SparseMatrix xi_action(const KhComplex& K, int point_index);

// Subcomplex ker(xi_p0) spanned by generators whose marked circle carries x,
// with gr_q shifted by +1.
KhComplex build_reduced(const LinkDiagram& d, const Coloring& col,
                        const BasepointSet& pts, int p0_index);

// Graded Euler characteristic of the chain groups.
LaurentPoly jones_polynomial(const KhComplex& K);

// Kauffman state-sum evaluation of the same polynomial, sharing only the
// circle counts with the complex machinery.
LaurentPoly jones_state_sum(const LinkDiagram& d, const Coloring& col);

// |det L| from the Goeritz matrix of the checkerboard coloring.
Int determinant(const LinkDiagram& d, const Coloring& col);

BigradedRanks kh_homology(const KhComplex& K, const Ring& ring, int threads = 1);

}  // namespace pkh

#include "doctest.h"
#include "pkh/spectral.hpp"

using namespace pkh;

namespace {

const char* kTrefoil = "X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)";
const char* kKink = "X(1,2,2,1)";
const char* kHopf = "X(3,2,4,1), X(2,3,1,4)";

BasepointSet one_per_edge(const LinkDiagram& d) {
  BasepointSet pts;
  for (const Edge& e : d.edges) pts.points.push_back({e.id, 0});
  return pts;
}


}  // namespace

TEST_CASE("pages of an unfiltered complex") {
  // complex Z -2-> Z at levels 0, over F2 it is not acyclic; use Q with d=2
  FilteredComplex F;
  F.bigradings = {{0, 0}, {1, 0}};
  F.level = {0, 0};
  F.d = SparseMatrix(2, 2, Ring::Q());
  F.d.set(1, 0, 2);
  F.min_level = 0;
  F.max_level = 0;
  PageReport rep = spectral_pages(F, 2);
  CHECK(rep.ranks[0].at({0, 0, 0}) == 1);
  CHECK(rep.ranks[0].at({0, 1, 0}) == 1);
  CHECK(rep.total(1) == 0);  // E1 = homology (acyclic over Q)
  CHECK(rep.stable_page <= 1);
}

TEST_CASE("two-step filtration of an acyclic rank-two complex") {
  FilteredComplex F;
  F.bigradings = {{0, 0}, {1, 0}};
  F.level = {0, 1};
  F.d = SparseMatrix(2, 2, Ring::Q());
  F.d.set(1, 0, 1);
  F.min_level = 0;
  F.max_level = 1;
  PageReport rep = spectral_pages(F, 3);
  CHECK(rep.total(0) == 2);
  CHECK(rep.total(1) == 2);  // d0 = 0, so E1 keeps both generators
  CHECK(rep.total(2) == 0);  // d1 cancels them
  CHECK(rep.stable_page == 2);
}

TEST_CASE("cube filtration of the marked one-crossing unknot") {
  LinkDiagram d = parse_pd(kKink);
  Coloring col = checkerboard(d);
  BasepointSet pts{{{2, 0}, {1, 0}}};
  PointedComplex P = build_pointed(d, col, pts);
  for (const Ring& ring : {Ring::Q(), Ring::Fp(2)}) {
    FilteredComplex F = cube_filtration(P, ring);
    PageReport rep = spectral_pages(F, 3);
    // total ranks decrease page by page and converge to the homology
    long H = 0;
    for (auto& [k, v] : rep.homology) H += v;
    CHECK(H == 4);
    for (int r = 0; r + 1 <= rep.r_max; ++r) CHECK(rep.total(r) >= rep.total(r + 1));
    CHECK(rep.total(rep.r_max) == 4);
    CHECK(rep.stable_page >= 0);
  }
}

TEST_CASE("E1 modules and d1 of the marked one-crossing unknot") {
  LinkDiagram d = parse_pd(kKink);
  Coloring col = checkerboard(d);
  BasepointSet pts{{{2, 0}, {1, 0}}};
  PointedComplex P = build_pointed(d, col, pts);
  CubeE1 E = cube_e1(P, Ring::Z());
  REQUIRE(E.modules.size() == 2);
  CHECK(E.modules[0].mb.dim() == 4);
  CHECK(E.modules[1].mb.dim() == 4);
  // the d1 edge is the split map up to the stated sign
  SaddleInfo si = classify_edge(d, P.K.res[0], P.K.res[1]);
  SaddlePairing sp = saddle_pairing(si);
  SparseMatrix F =
      formula_split_map(E.modules[0].mb, E.modules[1].mb, sp);
  const SparseMatrix& got = E.edge_maps.at({0, 1});
  int ku = E.modules[0].mb.geo.k();
  for (int b = 0; b < E.modules[0].mb.dim(); ++b) {
    auto [lam, gam] = E.modules[0].mb.elems[b];
    int e = (si.sign_s + d.n_minus + popcount(lam) + popcount(gam) + ku) & 1;
    for (int r = 0; r < E.modules[1].mb.dim(); ++r) {
      Int expect = F.get(r, b);
      if (e) expect = -expect;
      CHECK(got.get(r, b) == expect);
    }
  }
}

TEST_CASE("induced saddle maps equal the signed formula on every battery edge") {
  struct Case {
    const char* pd;
  };
  for (const char* pd : {kKink, "X(1,1,2,2)", kHopf, kTrefoil}) {
    LinkDiagram d = parse_pd(pd);
    Coloring col = checkerboard(d);
    BasepointSet pts = one_per_edge(d);
    PointedComplex P = build_pointed(d, col, pts);
    CubeE1 E = cube_e1(P, Ring::Z());
    int n = d.n();
    for (int u = 0; u < (1 << n); ++u) {
      for (int i = 0; i < n; ++i) {
        if ((u >> i) & 1) continue;
        int v = u | (1 << i);
        SaddleInfo si = classify_edge(d, P.K.res[u], P.K.res[v]);
        SaddlePairing sp = saddle_pairing(si);
        const ModuleBasis& mu = E.modules[u].mb;
        const ModuleBasis& mv = E.modules[v].mb;
        SparseMatrix F = si.is_merge ? formula_merge_map(mu, mv, sp)
                                     : formula_split_map(mu, mv, sp);
        const SparseMatrix& got = E.edge_maps.at({u, v});
        int ku = mu.geo.k();
        bool all_ok = true;
        for (int b = 0; b < mu.dim(); ++b) {
          auto [lam, gam] = mu.elems[b];
          int e = (si.sign_s + d.n_minus + popcount(lam) + popcount(gam) + ku) & 1;
          for (int r = 0; r < mv.dim(); ++r) {
            Int expect = F.get(r, b);
            if (e) expect = -expect;
            if (got.get(r, b) != expect) all_ok = false;
          }
        }
        CHECK(all_ok);
      }
    }
  }
}

TEST_CASE("degenerate vertices are rejected") {
  LinkDiagram d = parse_pd(kKink);
  Coloring col = checkerboard(d);
  BasepointSet pts{{{1, 0}}};  // only one edge marked: v=1 has a bare circle
  PointedComplex P = build_pointed(d, col, pts);
  CHECK_THROWS_AS(cube_e1(P, Ring::Fp(2)), DegenerateVertex);

  // marking one edge per component does not point every resolution circle
  LinkDiagram h = parse_pd(kHopf);
  Coloring ch = checkerboard(h);
  PointedComplex Ph = build_pointed(h, ch, BasepointSet{{{1, 0}, {3, 0}}});
  CHECK_THROWS_AS(cube_e1(Ph, Ring::Fp(2)), DegenerateVertex);
}

TEST_CASE("crossingless diagrams have trivial d1 and E1 = homology") {
  LinkDiagram d = parse_pd("", 2);
  Coloring col = checkerboard(d);
  BasepointSet pts{{{1, 0}, {2, 0}, {2, 1}}};
  PointedComplex P = build_pointed(d, col, pts);
  CubeE1 E = cube_e1(P, Ring::Q());
  CHECK(E.dim == 8);  // 2^m
  CHECK(E.d1.is_zero());
  CHECK(homology_summary(P.bigradings(), P.d, Ring::Q()).total_rank() == 8);
}

TEST_CASE("E_infinity of the cube filtration matches homology per bigrading") {
  LinkDiagram d = parse_pd(kHopf);
  Coloring col = checkerboard(d);
  BasepointSet pts = one_per_edge(d);
  PointedComplex P = build_pointed(d, col, pts);
  FilteredComplex F = cube_filtration(P, Ring::Fp(2));
  PageReport rep = spectral_pages(F, d.n() + 1);
  std::map<std::pair<int, int>, long> einf;
  for (auto& [k, v] : rep.ranks[rep.r_max]) einf[{k[1], k[2]}] += v;
  CHECK(einf == rep.homology);
}

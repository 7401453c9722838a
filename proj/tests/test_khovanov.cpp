#include "doctest.h"
#include "pkh/khovanov.hpp"

#include <set>

using namespace pkh;

namespace {

const char* kTrefoil = "X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)";
const char* kKink = "X(1,2,2,1)";
const char* kHopf = "X(3,2,4,1), X(2,3,1,4)";
const char* kFig8 = "X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)";
const char* kUnknotR2 = "X(1,4,2,1), X(2,4,3,3)";

KhComplex ckh(const char* pd, int loops = 0) {
  LinkDiagram d = parse_pd(pd, loops);
  return build_ckh(d, checkerboard(d));
}

long rank_at(const BigradedRanks& r, int h, int q) {
  auto it = r.entries.find({h, q});
  return it == r.entries.end() ? 0 : it->second.free_rank;
}

}  // namespace

TEST_CASE("unknot complexes") {
  KhComplex K = ckh("", 1);
  REQUIRE(K.basis.size() == 2);
  CHECK(K.d.is_zero());
  std::set<std::pair<int, int>> grs;
  for (auto& g : K.basis) grs.insert({g.grh, g.grq});
  CHECK(grs == std::set<std::pair<int, int>>{{0, 1}, {0, -1}});
}

TEST_CASE("one-crossing unknot differential is minus the comultiplication") {
  LinkDiagram d = parse_pd(kKink);
  Coloring col = checkerboard(d);
  KhComplex K = build_ckh(d, col);
  REQUIRE(K.basis.size() == 6);
  // v=0 has one circle; v=1 has two. d(1) = -(x_1 + x_2), d(x) = -x_1 x_2.
  int src1 = K.index_of(0, 0);
  int srcx = K.index_of(0, 1);
  CHECK(K.d.get(K.index_of(1, 1), src1) == -1);
  CHECK(K.d.get(K.index_of(1, 2), src1) == -1);
  CHECK(K.d.get(K.index_of(1, 3), srcx) == -1);
  CHECK((K.d * K.d).is_zero());
}

TEST_CASE("d squares to zero and is bigraded across the battery") {
  for (const char* pd : {kKink, kHopf, kTrefoil, kFig8, kUnknotR2}) {
    KhComplex K = ckh(pd);
    CHECK((K.d * K.d).is_zero());
    for (int j = 0; j < (int)K.basis.size(); ++j)
      for (const auto& [r, v] : K.d.column(j)) {
        CHECK(K.basis[r].grh == K.basis[j].grh + 1);
        CHECK(K.basis[r].grq == K.basis[j].grq);
      }
    // the delta grading lives in Z + l/2: 2h - q has the parity of the
    // component count
    int l = K.diagram.num_components;
    for (const CubeGenerator& g : K.basis)
      CHECK(((2 * g.grh - g.grq) - l) % 2 == 0);
  }
}

TEST_CASE("trefoil homology with torsion") {
  KhComplex K = ckh(kTrefoil);
  BigradedRanks hq = kh_homology(K, Ring::Q());
  CHECK(hq.total_rank() == 4);
  CHECK(rank_at(hq, 0, -1) == 1);
  CHECK(rank_at(hq, 0, -3) == 1);
  CHECK(rank_at(hq, -2, -5) == 1);
  CHECK(rank_at(hq, -3, -9) == 1);

  BigradedRanks hz = kh_homology(K, Ring::Z());
  auto it = hz.entries.find({-2, -7});
  REQUIRE(it != hz.entries.end());
  CHECK(it->second.free_rank == 0);
  CHECK(it->second.torsion == std::vector<Int>({2}));

  BigradedRanks h2 = kh_homology(K, Ring::Fp(2));
  CHECK(h2.total_rank() == 6);
}

TEST_CASE("xi is a square-zero chain endomorphism with commuting family") {
  LinkDiagram d = parse_pd(kKink);
  Coloring col = checkerboard(d);
  BasepointSet pts{{{2, 0}, {1, 0}}};
  KhComplex K = build_ckh(d, col, pts);
  SparseMatrix x1 = xi_action(K, 0), x2 = xi_action(K, 1);
  CHECK((x1 * x1).is_zero());
  CHECK((x2 * x2).is_zero());
  CHECK(x1 * x2 == x2 * x1);
  CHECK(x1 * K.d == K.d * x1);
  CHECK(x2 * K.d == K.d * x2);
  // p1 sits on the odd edge: its action carries the minus sign
  int one0 = K.index_of(0, 0);
  CHECK(x1.get(K.index_of(0, 1), one0) == -1);
  CHECK(x2.get(K.index_of(0, 1), one0) == 1);
}

TEST_CASE("xi chain-map identity across the battery") {
  for (const char* pd : {kHopf, kTrefoil, kFig8}) {
    LinkDiagram d = parse_pd(pd);
    Coloring col = checkerboard(d);
    BasepointSet pts;
    for (const Edge& e : d.edges) pts.points.push_back({e.id, 0});
    KhComplex K = build_ckh(d, col, pts);
    for (int p = 0; p < pts.size(); ++p) {
      SparseMatrix xp = xi_action(K, p);
      CHECK(xp * K.d == K.d * xp);
      CHECK((xp * xp).is_zero());
    }
  }
}

TEST_CASE("reduced homology ranks") {
  {
    LinkDiagram d = parse_pd("", 1);
    BasepointSet pts{{{1, 0}}};
    KhComplex R = build_reduced(d, checkerboard(d), pts, 0);
    CHECK(kh_homology(R, Ring::Q()).total_rank() == 1);
  }
  for (int l = 2; l <= 4; ++l) {
    LinkDiagram d = parse_pd("", l);
    BasepointSet pts{{{1, 0}}};
    KhComplex R = build_reduced(d, checkerboard(d), pts, 0);
    CHECK(kh_homology(R, Ring::Fp(2)).total_rank() == (1L << (l - 1)));
  }
  {
    LinkDiagram d = parse_pd(kHopf);
    BasepointSet pts{{{1, 0}}};
    KhComplex R = build_reduced(d, checkerboard(d), pts, 0);
    CHECK(kh_homology(R, Ring::Fp(2)).total_rank() == 2);
  }
}

TEST_CASE("reduced homology of alternating diagrams is thin with det ranks") {
  struct Case {
    const char* pd;
    long det;
  };
  for (auto [pd, det] : {Case{kTrefoil, 3}, Case{kFig8, 5}, Case{kHopf, 2}}) {
    LinkDiagram d = parse_pd(pd);
    BasepointSet pts{{{1, 0}}};
    KhComplex R = build_reduced(d, checkerboard(d), pts, 0);
    BigradedRanks h = kh_homology(R, Ring::Fp(2));
    CHECK(h.total_rank() == det);
    CHECK(h.delta_ranks().size() == 1);  // single delta grading
  }
}

TEST_CASE("unreduced F2 rank doubles the reduced rank for battery knots") {
  for (const char* pd : {kTrefoil, kFig8, kKink, kUnknotR2}) {
    LinkDiagram d = parse_pd(pd);
    Coloring col = checkerboard(d);
    BasepointSet pts{{{1, 0}}};
    KhComplex K = build_ckh(d, col);
    KhComplex R = build_reduced(d, col, pts, 0);
    CHECK(kh_homology(K, Ring::Fp(2)).total_rank() ==
          2 * kh_homology(R, Ring::Fp(2)).total_rank());
  }
}

TEST_CASE("jones polynomial") {
  {
    KhComplex K = ckh("", 1);
    LaurentPoly expect;
    expect.add_term(1, 1);
    expect.add_term(-1, 1);
    CHECK(jones_polynomial(K) == expect);
  }
  {
    // left-handed trefoil: q^{-1} + q^{-3} + q^{-5} - q^{-9}
    KhComplex K = ckh(kTrefoil);
    LaurentPoly expect;
    expect.add_term(-1, 1);
    expect.add_term(-3, 1);
    expect.add_term(-5, 1);
    expect.add_term(-9, -1);
    CHECK(jones_polynomial(K) == expect);
  }
  {
    // figure-eight: q^5 + q^{-5}
    KhComplex K = ckh(kFig8);
    LaurentPoly expect;
    expect.add_term(5, 1);
    expect.add_term(-5, 1);
    CHECK(jones_polynomial(K) == expect);
  }
}

TEST_CASE("state sum equals the graded Euler characteristic; both match homology") {
  for (const char* pd : {kKink, kHopf, kTrefoil, kFig8, kUnknotR2}) {
    LinkDiagram d = parse_pd(pd);
    Coloring col = checkerboard(d);
    KhComplex K = build_ckh(d, col);
    CHECK(jones_polynomial(K) == jones_state_sum(d, col));
    BigradedRanks h = kh_homology(K, Ring::Q());
    LaurentPoly from_h;
    for (auto& [k, e] : h.entries)
      from_h.add_term(k.second, (k.first & 1) ? -e.free_rank : e.free_rank);
    CHECK(from_h == jones_polynomial(K));
  }
}

TEST_CASE("determinants from the Goeritz matrix") {
  struct Case {
    const char* pd;
    int loops;
    long det;
  };
  for (auto [pd, loops, det] :
       {Case{"", 1, 1}, Case{kKink, 0, 1}, Case{kTrefoil, 0, 3}, Case{kFig8, 0, 5},
        Case{kHopf, 0, 2}, Case{kUnknotR2, 0, 1},
        // trefoil with a positive kink: still determinant 3
        Case{"X(7,4,2,5), X(3,6,4,1), X(5,2,6,3), X(1,7,8,8)", 0, 3},
        // trefoil with a negative kink
        Case{"X(7,4,2,5), X(3,6,4,1), X(5,2,6,3), X(1,8,8,7)", 0, 3},
        Case{"", 2, 0}}) {
    LinkDiagram d = parse_pd(pd, loops);
    CHECK(determinant(d, checkerboard(d)) == det);
  }
}

TEST_CASE("coloring choice does not change homology ranks") {
  LinkDiagram d = parse_pd(kTrefoil);
  Coloring a = checkerboard(d);
  int other = -1;
  for (int f = 0; f < d.num_faces && other < 0; ++f)
    if (a.black[f]) other = f;  // any black face as the new outer
  Coloring b = checkerboard(d, other);
  KhComplex Ka = build_ckh(d, a), Kb = build_ckh(d, b);
  CHECK(kh_homology(Ka, Ring::Z()).entries == kh_homology(Kb, Ring::Z()).entries);
}

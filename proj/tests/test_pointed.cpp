#include "doctest.h"
#include "pkh/pointed.hpp"

#include <set>

using namespace pkh;

namespace {

const char* kTrefoil = "X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)";
const char* kKink = "X(1,2,2,1)";
const char* kHopf = "X(3,2,4,1), X(2,3,1,4)";

struct Built {
  LinkDiagram d;
  Coloring col;
  PointedComplex P;
};

Built pointed(const char* pd, int loops, std::vector<Basepoint> pts) {
  Built b{parse_pd(pd, loops), {}, {}};
  b.col = checkerboard(b.d);
  b.P = build_pointed(b.d, b.col, BasepointSet{std::move(pts)});
  return b;
}

long rank_at(const BigradedRanks& r, int h, int q) {
  auto it = r.entries.find({h, q});
  return it == r.entries.end() ? 0 : it->second.free_rank;
}

}  // namespace

TEST_CASE("pointed complex with no basepoints is the Khovanov complex") {
  auto [d, col, P] = pointed(kTrefoil, 0, {});
  KhComplex K = build_ckh(d, col);
  CHECK(P.dim() == (int)K.basis.size());
  CHECK(P.d == K.d);
}

TEST_CASE("the marked one-crossing unknot reproduces the eight-summand cube") {
  // p1 on the odd edge 2, p2 on the even edge 1
  auto [d, col, P] = pointed(kKink, 0, {{2, 0}, {1, 0}});
  REQUIRE(P.dim() == 24);
  CHECK((P.d * P.d).is_zero());

  const KhComplex& K = P.K;
  int c1 = K.res[1].circle_of_point[0];  // p1's circle in the 1-resolution
  int c2 = K.res[1].circle_of_point[1];
  REQUIRE(c1 != c2);

  // y00 -> -y10 x at v=0 (xi_{p1} carries the parity sign)
  int v0_one = K.index_of(0, 0);
  int v0_x = K.index_of(0, 1);
  CHECK(P.d.get(P.index(0b01, v0_x), P.index(0b00, v0_one)) == -1);
  // y00 -> +y01 x at v=0
  CHECK(P.d.get(P.index(0b10, v0_x), P.index(0b00, v0_one)) == 1);
  // y01 -> -y11 x and y10 -> -y11 x
  CHECK(P.d.get(P.index(0b11, v0_x), P.index(0b10, v0_one)) == -1);
  CHECK(P.d.get(P.index(0b11, v0_x), P.index(0b01, v0_one)) == -1);
  // Khovanov direction twisted by (-1)^{|u|}: y10 -> +y10 (x_1 + x_2)
  CHECK(P.d.get(P.index(0b01, K.index_of(1, 1 << c1)), P.index(0b01, v0_one)) == 1);
  CHECK(P.d.get(P.index(0b01, K.index_of(1, 1 << c2)), P.index(0b01, v0_one)) == 1);
  // y00 -> -y00 (x_1+x_2), y11 -> -y11 (x_1+x_2)
  CHECK(P.d.get(P.index(0b00, K.index_of(1, 1 << c1)), P.index(0b00, v0_one)) == -1);
  CHECK(P.d.get(P.index(0b11, K.index_of(1, 1 << c1)), P.index(0b11, v0_one)) == -1);
  // v=1 exterior edges: y00 -> -y10 x1, y00 x2 -> -y10 x1 x2
  CHECK(P.d.get(P.index(0b01, K.index_of(1, 1 << c1)), P.index(0b00, K.index_of(1, 0))) == -1);
  CHECK(P.d.get(P.index(0b01, K.index_of(1, (1 << c1) | (1 << c2))),
                P.index(0b00, K.index_of(1, 1 << c2))) == -1);

  // homology: free of rank 4 at the stated bigradings
  BigradedRanks h = homology_summary(P.bigradings(), P.d, Ring::Z());
  CHECK(h.total_rank() == 4);
  CHECK(rank_at(h, 0, -1) == 1);
  CHECK(rank_at(h, 1, 1) == 1);
  CHECK(rank_at(h, 1, 3) == 1);
  CHECK(rank_at(h, 2, 5) == 1);
  for (auto& [k, e] : h.entries) CHECK(e.torsion.empty());
}

TEST_CASE("Koszul identities: d^2, y-linearity, zeta relations") {
  struct Case {
    const char* pd;
    int loops;
    std::vector<Basepoint> pts;
  };
  std::vector<Case> cases = {
      {kKink, 0, {{2, 0}, {1, 0}}},
      {"", 2, {{1, 0}, {2, 0}, {2, 1}}},
      {kHopf, 0, {{1, 0}, {3, 0}}},
      {kTrefoil, 0, {{1, 0}, {4, 0}}},
  };
  for (auto& cs : cases) {
    auto [d, col, P] = pointed(cs.pd, cs.loops, cs.pts);
    CHECK((P.d * P.d).is_zero());
    for (int p = 0; p < P.m; ++p) {
      SparseMatrix y = P.y_action(p);
      SparseMatrix z = P.zeta_action(p);
      // both are odd maps: they anticommute with the differential
      CHECK((y * P.d + P.d * y).is_zero());
      CHECK((z * P.d + P.d * z).is_zero());
      CHECK((z * z).is_zero());
      // [zeta_p, y_p] = d H_p + H_p d
      SparseMatrix H = P.contraction_homotopy(p);
      CHECK(z * y + y * z == P.d * H + H * P.d);
      // zeta_p (1 (x) b) = 0
      for (int kh = 0; kh < (int)P.K.basis.size(); ++kh) {
        CHECK(z.column(P.index(0, kh)).empty());
      }
      for (int q = 0; q < P.m; ++q) {
        if (q == p) continue;
        SparseMatrix yq = P.y_action(q);
        CHECK((z * yq + yq * z).is_zero());
        SparseMatrix zq = P.zeta_action(q);
        CHECK((z * zq + zq * z).is_zero());
      }
    }
  }
}

TEST_CASE("zeta on y_p (x) b recovers xi_p(b)") {
  auto [d, col, P] = pointed(kKink, 0, {{2, 0}, {1, 0}});
  SparseMatrix z = P.zeta_action(0);
  SparseMatrix xi = P.xi_full(0);
  for (int kh = 0; kh < (int)P.K.basis.size(); ++kh) {
    int src = P.index(0b01, kh);  // y_{p1} (x) b
    for (const auto& [r, v] : z.column(src))
      CHECK(v == xi.get(P.index(0, P.kh_of(r)), P.index(0, kh)));
  }
}

TEST_CASE("transport homotopy across a crossing") {
  auto [d, col, P] = pointed(kKink, 0, {{2, 0}, {1, 0}});
  const KhComplex& K = P.K;
  for (int side : {0, 1}) {
    SparseMatrix H = transport_homotopy(K, 0, side);
    int before = side == 0 ? 1 : 2;
    int after = side == 0 ? 2 : 1;
    SparseMatrix tgt = xi_action_edge(K, after) - xi_action_edge(K, before);
    CHECK(K.d * H + H * K.d == tgt);
  }
  // case structure of the single-crossing homotopy: on the 0-resolution the
  // two arcs sit on one circle and d H + H d acts by 1 -> 2x up to sign
  SparseMatrix H = transport_homotopy(K, 0, 0);
  SparseMatrix f = K.d * H + H * K.d;
  int one0 = K.index_of(0, 0);
  Int v = f.get(K.index_of(0, 1), one0);
  CHECK((v == 2 || v == -2));
  CHECK(f.column(K.index_of(0, 1)).empty());  // x -> 0
  // on the 1-resolution the arcs lie on different circles: 1 -> +-(x1 + x2)
  int onev1 = K.index_of(1, 0);
  Int a = f.get(K.index_of(1, 1), onev1);
  Int b = f.get(K.index_of(1, 2), onev1);
  CHECK(a == b);
  CHECK((a == 1 || a == -1));
  CHECK(f.column(K.index_of(1, 3)).empty());  // x1 x2 -> 0
}

TEST_CASE("transport homotopy across trefoil crossings") {
  LinkDiagram d = parse_pd(kTrefoil);
  Coloring col = checkerboard(d);
  BasepointSet pts;
  for (const Edge& e : d.edges) pts.points.push_back({e.id, 0});
  KhComplex K = build_ckh(d, col, pts);
  for (int c = 0; c < d.n(); ++c)
    for (int side : {0, 1}) {
      SparseMatrix H = transport_homotopy(K, c, side);
      const Crossing& cr = d.crossings[c];
      int before = side == 0 ? cr.ends[0] : (cr.over_in_d ? cr.ends[3] : cr.ends[1]);
      int after = side == 0 ? cr.ends[2] : (cr.over_in_d ? cr.ends[1] : cr.ends[3]);
      CHECK(K.d * H + H * K.d == xi_action_edge(K, after) - xi_action_edge(K, before));
    }
}

TEST_CASE("basepoint move isomorphism") {
  auto [d, col, P] = pointed(kKink, 0, {{2, 0}, {1, 0}});
  SUBCASE("trivial move is the identity") {
    MovedComplex mc = basepoint_move_iso(P, 0, 2, 0);
    CHECK(mc.iso == SparseMatrix::identity(P.dim()));
  }
  SUBCASE("move across the crossing") {
    MovedComplex mc = basepoint_move_iso(P, 0, 1, 1);
    // unimodular chain map: all Smith invariants are 1
    SmithResult s = smith_normal_form(mc.iso);
    CHECK(s.rank == P.dim());
    for (const Int& x : s.diagonal) CHECK(x == 1);
    BigradedRanks before = homology_summary(P.bigradings(), P.d, Ring::Z());
    BigradedRanks after =
        homology_summary(mc.complex.bigradings(), mc.complex.d, Ring::Z());
    CHECK(before.entries == after.entries);
  }
  SUBCASE("full loop around the component is a chain automorphism") {
    MovedComplex mc = basepoint_move_iso(P, 0, 2, 1);
    SmithResult s = smith_normal_form(mc.iso);
    CHECK(s.rank == P.dim());
    for (const Int& x : s.diagonal) CHECK(x == 1);
  }
  SUBCASE("moves cannot leave the component") {
    auto [dh, colh, Ph] = pointed(kHopf, 0, {{1, 0}, {3, 0}});
    CHECK_THROWS_AS(basepoint_move_iso(Ph, 0, 3, 1), DifferentComponents);
  }
}

TEST_CASE("doubling law on small diagrams") {
  {
    LinkDiagram d = parse_pd(kKink);
    Coloring col = checkerboard(d);
    BasepointSet pts{{{2, 0}, {1, 0}}};
    for (const Ring& ring : {Ring::Q(), Ring::Fp(2)}) {
      DoublingReport rep = doubling_witness(d, col, pts, 0, ring);
      CHECK(rep.bigrading_ok);
      CHECK(rep.delta_ok);
      CHECK(rep.with_point.total_rank() == 4);
      CHECK(rep.without.total_rank() == 2);
    }
  }
  {
    LinkDiagram d = parse_pd("", 1);
    Coloring col = checkerboard(d);
    BasepointSet pts{{{1, 0}, {1, 1}, {1, 2}}};
    DoublingReport rep = doubling_witness(d, col, pts, 2, Ring::Q());
    CHECK(rep.bigrading_ok);
    CHECK(rep.with_point.total_rank() == 8);  // 2^2 * 2
  }
  {
    LinkDiagram d = parse_pd(kHopf);
    Coloring col = checkerboard(d);
    BasepointSet pts{{{1, 0}, {3, 0}}};
    CHECK_THROWS_AS(doubling_witness(d, col, pts, 0, Ring::Q()), SameComponentRequired);
  }
}

TEST_CASE("reduced relation for knots and links") {
  {
    LinkDiagram d = parse_pd(kTrefoil);
    Coloring col = checkerboard(d);
    BasepointSet pts{{{1, 0}}};
    ReducedReport rep = reduced_relation(d, col, pts, 0, Ring::Fp(2));
    CHECK(rep.equality);  // rank 6 = 2 * 3
    CHECK(rep.inequality);
    CHECK(rep.pointed.total_rank() == 6);
    CHECK(rep.reduced.total_rank() == 3);
  }
  {
    LinkDiagram d = parse_pd(kHopf);
    Coloring col = checkerboard(d);
    BasepointSet pts{{{1, 0}}};
    ReducedReport rep = reduced_relation(d, col, pts, 0, Ring::Fp(2));
    CHECK(rep.equality);  // |p| = 1 gives equality for every link
    CHECK(rep.pointed.total_rank() == 4);
  }
}

TEST_CASE("SES bound: removing a point at most halves the rank per delta") {
  struct Case {
    const char* pd;
    int loops;
    std::vector<Basepoint> pts;
  };
  std::vector<Case> cases = {
      {kHopf, 0, {{1, 0}, {3, 0}}},
      {"", 2, {{1, 0}, {2, 0}}},
      {"", 3, {{1, 0}, {2, 0}, {3, 0}}},
      {kTrefoil, 0, {{1, 0}, {3, 0}}},
  };
  for (auto& cs : cases) {
    LinkDiagram d = parse_pd(cs.pd, cs.loops);
    Coloring col = checkerboard(d);
    for (int drop = 0; drop < (int)cs.pts.size(); ++drop) {
      BasepointSet full{cs.pts};
      BasepointSet rest;
      for (int i = 0; i < (int)cs.pts.size(); ++i)
        if (i != drop) rest.points.push_back(cs.pts[i]);
      PointedComplex Pf = build_pointed(d, col, full);
      PointedComplex Pr = build_pointed(d, col, rest);
      for (const Ring& ring : {Ring::Q(), Ring::Fp(2)}) {
        auto df = homology_summary(Pf.bigradings(), Pf.d, ring).delta_ranks();
        auto dr = homology_summary(Pr.bigradings(), Pr.d, ring).delta_ranks();
        for (auto& [dd, r] : df) {
          long bound = dr.count(dd) ? 2 * dr[dd] : 0;
          CHECK(r <= bound);
        }
      }
    }
  }
}

TEST_CASE("recovering CKh(L) from the kernel of all y actions") {
  auto [d, col, P] = pointed(kKink, 0, {{2, 0}, {1, 0}});
  const KhComplex& K = P.K;
  int full = (1 << P.m) - 1;
  int N = (int)K.basis.size();
  SparseMatrix sub(N, N, Ring::Z());
  for (int j = 0; j < N; ++j)
    for (const auto& [r, v] : P.d.column(P.index(full, j))) {
      CHECK(P.u_of(r) == full);
      sub.set(P.kh_of(r), j, v);
    }
  int sgn = (P.m & 1) ? -1 : 1;
  CHECK(sub == K.d.scaled(sgn));
}

TEST_CASE("invariance evidence: unknot presentations share rank tables") {
  struct Presentation {
    const char* pd;
    int loops;
    std::vector<Basepoint> one;
    std::vector<Basepoint> two;
  };
  std::vector<Presentation> pres = {
      {"", 1, {{1, 0}}, {{1, 0}, {1, 1}}},
      {kKink, 0, {{2, 0}}, {{2, 0}, {1, 0}}},
      {"X(1,1,2,2)", 0, {{1, 0}}, {{1, 0}, {2, 0}}},
      {"X(1,4,2,1), X(2,4,3,3)", 0, {{1, 0}}, {{1, 0}, {3, 0}}},
  };
  for (int count : {1, 2}) {
    std::set<std::string> tables;
    for (auto& pr : pres) {
      auto [d, col, P] = pointed(pr.pd, pr.loops, count == 1 ? pr.one : pr.two);
      tables.insert(ranks_json(homology_summary(P.bigradings(), P.d, Ring::Z())));
    }
    CHECK(tables.size() == 1);
  }
}

#include "doctest.h"
#include "pkh/unlinkmod.hpp"
#include "pkh/report.hpp"

using namespace pkh;

namespace {

PointedUnlink unlink(std::vector<std::vector<int>> circles, int m) {
  PointedUnlink g;
  g.m = m;
  g.circle_points = std::move(circles);
  return g;
}

}  // namespace

TEST_CASE("unlink complex differential and gradings") {
  PointedUnlink g = unlink({{0, 1}}, 2);
  UnlinkComplex C = build_unlink_complex(g);
  CHECK(C.dim() == 8);
  CHECK((C.d * C.d).is_zero());
  for (int j = 0; j < C.dim(); ++j)
    for (const auto& [r, v] : C.d.column(j)) {
      CHECK(C.bigrading(r).first == C.bigrading(j).first + 1);
      CHECK(C.bigrading(r).second == C.bigrading(j).second);
    }
}

TEST_CASE("module of a doubly pointed circle") {
  PointedUnlink g = unlink({{0, 1}}, 2);
  UnlinkModule M = module_structure(g, /*verify=*/true);
  REQUIRE(M.mb.dim() == 4);
  // basis {1, ybar} x {1, gamma} at the bigradings of the worked example
  std::map<std::pair<unsigned, unsigned>, std::pair<int, int>> expect = {
      {{0u, 0u}, {1, 3}},   // class of alpha
      {{2u, 0u}, {2, 5}},   // ybar * alpha   (nonpivot point is p2 = bit 1)
      {{0u, 1u}, {0, -1}},  // gamma: class of x
      {{2u, 1u}, {1, 1}},
  };
  for (int b = 0; b < 4; ++b) {
    auto key = M.mb.elems[b];
    REQUIRE(expect.count(key));
    CHECK(M.bigradings[b] == expect[key]);
  }
}

TEST_CASE("module sizes") {
  CHECK(module_structure(unlink({{0}}, 1), true).mb.dim() == 2);
  CHECK(module_structure(unlink({{0, 1}, {2}}, 3), true).mb.dim() == 8);
  CHECK(module_structure(unlink({{0}, {1}, {2}}, 3), true).mb.dim() == 8);
  CHECK_THROWS_AS(module_structure(unlink({{0}, {}}, 1), false), DegenerateResolution);
}

TEST_CASE("module coordinates invert the representative embedding") {
  PointedUnlink g = unlink({{0, 1}, {2}}, 3);
  UnlinkModule M = module_structure(g, true);
  auto coords = module_coordinates(M, M.cycle_reps, Ring::Z());
  REQUIRE(coords.has_value());
  CHECK(*coords == SparseMatrix::identity(M.mb.dim()));
}

TEST_CASE("structural homotopies on unlink complexes") {
  for (auto g : {unlink({{0, 1}}, 2), unlink({{0, 1}, {2}}, 3), unlink({{0, 2}, {1}}, 3),
                 unlink({{0, 1, 2}}, 3)}) {
    UnlinkComplex C = build_unlink_complex(g);
    // (a) x_i^* bounds the signed alpha_i action
    for (int i = 0; i < g.k(); ++i) {
      SparseMatrix H = chain_x_contraction(C, i);
      SparseMatrix lhs = H * C.d - C.d * H;
      SparseMatrix rhs = chain_beta_sign(C, i) * chain_alpha(C, i);
      CHECK(lhs == rhs);
    }
    // (c) y_p^* y_q^* bounds zeta_p - zeta_q for p, q on one circle
    for (int i = 0; i < g.k(); ++i) {
      const auto& pts = g.circle_points[i];
      for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = 0; b < pts.size(); ++b) {
          if (a == b) continue;
          int p = pts[a], q = pts[b];
          SparseMatrix H = chain_yy_contraction(C, p, q);
          SparseMatrix lhs = H * C.d - C.d * H;
          CHECK(lhs == chain_zeta(C, p) - chain_zeta(C, q));
        }
    }
    // zeta actions on different circles strictly anticommute; squares vanish
    for (int p = 0; p < g.m; ++p) {
      SparseMatrix zp = chain_zeta(C, p);
      CHECK((zp * zp).is_zero());
      for (int q = 0; q < g.m; ++q) {
        if (g.circle_of(p) == g.circle_of(q)) continue;
        SparseMatrix zq = chain_zeta(C, q);
        CHECK((zp * zq + zq * zp).is_zero());
      }
    }
  }
}

TEST_CASE("minimal split and merge formulas") {
  // one circle with points {0,1} splitting into two singly pointed circles
  PointedUnlink parent = unlink({{0, 1}}, 2);
  PointedUnlink children = unlink({{0}, {1}}, 2);
  ModuleBasis src = module_basis(parent);
  ModuleBasis dst = module_basis(children);
  SaddlePairing sp;
  sp.parent_circle = 0;
  sp.child0 = 0;
  sp.child1 = 1;
  sp.parent_carry = {-1};

  SparseMatrix F = formula_split_map(src, dst, sp);
  // F(1 (x) 1) = 1 (x) (gamma'_0 - gamma'_1)
  int b11 = src.index.at({0u, 0u});
  CHECK(F.get(dst.index.at({0u, 1u}), b11) == 1);
  CHECK(F.get(dst.index.at({0u, 2u}), b11) == -1);
  CHECK(F.column(b11).size() == 2);

  SparseMatrix G = formula_merge_map(dst, src, sp);
  // G(1 (x) 1) = alpha'_0 (x) 1 = ybar (the class of y_0 = -y_1)
  int c11 = dst.index.at({0u, 0u});
  // in the parent module the nonpivot generator is point 1 and y_0 = -y_1
  CHECK(G.get(src.index.at({2u, 0u}), c11) == -1);
  CHECK(G.column(c11).size() == 1);
}

TEST_CASE("formula maps are module maps in the sense of the saddle") {
  // two circles {0,1},{2} with the first splitting into {0},{1}
  PointedUnlink parent = unlink({{0, 1}, {2}}, 3);
  PointedUnlink children = unlink({{0}, {1}, {2}}, 3);
  ModuleBasis src = module_basis(parent);
  ModuleBasis dst = module_basis(children);
  SaddlePairing sp;
  sp.parent_circle = 0;
  sp.child0 = 0;
  sp.child1 = 1;
  sp.parent_carry = {-1, 2};

  SparseMatrix F = formula_split_map(src, dst, sp);
  for (int p = 0; p < 3; ++p)
    CHECK(F * module_y(src, p) == module_y(dst, p) * F);
  // gamma of the split circle acts through either child
  CHECK(F * module_gamma(src, 0) == module_gamma(dst, 0) * F);
  CHECK(F * module_gamma(src, 0) == module_gamma(dst, 1) * F);
  CHECK(F * module_gamma(src, 1) == module_gamma(dst, 2) * F);

  SparseMatrix G = formula_merge_map(dst, src, sp);
  for (int p = 0; p < 3; ++p)
    CHECK(G * module_y(dst, p) == module_y(src, p) * G);
  CHECK(G * module_gamma(dst, 0) == module_gamma(src, 0) * G);
  CHECK(G * module_gamma(dst, 1) == module_gamma(src, 0) * G);
  CHECK(G * module_gamma(dst, 2) == module_gamma(src, 1) * G);

  // mu_Gamma annihilates the image of Delta_Gamma, so the composite vanishes
  CHECK((G * F).is_zero());
}

TEST_CASE("y and gamma module actions satisfy the exterior relations") {
  PointedUnlink g = unlink({{0, 1, 2}, {3}}, 4);
  ModuleBasis mb = module_basis(g);
  for (int p = 0; p < g.m; ++p) {
    SparseMatrix yp = module_y(mb, p);
    CHECK((yp * yp).is_zero());
    for (int q = p + 1; q < g.m; ++q) {
      SparseMatrix yq = module_y(mb, q);
      CHECK((yp * yq + yq * yp).is_zero());
    }
  }
  // alpha_i acts as zero in the quotient
  for (int i = 0; i < g.k(); ++i) {
    SparseMatrix acc(mb.dim(), mb.dim(), Ring::Z());
    for (int p : g.circle_points[i]) acc = acc + module_y(mb, p);
    CHECK(acc.is_zero());
  }
}

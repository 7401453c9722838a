#include "CLI11.hpp"
#include "pkh/jsonio.hpp"

#include <iostream>

using namespace pkh;

namespace {

struct CommonOpts {
  std::string pd;
  int unlink = 0;
  int free_loops = 0;
  std::string basepoints;
  int points_per_edge = 0;
  std::string ring = "z";
  int outer_face = -1;
  std::string format = "table";
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_ring = true) {
  cmd->add_option("--pd", o.pd, "PD code, e.g. \"X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)\"");
  cmd->add_option("--unlink", o.unlink, "crossingless unlink with this many components");
  cmd->add_option("--free-loops", o.free_loops, "extra crossingless components");
  cmd->add_option("--basepoints", o.basepoints,
                  "comma-separated edge ids, optionally edge:slot");
  cmd->add_option("--points-per-edge", o.points_per_edge,
                  "autofill this many basepoints on every edge");
  if (with_ring) cmd->add_option("--ring", o.ring, "coefficients: z, q, f2 or fp:<prime>");
  cmd->add_option("--outer-face", o.outer_face, "override the unbounded face");
  cmd->add_option("--format", o.format, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads for per-block homology");
}

Ring parse_ring(const std::string& s) {
  if (s == "z") return Ring::Z();
  if (s == "q") return Ring::Q();
  if (s == "f2") return Ring::Fp(2);
  if (s.rfind("fp:", 0) == 0) return Ring::Fp(std::stol(s.substr(3)));
  throw CLI::ValidationError("--ring", "unknown ring '" + s + "'");
}

BasepointSet parse_basepoints(const LinkDiagram& d, const CommonOpts& o) {
  BasepointSet pts;
  if (o.points_per_edge > 0) {
    if (!o.basepoints.empty())
      throw CLI::ValidationError("--basepoints", "conflicts with --points-per-edge");
    for (const Edge& e : d.edges)
      for (int s = 0; s < o.points_per_edge; ++s) pts.points.push_back({e.id, s});
    return pts;
  }
  if (o.basepoints.empty()) return pts;
  std::stringstream ss(o.basepoints);
  std::string item;
  std::map<int, int> next_slot;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t colon = item.find(':');
    int edge, slot;
    if (colon == std::string::npos) {
      edge = std::stoi(item);
      slot = next_slot[edge]++;
    } else {
      edge = std::stoi(item.substr(0, colon));
      slot = std::stoi(item.substr(colon + 1));
      next_slot[edge] = std::max(next_slot[edge], slot + 1);
    }
    pts.points.push_back({edge, slot});
  }
  return pts;
}

struct Loaded {
  LinkDiagram d;
  Coloring col;
  BasepointSet pts;
};

Loaded load(const CommonOpts& o) {
  Loaded L{parse_pd(o.pd, o.unlink > 0 ? o.unlink : o.free_loops), {}, {}};
  L.col = checkerboard(L.d, o.outer_face);
  L.pts = parse_basepoints(L.d, o);
  return L;
}

void emit(const CommonOpts& o, const std::string& table, const ordered_json& result,
          const std::string& command) {
  if (o.format == "json") {
    ordered_json j;
    j["schema"] = "pkh/1";
    j["command"] = command;
    j["result"] = result;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << table;
  }
}

std::string ranks_table(const BigradedRanks& r) {
  std::ostringstream os;
  os << poincare_table(r);
  os << "total rank " << r.total_rank() << "\n";
  os << table_by_delta(r.delta_ranks());
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pointed Khovanov homology calculator"};
  app.require_subcommand(1);

  CommonOpts kh_o, khred_o, pointed_o, ss_o, hfk_o, cmp_o, jones_o, det_o, inv_o;
  CommonOpts inv2_o;
  int ss_pages = -1;

  CLI::App* kh = app.add_subcommand("kh", "Khovanov homology of a link diagram");
  add_common(kh, kh_o);
  CLI::App* khred = app.add_subcommand("khred", "reduced Khovanov homology");
  add_common(khred, khred_o);
  CLI::App* ptd = app.add_subcommand("pointed", "Khovanov homology of a pointed link");
  add_common(ptd, pointed_o);
  CLI::App* ss = app.add_subcommand("ss", "spectral sequence of the cubical filtration");
  add_common(ss, ss_o);
  ss->add_option("--pages", ss_pages, "number of pages to compute");
  CLI::App* hfk = app.add_subcommand("hfk-e2", "combinatorial knot Floer E2 pages");
  add_common(hfk, hfk_o, false);
  CLI::App* cmp = app.add_subcommand("compare-e1", "compare the two E1 chain complexes");
  add_common(cmp, cmp_o, false);
  CLI::App* jones = app.add_subcommand("jones", "graded Euler characteristic");
  add_common(jones, jones_o, false);
  CLI::App* det = app.add_subcommand("det", "link determinant via the Goeritz matrix");
  add_common(det, det_o, false);
  CLI::App* inv = app.add_subcommand("invariance-check",
                                     "diff pointed rank tables of two presentations");
  add_common(inv, inv_o);
  inv->add_option("--pd2", inv2_o.pd, "second PD code");
  inv->add_option("--unlink2", inv2_o.unlink, "second diagram unlink components");
  inv->add_option("--free-loops2", inv2_o.free_loops, "second diagram free loops");
  inv->add_option("--basepoints2", inv2_o.basepoints, "second diagram basepoints");
  inv->add_option("--points-per-edge2", inv2_o.points_per_edge,
                  "autofill for the second diagram");
  inv->add_option("--outer-face2", inv2_o.outer_face, "outer face of the second diagram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (kh->parsed()) {
      Loaded L = load(kh_o);
      KhComplex K = build_ckh(L.d, L.col, L.pts);
      BigradedRanks r = kh_homology(K, parse_ring(kh_o.ring), kh_o.threads);
      ordered_json j;
      j["ring"] = parse_ring(kh_o.ring).name();
      j["ranks"] = ranks_to_json(r);
      j["diagram"] = diagram_json(L.d, L.col);
      j["complex"] = complex_json(kh_labels(K), K.bigradings(), K.d);
      emit(kh_o, ranks_table(r), j, "kh");
    } else if (khred->parsed()) {
      Loaded L = load(khred_o);
      if (L.d.edges.empty()) throw CLI::ValidationError("khred", "empty diagram");
      if (L.pts.points.empty()) L.pts.points.push_back({L.d.edges.front().id, 0});
      KhComplex R = build_reduced(L.d, L.col, L.pts, 0);
      BigradedRanks r = kh_homology(R, parse_ring(khred_o.ring), khred_o.threads);
      ordered_json j;
      j["ring"] = parse_ring(khred_o.ring).name();
      j["ranks"] = ranks_to_json(r);
      emit(khred_o, ranks_table(r), j, "khred");
    } else if (ptd->parsed()) {
      Loaded L = load(pointed_o);
      PointedComplex P = build_pointed(L.d, L.col, L.pts);
      BigradedRanks r =
          homology_summary(P.bigradings(), P.d, parse_ring(pointed_o.ring), pointed_o.threads);
      ordered_json j;
      j["ring"] = parse_ring(pointed_o.ring).name();
      j["basepoints"] = pointed_o.basepoints;
      j["ranks"] = ranks_to_json(r);
      j["complex"] = complex_json(pointed_labels(P), P.bigradings(), P.d);
      emit(pointed_o, ranks_table(r), j, "pointed");
    } else if (ss->parsed()) {
      Loaded L = load(ss_o);
      Ring ring = parse_ring(ss_o.ring);
      if (!ring.is_field()) ring = Ring::Fp(2);
      PointedComplex P = build_pointed(L.d, L.col, L.pts);
      int rmax = ss_pages > 0 ? ss_pages : L.d.n() + 1;
      PageReport rep = spectral_pages(cube_filtration(P, ring), rmax);
      std::ostringstream os;
      for (int r = 0; r <= rep.r_max; ++r) {
        os << "E_" << r << " (total " << rep.total(r) << ")\n";
        for (auto& [k, v] : rep.ranks[r])
          os << "  level " << k[0] << "  (h,q)=(" << k[1] << "," << k[2] << ")  rank " << v
             << "\n";
      }
      os << "stable page: " << rep.stable_page << "\n";
      emit(ss_o, os.str(), pages_json(rep), "ss");
    } else if (hfk->parsed()) {
      Loaded L = load(hfk_o);
      if (L.pts.points.empty())
        for (const Edge& e : L.d.edges) L.pts.points.push_back({e.id, 0});
      HfkE1 full = build_e1(L.d, L.col, L.pts, true);
      HfkE1 f0 = restrict_to_f0(full);
      auto rf = e2_ranks(full);
      auto r0 = e2_ranks(f0);
      auto g0 = e2_ranks_by_g(f0);
      std::ostringstream os;
      os << "E2 of the cube with d1 = f0:\n" << table_by_level(r0, "Delta");
      os << "same page graded by G:\n" << table_by_level(g0, "G");
      os << "E2 of the cube with d1 = f0 + f1:\n" << table_by_level(rf, "Delta");
      ordered_json j;
      j["e1"] = hfk_e1_json(full);
      auto tj = [](const std::map<std::pair<int, int>, long>& t) {
        ordered_json out = ordered_json::array();
        for (auto& [k, v] : t)
          out.push_back({{"level", k.first}, {"grading2", k.second}, {"rank", v}});
        return out;
      };
      j["e2_f0"] = tj(r0);
      j["e2_f0_by_g"] = tj(g0);
      j["e2_full"] = tj(rf);
      emit(hfk_o, os.str(), j, "hfk-e2");
    } else if (cmp->parsed()) {
      Loaded L = load(cmp_o);
      if (L.pts.points.empty())
        for (const Edge& e : L.d.edges) L.pts.points.push_back({e.id, 0});
      CompareE1Report rep = compare_e1(L.d, L.col, L.pts);
      std::ostringstream os;
      os << "verdict: " << (rep.isomorphic() ? "isomorphic" : "MISMATCH") << "\n";
      os << "gradings " << (rep.gradings_match ? "match" : "differ") << ", d1 "
         << (rep.d1_match ? "match" : "differ") << ", E2 tables "
         << (rep.e2_match ? "match" : "differ") << "\n";
      os << "E2 (Khovanov side):\n" << table_by_level(rep.e2_kh, "delta");
      os << "E2 (Floer side):\n" << table_by_level(rep.e2_hfk, "Delta");
      emit(cmp_o, os.str(), compare_json(rep), "compare-e1");
      if (!rep.isomorphic()) return 2;
    } else if (jones->parsed()) {
      Loaded L = load(jones_o);
      KhComplex K = build_ckh(L.d, L.col);
      LaurentPoly p = jones_polynomial(K);
      ordered_json j;
      j["jones"] = p.str();
      emit(jones_o, p.str() + "\n", j, "jones");
    } else if (det->parsed()) {
      Loaded L = load(det_o);
      Int D = determinant(L.d, L.col);
      ordered_json j;
      j["determinant"] = D.get_str();
      emit(det_o, D.get_str() + "\n", j, "det");
    } else if (inv->parsed()) {
      Loaded L1 = load(inv_o);
      inv2_o.format = inv_o.format;
      Loaded L2 = load(inv2_o);
      Ring ring = parse_ring(inv_o.ring);
      PointedComplex P1 = build_pointed(L1.d, L1.col, L1.pts);
      PointedComplex P2 = build_pointed(L2.d, L2.col, L2.pts);
      BigradedRanks r1 = homology_summary(P1.bigradings(), P1.d, ring, inv_o.threads);
      BigradedRanks r2 = homology_summary(P2.bigradings(), P2.d, ring, inv_o.threads);
      bool same = (r1.entries == r2.entries);
      std::ostringstream os;
      os << "first:\n" << ranks_table(r1) << "second:\n" << ranks_table(r2);
      os << "verdict: " << (same ? "identical" : "DIFFERENT") << "\n";
      ordered_json j;
      j["ring"] = ring.name();
      j["first"] = ranks_to_json(r1);
      j["second"] = ranks_to_json(r2);
      j["identical"] = same;
      emit(inv_o, os.str(), j, "invariance-check");
      if (!same) return 2;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const DiagramError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

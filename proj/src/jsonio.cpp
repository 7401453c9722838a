#include "pkh/jsonio.hpp"

#include "pkh/util.hpp"

#include <sstream>

namespace pkh {

ordered_json diagram_json(const LinkDiagram& d, const Coloring& col) {
  ordered_json j;
  j["crossings"] = ordered_json::array();
  for (const Crossing& c : d.crossings) {
    ordered_json cj;
    cj["ends"] = {c.ends[0], c.ends[1], c.ends[2], c.ends[3]};
    cj["sign"] = c.sign;
    j["crossings"].push_back(cj);
  }
  j["edges"] = ordered_json::array();
  for (const Edge& e : d.edges) {
    ordered_json ej;
    ej["id"] = e.id;
    if (e.is_free_loop()) {
      ej["free_loop"] = true;
    } else {
      ej["tail"] = {e.tail.crossing, e.tail.pos};
      ej["head"] = {e.head.crossing, e.head.pos};
    }
    ej["component"] = d.edge_component[d.edge_index(e.id)];
    j["edges"].push_back(ej);
  }
  j["faces"] = ordered_json::object();
  j["faces"]["count"] = d.num_faces;
  j["faces"]["quadrant_face"] = d.quadrant_face;
  j["coloring"] = ordered_json::object();
  j["coloring"]["outer_face"] = col.outer_face;
  ordered_json blacks = ordered_json::array();
  for (char b : col.black) blacks.push_back((int)b);
  j["coloring"]["black"] = blacks;
  j["counts"] = {{"n", d.n()}, {"n_plus", d.n_plus}, {"n_minus", d.n_minus},
                 {"free_loops", d.free_loops}, {"components", d.num_components}};
  return j;
}

ordered_json resolution_json(const LinkDiagram& d, const Resolution& r) {
  ordered_json j;
  j["vertex"] = r.choice;
  j["circles"] = ordered_json::array();
  for (const Circle& c : r.circles) {
    ordered_json cj = ordered_json::array();
    for (int ei : c.edge_indices) cj.push_back(d.edges[ei].id);
    j["circles"].push_back(cj);
  }
  if (!r.points_on_circle.empty()) j["points_on_circle"] = r.points_on_circle;
  return j;
}

ordered_json complex_json(const std::vector<std::string>& labels,
                          const std::vector<std::pair<int, int>>& bigradings,
                          const SparseMatrix& d) {
  ordered_json j;
  j["generators"] = ordered_json::array();
  for (size_t i = 0; i < labels.size(); ++i) {
    ordered_json g;
    g["label"] = labels[i];
    g["h"] = bigradings[i].first;
    g["q"] = bigradings[i].second;
    j["generators"].push_back(g);
  }
  j["differential"] = ordered_json::array();
  for (int c = 0; c < d.cols(); ++c)
    for (const auto& [r, v] : d.column(c))
      j["differential"].push_back({{"from", c}, {"to", r}, {"value", v.get_str()}});
  return j;
}

std::vector<std::string> kh_labels(const KhComplex& K) {
  std::vector<std::string> out;
  out.reserve(K.basis.size());
  for (const CubeGenerator& g : K.basis) {
    std::ostringstream os;
    os << "v=";
    for (int i = 0; i < K.n(); ++i) os << ((g.vertex >> i) & 1);
    os << " x=";
    for (int c = 0; c < K.res[g.vertex].l(); ++c) os << ((g.labels >> c) & 1);
    out.push_back(os.str());
  }
  return out;
}

std::vector<std::string> pointed_labels(const PointedComplex& P) {
  std::vector<std::string> out;
  out.reserve(P.dim());
  for (int idx = 0; idx < P.dim(); ++idx) {
    const CubeGenerator& g = P.K.basis[P.kh_of(idx)];
    std::ostringstream os;
    os << "u=";
    for (int i = 0; i < P.m; ++i) os << ((P.u_of(idx) >> i) & 1);
    os << " v=";
    for (int i = 0; i < P.K.n(); ++i) os << ((g.vertex >> i) & 1);
    os << " x=";
    for (int c = 0; c < P.K.res[g.vertex].l(); ++c) os << ((g.labels >> c) & 1);
    out.push_back(os.str());
  }
  return out;
}

ordered_json ranks_to_json(const BigradedRanks& r) {
  ordered_json j = ordered_json::array();
  for (auto& [k, e] : r.entries) {
    ordered_json ej;
    ej["h"] = k.first;
    ej["q"] = k.second;
    ej["rank"] = e.free_rank;
    ordered_json t = ordered_json::array();
    for (const Int& x : e.torsion) t.push_back(x.get_str());
    ej["torsion"] = t;
    j.push_back(ej);
  }
  return j;
}

ordered_json pages_json(const PageReport& rep) {
  ordered_json j;
  j["r_max"] = rep.r_max;
  j["stable_page"] = rep.stable_page;
  j["pages"] = ordered_json::array();
  for (int r = 0; r <= rep.r_max; ++r) {
    ordered_json pr;
    pr["r"] = r;
    pr["entries"] = ordered_json::array();
    for (auto& [k, v] : rep.ranks[r]) {
      pr["entries"].push_back(
          {{"level", k[0]}, {"h", k[1]}, {"q", k[2]}, {"rank", v}});
    }
    j["pages"].push_back(pr);
  }
  j["homology"] = ordered_json::array();
  for (auto& [k, v] : rep.homology)
    j["homology"].push_back({{"h", k.first}, {"q", k.second}, {"rank", v}});
  return j;
}

ordered_json hfk_e1_json(const HfkE1& E) {
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (int v = 0; v < (int)E.modules.size(); ++v) {
    const HfkVertexModule& M = E.modules[v];
    ordered_json vj;
    vj["vertex"] = vertex_bits(v, E.n);
    vj["dimension"] = M.dim();
    vj["generators"] = ordered_json::array();
    for (int i = 0; i < M.dim(); ++i) {
      ordered_json g;
      g["maslov2"] = M.M2[i];
      g["alexander"] = M.A[i];
      g["delta2"] = M.delta2(i);
      g["Delta2"] = M.Delta2(i);
      g["G2"] = M.G2(i);
      vj["generators"].push_back(g);
    }
    j["vertices"].push_back(vj);
  }
  j["edges"] = ordered_json::array();
  for (auto& [edge, em] : E.edges) {
    ordered_json ej;
    ej["from"] = vertex_bits(edge.first, E.n);
    ej["to"] = vertex_bits(edge.second, E.n);
    ej["type"] = em.is_merge ? "merge" : "split";
    ej["distinguished"] = {em.distinguished[0], em.distinguished[1]};
    auto mat = [&](const SparseMatrix& m) {
      ordered_json mj = ordered_json::array();
      for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) mj.push_back({{"from", c}, {"to", r}});
      return mj;
    };
    ej["f0"] = mat(em.f0);
    ej["f1"] = mat(em.f1);
    j["edges"].push_back(ej);
  }
  return j;
}

ordered_json compare_json(const CompareE1Report& rep) {
  ordered_json j;
  j["isomorphic"] = rep.isomorphic();
  j["gradings_match"] = rep.gradings_match;
  j["d1_match"] = rep.d1_match;
  j["e2_match"] = rep.e2_match;
  auto table = [](const std::map<std::pair<int, int>, long>& t) {
    ordered_json tj = ordered_json::array();
    for (auto& [k, v] : t)
      tj.push_back({{"level", k.first}, {"delta2", k.second}, {"rank", v}});
    return tj;
  };
  j["e2_khovanov"] = table(rep.e2_kh);
  j["e2_floer"] = table(rep.e2_hfk);
  return j;
}

std::string table_by_delta(const std::map<int, long>& delta_ranks) {
  std::ostringstream os;
  os << "delta  rank\n";
  for (auto& [d2, r] : delta_ranks) os << half_str(d2) << "  " << r << "\n";
  return os.str();
}

std::string table_by_level(const std::map<std::pair<int, int>, long>& t,
                           const char* col_name) {
  std::ostringstream os;
  os << "level  " << col_name << "  rank\n";
  for (auto& [k, v] : t) os << k.first << "  " << half_str(k.second) << "  " << v << "\n";
  return os.str();
}

}  // namespace pkh

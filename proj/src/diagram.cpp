#include "pkh/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <sstream>

namespace pkh {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;  // keep the smallest index as representative
    else parent[a] = b;
  }
};

int mod4(int x) { return ((x % 4) + 4) % 4; }

}  // namespace

int LinkDiagram::edge_index(int id) const {
  for (int i = 0; i < (int)edges.size(); ++i)
    if (edges[i].id == id) return i;
  throw NotAnEdge("no edge with id " + std::to_string(id));
}

LinkDiagram parse_pd(const std::string& text, int free_loops) {
  LinkDiagram d;
  d.free_loops = free_loops;

  // tokenise X(a,b,c,d) terms; brackets are accepted as well
  size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != 'X' && text[i] != 'x')
      throw MalformedPd("expected 'X' at position " + std::to_string(i));
    ++i;
    if (i >= text.size() || (text[i] != '(' && text[i] != '['))
      throw MalformedPd("expected '(' after X");
    char close = text[i] == '(' ? ')' : ']';
    ++i;
    Crossing c{};
    for (int k = 0; k < 4; ++k) {
      skip_space();
      size_t start = i;
      while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
      if (start == i) throw MalformedPd("expected edge label in crossing term");
      c.ends[k] = std::stoi(text.substr(start, i - start));
      if (c.ends[k] <= 0) throw MalformedPd("edge labels must be positive");
      skip_space();
      if (k < 3) {
        if (i >= text.size() || text[i] != ',')
          throw MalformedPd("expected ',' between edge labels");
        ++i;
      }
    }
    if (i >= text.size() || text[i] != close) throw MalformedPd("unterminated crossing term");
    ++i;
    d.crossings.push_back(c);
    skip_space();
    if (i < text.size() && text[i] == ',') {
      ++i;
      skip_space();
    }
  }

  int n = d.n();

  // each edge id must occur exactly twice
  std::map<int, std::vector<std::pair<int, int>>> occ;  // id -> [(crossing,pos)]
  for (int ci = 0; ci < n; ++ci)
    for (int p = 0; p < 4; ++p) occ[d.crossings[ci].ends[p]].push_back({ci, p});
  for (const auto& [id, ends] : occ)
    if (ends.size() != 2)
      throw NonMatchingEdges("edge " + std::to_string(id) + " occurs " +
                             std::to_string(ends.size()) + " times");

  // orientation: role of each crossing end. 1 = head (edge arrives),
  // 2 = tail (edge leaves). a arrives, c leaves; b/d are linked per crossing.
  std::vector<std::array<int, 4>> role(n, {0, 0, 0, 0});
  std::vector<std::pair<int, int>> work;
  auto assign = [&](int ci, int p, int r) {
    if (role[ci][p] == r) return;
    if (role[ci][p] != 0)
      throw OrientationConflict("conflicting orientation at crossing " + std::to_string(ci));
    role[ci][p] = r;
    work.push_back({ci, p});
  };
  for (int ci = 0; ci < n; ++ci) {
    assign(ci, 0, 1);
    assign(ci, 2, 2);
  }
  auto propagate = [&] {
    while (!work.empty()) {
      auto [ci, p] = work.back();
      work.pop_back();
      int r = role[ci][p];
      // the other occurrence of this edge has the opposite role
      int id = d.crossings[ci].ends[p];
      for (auto [cj, q] : occ[id])
        if (!(cj == ci && q == p)) assign(cj, q, 3 - r);
      // within the crossing, b and d have opposite roles
      if (p == 1) assign(ci, 3, 3 - r);
      if (p == 3) assign(ci, 1, 3 - r);
    }
  };
  propagate();
  for (int ci = 0; ci < n; ++ci) {
    if (role[ci][1] != 0) continue;
    // undetermined over-strand (a component that is never an under-strand):
    // prefer the direction along which edge labels ascend
    int b = d.crossings[ci].ends[1], dd = d.crossings[ci].ends[3];
    if (b == dd + 1)
      assign(ci, 3, 1);  // over runs d -> b
    else if (dd == b + 1)
      assign(ci, 1, 1);  // over runs b -> d
    else
      assign(ci, 3, 1);
    propagate();
  }

  // signs: positive iff the over-strand enters at position d
  for (int ci = 0; ci < n; ++ci) {
    d.crossings[ci].over_in_d = (role[ci][3] == 1);
    d.crossings[ci].sign = d.crossings[ci].over_in_d ? +1 : -1;
    (d.crossings[ci].sign > 0 ? d.n_plus : d.n_minus)++;
  }

  // edge list with tail/head ends
  for (const auto& [id, ends] : occ) {
    Edge e;
    e.id = id;
    for (auto [ci, p] : ends) {
      if (role[ci][p] == 1)
        e.head = {ci, p};
      else
        e.tail = {ci, p};
    }
    if (!e.head.valid() || !e.tail.valid())
      throw OrientationConflict("edge " + std::to_string(id) + " lacks a consistent direction");
    d.edges.push_back(e);
  }
  std::sort(d.edges.begin(), d.edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });

  // synthetic ids for free loops
  int max_id = d.edges.empty() ? 0 : d.edges.back().id;
  for (int k = 0; k < free_loops; ++k) {
    Edge e;
    e.id = max_id + 1 + k;
    d.edges.push_back(e);
  }

  // faces: union-find over crossing quadrants. Traversing an edge from its
  // tail end (X,i) to its head end (Y,j), the left side glues quadrant i at X
  // to quadrant j-1 at Y, and the right side glues i-1 at X to j at Y.
  if (n > 0) {
    UnionFind uf(4 * n);
    for (const Edge& e : d.edges) {
      if (e.is_free_loop()) continue;
      int xi = 4 * e.tail.crossing, yj = 4 * e.head.crossing;
      uf.unite(xi + e.tail.pos, yj + mod4(e.head.pos - 1));
      uf.unite(xi + mod4(e.tail.pos - 1), yj + e.head.pos);
    }
    std::map<int, int> face_id;
    d.quadrant_face.resize(4 * n);
    for (int q = 0; q < 4 * n; ++q) {
      int r = uf.find(q);
      if (!face_id.count(r)) {
        int id = (int)face_id.size();
        face_id[r] = id;
      }
      d.quadrant_face[q] = face_id[r];
    }
    d.num_faces = (int)face_id.size();
    int euler = n - 2 * n + d.num_faces;
    if (euler != 2)
      throw NonPlanar("V - E + F = " + std::to_string(euler) + ", expected 2");
    d.face_left_of_edge.assign(d.edges.size(), -1);
    d.face_right_of_edge.assign(d.edges.size(), -1);
    for (int ei = 0; ei < (int)d.edges.size(); ++ei) {
      const Edge& e = d.edges[ei];
      if (e.is_free_loop()) continue;
      d.face_left_of_edge[ei] = d.quadrant_face[4 * e.tail.crossing + e.tail.pos];
      d.face_right_of_edge[ei] = d.quadrant_face[4 * e.tail.crossing + mod4(e.tail.pos - 1)];
    }
  } else {
    d.num_faces = 1;  // just the unbounded region
  }
  // free loops sit in the unbounded region; interiors get their own faces
  // appended after the quadrant faces
  d.num_faces += free_loops;

  // link components: under- and over-strands pass through each crossing
  {
    std::map<int, int> comp_of;  // edge id -> uf index
    UnionFind uf((int)d.edges.size());
    std::map<int, int> idx_of_id;
    for (int ei = 0; ei < (int)d.edges.size(); ++ei) idx_of_id[d.edges[ei].id] = ei;
    for (const Crossing& c : d.crossings) {
      uf.unite(idx_of_id[c.ends[0]], idx_of_id[c.ends[2]]);
      uf.unite(idx_of_id[c.ends[1]], idx_of_id[c.ends[3]]);
    }
    std::map<int, int> cid;
    d.edge_component.resize(d.edges.size());
    for (int ei = 0; ei < (int)d.edges.size(); ++ei) {
      int r = uf.find(ei);
      if (!cid.count(r)) {
        int id = (int)cid.size();
        cid[r] = id;
      }
      d.edge_component[ei] = cid[r];
    }
    d.num_components = (int)cid.size();
  }

  return d;
}

Coloring checkerboard(const LinkDiagram& d, int outer) {
  int n = d.n();
  int quad_faces = d.num_faces - d.free_loops;
  if (outer < 0) {
    if (n > 0) {
      // default: the face to the right of the lowest-id crossing edge
      int ei = 0;
      while (d.edges[ei].is_free_loop()) ++ei;
      outer = d.face_right_of_edge[ei];
    } else {
      outer = 0;
    }
  }
  if (outer < 0 || outer >= d.num_faces)
    throw NoSuchFace("face " + std::to_string(outer) + " out of range");
  if (n > 0 && outer >= quad_faces)
    throw NoSuchFace("a free-loop interior cannot be the unbounded face");

  Coloring col;
  col.outer_face = outer;
  col.black.assign(d.num_faces, -1);

  // adjacency across edges
  std::vector<std::vector<int>> adj(d.num_faces);
  for (int ei = 0; ei < (int)d.edges.size(); ++ei) {
    if (d.edges[ei].is_free_loop()) continue;
    int l = d.face_left_of_edge[ei], r = d.face_right_of_edge[ei];
    adj[l].push_back(r);
    adj[r].push_back(l);
  }
  std::vector<int> stack{outer};
  col.black[outer] = 0;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int g : adj[f]) {
      if (col.black[g] == -1) {
        col.black[g] = 1 - col.black[f];
        stack.push_back(g);
      } else if (col.black[g] == col.black[f]) {
        throw NonPlanar("faces are not two-colorable");
      }
    }
  }
  // free loop interiors are opposite to the region they sit in (the outer face)
  for (int k = 0; k < d.free_loops; ++k) {
    int f = quad_faces + k;
    if (n == 0) f = 1 + k;
    col.black[f] = 1 - col.black[outer];
  }
  for (int f = 0; f < d.num_faces; ++f)
    if (col.black[f] == -1) col.black[f] = 1 - col.black[outer];  // unreachable faces
  return col;
}

int edge_parity(const LinkDiagram& d, const Coloring& col, int edge_id) {
  int ei = d.edge_index(edge_id);
  if (d.edges[ei].is_free_loop()) return 0;  // loop oriented as black boundary
  int l = d.face_left_of_edge[ei];
  // even iff the black face lies to the left (edge runs along the black
  // region's boundary orientation)
  return col.black[l] ? 0 : 1;
}

namespace {

// smoothing partner of position p at a crossing resolved by choice s
int smoothing_partner(int s, int p) {
  if (s == 0) {
    // arcs (a,b) and (c,d)
    static const int m[4] = {1, 0, 3, 2};
    return m[p];
  }
  // arcs (a,d) and (b,c)
  static const int m[4] = {3, 2, 1, 0};
  return m[p];
}

}  // namespace

Resolution resolve(const LinkDiagram& d, const std::vector<int>& v, const Coloring& col) {
  int n = d.n();
  if ((int)v.size() != n)
    throw DimensionMismatch("resolution vector has length " + std::to_string(v.size()) +
                            ", diagram has " + std::to_string(n) + " crossings");
  Resolution r;
  r.choice = v;

  // end -> edge index lookup
  std::vector<std::array<int, 4>> edge_at(n, {-1, -1, -1, -1});
  for (int ei = 0; ei < (int)d.edges.size(); ++ei) {
    const Edge& e = d.edges[ei];
    if (e.is_free_loop()) continue;
    edge_at[e.tail.crossing][e.tail.pos] = ei;
    edge_at[e.head.crossing][e.head.pos] = ei;
  }

  // trace circles
  std::vector<char> visited(d.edges.size(), 0);
  std::vector<Circle> circles;
  for (int start = 0; start < (int)d.edges.size(); ++start) {
    if (visited[start]) continue;
    Circle c;
    if (d.edges[start].is_free_loop()) {
      visited[start] = 1;
      CircleItem it;
      it.edge_index = start;
      c.items.push_back(it);
      c.edge_indices = {start};
      c.min_edge_id = d.edges[start].id;
      circles.push_back(std::move(c));
      continue;
    }
    int ei = start;
    bool fwd = true;
    do {
      visited[ei] = 1;
      CircleItem it;
      it.edge_index = ei;
      it.forward = fwd;
      c.items.push_back(it);
      c.edge_indices.push_back(ei);
      EdgeEnd arrive = fwd ? d.edges[ei].head : d.edges[ei].tail;
      int x = arrive.crossing, p = arrive.pos;
      int q = smoothing_partner(v[x], p);
      CircleItem arc;
      arc.is_arc = true;
      arc.crossing = x;
      arc.arc_pos0 = p;
      arc.arc_pos1 = q;
      c.items.push_back(arc);
      int nxt = edge_at[x][q];
      const Edge& ne = d.edges[nxt];
      fwd = (ne.tail.crossing == x && ne.tail.pos == q);
      ei = nxt;
    } while (!(ei == start && fwd));
    std::sort(c.edge_indices.begin(), c.edge_indices.end());
    c.min_edge_id = d.edges[c.edge_indices.front()].id;
    circles.push_back(std::move(c));
  }

  // faces of the resolved diagram: edge gluings as in the original diagram,
  // plus the region merged behind each pair of smoothing arcs
  int quad_faces = d.num_faces - d.free_loops;
  std::vector<int> rface;  // per original face id (quadrant faces only)
  {
    UnionFind uf(std::max(4 * n, 1));
    if (n > 0) {
      for (const Edge& e : d.edges) {
        if (e.is_free_loop()) continue;
        int xi = 4 * e.tail.crossing, yj = 4 * e.head.crossing;
        uf.unite(xi + e.tail.pos, yj + mod4(e.head.pos - 1));
        uf.unite(xi + mod4(e.tail.pos - 1), yj + e.head.pos);
      }
      for (int ci = 0; ci < n; ++ci) {
        if (v[ci] == 0)
          uf.unite(4 * ci + 1, 4 * ci + 3);
        else
          uf.unite(4 * ci + 0, 4 * ci + 2);
      }
    }
    // resolved coloring: two-color with the class of the ambient outer face
    // white, spreading across edges and smoothing arcs
    std::vector<int> color(std::max(4 * n, 1), -1);
    if (n > 0) {
      std::vector<std::vector<int>> adj(4 * n);
      auto link = [&](int qa, int qb) {
        int a = uf.find(qa), b = uf.find(qb);
        adj[a].push_back(b);
        adj[b].push_back(a);
      };
      for (const Edge& e : d.edges) {
        if (e.is_free_loop()) continue;
        link(4 * e.tail.crossing + e.tail.pos, 4 * e.tail.crossing + mod4(e.tail.pos - 1));
      }
      for (int ci = 0; ci < n; ++ci) {
        if (v[ci] == 0) {
          link(4 * ci + 0, 4 * ci + 1);
          link(4 * ci + 2, 4 * ci + 3);
        } else {
          link(4 * ci + 3, 4 * ci + 0);
          link(4 * ci + 1, 4 * ci + 2);
        }
      }
      int outer_q = -1;
      for (int q = 0; q < 4 * n; ++q)
        if (d.quadrant_face[q] == col.outer_face) { outer_q = q; break; }
      assert(outer_q >= 0);
      int root = uf.find(outer_q);
      color[root] = 0;
      std::vector<int> stack{root};
      while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int g : adj[f])
          if (color[g] == -1) {
            color[g] = 1 - color[f];
            stack.push_back(g);
          }
      }
    }
    rface = color;  // indexed by quadrant uf root
    // orient circles: black to the left of the traversal direction
    for (Circle& c : circles) {
      const CircleItem& it0 = c.items.front();
      bool black_left;
      if (d.edges[it0.edge_index].is_free_loop()) {
        // loop interior black iff outer white; forward = counterclockwise
        black_left = true;
      } else {
        const Edge& e = d.edges[it0.edge_index];
        int lq = 4 * e.tail.crossing + e.tail.pos;       // left of forward
        int rq = 4 * e.tail.crossing + mod4(e.tail.pos - 1);
        int q = it0.forward ? lq : rq;
        black_left = (rface[uf.find(q)] == 1);
      }
      if (!black_left) {
        std::reverse(c.items.begin(), c.items.end());
        for (CircleItem& it : c.items)
          if (!it.is_arc) it.forward = !it.forward;
      }
    }
  }

  std::sort(circles.begin(), circles.end(),
            [](const Circle& a, const Circle& b) { return a.min_edge_id < b.min_edge_id; });
  r.circles = std::move(circles);
  r.circle_of_edge.assign(d.edges.size(), -1);
  for (int ci = 0; ci < (int)r.circles.size(); ++ci)
    for (int ei : r.circles[ci].edge_indices) r.circle_of_edge[ei] = ci;
  return r;
}

void locate_points(const LinkDiagram& d, Resolution& r, const BasepointSet& pts) {
  r.circle_of_point.assign(pts.size(), -1);
  r.points_on_circle.assign(r.circles.size(), {});
  // points per edge, ordered by slot
  std::map<int, std::vector<std::pair<int, int>>> by_edge;  // edge index -> [(slot, point)]
  for (int pi = 0; pi < pts.size(); ++pi) {
    int ei = d.edge_index(pts.points[pi].edge_id);
    by_edge[ei].push_back({pts.points[pi].slot, pi});
    r.circle_of_point[pi] = r.circle_of_edge[ei];
  }
  for (auto& [ei, v] : by_edge) std::sort(v.begin(), v.end());
  for (int ci = 0; ci < (int)r.circles.size(); ++ci) {
    for (const CircleItem& it : r.circles[ci].items) {
      if (it.is_arc) continue;
      auto f = by_edge.find(it.edge_index);
      if (f == by_edge.end()) continue;
      if (it.forward)
        for (auto& [slot, pi] : f->second) r.points_on_circle[ci].push_back(pi);
      else
        for (auto it2 = f->second.rbegin(); it2 != f->second.rend(); ++it2)
          r.points_on_circle[ci].push_back(it2->second);
    }
  }
}

SaddleInfo classify_edge(const LinkDiagram& d, const Resolution& ru, const Resolution& rv) {
  if (ru.choice.size() != rv.choice.size())
    throw NotAnEdge("resolutions live on different cubes");
  int flip = -1;
  for (int i = 0; i < (int)ru.choice.size(); ++i) {
    if (ru.choice[i] == rv.choice[i]) continue;
    if (ru.choice[i] == 0 && rv.choice[i] == 1 && flip < 0)
      flip = i;
    else
      throw NotAnEdge("resolutions do not differ by a single 0->1 flip");
  }
  if (flip < 0) throw NotAnEdge("resolutions are equal");

  SaddleInfo s;
  s.crossing = flip;
  int acc = 0;
  for (int i = 0; i < flip; ++i) acc += rv.choice[i];
  s.sign_s = acc & 1;

  int lu = ru.l(), lv = rv.l();
  if (lv == lu - 1)
    s.is_merge = true;
  else if (lv == lu + 1)
    s.is_merge = false;
  else
    throw NotAnEdge("circle counts do not differ by one");

  s.carry.assign(lu, -1);
  for (int cu = 0; cu < lu; ++cu) {
    int e0 = ru.circles[cu].edge_indices.front();
    s.carry[cu] = rv.circle_of_edge[e0];
  }
  if (s.is_merge) {
    int k = 0;
    std::vector<int> hit(lv, 0);
    for (int cu = 0; cu < lu; ++cu) hit[s.carry[cu]]++;
    int cv = -1;
    for (int i = 0; i < lv; ++i)
      if (hit[i] == 2) cv = i;
    for (int cu = 0; cu < lu; ++cu)
      if (s.carry[cu] == cv) s.u_circles[k++] = cu;
    s.v_circles[0] = cv;
  } else {
    // the split circle of L_u contains the arcs of the flipped crossing
    int cu = -1;
    std::vector<int> image;
    for (int i = 0; i < lu; ++i) {
      std::set<int> targets;
      for (int ei : ru.circles[i].edge_indices) targets.insert(rv.circle_of_edge[ei]);
      if (targets.size() == 2) {
        cu = i;
        image.assign(targets.begin(), targets.end());
      }
    }
    if (cu < 0) throw NotAnEdge("no split circle found");
    s.u_circles[0] = cu;
    s.v_circles[0] = image[0];
    s.v_circles[1] = image[1];
    s.carry[cu] = -1;  // ambiguous; children listed in v_circles
  }
  return s;
}

ComponentInfo component_info(const LinkDiagram& d, const BasepointSet& pts) {
  ComponentInfo info;
  info.count = d.num_components;
  info.points_per_component.assign(info.count, 0);
  for (const Basepoint& p : pts.points) {
    int ei = d.edge_index(p.edge_id);
    info.points_per_component[d.edge_component[ei]]++;
  }
  info.nondegenerate = true;
  for (int c : info.points_per_component)
    if (c == 0) info.nondegenerate = false;
  info.linking.assign(info.count, std::vector<int>(info.count, 0));
  for (const Crossing& c : d.crossings) {
    int cu = d.edge_component[d.edge_index(c.ends[0])];
    int co = d.edge_component[d.edge_index(c.ends[1])];
    if (cu != co) {
      info.linking[cu][co] += c.sign;
      info.linking[co][cu] += c.sign;
    }
  }
  for (auto& row : info.linking)
    for (int& x : row) x /= 2;
  return info;
}

std::vector<int> vertex_bits(int mask, int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
  return v;
}

}  // namespace pkh

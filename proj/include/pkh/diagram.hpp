#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkh {

// Error taxonomy for diagram handling. CLI surfaces these by name.
struct DiagramError : std::runtime_error {
  std::string kind;
  DiagramError(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};
struct MalformedPd : DiagramError {
  explicit MalformedPd(const std::string& m) : DiagramError("MalformedPd", m) {}
};
struct NonMatchingEdges : DiagramError {
  explicit NonMatchingEdges(const std::string& m) : DiagramError("NonMatchingEdges", m) {}
};
struct NonPlanar : DiagramError {
  explicit NonPlanar(const std::string& m) : DiagramError("NonPlanar", m) {}
};
struct OrientationConflict : DiagramError {
  explicit OrientationConflict(const std::string& m) : DiagramError("OrientationConflict", m) {}
};
struct NoSuchFace : DiagramError {
  explicit NoSuchFace(const std::string& m) : DiagramError("NoSuchFace", m) {}
};
struct DimensionMismatch : DiagramError {
  explicit DimensionMismatch(const std::string& m) : DiagramError("DimensionMismatch", m) {}
};
struct NotAnEdge : DiagramError {
  explicit NotAnEdge(const std::string& m) : DiagramError("NotAnEdge", m) {}
};

// A crossing X(a,b,c,d): edge ids of the four ends, listed counterclockwise
// starting at the incoming under-strand. ends[0]=a, ..., ends[3]=d.
struct Crossing {
  int ends[4];
  int sign = 0;        // +1 / -1, derived from orientations
  bool over_in_d = false;  // over-strand enters at position d (else at b)
};

// End of an edge: (crossing index, position 0..3).
struct EdgeEnd {
  int crossing = -1;
  int pos = -1;
  bool valid() const { return crossing >= 0; }
};

// Oriented edge: tail = where it leaves a crossing, head = where it arrives.
// Free loops are represented as edges with no ends (crossingless circles).
struct Edge {
  int id = 0;          // PD label, or synthetic id for free loops
  EdgeEnd tail, head;
  bool is_free_loop() const { return !tail.valid(); }
};

struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::vector<Edge> edges;             // sorted by id; includes free loops at the end
  int free_loops = 0;
  int n_plus = 0, n_minus = 0;

  // planar face structure: faces are classes of crossing quadrants.
  // quadrant index q = 4*crossing + i lies between positions i and i+1 (mod 4).
  int num_faces = 0;
  std::vector<int> quadrant_face;      // size 4n: quadrant -> face id
  std::vector<int> face_left_of_edge;  // per edge index (crossing edges only)
  std::vector<int> face_right_of_edge;

  // component structure of the underlying link
  int num_components = 0;
  std::vector<int> edge_component;     // per edge index

  int n() const { return (int)crossings.size(); }
  int num_edges() const { return (int)edges.size(); }
  int edge_index(int id) const;        // index into edges, throws NotAnEdge
  const Edge& edge_by_id(int id) const { return edges[edge_index(id)]; }
};

LinkDiagram parse_pd(const std::string& text, int free_loops = 0);

// Basepoints reference edges; slot orders multiple points on one edge along
// the edge's own orientation.
struct Basepoint {
  int edge_id = 0;
  int slot = 0;
};

struct BasepointSet {
  std::vector<Basepoint> points;  // global order = input order
  int size() const { return (int)points.size(); }
};

struct Coloring {
  int outer_face = 0;
  std::vector<char> black;  // per face id
};

// Proper two-coloring with the given outer face white. outer = -1 picks the
// default face (right side of the lowest-id crossing edge; the bounded side
// of a free loop is black).
Coloring checkerboard(const LinkDiagram& d, int outer = -1);

// 0 iff the edge, with its own orientation, runs along the boundary
// orientation of its adjacent black face (black on the left).
int edge_parity(const LinkDiagram& d, const Coloring& col, int edge_id);

// One item of a circle traversal: either a diagram edge traversed forward or
// backward, or a smoothing arc at a crossing.
struct CircleItem {
  bool is_arc = false;
  int edge_index = -1;    // when !is_arc
  bool forward = true;
  int crossing = -1;      // when is_arc
  int arc_pos0 = -1, arc_pos1 = -1;  // the two positions joined at the crossing
};

struct Circle {
  std::vector<CircleItem> items;  // cyclic, following the circle orientation
  std::vector<int> edge_indices;  // sorted
  int min_edge_id = 0;
};

struct Resolution {
  std::vector<int> choice;          // v in {0,1}^n
  std::vector<Circle> circles;      // canonical order: ascending min edge id
  std::vector<int> circle_of_edge;  // per edge index
  int l() const { return (int)circles.size(); }

  // basepoint placement, filled by locate_points
  std::vector<int> circle_of_point;              // per point
  std::vector<std::vector<int>> points_on_circle;  // cyclic order along orientation
};

Resolution resolve(const LinkDiagram& d, const std::vector<int>& v,
                   const Coloring& col);
void locate_points(const LinkDiagram& d, Resolution& r, const BasepointSet& pts);

struct SaddleInfo {
  bool is_merge = false;   // circles of L_u merge in L_v; else split
  int crossing = -1;       // the flipped coordinate
  int sign_s = 0;          // s_{u,v} = sum_{i<flip} v_i mod 2
  // circle indices: merge (cu1, cu2) -> cv;  split cu -> (cv1, cv2)
  int u_circles[2] = {-1, -1};
  int v_circles[2] = {-1, -1};
  // untouched circles: u circle index -> v circle index
  std::vector<int> carry;  // size l_u, merged/split entries also filled
};

SaddleInfo classify_edge(const LinkDiagram& d, const Resolution& ru,
                         const Resolution& rv);

// component and pointedness data of the link itself
struct ComponentInfo {
  int count = 0;
  std::vector<int> points_per_component;
  bool nondegenerate = false;
  std::vector<std::vector<int>> linking;  // pairwise linking numbers
};

ComponentInfo component_info(const LinkDiagram& d, const BasepointSet& pts);

// vertex helpers
std::vector<int> vertex_bits(int mask, int n);
inline int vertex_weight(int mask) { return __builtin_popcount((unsigned)mask); }

}  // namespace pkh

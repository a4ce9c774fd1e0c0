#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace midsub {

using VertexId = std::int32_t;
using HalfEdgeId = std::int32_t;
using FaceId = std::int32_t;
constexpr std::int32_t kInvalidId = -1;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

// Half-edge mesh for quad-dominant manifold meshes with boundary.
// Each half-edge stores origin vertex, left face, next-in-face-loop, and twin
// (kInvalidId on the boundary). Face loops are counterclockwise.
class QuadMesh {
public:
    struct HalfEdge {
        VertexId origin = kInvalidId;
        HalfEdgeId twin = kInvalidId;
        HalfEdgeId next = kInvalidId;
        HalfEdgeId prev = kInvalidId;
        FaceId face = kInvalidId;
    };

    QuadMesh() = default;

    // Builds from polygon soup. Throws Error(NonManifold) listing offending
    // edges when an oriented edge is used twice.
    static QuadMesh build(std::vector<Vec3> positions,
                          const std::vector<std::vector<VertexId>>& faces,
                          int dim = 3);

    int dim() const { return dim_; }
    void set_dim(int d) { dim_ = d; }

    std::size_t vertex_count() const { return positions_.size(); }
    std::size_t face_count() const { return face_halfedge_.size(); }
    std::size_t halfedge_count() const { return halfedges_.size(); }

    const Vec3& position(VertexId v) const { return positions_[v]; }
    Vec3& position(VertexId v) { return positions_[v]; }
    const std::vector<Vec3>& positions() const { return positions_; }

    const HalfEdge& he(HalfEdgeId h) const { return halfedges_[h]; }
    HalfEdgeId face_halfedge(FaceId f) const { return face_halfedge_[f]; }
    HalfEdgeId vertex_halfedge(VertexId v) const { return vertex_halfedge_[v]; }

    VertexId origin(HalfEdgeId h) const { return halfedges_[h].origin; }
    VertexId target(HalfEdgeId h) const { return halfedges_[halfedges_[h].next].origin; }
    HalfEdgeId twin(HalfEdgeId h) const { return halfedges_[h].twin; }
    HalfEdgeId next(HalfEdgeId h) const { return halfedges_[h].next; }
    HalfEdgeId prev(HalfEdgeId h) const { return halfedges_[h].prev; }
    FaceId face(HalfEdgeId h) const { return halfedges_[h].face; }

    bool is_boundary_he(HalfEdgeId h) const { return halfedges_[h].twin == kInvalidId; }

    // A vertex is interior when its incident faces form a closed fan.
    bool is_interior_vertex(VertexId v) const { return !boundary_vertex_[v]; }

    // Number of edges incident to v (counts boundary edges once).
    int vertex_valence(VertexId v) const;
    int face_valence(FaceId f) const;

    std::vector<VertexId> face_vertices(FaceId f) const;
    std::vector<HalfEdgeId> face_halfedges(FaceId f) const;

    // Outgoing half-edges in counterclockwise order. For boundary vertices the
    // fan starts at the boundary half-edge.
    std::vector<HalfEdgeId> outgoing(VertexId v) const;

    // One representative per undirected edge (the half-edge with the smaller id
    // of the twin pair, or the lone boundary half-edge).
    std::vector<HalfEdgeId> edges() const;
    bool is_interior_edge(HalfEdgeId h) const { return halfedges_[h].twin != kInvalidId; }

    HalfEdgeId find_halfedge(VertexId from, VertexId to) const;

    Vec3 face_centroid(FaceId f) const;
    Vec3 edge_midpoint(HalfEdgeId h) const;

    // Interior extraordinary elements (valence != 4).
    std::vector<VertexId> extraordinary_vertices() const;
    std::vector<FaceId> extraordinary_faces() const;

    double bbox_diameter() const;

    void check_positions_finite() const;

private:
    std::vector<Vec3> positions_;
    std::vector<HalfEdge> halfedges_;
    std::vector<HalfEdgeId> face_halfedge_;
    std::vector<HalfEdgeId> vertex_halfedge_;
    std::vector<char> boundary_vertex_;
    int dim_ = 3;
};

// OBJ I/O (ASCII `v`/`f` records; everything else ignored with a warning list).
struct ObjReadResult {
    QuadMesh mesh;
    std::vector<std::string> warnings;
};

ObjReadResult read_obj(const std::string& path);
void write_obj(const QuadMesh& mesh, const std::string& path);

} // namespace midsub

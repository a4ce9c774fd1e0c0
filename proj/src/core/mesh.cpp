#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace midsub {

QuadMesh QuadMesh::build(std::vector<Vec3> positions,
                         const std::vector<std::vector<VertexId>>& faces,
                         int dim) {
    QuadMesh m;
    m.positions_ = std::move(positions);
    m.dim_ = dim;
    m.vertex_halfedge_.assign(m.positions_.size(), kInvalidId);

    std::map<std::pair<VertexId, VertexId>, HalfEdgeId> edge_map;
    std::vector<std::pair<VertexId, VertexId>> offending;

    for (FaceId f = 0; f < (FaceId)faces.size(); ++f) {
        const auto& loop = faces[f];
        if (loop.size() < 3)
            fail(ErrorKind::InvalidParameter,
                 "face " + std::to_string(f) + " has fewer than 3 vertices");
        HalfEdgeId base = (HalfEdgeId)m.halfedges_.size();
        int n = (int)loop.size();
        for (int k = 0; k < n; ++k) {
            VertexId a = loop[k];
            VertexId b = loop[(k + 1) % n];
            if (a < 0 || b < 0 || a >= (VertexId)m.positions_.size() ||
                b >= (VertexId)m.positions_.size())
                fail(ErrorKind::InvalidParameter, "face references missing vertex");
            if (a == b)
                fail(ErrorKind::NonManifold, "degenerate edge in face " + std::to_string(f));
            HalfEdge he;
            he.origin = a;
            he.face = f;
            he.next = base + (k + 1) % n;
            he.prev = base + (k + n - 1) % n;
            HalfEdgeId id = base + k;
            auto key = std::make_pair(a, b);
            if (edge_map.count(key)) {
                offending.push_back(key);
            } else {
                edge_map[key] = id;
            }
            m.halfedges_.push_back(he);
            if (m.vertex_halfedge_[a] == kInvalidId) m.vertex_halfedge_[a] = id;
        }
        m.face_halfedge_.push_back(base);
    }

    if (!offending.empty()) {
        std::string msg = "non-manifold mesh; oriented edges used twice:";
        for (auto& e : offending)
            msg += " (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
        fail(ErrorKind::NonManifold, msg);
    }

    for (auto& [key, id] : edge_map) {
        auto rev = edge_map.find(std::make_pair(key.second, key.first));
        m.halfedges_[id].twin = rev == edge_map.end() ? kInvalidId : rev->second;
    }

    // A vertex is on the boundary when some incident half-edge has no twin.
    m.boundary_vertex_.assign(m.positions_.size(), 0);
    for (HalfEdgeId h = 0; h < (HalfEdgeId)m.halfedges_.size(); ++h) {
        if (m.halfedges_[h].twin == kInvalidId) {
            m.boundary_vertex_[m.halfedges_[h].origin] = 1;
            m.boundary_vertex_[m.target(h)] = 1;
        }
    }

    // Vertices with no incident face at all count as boundary (isolated).
    for (VertexId v = 0; v < (VertexId)m.positions_.size(); ++v)
        if (m.vertex_halfedge_[v] == kInvalidId) m.boundary_vertex_[v] = 1;

    // Manifoldness around vertices: the fan walk must reach every outgoing
    // half-edge exactly once; a shortfall means two face wedges meet only at
    // the vertex (bowtie).
    std::vector<int> out_count(m.positions_.size(), 0);
    for (const auto& he : m.halfedges_) out_count[he.origin]++;
    for (VertexId v = 0; v < (VertexId)m.positions_.size(); ++v) {
        if (m.vertex_halfedge_[v] == kInvalidId) continue;
        if ((int)m.outgoing(v).size() != out_count[v])
            fail(ErrorKind::NonManifold,
                 "vertex " + std::to_string(v) + " joins disconnected face fans");
    }

    return m;
}

int QuadMesh::vertex_valence(VertexId v) const {
    auto out = outgoing(v);
    int valence = (int)out.size();
    // A boundary vertex has one more incident edge than outgoing interior
    // half-edges reached by the fan walk ends at a boundary: count the closing
    // boundary edge of the fan.
    if (!out.empty() && is_boundary_he(prev(out.back())))
        valence += 1;
    return valence;
}

int QuadMesh::face_valence(FaceId f) const {
    return (int)face_vertices(f).size();
}

std::vector<VertexId> QuadMesh::face_vertices(FaceId f) const {
    std::vector<VertexId> out;
    HalfEdgeId h0 = face_halfedge_[f];
    HalfEdgeId h = h0;
    do {
        out.push_back(halfedges_[h].origin);
        h = halfedges_[h].next;
    } while (h != h0);
    return out;
}

std::vector<HalfEdgeId> QuadMesh::face_halfedges(FaceId f) const {
    std::vector<HalfEdgeId> out;
    HalfEdgeId h0 = face_halfedge_[f];
    HalfEdgeId h = h0;
    do {
        out.push_back(h);
        h = halfedges_[h].next;
    } while (h != h0);
    return out;
}

std::vector<HalfEdgeId> QuadMesh::outgoing(VertexId v) const {
    std::vector<HalfEdgeId> out;
    HalfEdgeId start = vertex_halfedge_[v];
    if (start == kInvalidId) return out;

    // With CCW face loops, twin(prev(h)) rotates counterclockwise around the
    // origin of h and next(twin(h)) rotates clockwise. Rewind CCW until the
    // fan closes (interior) or hits the boundary, then collect clockwise and
    // flip, so boundary fans come out CCW starting at the clockwise-most edge.
    HalfEdgeId h = start;
    std::size_t guard = 0;
    while (true) {
        HalfEdgeId pt = halfedges_[halfedges_[h].prev].twin;
        if (pt == kInvalidId) break;
        h = pt;
        if (h == start) break;
        if (++guard > halfedges_.size())
            fail(ErrorKind::NonManifold,
                 "vertex " + std::to_string(v) + " has a non-manifold fan");
    }

    HalfEdgeId ccw_most = h;
    guard = 0;
    do {
        out.push_back(h);
        HalfEdgeId t = halfedges_[h].twin;
        if (t == kInvalidId) break;
        h = halfedges_[t].next;
        if (++guard > halfedges_.size())
            fail(ErrorKind::NonManifold,
                 "vertex " + std::to_string(v) + " has a non-manifold fan");
    } while (h != ccw_most);

    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<HalfEdgeId> QuadMesh::edges() const {
    std::vector<HalfEdgeId> out;
    for (HalfEdgeId h = 0; h < (HalfEdgeId)halfedges_.size(); ++h) {
        HalfEdgeId t = halfedges_[h].twin;
        if (t == kInvalidId || h < t) out.push_back(h);
    }
    return out;
}

HalfEdgeId QuadMesh::find_halfedge(VertexId from, VertexId to) const {
    for (HalfEdgeId h : outgoing(from))
        if (target(h) == to) return h;
    return kInvalidId;
}

Vec3 QuadMesh::face_centroid(FaceId f) const {
    Vec3 c;
    auto verts = face_vertices(f);
    for (VertexId v : verts) c = c + positions_[v];
    return c * (1.0 / (double)verts.size());
}

Vec3 QuadMesh::edge_midpoint(HalfEdgeId h) const {
    return (positions_[origin(h)] + positions_[target(h)]) * 0.5;
}

std::vector<VertexId> QuadMesh::extraordinary_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < (VertexId)positions_.size(); ++v)
        if (is_interior_vertex(v) && vertex_valence(v) != 4) out.push_back(v);
    return out;
}

std::vector<FaceId> QuadMesh::extraordinary_faces() const {
    std::vector<FaceId> out;
    for (FaceId f = 0; f < (FaceId)face_halfedge_.size(); ++f)
        if (face_valence(f) != 4) out.push_back(f);
    return out;
}

double QuadMesh::bbox_diameter() const {
    if (positions_.empty()) return 0.0;
    Vec3 lo = positions_[0], hi = positions_[0];
    for (const auto& p : positions_) {
        lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
        lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
        lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
    }
    Vec3 d = hi - lo;
    return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

void QuadMesh::check_positions_finite() const {
    for (const auto& p : positions_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            fail(ErrorKind::InvalidParameter, "mesh has non-finite positions");
}

ObjReadResult read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);

    std::vector<Vec3> positions;
    std::vector<std::vector<VertexId>> faces;
    std::vector<std::string> warnings;
    bool any_z = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag.empty() || tag[0] == '#') continue;
        if (tag == "v") {
            double x, y, z = 0.0;
            if (!(ss >> x >> y)) fail(ErrorKind::Io, "bad vertex at line " + std::to_string(lineno));
            ss >> z;
            if (z != 0.0) any_z = true;
            positions.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<VertexId> loop;
            std::string item;
            while (ss >> item) {
                // OBJ allows v/vt/vn references; keep the vertex index only.
                std::size_t slash = item.find('/');
                if (slash != std::string::npos) item = item.substr(0, slash);
                long idx = std::strtol(item.c_str(), nullptr, 10);
                if (idx < 0) idx = (long)positions.size() + idx + 1;
                if (idx <= 0 || idx > (long)positions.size())
                    fail(ErrorKind::Io, "face index out of range at line " + std::to_string(lineno));
                loop.push_back((VertexId)(idx - 1));
            }
            if (loop.size() < 3)
                fail(ErrorKind::Io, "face with fewer than 3 vertices at line " + std::to_string(lineno));
            faces.push_back(std::move(loop));
        } else {
            warnings.push_back("ignored OBJ record '" + tag + "' at line " + std::to_string(lineno));
        }
    }

    for (const auto& p : positions)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            fail(ErrorKind::Io, "non-finite position in " + path);

    ObjReadResult r{QuadMesh::build(std::move(positions), faces, any_z ? 3 : 2),
                    std::move(warnings)};
    return r;
}

void write_obj(const QuadMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
    char buf[128];
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3& p = mesh.position((VertexId)v);
        // Analysis meshes are 2D; they export as z = 0.
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
        out << buf;
    }
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        out << "f";
        for (VertexId v : mesh.face_vertices((FaceId)f)) out << ' ' << (v + 1);
        out << '\n';
    }
    if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

} // namespace midsub

#include "ringnet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace midsub {

namespace {

std::complex<double> spoke_dir(int l, int f, int m) {
    double phi = 2.0 * std::numbers::pi * f / m;
    return std::polar(1.0, l * phi);
}

// Straight continuation through an interior valence-4 vertex: arriving along
// h (pointing into v), leave through the outgoing edge opposite to h.
HalfEdgeId straight_through(const QuadMesh& mesh, HalfEdgeId h) {
    VertexId v = mesh.target(h);
    if (!mesh.is_interior_vertex(v)) return kInvalidId;
    auto out = mesh.outgoing(v);
    if (out.size() != 4) return kInvalidId;
    HalfEdgeId back = mesh.twin(h);
    for (int k = 0; k < 4; ++k)
        if (out[k] == back) return out[(k + 2) % 4];
    return kInvalidId;
}

} // namespace

std::tuple<int, int, int> Ringnet::canonical(int i, int j, int l) const {
    int m = valence;
    l = ((l % m) + m) % m;
    if (orientation == Orientation::Primal) {
        if (i == 0 && j == 0) return {0, 0, 0};
        if (i == 0) return {j, 0, (l + 1) % m};  // left column = next spoke
    }
    return {i, j, l};
}

void Ringnet::insert_index(VertexId v, int i, int j, int l) {
    auto key = canonical(i, j, l);
    auto it = lookup_.find(key);
    if (it != lookup_.end()) {
        if (it->second != v)
            fail(ErrorKind::Internal, "ringnet indexing collision");
        return;
    }
    lookup_[key] = v;
    index_[v] = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
}

VertexId Ringnet::at(int i, int j, int l) const {
    auto it = lookup_.find(canonical(i, j, l));
    return it == lookup_.end() ? kInvalidId : it->second;
}

double Ringnet::segment_angle() const {
    return 2.0 * std::numbers::pi * frequency / valence;
}

Ringnet Ringnet::grid(int m, int f, int depth, Orientation kind) {
    if (m < 3) fail(ErrorKind::InvalidParameter, "grid mesh needs valence >= 3");
    if (f < 1 || f >= m)
        fail(ErrorKind::InvalidParameter, "grid mesh frequency must lie in 1..m-1");
    if (depth < 1) fail(ErrorKind::InvalidParameter, "grid mesh needs depth >= 1");

    Ringnet net;
    net.valence = m;
    net.frequency = f;
    net.orientation = kind;

    auto g = [&](int i, int j, int l) {
        std::complex<double> z =
            double(i) * spoke_dir(l, f, m) + double(j) * spoke_dir(l + 1, f, m);
        return z;
    };

    std::vector<Vec3> pos;
    std::map<std::tuple<int, int, int>, VertexId> ids;
    std::vector<std::tuple<int, int, int>> keys;

    if (kind == Orientation::Primal) {
        auto canon = [&](int i, int j, int l) -> std::tuple<int, int, int> {
            l = ((l % m) + m) % m;
            if (i == 0 && j == 0) return {0, 0, 0};
            if (i == 0) return {j, 0, (l + 1) % m};
            return {i, j, l};
        };
        auto add = [&](int i, int j, int l) {
            auto key = canon(i, j, l);
            if (ids.count(key)) return ids[key];
            auto [ci, cj, cl] = key;
            std::complex<double> z = g(ci, cj, cl);
            ids[key] = (VertexId)pos.size();
            keys.push_back(key);
            pos.emplace_back(z.real(), z.imag(), 0.0);
            return ids[key];
        };
        add(0, 0, 0);
        for (int l = 0; l < m; ++l)
            for (int i = 0; i <= depth; ++i)
                for (int j = 0; j <= depth; ++j)
                    if (std::max(i, j) <= depth && (i + j) > 0) add(i, j, l);

        std::vector<std::vector<VertexId>> faces;
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < depth; ++i)
                for (int j = 0; j < depth; ++j)
                    faces.push_back({add(i, j, l), add(i + 1, j, l),
                                     add(i + 1, j + 1, l), add(i, j + 1, l)});

        net.mesh = QuadMesh::build(std::move(pos), faces, 2);
        net.center = Center::vertex(ids[{0, 0, 0}]);
        net.index_.assign(net.mesh.vertex_count(), SegIdx{});
        net.ring_.assign(net.mesh.vertex_count(), -1);
        for (auto& [key, v] : ids) {
            auto [i, j, l] = key;
            net.lookup_[key] = v;
            net.index_[v] = {i, j, l};
        }
    } else {
        // Dual grid mesh: vertices h^l_ij, i,j >= 1; the center m-gon, the
        // in-segment quads, and the cross-spoke quads.
        auto add = [&](int i, int j, int l) {
            l = ((l % m) + m) % m;
            auto key = std::make_tuple(i, j, l);
            if (ids.count(key)) return ids[key];
            std::complex<double> z =
                0.25 * (g(i - 1, j - 1, l) + g(i, j - 1, l) + g(i - 1, j, l) + g(i, j, l));
            ids[key] = (VertexId)pos.size();
            keys.push_back(key);
            pos.emplace_back(z.real(), z.imag(), 0.0);
            return ids[key];
        };
        for (int l = 0; l < m; ++l)
            for (int i = 1; i <= depth + 1; ++i)
                for (int j = 1; j <= depth + 1; ++j)
                    if (std::max(i, j) <= depth + 1) add(i, j, l);

        std::vector<std::vector<VertexId>> faces;
        std::vector<VertexId> mgon;
        for (int l = 0; l < m; ++l) mgon.push_back(add(1, 1, l));
        faces.push_back(mgon);
        FaceId center_face = 0;
        for (int l = 0; l < m; ++l) {
            for (int i = 1; i <= depth; ++i)
                for (int j = 1; j <= depth; ++j)
                    faces.push_back({add(i, j, l), add(i + 1, j, l),
                                     add(i + 1, j + 1, l), add(i, j + 1, l)});
            for (int i = 1; i <= depth; ++i)
                faces.push_back({add(i + 1, 1, l), add(i, 1, l),
                                 add(1, i, l - 1), add(1, i + 1, l - 1)});
        }

        net.mesh = QuadMesh::build(std::move(pos), faces, 2);
        net.center = Center::face(center_face);
        net.index_.assign(net.mesh.vertex_count(), SegIdx{});
        net.ring_.assign(net.mesh.vertex_count(), -1);
        for (auto& [key, v] : ids) {
            auto [i, j, l] = key;
            net.lookup_[key] = v;
            net.index_[v] = {i, j, l};
        }
    }

    net.compute_rings();
    return net;
}

Center Ringnet::find_center(const QuadMesh& mesh) {
    auto ev = mesh.extraordinary_vertices();
    auto ef = mesh.extraordinary_faces();
    if (ev.size() + ef.size() != 1)
        fail(ErrorKind::InvalidParameter,
             "ringnet needs exactly one extraordinary element, found " +
                 std::to_string(ev.size() + ef.size()));
    return ev.empty() ? Center::face(ef[0]) : Center::vertex(ev[0]);
}

Ringnet Ringnet::analyze(QuadMesh mesh, Center center, int frequency_hint) {
    Ringnet net;
    net.mesh = std::move(mesh);
    net.center = center;
    net.frequency = frequency_hint;
    if (center.kind == Center::Kind::Vertex) {
        net.orientation = Orientation::Primal;
        net.valence = (int)net.mesh.outgoing(center.id).size();
        if (!net.mesh.is_interior_vertex(center.id))
            fail(ErrorKind::InvalidParameter, "center vertex must be interior");
    } else if (center.kind == Center::Kind::Face) {
        net.orientation = Orientation::Dual;
        net.valence = net.mesh.face_valence(center.id);
    } else {
        fail(ErrorKind::InvalidParameter, "ringnet needs a center element");
    }
    if (net.valence < 3)
        fail(ErrorKind::InvalidParameter, "center valence must be >= 3");
    net.index_.assign(net.mesh.vertex_count(), SegIdx{});
    net.ring_.assign(net.mesh.vertex_count(), -1);
    net.unroll();
    net.apply_gauge();
    net.compute_rings();
    return net;
}

void Ringnet::unroll() {
    const QuadMesh& M = mesh;
    int m = valence;

    // Walks a straight line of vertices starting with half-edge h0 and indexes
    // them via emit(step, vertex), step = 1, 2, ...
    auto walk = [&](HalfEdgeId h0, auto&& emit) {
        HalfEdgeId h = h0;
        int step = 1;
        while (h != kInvalidId) {
            VertexId v = M.target(h);
            emit(step, v);
            ++step;
            h = straight_through(M, h);
        }
    };

    if (orientation == Orientation::Primal) {
        VertexId c = center.id;
        insert_index(c, 0, 0, 0);
        auto spokes = M.outgoing(c);
        for (int l = 0; l < m; ++l)
            walk(spokes[l], [&](int i, VertexId v) { insert_index(v, i, 0, l); });

        // Interior fill: vertex (i,j) closes the quad on
        // (i-1,j-1), (i,j-1), (i-1,j).
        for (int l = 0; l < m; ++l) {
            for (int j = 1;; ++j) {
                bool row_any = false;
                for (int i = 1;; ++i) {
                    VertexId a = at(i - 1, j - 1, l);
                    VertexId b = at(i, j - 1, l);
                    VertexId d = at(i - 1, j, l);
                    if (a == kInvalidId || b == kInvalidId) break;
                    HalfEdgeId ab = M.find_halfedge(a, b);
                    if (ab == kInvalidId) break;
                    auto loop = M.face_halfedges(M.face(ab));
                    if (loop.size() != 4) break;
                    VertexId vij = M.target(M.next(ab));
                    VertexId d_check = M.target(M.next(M.next(ab)));
                    if (d != kInvalidId && d != d_check) break;
                    if (d == kInvalidId) {
                        // (i-1, j) was not reachable by columns yet; adopt it.
                        insert_index(d_check, i - 1, j, l);
                    }
                    insert_index(vij, i, j, l);
                    row_any = true;
                }
                if (!row_any) break;
            }
        }
    } else {
        FaceId F = center.id;
        auto loop = M.face_halfedges(F);
        std::vector<VertexId> corners;
        for (HalfEdgeId h : loop) corners.push_back(M.origin(h));
        for (int l = 0; l < m; ++l) insert_index(corners[l], 1, 1, l);

        // From corner l, the outgoing fan (CCW) runs: toward corner l+1 (on
        // the center face), toward corner l-1, toward (2,1,l), toward (1,2,l).
        for (int l = 0; l < m; ++l) {
            VertexId v = corners[l];
            if (!M.is_interior_vertex(v)) continue;
            auto out = M.outgoing(v);
            if (out.size() != 4) continue;  // only valence-4 corners unroll
            int idx = -1;
            for (int k = 0; k < (int)out.size(); ++k)
                if (out[k] == loop[l]) idx = k;
            if (idx < 0) fail(ErrorKind::Internal, "center face loop mismatch");
            HalfEdgeId to_row = out[(idx + 2) % 4];   // toward (2,1,l)
            HalfEdgeId to_col = out[(idx + 3) % 4];   // toward (1,2,l)
            walk(to_row, [&](int s, VertexId w) { insert_index(w, s + 1, 1, l); });
            walk(to_col, [&](int s, VertexId w) { insert_index(w, 1, s + 1, l); });
        }

        for (int l = 0; l < m; ++l) {
            for (int j = 2;; ++j) {
                bool row_any = false;
                for (int i = 2;; ++i) {
                    VertexId a = at(i - 1, j - 1, l);
                    VertexId b = at(i, j - 1, l);
                    VertexId d = at(i - 1, j, l);
                    if (a == kInvalidId || b == kInvalidId) break;
                    HalfEdgeId ab = M.find_halfedge(a, b);
                    if (ab == kInvalidId) break;
                    auto floop = M.face_halfedges(M.face(ab));
                    if (floop.size() != 4) break;
                    VertexId vij = M.target(M.next(ab));
                    VertexId d_check = M.target(M.next(M.next(ab)));
                    if (d != kInvalidId && d != d_check) break;
                    if (d == kInvalidId) insert_index(d_check, i - 1, j, l);
                    insert_index(vij, i, j, l);
                    row_any = true;
                }
                if (!row_any) break;
            }
        }
    }
}

void Ringnet::apply_gauge() {
    // Choose the segment relabeling that puts segment 0 into the plane sector
    // [0, segment angle]. Symmetric nets make this a clear argmax.
    int m = valence;
    double phi = segment_angle();
    double best = -1e300;
    int best_r = 0;
    for (int r = 0; r < m; ++r) {
        double score = 0.0;
        for (VertexId v = 0; v < (VertexId)index_.size(); ++v) {
            if (!index_[v].valid() || index_[v].l != r) continue;
            std::complex<double> z = cpos(v);
            if (std::abs(z) < 1e-300) continue;
            score += std::cos(std::arg(z) - phi / 2.0);
        }
        if (score > best) { best = score; best_r = r; }
    }
    if (best_r == 0) return;

    std::map<std::tuple<int, int, int>, VertexId> relabeled;
    for (auto& [key, v] : lookup_) {
        auto [i, j, l] = key;
        auto nk = canonical(i, j, l - best_r);
        relabeled[nk] = v;
        index_[v] = {std::get<0>(nk), std::get<1>(nk), std::get<2>(nk)};
    }
    lookup_ = std::move(relabeled);
}

void Ringnet::compute_rings() {
    for (VertexId v = 0; v < (VertexId)index_.size(); ++v) {
        if (!index_[v].valid()) { ring_[v] = -1; continue; }
        const SegIdx& s = index_[v];
        ring_[v] = orientation == Orientation::Primal ? std::max(s.i, s.j)
                                                      : s.i + s.j - 2;
    }
}

std::vector<std::vector<VertexId>> Ringnet::rings_by_center() const {
    int maxr = -1;
    for (int r : ring_) maxr = std::max(maxr, r);
    std::vector<std::vector<VertexId>> rings(maxr + 1);
    for (VertexId v = 0; v < (VertexId)ring_.size(); ++v)
        if (ring_[v] >= 0) rings[ring_[v]].push_back(v);

    // Keep complete rings only: 1 + 2km vertices for primal (k >= 1),
    // (k+1)m for dual.
    std::size_t keep = 0;
    for (std::size_t k = 0; k < rings.size(); ++k) {
        std::size_t expect;
        if (orientation == Orientation::Primal)
            expect = k == 0 ? 1 : 2 * k * (std::size_t)valence;
        else
            expect = (k + 1) * (std::size_t)valence;
        if (rings[k].size() != expect) break;
        keep = k + 1;
    }
    rings.resize(keep);
    return rings;
}

bool Ringnet::is_rotation_symmetric(int f, double tol_rel) const {
    if (mesh.dim() != 2)
        fail(ErrorKind::InvalidParameter, "symmetry predicates need planar 2D meshes");
    double tol = tol_rel * std::max(mesh.bbox_diameter(), 1e-30);
    double phi = 2.0 * std::numbers::pi * f / valence;
    std::complex<double> rot = std::polar(1.0, phi);
    for (const auto& [key, v] : lookup_) {
        auto [i, j, l] = key;
        VertexId w = at(i, j, l + 1);
        if (w == kInvalidId) continue;
        if (std::abs(cpos(w) - rot * cpos(v)) > tol) return false;
    }
    return true;
}

bool Ringnet::is_reflection_symmetric(double tol_rel) const {
    if (mesh.dim() != 2)
        fail(ErrorKind::InvalidParameter, "symmetry predicates need planar 2D meshes");
    double tol = tol_rel * std::max(mesh.bbox_diameter(), 1e-30);
    for (const auto& [key, v] : lookup_) {
        auto [i, j, l] = key;
        VertexId w = at(j, i, (valence - 1) - l);
        if (w == kInvalidId) continue;
        if (std::abs(cpos(w) - std::conj(cpos(v))) > tol) return false;
    }
    return true;
}

std::vector<VertexId> Ringnet::indexed_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < (VertexId)index_.size(); ++v)
        if (index_[v].valid()) out.push_back(v);
    return out;
}

std::string Ringnet::dump_indexing_json() const {
    std::ostringstream os;
    os << "{\n  \"schema\": 1,\n  \"valence\": " << valence << ",\n  \"orientation\": \""
       << (orientation == Orientation::Primal ? "primal" : "dual") << "\",\n  \"vertices\": [\n";
    bool first = true;
    for (VertexId v = 0; v < (VertexId)index_.size(); ++v) {
        if (!index_[v].valid()) continue;
        if (!first) os << ",\n";
        first = false;
        os << "    {\"id\": " << v << ", \"i\": " << index_[v].i << ", \"j\": " << index_[v].j
           << ", \"l\": " << index_[v].l << ", \"ring\": " << ring_[v] << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

} // namespace midsub

#include "ops.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace midsub {

namespace {

Vec3 row_position(const SparseRow& row, const QuadMesh& in) {
    Vec3 p;
    for (const auto& [v, w] : row) p = p + in.position(v) * w.to_double();
    return p;
}

// Shared tail: compact to referenced vertices, build the mesh, materialize
// positions from the rows.
OpResult finish(const QuadMesh& in, std::vector<SparseRow> rows,
                std::vector<std::vector<std::int32_t>> faces, Center center_out) {
    std::vector<std::int32_t> remap(rows.size(), kInvalidId);
    for (const auto& loop : faces)
        for (std::int32_t v : loop) remap[v] = 0;

    std::vector<SparseRow> kept_rows;
    std::vector<Vec3> kept_pos;
    for (std::size_t v = 0; v < rows.size(); ++v) {
        if (remap[v] == kInvalidId) continue;
        remap[v] = (std::int32_t)kept_rows.size();
        kept_pos.push_back(row_position(rows[v], in));
        kept_rows.push_back(std::move(rows[v]));
    }
    for (auto& loop : faces)
        for (auto& v : loop) v = remap[v];
    if (center_out.kind == Center::Kind::Vertex) {
        center_out.id = remap[center_out.id];
        if (center_out.id == kInvalidId) center_out = Center::none();
    }

    OpResult r;
    r.mesh = QuadMesh::build(std::move(kept_pos), faces, in.dim());
    r.rows = std::move(kept_rows);
    r.center = center_out;
    return r;
}

} // namespace

OpResult apply_refine(const QuadMesh& in, Center center) {
    std::vector<SparseRow> rows;
    // Old vertices keep their ids.
    for (VertexId v = 0; v < (VertexId)in.vertex_count(); ++v)
        rows.push_back({{v, Rational(1)}});

    // One midpoint per undirected edge.
    std::unordered_map<HalfEdgeId, std::int32_t> edge_vertex;
    for (HalfEdgeId h : in.edges()) {
        VertexId u = in.origin(h), v = in.target(h);
        SparseRow row{{u, Rational(1, 2)}, {v, Rational(1, 2)}};
        std::sort(row.begin(), row.end());
        edge_vertex[h] = (std::int32_t)rows.size();
        rows.push_back(std::move(row));
    }
    auto mid_of = [&](HalfEdgeId h) {
        HalfEdgeId t = in.twin(h);
        auto it = edge_vertex.find(h);
        if (it == edge_vertex.end()) it = edge_vertex.find(t);
        return it->second;
    };

    // One center per face; each n-gon splits into n quads.
    std::vector<std::int32_t> face_vertex(in.face_count());
    std::vector<std::vector<std::int32_t>> faces;
    for (FaceId f = 0; f < (FaceId)in.face_count(); ++f) {
        auto verts = in.face_vertices(f);
        SparseRow row;
        for (VertexId v : verts) row.push_back({v, Rational(1, (std::int64_t)verts.size())});
        std::sort(row.begin(), row.end());
        face_vertex[f] = (std::int32_t)rows.size();
        rows.push_back(std::move(row));
    }
    for (FaceId f = 0; f < (FaceId)in.face_count(); ++f) {
        auto hes = in.face_halfedges(f);
        int n = (int)hes.size();
        for (int k = 0; k < n; ++k) {
            HalfEdgeId h = hes[k];
            HalfEdgeId hp = hes[(k + n - 1) % n];
            faces.push_back({in.origin(h), mid_of(h), face_vertex[f], mid_of(hp)});
        }
    }

    Center out = Center::none();
    if (center.kind == Center::Kind::Vertex) out = Center::vertex(center.id);
    else if (center.kind == Center::Kind::Face) out = Center::vertex(face_vertex[center.id]);
    // R turns the extraordinary face into its center vertex; face-splitting
    // keeps an extraordinary vertex in place either way.
    auto r = finish(in, std::move(rows), std::move(faces), out);
    return r;
}

OpResult apply_average(const QuadMesh& in, Center center) {
    std::vector<SparseRow> rows;
    for (FaceId f = 0; f < (FaceId)in.face_count(); ++f) {
        auto verts = in.face_vertices(f);
        SparseRow row;
        for (VertexId v : verts) row.push_back({v, Rational(1, (std::int64_t)verts.size())});
        std::sort(row.begin(), row.end());
        rows.push_back(std::move(row));
    }

    std::vector<std::vector<std::int32_t>> faces;
    std::vector<FaceId> face_of_vertex(in.vertex_count(), kInvalidId);
    for (VertexId v = 0; v < (VertexId)in.vertex_count(); ++v) {
        if (!in.is_interior_vertex(v)) continue;
        std::vector<std::int32_t> loop;
        for (HalfEdgeId h : in.outgoing(v)) loop.push_back(in.face(h));
        face_of_vertex[v] = (FaceId)faces.size();
        faces.push_back(std::move(loop));
    }

    Center out = Center::none();
    if (center.kind == Center::Kind::Vertex) {
        if (face_of_vertex[center.id] == kInvalidId)
            fail(ErrorKind::Resource, "averaging lost the tracked center vertex (mesh too small)");
        out = Center::face(face_of_vertex[center.id]);
    } else if (center.kind == Center::Kind::Face) {
        out = Center::vertex(center.id);
    }
    return finish(in, std::move(rows), std::move(faces), out);
}

OpResult apply_midedge(const QuadMesh& in, Center center) {
    std::vector<SparseRow> rows;
    std::unordered_map<HalfEdgeId, std::int32_t> edge_vertex;
    for (HalfEdgeId h : in.edges()) {
        VertexId u = in.origin(h), v = in.target(h);
        SparseRow row{{u, Rational(1, 2)}, {v, Rational(1, 2)}};
        std::sort(row.begin(), row.end());
        edge_vertex[h] = (std::int32_t)rows.size();
        rows.push_back(std::move(row));
    }
    auto mid_of = [&](HalfEdgeId h) {
        HalfEdgeId t = in.twin(h);
        auto it = edge_vertex.find(h);
        if (it == edge_vertex.end()) it = edge_vertex.find(t);
        return it->second;
    };

    std::vector<std::vector<std::int32_t>> faces;
    std::vector<FaceId> face_of_face(in.face_count(), kInvalidId);
    for (FaceId f = 0; f < (FaceId)in.face_count(); ++f) {
        std::vector<std::int32_t> loop;
        for (HalfEdgeId h : in.face_halfedges(f)) loop.push_back(mid_of(h));
        face_of_face[f] = (FaceId)faces.size();
        faces.push_back(std::move(loop));
    }
    std::vector<FaceId> face_of_vertex(in.vertex_count(), kInvalidId);
    for (VertexId v = 0; v < (VertexId)in.vertex_count(); ++v) {
        if (!in.is_interior_vertex(v)) continue;
        std::vector<std::int32_t> loop;
        for (HalfEdgeId h : in.outgoing(v)) loop.push_back(mid_of(h));
        face_of_vertex[v] = (FaceId)faces.size();
        faces.push_back(std::move(loop));
    }

    Center out = Center::none();
    if (center.kind == Center::Kind::Vertex) {
        if (face_of_vertex[center.id] == kInvalidId)
            fail(ErrorKind::Resource, "mid-edge lost the tracked center vertex (mesh too small)");
        out = Center::face(face_of_vertex[center.id]);
    } else if (center.kind == Center::Kind::Face) {
        out = Center::face(face_of_face[center.id]);
    }
    return finish(in, std::move(rows), std::move(faces), out);
}

OpResult apply_smooth_b(const QuadMesh& in, const BSpec& spec, Center center) {
    spec.validate();

    std::vector<SparseRow> rows(in.vertex_count());
    std::vector<char> kept(in.vertex_count(), 0);
    for (VertexId v = 0; v < (VertexId)in.vertex_count(); ++v) {
        if (!in.is_interior_vertex(v)) continue;
        auto out_hes = in.outgoing(v);
        int m = (int)out_hes.size();
        Rational alpha = spec.alpha(m), beta = spec.beta(m);
        if (alpha < Rational(0) || beta < Rational(0) ||
            !(Rational(0) < alpha + beta && alpha + beta < Rational(1)))
            fail(ErrorKind::InvalidParameter,
                 "B parameters invalid at valence " + std::to_string(m));

        std::map<VertexId, Rational> acc;
        acc[v] += alpha;
        Rational beta_each = beta / Rational(m);
        Rational gamma_each = (Rational(1) - alpha - beta) / Rational(m);
        for (HalfEdgeId h : out_hes) {
            acc[in.target(h)] += beta_each;
            // Far corners of the incident face: everything but v and its two
            // neighbors inside that face.
            auto fverts = in.face_vertices(in.face(h));
            int n = (int)fverts.size();
            int pos = 0;
            while (fverts[pos] != v) ++pos;
            std::vector<VertexId> far;
            for (int k = 0; k < n; ++k)
                if (k != pos && k != (pos + 1) % n && k != (pos + n - 1) % n)
                    far.push_back(fverts[k]);
            if (far.empty())
                fail(ErrorKind::InvalidParameter,
                     "B smoothing needs faces with at least 4 vertices (valence " +
                         std::to_string(m) + " vertex touches a triangle)");
            Rational each = gamma_each / Rational((std::int64_t)far.size());
            for (VertexId u : far) acc[u] += each;
        }
        SparseRow row(acc.begin(), acc.end());
        rows[v] = std::move(row);
        kept[v] = 1;
    }

    std::vector<std::vector<std::int32_t>> faces;
    FaceId center_face_out = kInvalidId;
    for (FaceId f = 0; f < (FaceId)in.face_count(); ++f) {
        auto verts = in.face_vertices(f);
        bool ok = true;
        for (VertexId v : verts)
            if (!kept[v]) { ok = false; break; }
        if (!ok) continue;
        if (center.kind == Center::Kind::Face && center.id == f)
            center_face_out = (FaceId)faces.size();
        faces.push_back(std::vector<std::int32_t>(verts.begin(), verts.end()));
    }

    std::vector<SparseRow> packed;
    for (VertexId v = 0; v < (VertexId)in.vertex_count(); ++v)
        packed.push_back(kept[v] ? std::move(rows[v]) : SparseRow{{v, Rational(1)}});

    Center out = Center::none();
    if (center.kind == Center::Kind::Vertex) {
        if (!kept[center.id])
            fail(ErrorKind::Resource, "smoothing lost the tracked center vertex (mesh too small)");
        out = Center::vertex(center.id);
    } else if (center.kind == Center::Kind::Face) {
        if (center_face_out == kInvalidId)
            fail(ErrorKind::Resource, "smoothing lost the tracked center face (mesh too small)");
        out = Center::face(center_face_out);
    }
    // finish() drops the un-kept vertices because no face references them.
    return finish(in, std::move(packed), std::move(faces), out);
}

OpResult apply_factor(const QuadMesh& in, const Factor& f, Center center) {
    switch (f.kind) {
        case FactorKind::R: return apply_refine(in, center);
        case FactorKind::A: return apply_average(in, center);
        case FactorKind::V: return apply_midedge(in, center);
        case FactorKind::B: return apply_smooth_b(in, f.b, center);
    }
    fail(ErrorKind::Internal, "unknown factor");
}

std::vector<SparseRow> compose_rows(const std::vector<SparseRow>& rows_after,
                                    const std::vector<SparseRow>& rows_before,
                                    std::size_t input_size) {
    std::vector<SparseRow> out(rows_after.size());
    std::vector<Rational> scratch(input_size);
    std::vector<VertexId> touched;
    for (std::size_t i = 0; i < rows_after.size(); ++i) {
        touched.clear();
        for (const auto& [mid, w] : rows_after[i]) {
            for (const auto& [src, w2] : rows_before[mid]) {
                if (scratch[src].is_zero()) touched.push_back(src);
                scratch[src] += w * w2;
            }
        }
        // Weights are nonnegative, so a slot never passes through zero twice,
        // but dedup anyway to stay safe under future reuse.
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        SparseRow row;
        for (VertexId v : touched) {
            if (!scratch[v].is_zero()) row.push_back({v, scratch[v]});
            scratch[v] = Rational(0);
        }
        out[i] = std::move(row);
    }
    return out;
}

std::optional<Orientation> mesh_orientation(const QuadMesh& mesh) {
    bool extra_vertex = !mesh.extraordinary_vertices().empty();
    bool extra_face = !mesh.extraordinary_faces().empty();
    if (extra_vertex && !extra_face) return Orientation::Primal;
    if (extra_face && !extra_vertex) return Orientation::Dual;
    return std::nullopt;
}

WordApplication apply_word(const QuadMesh& in, const OperatorWord& word, int steps,
                           Center center, bool track_rows) {
    if (steps < 1) fail(ErrorKind::InvalidParameter, "steps must be >= 1");
    WordApplication wa;
    wa.mesh = in;
    wa.center = center;
    if (track_rows) {
        wa.rows.resize(in.vertex_count());
        for (VertexId v = 0; v < (VertexId)in.vertex_count(); ++v)
            wa.rows[v] = {{v, Rational(1)}};
    }
    for (int s = 0; s < steps; ++s) {
        for (auto it = word.factors().rbegin(); it != word.factors().rend(); ++it) {
            std::size_t before_size = wa.mesh.vertex_count();
            OpResult r = apply_factor(wa.mesh, *it, wa.center);
            if (track_rows) wa.rows = compose_rows(r.rows, wa.rows, in.vertex_count());
            (void)before_size;
            wa.mesh = std::move(r.mesh);
            wa.center = r.center;
        }
        auto o = mesh_orientation(wa.mesh);
        wa.per_round_orientation.push_back(o.value_or(word.orientation()));
    }
    return wa;
}

} // namespace midsub

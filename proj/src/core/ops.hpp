#pragma once

#include <vector>

#include "mesh.hpp"
#include "rational.hpp"
#include "word.hpp"

namespace midsub {

// Sparse convex combination of input vertices, sorted by vertex id.
using SparseRow = std::vector<std::pair<VertexId, Rational>>;

struct Center {
    enum class Kind { None, Vertex, Face };
    Kind kind = Kind::None;
    std::int32_t id = kInvalidId;

    static Center none() { return {}; }
    static Center vertex(VertexId v) { return {Kind::Vertex, v}; }
    static Center face(FaceId f) { return {Kind::Face, f}; }
};

// One subdivision factor applied to a mesh. `rows[i]` expresses output vertex
// i as an exact convex combination of input vertices; positions are that
// combination applied to the input positions. Boundary elements without full
// stencil support are dropped.
struct OpResult {
    QuadMesh mesh;
    std::vector<SparseRow> rows;
    Center center;
};

OpResult apply_refine(const QuadMesh& in, Center center = Center::none());
OpResult apply_average(const QuadMesh& in, Center center = Center::none());
OpResult apply_midedge(const QuadMesh& in, Center center = Center::none());
OpResult apply_smooth_b(const QuadMesh& in, const BSpec& spec, Center center = Center::none());

OpResult apply_factor(const QuadMesh& in, const Factor& f, Center center = Center::none());

struct WordApplication {
    QuadMesh mesh;
    Center center;
    // Composed rows of the whole application: output vertex -> combination of
    // the original input vertices. Filled only when track_rows is set.
    std::vector<SparseRow> rows;
    // Orientation recorded after every factor application (primal / dual by
    // census of extraordinary elements; regular meshes report the word's
    // algebraic orientation).
    std::vector<Orientation> per_round_orientation;
};

WordApplication apply_word(const QuadMesh& in, const OperatorWord& word, int steps,
                           Center center = Center::none(), bool track_rows = false);

// rows_after * rows_before as sparse matrices (composition of two factor
// applications).
std::vector<SparseRow> compose_rows(const std::vector<SparseRow>& rows_after,
                                    const std::vector<SparseRow>& rows_before,
                                    std::size_t input_size);

// Orientation of a concrete mesh by census: an interior extraordinary vertex
// makes it primal, an extraordinary face dual. Regular meshes return nullopt.
std::optional<Orientation> mesh_orientation(const QuadMesh& mesh);

} // namespace midsub

#pragma once

#include <complex>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mesh.hpp"
#include "ops.hpp"
#include "word.hpp"

namespace midsub {

// Segment coordinates of a ringnet vertex. Primal nets index vertices as
// g(i,j,l) with i,j >= 0 (center = (0,0,0), spoke-l row = (i,0,l), the i = 0
// column identified with segment l+1); dual nets as h(i,j,l) with i,j >= 1.
struct SegIdx {
    int i = 0, j = 0, l = -1;  // l = -1 means "not indexed"
    bool valid() const { return l >= 0; }
};

// A quad mesh organized around a single center element, with segment indexing
// and ring decomposition. Finite depth; the outermost partial ring is simply
// absent from the index maps, so analyses only ever read indexed vertices.
class Ringnet {
public:
    QuadMesh mesh;
    Center center;
    Orientation orientation = Orientation::Primal;
    int valence = 0;    // m
    int frequency = 1;  // f (grid meshes; retained as a gauge hint otherwise)

    // Grid mesh of valence m and frequency f: primal vertices
    // g^l_ij = i e^(i 2 pi l f / m) + j e^(i 2 pi (l+1) f / m), dual vertices
    // the four-point averages h^l_ij. depth = number of rings.
    static Ringnet grid(int m, int f, int depth, Orientation kind);

    // Unrolls an existing mesh around the given center element and fixes the
    // rotation gauge so segment 0 covers the plane sector [0, segment angle].
    static Ringnet analyze(QuadMesh mesh, Center center, int frequency_hint = 1);

    // Locates the unique interior extraordinary element.
    static Center find_center(const QuadMesh& mesh);

    VertexId at(int i, int j, int l) const;
    const SegIdx& index_of(VertexId v) const { return index_[v]; }
    int ring_of(VertexId v) const { return ring_[v]; }
    bool indexed(VertexId v) const { return index_[v].valid(); }

    std::complex<double> cpos(VertexId v) const {
        return {mesh.position(v).x, mesh.position(v).y};
    }
    double segment_angle() const;

    // Rings N_k around the center; k-th entry lists the vertex ids of ring k.
    // Primal ring k = {max(i,j) = k}; dual ring k = {i + j = k + 2}. Only
    // complete rings are returned (count matches the closed-ring formula).
    std::vector<std::vector<VertexId>> rings_by_center() const;

    // p^{l+1}_{ij} = Rot(2 pi f / m) p^l_{ij} for all indexed vertex pairs.
    bool is_rotation_symmetric(int f, double tol_rel = 1e-9) const;
    // permuted net p~^l_{ij} = p^{(m-1)-l}_{ji} equals the conjugate net.
    bool is_reflection_symmetric(double tol_rel = 1e-9) const;

    // vertex id -> {i, j, l, ring} for every indexed vertex.
    std::string dump_indexing_json() const;

    std::vector<VertexId> indexed_vertices() const;

private:
    std::vector<SegIdx> index_;
    std::vector<int> ring_;
    std::map<std::tuple<int, int, int>, VertexId> lookup_;

    std::tuple<int, int, int> canonical(int i, int j, int l) const;
    void insert_index(VertexId v, int i, int j, int l);
    void unroll();
    void apply_gauge();
    void compute_rings();
};

} // namespace midsub

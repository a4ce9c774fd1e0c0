// Scratch smoke check used during bring-up; superseded by the unit suite.
#include <cassert>
#include <cstdio>
#include <cmath>

#include "../src/core/ringnet.hpp"

using namespace midsub;

int main() {
    // Word basics
    auto w = OperatorWord::parse("A A R");
    assert(w.count_a() == 2 && w.count_r() == 1 && w.count_v() == 0);
    assert(w.valid());
    assert(w.classify().kind == WordClassKind::MidpointClassic);
    auto wv = OperatorWord::parse("V");
    assert(wv.valid());
    auto wr = OperatorWord::parse("R");
    assert(!wr.valid());
    assert(OperatorWord::parse("VAV").classify().kind == WordClassKind::VAVScheme);
    assert(OperatorWord::parse("VRVR").classify().kind == WordClassKind::GeneralMidpoint);
    assert(OperatorWord::parse("VV").classify().kind == WordClassKind::VAVScheme);
    assert(OperatorWord::parse("VAV").orientation() == Orientation::Dual);
    assert(OperatorWord::parse("AVAV").orientation() == Orientation::Primal);
    assert(OperatorWord::parse("RVVR").orientation() == Orientation::Primal);
    assert(OperatorWord::parse("AAR").orientation() == Orientation::Primal);
    assert(OperatorWord::parse("AR").orientation() == Orientation::Dual);

    // Unit square quad -> R
    QuadMesh sq = QuadMesh::build({{0,0},{1,0},{1,1},{0,1}}, {{0,1,2,3}}, 2);
    auto r = apply_refine(sq);
    printf("R(square): %zu verts %zu faces\n", r.mesh.vertex_count(), r.mesh.face_count());
    assert(r.mesh.face_count() == 4);
    assert(r.mesh.vertex_count() == 9);

    auto v = apply_midedge(sq);
    printf("V(square): %zu verts %zu faces\n", v.mesh.vertex_count(), v.mesh.face_count());
    assert(v.mesh.vertex_count() == 4 && v.mesh.face_count() == 1);

    // 3x3 grid -> A -> single quad at face centers
    std::vector<Vec3> g9;
    std::vector<std::vector<VertexId>> f4;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) g9.push_back({(double)i, (double)j});
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            f4.push_back({VertexId(j*3+i), VertexId(j*3+i+1), VertexId(j*3+i+4), VertexId(j*3+i+3)});
    QuadMesh grid = QuadMesh::build(g9, f4, 2);
    auto a = apply_average(grid);
    printf("A(grid3): %zu verts %zu faces\n", a.mesh.vertex_count(), a.mesh.face_count());
    assert(a.mesh.face_count() == 1 && a.mesh.vertex_count() == 4);

    // Grid mesh m=5 f=1
    Ringnet net = Ringnet::grid(5, 1, 3, Orientation::Primal);
    VertexId g10 = net.at(1, 0, 0);
    VertexId g01 = net.at(0, 1, 0);
    assert(g10 != kInvalidId && g01 != kInvalidId);
    printf("g10 = (%g, %g) g01 = (%g, %g)\n",
           net.mesh.position(g10).x, net.mesh.position(g10).y,
           net.mesh.position(g01).x, net.mesh.position(g01).y);
    assert(std::abs(net.mesh.position(g10).x - 1.0) < 1e-12);
    assert(std::abs(net.mesh.position(g01).x - std::cos(2*M_PI/5)) < 1e-12);
    assert(net.is_rotation_symmetric(1));
    assert(net.is_reflection_symmetric());
    auto rings = net.rings_by_center();
    printf("primal rings: %zu sizes:", rings.size());
    for (auto& rg : rings) printf(" %zu", rg.size());
    printf("\n");
    assert(rings.size() == 4 && rings[1].size() == 10 && rings[2].size() == 20);

    // Dual grid m=5: ring 1 must have 10 vertices (the Figure 3 count)
    Ringnet dual = Ringnet::grid(5, 1, 2, Orientation::Dual);
    auto drings = dual.rings_by_center();
    printf("dual rings: %zu sizes:", drings.size());
    for (auto& rg : drings) printf(" %zu", rg.size());
    printf("\n");
    assert(drings[0].size() == 5 && drings[1].size() == 10);
    assert(dual.is_rotation_symmetric(1));
    assert(dual.is_reflection_symmetric());

    // dual h11 = average of g00,g10,g01,g11
    {
        VertexId h11 = dual.at(1, 1, 0);
        std::complex<double> u0 = 1.0, u1 = std::polar(1.0, 2*M_PI/5);
        std::complex<double> expect = 0.25 * (0.0 + u0 + u1 + (u0 + u1));
        assert(std::abs(dual.cpos(h11) - expect) < 1e-12);
    }

    // dual == A(primal) on positions
    {
        Ringnet p = Ringnet::grid(5, 1, 4, Orientation::Primal);
        auto ar = apply_average(p.mesh, p.center);
        assert(ar.center.kind == Center::Kind::Face);
        Ringnet d2 = Ringnet::analyze(ar.mesh, ar.center, 1);
        assert(d2.valence == 5);
        Ringnet dref = Ringnet::grid(5, 1, 3, Orientation::Dual);
        for (auto& [key, vd] : std::map<std::tuple<int,int,int>, VertexId>{}) { (void)key; (void)vd; }
        int compared = 0;
        for (VertexId u = 0; u < (VertexId)dref.mesh.vertex_count(); ++u) {
            auto s = dref.index_of(u);
            VertexId t = d2.at(s.i, s.j, s.l);
            if (t == kInvalidId) continue;
            assert(std::abs(dref.cpos(u) - d2.cpos(t)) < 1e-12);
            ++compared;
        }
        printf("dual-vs-A(primal) compared %d vertices\n", compared);
        assert(compared > 40);
    }

    // Unroll round trip: analyze the grid mesh itself
    {
        Ringnet p = Ringnet::grid(6, 1, 3, Orientation::Primal);
        Ringnet q = Ringnet::analyze(p.mesh, p.center, 1);
        for (VertexId u = 0; u < (VertexId)p.mesh.vertex_count(); ++u) {
            auto s = p.index_of(u);
            assert(q.at(s.i, s.j, s.l) == u);
        }
        printf("primal unroll round-trip ok\n");
    }

    printf("scratch ok\n");
    return 0;
}

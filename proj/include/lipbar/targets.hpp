#pragma once

#include "lipbar/metric_complex.hpp"

namespace lipbar {

// m x n grid on the torus.  Horizontal edges have length l1/m, vertical
// l2/n; each grid square is triangulated by the (i,j)-(i+1,j+1) diagonal,
// whose length is the sum of the two sides, so the diagonal never shortcuts
// the grid metric.
inline MetricComplex flat_torus(int m, int n, const Rat& l1, const Rat& l2) {
    if (m < 3 || n < 3) throw Error(ErrorCode::TooSmall, "flat_torus needs m,n >= 3");
    Rat h = l1 / m, v = l2 / n;
    auto id = [n](int i, int j) { return static_cast<Vertex>(i * n + j); };
    std::vector<MetricEdge> edges;
    std::vector<std::vector<Vertex>> tris;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            int i1 = (i + 1) % m, j1 = (j + 1) % n;
            edges.push_back({id(i, j), id(i1, j), h});
            edges.push_back({id(i, j), id(i, j1), v});
            edges.push_back({id(i, j), id(i1, j1), h + v});
            tris.push_back({id(i, j), id(i1, j), id(i1, j1)});
            tris.push_back({id(i, j), id(i, j1), id(i1, j1)});
        }
    }
    return make_metric_complex(static_cast<size_t>(m) * n, std::move(edges), std::move(tris));
}

// Wedge of two cycles subdivided into k edges each (lengths l1/k, l2/k).
// Vertex 0 is the wedge point.  k = 2 yields parallel strands between the
// same vertex pair; the metric and the mapping-space model only see the
// underlying vertex pairs.
inline MetricComplex figure_eight(const Rat& l1, const Rat& l2, int k) {
    if (k < 2) throw Error(ErrorCode::TooSmall, "figure_eight needs k >= 2");
    std::vector<MetricEdge> edges;
    auto add_loop = [&](Vertex first_internal, const Rat& step) {
        Vertex prev = 0;
        for (int i = 0; i < k - 1; ++i) {
            Vertex cur = first_internal + static_cast<Vertex>(i);
            edges.push_back({prev, cur, step});
            prev = cur;
        }
        edges.push_back({prev, 0, step});
    };
    add_loop(1, l1 / k);
    add_loop(static_cast<Vertex>(k), l2 / k);
    return make_metric_complex(static_cast<size_t>(2 * k - 1), std::move(edges));
}

// Cycle with N vertices, total length `len`.
inline MetricComplex cycle_graph(int n, const Rat& len) {
    if (n < 3) throw Error(ErrorCode::TooSmall, "cycle_graph needs n >= 3");
    std::vector<MetricEdge> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n), len / n});
    return make_metric_complex(static_cast<size_t>(n), std::move(edges));
}

// Unit octahedron: vertices 0 and 5 are poles, 1..4 the equator; all twelve
// edges have length 1, eight triangular faces.
inline MetricComplex octahedron_sphere() {
    std::vector<MetricEdge> edges;
    std::vector<std::vector<Vertex>> tris;
    for (Vertex i = 1; i <= 4; ++i) {
        Vertex j = (i % 4) + 1;
        edges.push_back({0, i, Rat(1)});
        edges.push_back({5, i, Rat(1)});
        edges.push_back({i, j, Rat(1)});
        tris.push_back({0, i, j});
        tris.push_back({5, i, j});
    }
    return make_metric_complex(6, std::move(edges), std::move(tris));
}

// Vertex ids of the bubble_sphere layout.
namespace bubble {
constexpr Vertex octa_first = 0;       // 0..5: octahedron, face {0,1,2} opened
constexpr Vertex funnel_first = 6;     // 6..10: funnel pentagon
constexpr Vertex rim_first = 11;       // 11..15: rim pentagon (the short loop)
constexpr Vertex balloon_first = 16;   // 16..20: balloon pentagon
constexpr Vertex apex = 21;
constexpr size_t vertex_count = 22;
}  // namespace bubble

// Octahedron with one face opened into a funnel that narrows to a pentagonal
// rim of total length `neck`, capped by a wide balloon.  The rim loop is
// nullhomotopic but locally length-minimal: contracting it over either side
// forces loops comparable to the funnel or balloon ring perimeters.
inline MetricComplex bubble_sphere(const Rat& neck) {
    if (neck <= 0) throw Error(ErrorCode::TooSmall, "bubble_sphere needs neck > 0");
    using namespace bubble;
    const Rat rim_edge = neck / 5;
    const Rat funnel_edge(3, 5);    // funnel ring perimeter 3
    const Rat cross_uo(4, 5);       // octahedron face <-> funnel ring
    const Rat cross_ar(3, 5);       // funnel ring <-> rim
    const Rat balloon_edge(7, 10);  // balloon ring perimeter 7/2
    const Rat cross_rb(4, 5);       // rim <-> balloon ring
    const Rat cross_bt(9, 10);      // balloon ring <-> apex

    std::vector<MetricEdge> edges;
    std::vector<std::vector<Vertex>> tris;

    // Octahedron, keeping all edges but omitting the face {0,1,2}.
    for (Vertex i = 1; i <= 4; ++i) {
        Vertex j = (i % 4) + 1;
        edges.push_back({0, i, Rat(1)});
        edges.push_back({5, i, Rat(1)});
        edges.push_back({i, j, Rat(1)});
        tris.push_back({5, i, j});
    }
    // North faces, except {0,1,2} which stays open for the funnel.
    tris.push_back({0, 2, 3});
    tris.push_back({0, 3, 4});
    tris.push_back({0, 4, 1});

    auto ring = [&](Vertex first, const Rat& len) {
        for (int i = 0; i < 5; ++i)
            edges.push_back({first + static_cast<Vertex>(i),
                             first + static_cast<Vertex>((i + 1) % 5), len});
    };
    ring(funnel_first, funnel_edge);
    ring(rim_first, rim_edge);
    ring(balloon_first, balloon_edge);

    // Annulus between the open triangle (0,1,2) and the funnel pentagon:
    // a zigzag of 8 triangles.
    auto a = [&](int i) { return funnel_first + static_cast<Vertex>(i % 5); };
    const Vertex u0 = 0, u1 = 1, u2 = 2;
    auto cross = [&](Vertex p, Vertex q, const Rat& len) { edges.push_back({p, q, len}); };
    cross(u0, a(0), cross_uo);
    cross(u0, a(1), cross_uo);
    cross(u0, a(2), cross_uo);
    cross(u1, a(2), cross_uo);
    cross(u1, a(3), cross_uo);
    cross(u2, a(3), cross_uo);
    cross(u2, a(4), cross_uo);
    cross(u0, a(4), cross_uo);
    tris.push_back({u0, a(0), a(1)});
    tris.push_back({u0, a(1), a(2)});
    tris.push_back({u0, u1, a(2)});
    tris.push_back({u1, a(2), a(3)});
    tris.push_back({u1, u2, a(3)});
    tris.push_back({u2, a(3), a(4)});
    tris.push_back({u0, u2, a(4)});
    tris.push_back({u0, a(4), a(0)});

    // Prism annuli funnel<->rim and rim<->balloon, and the apex cone.
    auto prism = [&](Vertex outer_first, Vertex inner_first, const Rat& len) {
        for (int i = 0; i < 5; ++i) {
            Vertex oi = outer_first + static_cast<Vertex>(i);
            Vertex oi1 = outer_first + static_cast<Vertex>((i + 1) % 5);
            Vertex ri = inner_first + static_cast<Vertex>(i);
            Vertex ri1 = inner_first + static_cast<Vertex>((i + 1) % 5);
            cross(oi, ri, len);
            cross(oi1, ri, len);
            tris.push_back({oi, oi1, ri});
            tris.push_back({oi1, ri, ri1});
        }
    };
    prism(funnel_first, rim_first, cross_ar);
    prism(rim_first, balloon_first, cross_rb);
    for (int i = 0; i < 5; ++i) {
        Vertex bi = balloon_first + static_cast<Vertex>(i);
        Vertex bi1 = balloon_first + static_cast<Vertex>((i + 1) % 5);
        cross(bi, apex, cross_bt);
        tris.push_back({bi, bi1, apex});
    }
    return make_metric_complex(vertex_count, std::move(edges), std::move(tris));
}

// One-point union identifying vertex 0 of both complexes.
inline MetricComplex wedge(const MetricComplex& y1, const MetricComplex& y2) {
    std::vector<MetricEdge> edges = y1.edges;
    auto shift = [&](Vertex v) {
        return v == 0 ? Vertex(0) : static_cast<Vertex>(v + y1.vertex_count - 1);
    };
    for (const auto& e : y2.edges) edges.push_back({shift(e.u), shift(e.v), e.length});
    std::vector<std::vector<Vertex>> simp = y1.simplices;
    for (const auto& s : y2.simplices) {
        std::vector<Vertex> t;
        for (Vertex v : s) t.push_back(shift(v));
        simp.push_back(std::move(t));
    }
    return make_metric_complex(y1.vertex_count + y2.vertex_count - 1, std::move(edges),
                               std::move(simp));
}

}  // namespace lipbar

#pragma once

#include "lipbar/complex.hpp"
#include "lipbar/errors.hpp"
#include "lipbar/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace lipbar {

using Vertex = std::uint32_t;

struct MetricEdge {
    Vertex u, v;
    Rat length;
};

// A finite simplicial complex with positive edge lengths.  The metric is the
// shortest-path metric on the 1-skeleton; dist and the diameter are computed
// exactly at build time.  Simplices are vertex sets closed under faces; the
// generators only produce dimensions <= 2 but the data model accepts more.
class MetricComplex {
public:
    size_t vertex_count = 0;
    std::vector<MetricEdge> edges;
    std::vector<std::vector<Vertex>> simplices;  // dim >= 2 cells as sorted vertex sets
    std::vector<std::vector<Rat>> dist;
    Rat diameter;

    const Rat& d(Vertex a, Vertex b) const { return dist[a][b]; }

    bool has_edge(Vertex a, Vertex b) const {
        return edge_set_.count(key(a, b)) > 0;
    }
    bool has_triangle(Vertex a, Vertex b, Vertex c) const {
        std::array<Vertex, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        return triangle_set_.count(t) > 0;
    }
    // True when the vertex set (sorted, distinct) spans a simplex.
    bool spans_simplex(const std::vector<Vertex>& vs) const {
        if (vs.size() <= 1) return true;
        if (vs.size() == 2) return has_edge(vs[0], vs[1]);
        if (vs.size() == 3) return has_triangle(vs[0], vs[1], vs[2]);
        return higher_set_.count(vs) > 0;
    }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

    Rat mesh() const {
        Rat m(0);
        for (const auto& e : edges) m = std::max(m, e.length);
        return m;
    }

    void finalize() {
        if (vertex_count == 0) throw Error(ErrorCode::BadInput, "empty metric complex");
        adj_.assign(vertex_count, {});
        edge_set_.clear();
        for (const auto& e : edges) {
            if (e.u >= vertex_count || e.v >= vertex_count || e.u == e.v)
                throw Error(ErrorCode::BadInput, "bad edge endpoints");
            if (e.length <= 0) throw Error(ErrorCode::BadInput, "edge length must be positive");
            if (edge_set_.insert(key(e.u, e.v)).second) {
                adj_[e.u].push_back(e.v);
                adj_[e.v].push_back(e.u);
            }
        }
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        triangle_set_.clear();
        higher_set_.clear();
        for (auto& s : simplices) {
            std::sort(s.begin(), s.end());
            if (std::unique(s.begin(), s.end()) != s.end())
                throw Error(ErrorCode::BadInput, "simplex with repeated vertex");
            for (size_t i = 0; i < s.size(); ++i)
                for (size_t j = i + 1; j < s.size(); ++j)
                    if (!has_edge(s[i], s[j]))
                        throw Error(ErrorCode::BadInput, "simplex edge missing from 1-skeleton");
            if (s.size() == 3) {
                triangle_set_.insert({s[0], s[1], s[2]});
            } else if (s.size() > 3) {
                higher_set_.insert(s);
                // Close under 3-element faces so spans_simplex stays correct.
                for (size_t i = 0; i < s.size(); ++i)
                    for (size_t j = i + 1; j < s.size(); ++j)
                        for (size_t k = j + 1; k < s.size(); ++k)
                            triangle_set_.insert({s[i], s[j], s[k]});
            }
        }
        compute_dist();
        validate_metric();
    }

private:
    static std::uint64_t key(Vertex a, Vertex b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    void compute_dist() {
        const Rat INF(-1);
        dist.assign(vertex_count, std::vector<Rat>(vertex_count, INF));
        for (Vertex s = 0; s < vertex_count; ++s) {
            // Dijkstra with exact lengths.
            std::vector<char> done(vertex_count, 0);
            auto& row = dist[s];
            row[s] = 0;
            for (size_t it = 0; it < vertex_count; ++it) {
                int best = -1;
                for (Vertex v = 0; v < vertex_count; ++v)
                    if (!done[v] && row[v] != INF && (best < 0 || row[v] < row[best]))
                        best = static_cast<int>(v);
                if (best < 0) break;
                done[best] = 1;
                for (const auto& e : edges) {
                    Vertex a = e.u, b = e.v;
                    if (a != static_cast<Vertex>(best) && b != static_cast<Vertex>(best)) continue;
                    Vertex other = (a == static_cast<Vertex>(best)) ? b : a;
                    Rat cand = row[best] + e.length;
                    if (row[other] == INF || cand < row[other]) row[other] = cand;
                }
            }
            for (Vertex v = 0; v < vertex_count; ++v)
                if (row[v] == INF)
                    throw Error(ErrorCode::BadInput, "metric complex is not connected");
        }
        diameter = 0;
        for (Vertex a = 0; a < vertex_count; ++a)
            for (Vertex b = 0; b < vertex_count; ++b) diameter = std::max(diameter, dist[a][b]);
    }

    void validate_metric() const {
        for (Vertex a = 0; a < vertex_count; ++a) {
            if (dist[a][a] != 0) throw Error(ErrorCode::BadInput, "nonzero diagonal");
            for (Vertex b = 0; b < vertex_count; ++b) {
                if (dist[a][b] != dist[b][a]) throw Error(ErrorCode::BadInput, "asymmetric dist");
                for (Vertex c = 0; c < vertex_count; ++c)
                    if (dist[a][c] > dist[a][b] + dist[b][c])
                        throw Error(ErrorCode::BadInput, "triangle inequality violated");
            }
        }
    }

    std::vector<std::vector<Vertex>> adj_;
    std::set<std::uint64_t> edge_set_;
    std::set<std::array<Vertex, 3>> triangle_set_;
    std::set<std::vector<Vertex>> higher_set_;
};

inline MetricComplex make_metric_complex(size_t vertices, std::vector<MetricEdge> edges,
                                         std::vector<std::vector<Vertex>> simplices = {}) {
    MetricComplex mc;
    mc.vertex_count = vertices;
    mc.edges = std::move(edges);
    mc.simplices = std::move(simplices);
    mc.finalize();
    return mc;
}

// The underlying chain complex with every cell at filtration 0 (simplices of
// dimension > 2 are included as cells only when their full face lattice is
// present, which generators guarantee for dim <= 2).
inline FilteredComplex filtered_complex_of(const MetricComplex& mc, int field = 2) {
    std::vector<Cell> cells;
    CellId next = 0;
    std::vector<CellId> vcell(mc.vertex_count);
    for (Vertex v = 0; v < mc.vertex_count; ++v) {
        vcell[v] = next;
        cells.push_back(Cell{next++, 0, {}, Rat(0)});
    }
    std::map<std::pair<Vertex, Vertex>, CellId> ecell;
    for (const auto& e : mc.edges) {
        Vertex a = std::min(e.u, e.v), b = std::max(e.u, e.v);
        if (ecell.count({a, b})) continue;
        ecell[{a, b}] = next;
        cells.push_back(Cell{next++, 1, {{vcell[a], -1}, {vcell[b], 1}}, Rat(0)});
    }
    for (const auto& s : mc.simplices) {
        if (s.size() != 3) continue;
        auto eid = [&](Vertex x, Vertex y) {
            if (x > y) std::swap(x, y);
            return ecell.at({x, y});
        };
        cells.push_back(Cell{next++,
                             2,
                             {{eid(s[1], s[2]), 1}, {eid(s[0], s[2]), -1}, {eid(s[0], s[1]), 1}},
                             Rat(0)});
    }
    return build_filtered_complex(std::move(cells), field);
}

// Scales every edge length by c > 0; dist and diameter scale exactly with it.
inline MetricComplex rescale(const MetricComplex& mc, const Rat& c) {
    if (c <= 0) throw Error(ErrorCode::BadInput, "rescale factor must be positive");
    MetricComplex out;
    out.vertex_count = mc.vertex_count;
    out.edges = mc.edges;
    for (auto& e : out.edges) e.length *= c;
    out.simplices = mc.simplices;
    out.finalize();
    return out;
}

}  // namespace lipbar

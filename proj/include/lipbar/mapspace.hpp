#pragma once

#include "lipbar/complex.hpp"
#include "lipbar/metric_complex.hpp"
#include "lipbar/persistence.hpp"
#include "lipbar/targets.hpp"

#include <array>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace lipbar {

enum class Functional { Lip, Length, LogPlusLip };

// A vertex of the discretized mapping space: an assignment of target
// vertices to domain vertices, with its functional value cached.
struct VertexMap {
    std::vector<Vertex> values;
    Rat functional_value;
};

struct MapComplexSpec {
    const MetricComplex* domain = nullptr;
    const MetricComplex* target = nullptr;
    Functional functional = Functional::Lip;
    Rat cap;  // for LogPlusLip the cap is in the Lip (pre-log) scale
    bool based = true;
    Vertex domain_basepoint = 0;
    Vertex target_basepoint = 0;
    std::optional<std::vector<Vertex>> component_seed;
    int top_dim = 2;
    int field_char = 2;
    size_t explosion_limit = 5'000'000;
    int workers = 1;
};

inline size_t explosion_limit_from_env(size_t fallback = 5'000'000) {
    if (const char* s = std::getenv("MAPSPACE_PH_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    }
    return fallback;
}

// Discrete Lipschitz constant: max over domain edges of dist_Y / len_X.
inline Rat lip_of(const std::vector<Vertex>& values, const MetricComplex& domain,
                  const MetricComplex& target) {
    Rat best(0);
    for (const auto& e : domain.edges) {
        Rat r = target.d(values[e.u], values[e.v]) / e.length;
        if (r > best) best = r;
    }
    return best;
}

// Vertex sequence around a cycle-graph domain.
inline std::vector<Vertex> cycle_order(const MetricComplex& domain) {
    for (Vertex v = 0; v < domain.vertex_count; ++v)
        if (domain.neighbors(v).size() != 2)
            throw Error(ErrorCode::FunctionalMismatch,
                        "Length functional requires a cycle-graph domain");
    std::vector<Vertex> order{0};
    Vertex prev = 0, cur = domain.neighbors(0)[0];
    while (cur != 0) {
        order.push_back(cur);
        const auto& nb = domain.neighbors(cur);
        Vertex next = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    if (order.size() != domain.vertex_count)
        throw Error(ErrorCode::FunctionalMismatch, "domain is not a single cycle");
    return order;
}

// Loop length: sum of target distances along the domain cycle.
inline Rat length_of(const std::vector<Vertex>& values, const MetricComplex& domain,
                     const MetricComplex& target) {
    auto order = cycle_order(domain);
    Rat total(0);
    for (size_t i = 0; i < order.size(); ++i)
        total += target.d(values[order[i]], values[order[(i + 1) % order.size()]]);
    return total;
}

namespace detail {

struct MapHash {
    size_t operator()(const std::vector<Vertex>& v) const {
        size_t h = 1469598103934665603ull;
        for (Vertex x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Placement schedule shared by the enumeration DFS and the neighbor DFS.
// Domain vertices are placed in BFS order from the basepoint; per slot we
// precompute the back edges (Lip) or the cycle increments and the frontier
// pair for the admissible length bound (Length).
struct EnumContext {
    const MetricComplex* domain = nullptr;
    const MetricComplex* target = nullptr;
    Functional functional = Functional::Lip;
    Rat cap;
    std::vector<Vertex> place_order;
    std::vector<std::vector<std::pair<Vertex, Rat>>> back_edges;  // per slot (Lip)
    std::vector<std::vector<Vertex>> incr_neighbors;              // per slot (Length)
    std::vector<std::optional<std::pair<Vertex, Vertex>>> frontier;  // per slot (Length)

    void init(const MapComplexSpec& spec) {
        domain = spec.domain;
        target = spec.target;
        functional = spec.functional;
        cap = spec.cap;
        const size_t n = domain->vertex_count;

        place_order.clear();
        std::vector<char> seen(n, 0);
        std::queue<Vertex> q;
        q.push(spec.domain_basepoint);
        seen[spec.domain_basepoint] = 1;
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            place_order.push_back(v);
            for (Vertex w : domain->neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        if (place_order.size() != n)
            throw Error(ErrorCode::BadInput, "domain must be connected");

        std::vector<size_t> slot_of(n);
        for (size_t i = 0; i < n; ++i) slot_of[place_order[i]] = i;

        back_edges.assign(n, {});
        for (const auto& e : domain->edges) {
            size_t su = slot_of[e.u], sv = slot_of[e.v];
            if (su == sv) continue;
            if (su < sv)
                back_edges[sv].push_back({e.u, e.length});
            else
                back_edges[su].push_back({e.v, e.length});
        }

        if (functional == Functional::Length) {
            auto cyc = cycle_order(*domain);
            const size_t N = cyc.size();
            std::vector<size_t> pos_of(n);
            for (size_t i = 0; i < N; ++i) pos_of[cyc[i]] = i;
            incr_neighbors.assign(n, {});
            frontier.assign(n, std::nullopt);
            std::vector<char> placed(n, 0);
            for (size_t s = 0; s < n; ++s) {
                Vertex v = place_order[s];
                size_t p = pos_of[v];
                Vertex left = cyc[(p + N - 1) % N], right = cyc[(p + 1) % N];
                if (placed[left]) incr_neighbors[s].push_back(left);
                if (placed[right]) incr_neighbors[s].push_back(right);
                placed[v] = 1;
                // Ends of the placed arc: placed vertices with an unplaced
                // cycle neighbour.  BFS keeps the placed set a contiguous arc.
                std::optional<Vertex> el, er;
                for (size_t i = 0; i < N; ++i) {
                    if (!placed[cyc[i]]) continue;
                    bool open = !placed[cyc[(i + N - 1) % N]] || !placed[cyc[(i + 1) % N]];
                    if (open) {
                        if (!el)
                            el = cyc[i];
                        else
                            er = cyc[i];
                    }
                }
                if (el) frontier[s] = std::make_pair(*el, er ? *er : *el);
            }
        }
    }

    bool lip_ok(const std::vector<Vertex>& values, size_t slot, Vertex val) const {
        for (const auto& [u, len] : back_edges[slot])
            if (target->d(values[u], val) > cap * len) return false;
        return true;
    }

    // Returns false to prune; otherwise adds the increment to `partial`.
    bool length_ok(const std::vector<Vertex>& values, size_t slot, Vertex val,
                   Rat& partial) const {
        for (Vertex u : incr_neighbors[slot]) partial += target->d(values[u], val);
        if (partial > cap) return false;
        if (frontier[slot]) {
            auto [el, er] = *frontier[slot];
            if (partial + target->d(values[el], values[er]) > cap) return false;
        }
        return true;
    }
};

}  // namespace detail

// Enumerates exactly the vertex maps with functional value <= cap (honoring
// the basepoint pin), each once, sorted lexicographically by values.  When
// workers > 1 the DFS root branches are sharded; the merged, sorted result
// is identical for any worker count.
inline std::vector<VertexMap> enumerate_maps(const MapComplexSpec& spec) {
    detail::EnumContext ctx;
    ctx.init(spec);
    const size_t n = spec.domain->vertex_count;
    const size_t vt = spec.target->vertex_count;
    const size_t limit = spec.explosion_limit;

    auto run_shard = [&](Vertex lo_first, Vertex hi_first) {
        std::vector<VertexMap> out;
        std::vector<Vertex> values(n, 0);
        std::function<void(size_t, Rat)> dfs = [&](size_t slot, Rat partial) {
            if (slot == n) {
                if (out.size() >= limit)
                    throw Error(ErrorCode::Explosion,
                                "enumeration exceeded " + std::to_string(limit) + " maps");
                Rat value = (spec.functional == Functional::Length)
                                ? partial
                                : lip_of(values, *spec.domain, *spec.target);
                out.push_back(VertexMap{values, value});
                return;
            }
            Vertex v = ctx.place_order[slot];
            bool pinned = spec.based && v == spec.domain_basepoint;
            Vertex first = (slot == 0) ? lo_first : 0;
            Vertex last = (slot == 0) ? hi_first : static_cast<Vertex>(vt);
            for (Vertex val = first; val < last; ++val) {
                if (pinned && val != spec.target_basepoint) continue;
                values[v] = val;
                if (spec.functional == Functional::Length) {
                    Rat p2 = partial;
                    if (ctx.length_ok(values, slot, val, p2)) dfs(slot + 1, p2);
                } else {
                    if (ctx.lip_ok(values, slot, val)) dfs(slot + 1, partial);
                }
            }
        };
        dfs(0, Rat(0));
        return out;
    };

    std::vector<VertexMap> out;
    int workers = std::max(1, spec.workers);
    if (workers == 1) {
        out = run_shard(0, static_cast<Vertex>(vt));
    } else {
        std::vector<std::future<std::vector<VertexMap>>> futs;
        size_t chunk = (vt + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            Vertex lo = static_cast<Vertex>(std::min<size_t>(w * chunk, vt));
            Vertex hi = static_cast<Vertex>(std::min<size_t>((w + 1) * chunk, vt));
            if (lo >= hi) continue;
            futs.push_back(std::async(std::launch::async, run_shard, lo, hi));
        }
        for (auto& f : futs) {
            auto part = f.get();
            out.insert(out.end(), part.begin(), part.end());
        }
        if (out.size() > limit) throw Error(ErrorCode::Explosion, "enumeration exceeded limit");
    }
    std::sort(out.begin(), out.end(),
              [](const VertexMap& a, const VertexMap& b) { return a.values < b.values; });
    return out;
}

struct MapComplexData {
    std::vector<VertexMap> maps;
    std::vector<std::pair<CellId, CellId>> edges;   // map-id pairs, i < j
    std::vector<std::array<CellId, 3>> triangles;   // i < j < k
    std::vector<std::array<CellId, 4>> tetrahedra;  // top_dim >= 3 only
    FilteredComplex complex;
};

// Builds the filtered complex of the discretized mapping space: vertices are
// the enumerated maps with filtration = functional value; k+1 maps span a
// k-simplex iff at every domain vertex their values span a simplex of the
// target; simplex filtration = max over members.
inline MapComplexData build_map_complex_data(const MapComplexSpec& spec) {
    MapComplexData data;
    data.maps = enumerate_maps(spec);

    const size_t n_dom = spec.domain->vertex_count;
    const MetricComplex& target = *spec.target;
    const size_t limit = spec.explosion_limit;

    std::unordered_map<std::vector<Vertex>, CellId, detail::MapHash> index;
    index.reserve(data.maps.size() * 2);
    for (CellId i = 0; i < data.maps.size(); ++i) index[data.maps[i].values] = i;

    detail::EnumContext ctx;
    ctx.init(spec);

    // Edges: for each map f, a DFS over pointwise equal-or-adjacent
    // assignments g with g > f lexicographically, pruned by the cap.
    for (CellId i = 0; i < data.maps.size(); ++i) {
        const auto& f = data.maps[i].values;
        std::vector<Vertex> g(n_dom, 0);
        std::function<void(size_t, bool, Rat)> dfs = [&](size_t slot, bool tight, Rat partial) {
            if (slot == n_dom) {
                if (tight) return;  // g == f
                auto it = index.find(g);
                if (it != index.end() && it->second > i) {
                    if (data.edges.size() >= limit)
                        throw Error(ErrorCode::Explosion, "edge generation exceeded limit");
                    data.edges.push_back({i, it->second});
                }
                return;
            }
            Vertex v = ctx.place_order[slot];
            bool pinned = spec.based && v == spec.domain_basepoint;
            auto try_val = [&](Vertex val) {
                if (pinned && val != spec.target_basepoint) return;
                g[v] = val;
                bool t2 = tight && val == f[v];
                if (spec.functional == Functional::Length) {
                    Rat p2 = partial;
                    if (ctx.length_ok(g, slot, val, p2)) dfs(slot + 1, t2, p2);
                } else {
                    if (ctx.lip_ok(g, slot, val)) dfs(slot + 1, t2, partial);
                }
            };
            try_val(f[v]);
            for (Vertex w : target.neighbors(f[v])) try_val(w);
        };
        dfs(0, true, Rat(0));
    }
    std::sort(data.edges.begin(), data.edges.end());

    if (spec.component_seed) {
        auto it = index.find(*spec.component_seed);
        if (it == index.end())
            throw Error(ErrorCode::BadInput, "component seed is not in the enumerated space");
        std::vector<CellId> parent(data.maps.size());
        for (CellId i = 0; i < parent.size(); ++i) parent[i] = i;
        std::function<CellId(CellId)> find = [&](CellId x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto [a, b] : data.edges) parent[find(a)] = find(b);
        CellId root = find(it->second);
        std::vector<CellId> remap(data.maps.size(), UINT32_MAX);
        std::vector<VertexMap> kept;
        for (CellId i = 0; i < data.maps.size(); ++i)
            if (find(i) == root) {
                remap[i] = static_cast<CellId>(kept.size());
                kept.push_back(std::move(data.maps[i]));
            }
        std::vector<std::pair<CellId, CellId>> kept_edges;
        for (auto [a, b] : data.edges)
            if (remap[a] != UINT32_MAX && remap[b] != UINT32_MAX)
                kept_edges.push_back({remap[a], remap[b]});
        data.maps = std::move(kept);
        data.edges = std::move(kept_edges);
    }

    std::vector<std::vector<CellId>> adj(data.maps.size());
    for (auto [a, b] : data.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    auto tuple_spans = [&](std::initializer_list<CellId> ids) {
        std::vector<Vertex> vs;
        for (size_t v = 0; v < n_dom; ++v) {
            vs.clear();
            for (CellId id : ids) vs.push_back(data.maps[id].values[v]);
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            if (!target.spans_simplex(vs)) return false;
        }
        return true;
    };

    if (spec.top_dim >= 2) {
        std::vector<CellId> common;
        for (auto [a, b] : data.edges) {
            common.clear();
            std::set_intersection(adj[a].begin(), adj[a].end(), adj[b].begin(), adj[b].end(),
                                  std::back_inserter(common));
            for (CellId c : common) {
                if (c <= b) continue;
                if (tuple_spans({a, b, c})) {
                    if (data.triangles.size() >= limit)
                        throw Error(ErrorCode::Explosion, "triangle generation exceeded limit");
                    data.triangles.push_back({a, b, c});
                }
            }
        }
    }
    if (spec.top_dim >= 3) {
        std::vector<CellId> ab, common;
        for (const auto& t : data.triangles) {
            ab.clear();
            std::set_intersection(adj[t[0]].begin(), adj[t[0]].end(), adj[t[1]].begin(),
                                  adj[t[1]].end(), std::back_inserter(ab));
            common.clear();
            std::set_intersection(ab.begin(), ab.end(), adj[t[2]].begin(), adj[t[2]].end(),
                                  std::back_inserter(common));
            for (CellId d : common) {
                if (d <= t[2]) continue;
                if (tuple_spans({t[0], t[1], t[2], d}))
                    data.tetrahedra.push_back({t[0], t[1], t[2], d});
            }
        }
    }

    // Assemble the filtered chain complex, with signed simplicial boundaries
    // (reduced mod p by the builder).
    std::vector<Cell> cells;
    cells.reserve(data.maps.size() + data.edges.size() + data.triangles.size() +
                  data.tetrahedra.size());
    auto func_of = [&](CellId m) { return data.maps[m].functional_value; };
    CellId next = 0;
    std::vector<CellId> vcell(data.maps.size());
    for (CellId i = 0; i < data.maps.size(); ++i) {
        vcell[i] = next;
        cells.push_back(Cell{next++, 0, {}, func_of(i)});
    }
    std::map<std::pair<CellId, CellId>, CellId> ecell;
    for (auto [a, b] : data.edges) {
        Rat filt = std::max(func_of(a), func_of(b));
        ecell[{a, b}] = next;
        cells.push_back(Cell{next++, 1, {{vcell[a], -1}, {vcell[b], 1}}, filt});
    }
    auto edge_id = [&](CellId a, CellId b) {
        if (a > b) std::swap(a, b);
        return ecell.at({a, b});
    };
    std::map<std::array<CellId, 3>, CellId> tcell;
    for (const auto& t : data.triangles) {
        Rat filt = std::max({func_of(t[0]), func_of(t[1]), func_of(t[2])});
        tcell[t] = next;
        cells.push_back(Cell{next++,
                             2,
                             {{edge_id(t[1], t[2]), 1}, {edge_id(t[0], t[2]), -1},
                              {edge_id(t[0], t[1]), 1}},
                             filt});
    }
    for (const auto& q : data.tetrahedra) {
        Rat filt = std::max({func_of(q[0]), func_of(q[1]), func_of(q[2]), func_of(q[3])});
        auto tri = [&](CellId x, CellId y, CellId z) { return tcell.at({x, y, z}); };
        cells.push_back(Cell{next++,
                             3,
                             {{tri(q[1], q[2], q[3]), 1},
                              {tri(q[0], q[2], q[3]), -1},
                              {tri(q[0], q[1], q[3]), 1},
                              {tri(q[0], q[1], q[2]), -1}},
                             filt});
    }
    data.complex = build_filtered_complex(std::move(cells), spec.field_char);
    return data;
}

inline FilteredComplex build_map_complex(const MapComplexSpec& spec) {
    return build_map_complex_data(spec).complex;
}

// Headline entry point: persistence of the discretized mapping space.
inline Barcode ph_of_mapspace(const MapComplexSpec& spec, int degree) {
    MapComplexSpec s = spec;
    s.top_dim = std::max(s.top_dim, degree + 1);
    auto data = build_map_complex_data(s);
    return compute_barcode(data.complex, degree);
}

// Components of the sublevel complex at L (union-find on vertices and edges
// with filtration <= L).
inline int count_components(const MapComplexSpec& spec, const Rat& L) {
    MapComplexSpec s = spec;
    s.cap = L;
    s.top_dim = 1;
    auto data = build_map_complex_data(s);
    std::vector<CellId> parent(data.maps.size());
    for (CellId i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<CellId(CellId)> find = [&](CellId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = static_cast<int>(data.maps.size());
    for (auto [a, b] : data.edges)
        if (find(a) != find(b)) {
            parent[find(a)] = find(b);
            --comps;
        }
    return comps;
}

struct ContractionEstimate {
    Rat s_estimate;
    Rat worst_loop_length;
    std::vector<Vertex> worst_loop;
};

// Empirical contraction constant: over all discrete loops of length <=
// maxlen, the least extra length needed to contract them, computed as a
// minimax path (Dijkstra with the length functional as node potential) from
// the constant loops inside the free-loop complex enumerated at cap =
// maxlen + headroom.  Throws NotSimplyConnectedAtScale if some loop of
// length <= maxlen cannot be contracted within that complex.
inline ContractionEstimate estimate_contraction_constant(const MetricComplex& target,
                                                         const Rat& maxlen, int steps = 4,
                                                         std::optional<Rat> headroom = {},
                                                         size_t explosion_limit = 5'000'000) {
    MetricComplex domain = cycle_graph(steps, Rat(steps));
    MapComplexSpec spec;
    spec.domain = &domain;
    spec.target = &target;
    spec.functional = Functional::Length;
    spec.based = false;
    spec.cap = maxlen + (headroom ? *headroom : Rat(2) * target.mesh());
    spec.top_dim = 1;
    spec.explosion_limit = explosion_limit;
    auto data = build_map_complex_data(spec);

    const size_t n = data.maps.size();
    std::vector<std::vector<CellId>> adj(n);
    for (auto [a, b] : data.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    const Rat INF(-1);
    std::vector<Rat> best(n, INF);
    using QE = std::pair<Rat, CellId>;
    auto cmp = [](const QE& a, const QE& b) { return a.first > b.first; };
    std::priority_queue<QE, std::vector<QE>, decltype(cmp)> pq(cmp);
    for (CellId i = 0; i < n; ++i)
        if (data.maps[i].functional_value == 0) {
            best[i] = 0;
            pq.push({Rat(0), i});
        }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (best[v] != INF && d > best[v]) continue;
        for (CellId w : adj[v]) {
            Rat cand = std::max(d, data.maps[w].functional_value);
            if (best[w] == INF || cand < best[w]) {
                best[w] = cand;
                pq.push({cand, w});
            }
        }
    }
    ContractionEstimate est{Rat(0), Rat(0), {}};
    for (CellId i = 0; i < n; ++i) {
        const Rat& len = data.maps[i].functional_value;
        if (len > maxlen) continue;
        if (best[i] == INF)
            throw Error(ErrorCode::NotSimplyConnectedAtScale,
                        "a loop of length " + rat_str(len) + " has no contraction at cap " +
                            rat_str(spec.cap));
        Rat s = best[i] - len;
        if (s > est.s_estimate) {
            est.s_estimate = s;
            est.worst_loop_length = len;
            est.worst_loop = data.maps[i].values;
        }
    }
    return est;
}

// log_+ view of a Lip-scale value, for reporting LogPlusLip barcodes.
inline double log_plus(const Rat& lip) {
    double v = to_double(lip);
    return v <= 1.0 ? 0.0 : std::log(v);
}

}  // namespace lipbar

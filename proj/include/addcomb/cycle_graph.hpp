#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "dissociation.hpp"
#include "setops.hpp"

namespace addcomb {

// Bipartite graph on (A, B) with edge colors drawn from an ordered list
// Lambda: a left vertex with value a joins a right vertex with value b by an
// edge of color lambda exactly when a - b = lambda. Left vertices carry a
// group value; in the k-fold construction that value is the tuple sum
// a_1 + ... + a_{k-2} + a_k and several tuples may share it.
struct ColoredEdge {
    std::uint32_t left = 0;  // index into left_value
    std::uint32_t right = 0; // index into right_value
    std::uint32_t color = 0; // index into lambda
};

struct ColoredBipartiteGraph {
    GroupSpec group;
    std::vector<elem_index> lambda;
    std::vector<elem_index> left_value;
    std::vector<elem_index> right_value;
    std::vector<ColoredEdge> edges;
    std::vector<std::vector<std::uint32_t>> adj_left;  // edge ids per left vertex
    std::vector<std::vector<std::uint32_t>> adj_right; // edge ids per right vertex

    std::size_t left_size() const { return left_value.size(); }
    std::size_t right_size() const { return right_value.size(); }
    std::size_t edge_count() const { return edges.size(); }

    void rebuild_adjacency() {
        adj_left.assign(left_value.size(), {});
        adj_right.assign(right_value.size(), {});
        for (std::uint32_t e = 0; e < edges.size(); ++e) {
            adj_left[edges[e].left].push_back(e);
            adj_right[edges[e].right].push_back(e);
        }
    }
};

namespace detail {

inline void check_color_list(const GroupSpec& g, const std::vector<elem_index>& lambda) {
    std::vector<elem_index> sorted = lambda;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("color list contains duplicates");
    for (const auto l : lambda) g.check_index(l);
}

} // namespace detail

/// Builds the colored graph for (A, B, Lambda) in O(|A| |Lambda|) via
/// membership lookups in B. Edges at any one vertex carry distinct colors.
inline ColoredBipartiteGraph build_graph(const GroupSet& A, const GroupSet& B,
                                         const std::vector<elem_index>& lambda) {
    check_same_group(A.group(), B.group());
    const GroupSpec& g = A.group();
    detail::check_color_list(g, lambda);

    ColoredBipartiteGraph out;
    out.group = g;
    out.lambda = lambda;
    out.left_value = A.elements();
    out.right_value = B.elements();

    std::vector<std::uint32_t> right_pos(g.size(), 0);
    for (std::uint32_t i = 0; i < out.right_value.size(); ++i) right_pos[out.right_value[i]] = i;

    for (std::uint32_t li = 0; li < out.left_value.size(); ++li)
        for (std::uint32_t c = 0; c < lambda.size(); ++c) {
            const elem_index b = g.sub(out.left_value[li], lambda[c]);
            if (B.contains(b)) out.edges.push_back({li, right_pos[b], c});
        }
    out.rebuild_adjacency();
    return out;
}

/// k-fold variant: left vertices are tuples from A_1 x ... x A_{k-2} x A_k
/// (flattened mixed-radix), each carrying its component sum; the right part
/// is B = A_{k-1}. Per right vertex, each color repeats at most
/// |A_1|...|A_{k-2}| times; that bound is verified during construction.
inline ColoredBipartiteGraph build_kfold_graph(const std::vector<GroupSet>& left_sets, const GroupSet& B,
                                               const std::vector<elem_index>& lambda) {
    if (left_sets.empty()) throw std::invalid_argument("build_kfold_graph: no left sets");
    const GroupSpec& g = B.group();
    for (const auto& s : left_sets) check_same_group(s.group(), g);
    detail::check_color_list(g, lambda);

    int128 tuples = 1;
    for (const auto& s : left_sets) {
        tuples *= static_cast<int128>(s.size());
        if (tuples > (int128{1} << 24)) throw capacity_error("build_kfold_graph: tuple space too large");
    }

    ColoredBipartiteGraph out;
    out.group = g;
    out.lambda = lambda;
    out.right_value = B.elements();
    out.left_value.reserve(static_cast<std::size_t>(tuples));

    // Mixed-radix walk over the tuple space, last set fastest.
    std::vector<std::size_t> idx(left_sets.size(), 0);
    bool done = left_sets.empty() || tuples == 0;
    while (!done) {
        elem_index sum = g.zero();
        for (std::size_t i = 0; i < left_sets.size(); ++i) sum = g.add(sum, left_sets[i].elements()[idx[i]]);
        out.left_value.push_back(sum);
        std::size_t i = left_sets.size();
        while (i-- > 0) {
            if (++idx[i] < left_sets[i].size()) break;
            idx[i] = 0;
            if (i == 0) done = true;
        }
    }

    std::vector<std::uint32_t> right_pos(g.size(), 0);
    for (std::uint32_t i = 0; i < out.right_value.size(); ++i) right_pos[out.right_value[i]] = i;

    int128 multiplicity_cap = 1;
    for (std::size_t i = 0; i + 1 < left_sets.size(); ++i) multiplicity_cap *= (int128)left_sets[i].size();
    std::vector<std::int64_t> per_right_color(out.right_value.size() * std::max<std::size_t>(lambda.size(), 1), 0);

    for (std::uint32_t li = 0; li < out.left_value.size(); ++li)
        for (std::uint32_t c = 0; c < lambda.size(); ++c) {
            const elem_index b = g.sub(out.left_value[li], lambda[c]);
            if (B.contains(b)) {
                const std::uint32_t ri = right_pos[b];
                out.edges.push_back({li, ri, c});
                auto& count = per_right_color[static_cast<std::size_t>(ri) * lambda.size() + c];
                if (++count > multiplicity_cap)
                    throw std::logic_error("build_kfold_graph: per-right-vertex color multiplicity bound violated");
            }
        }
    out.rebuild_adjacency();
    return out;
}

// ---------------------------------------------------------------------------
// Minimum-degree peeling. Iteratively deletes vertices below the threshold;
// the fixed point is unique, so alternate deletion orders are test hooks.
// ---------------------------------------------------------------------------

enum class PeelOrder { fifo, lifo };

/// Peels left vertices below d1 and right vertices below d2 until stable.
/// When |E| > (d1-1)|V1| + (d2-1)|V2| the result is nonempty.
inline ColoredBipartiteGraph prune_bipartite(const ColoredBipartiteGraph& graph, int d1, int d2,
                                             PeelOrder order = PeelOrder::fifo) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("prune: degree thresholds must be >= 1");
    std::vector<std::int64_t> deg_left(graph.left_size()), deg_right(graph.right_size());
    for (std::uint32_t v = 0; v < graph.left_size(); ++v) deg_left[v] = graph.adj_left[v].size();
    for (std::uint32_t v = 0; v < graph.right_size(); ++v) deg_right[v] = graph.adj_right[v].size();

    std::vector<std::uint8_t> dead_left(graph.left_size(), 0), dead_right(graph.right_size(), 0);
    std::deque<std::pair<bool, std::uint32_t>> work; // (is_left, vertex)
    for (std::uint32_t v = 0; v < graph.left_size(); ++v)
        if (deg_left[v] < d1) work.emplace_back(true, v);
    for (std::uint32_t v = 0; v < graph.right_size(); ++v)
        if (deg_right[v] < d2) work.emplace_back(false, v);

    while (!work.empty()) {
        auto [is_left, v] = order == PeelOrder::fifo ? work.front() : work.back();
        if (order == PeelOrder::fifo)
            work.pop_front();
        else
            work.pop_back();
        auto& dead = is_left ? dead_left : dead_right;
        if (dead[v]) continue;
        dead[v] = 1;
        const auto& adj = is_left ? graph.adj_left[v] : graph.adj_right[v];
        for (const auto e : adj) {
            const auto& edge = graph.edges[e];
            if (is_left) {
                if (!dead_right[edge.right] && --deg_right[edge.right] < d2) work.emplace_back(false, edge.right);
            } else {
                if (!dead_left[edge.left] && --deg_left[edge.left] < d1) work.emplace_back(true, edge.left);
            }
        }
    }

    ColoredBipartiteGraph out;
    out.group = graph.group;
    out.lambda = graph.lambda;
    std::vector<std::uint32_t> left_map(graph.left_size(), UINT32_MAX), right_map(graph.right_size(), UINT32_MAX);
    for (std::uint32_t v = 0; v < graph.left_size(); ++v)
        if (!dead_left[v]) {
            left_map[v] = static_cast<std::uint32_t>(out.left_value.size());
            out.left_value.push_back(graph.left_value[v]);
        }
    for (std::uint32_t v = 0; v < graph.right_size(); ++v)
        if (!dead_right[v]) {
            right_map[v] = static_cast<std::uint32_t>(out.right_value.size());
            out.right_value.push_back(graph.right_value[v]);
        }
    for (const auto& e : graph.edges)
        if (!dead_left[e.left] && !dead_right[e.right])
            out.edges.push_back({left_map[e.left], right_map[e.right], e.color});
    out.rebuild_adjacency();
    return out;
}

/// Single-threshold peeling (both sides treated alike).
inline ColoredBipartiteGraph prune_min_degree(const ColoredBipartiteGraph& graph, int d,
                                              PeelOrder order = PeelOrder::fifo) {
    return prune_bipartite(graph, d, d, order);
}

// ---------------------------------------------------------------------------
// Special cycles. A cycle is special when some edge's color appears exactly
// once along it; the alternating signed sum of colors around any cycle is
// zero, so a special cycle yields a nontrivial dependency among the colors.
// ---------------------------------------------------------------------------

struct CycleVertex {
    bool left = true;
    std::uint32_t id = 0;

    bool operator==(const CycleVertex& o) const { return left == o.left && id == o.id; }
};

struct SpecialCycle {
    std::vector<CycleVertex> vertices;            // v_0 .. v_{k-1}; edge i joins v_i, v_{i+1 mod k}
    std::vector<std::uint32_t> edge_ids;          // into graph.edges
    std::vector<std::uint32_t> special_positions; // edge positions with a unique color
    std::size_t apex_pos = SIZE_MAX;              // position of the minimum-depth tree vertex, if any

    std::size_t length() const { return edge_ids.size(); }
};

/// Signs of the closed color sum: +1 where the traversal leaves the left
/// side, -1 where it leaves the right side. The signed colors telescope
/// to zero around any closed walk.
inline std::vector<std::int8_t> cycle_signs(const SpecialCycle& cycle) {
    std::vector<std::int8_t> signs(cycle.vertices.size());
    for (std::size_t i = 0; i < cycle.vertices.size(); ++i) signs[i] = cycle.vertices[i].left ? 1 : -1;
    return signs;
}

inline std::vector<std::uint32_t> compute_special_positions(const ColoredBipartiteGraph& graph,
                                                            const std::vector<std::uint32_t>& edge_ids) {
    std::vector<std::uint32_t> count(graph.lambda.size(), 0);
    for (const auto e : edge_ids) ++count[graph.edges[e].color];
    std::vector<std::uint32_t> special;
    for (std::uint32_t i = 0; i < edge_ids.size(); ++i)
        if (count[graph.edges[edge_ids[i]].color] == 1) special.push_back(i);
    return special;
}

/// Structural audit of a cycle; returns human-readable problems (empty when
/// the cycle is a valid special cycle of the graph).
inline std::vector<std::string> validate_special_cycle(const ColoredBipartiteGraph& graph,
                                                       const SpecialCycle& cycle) {
    std::vector<std::string> problems;
    const std::size_t k = cycle.length();
    if (k < 4 || k % 2 != 0) problems.push_back("cycle length must be even and at least 4");
    if (cycle.vertices.size() != k) problems.push_back("vertex count does not match edge count");
    if (!problems.empty()) return problems;

    for (std::size_t i = 0; i < k; ++i) {
        const auto& v = cycle.vertices[i];
        const auto& w = cycle.vertices[(i + 1) % k];
        if (v.left == w.left) problems.push_back("vertices do not alternate sides at position " + std::to_string(i));
        const auto& e = graph.edges[cycle.edge_ids[i]];
        const CycleVertex el{true, e.left}, er{false, e.right};
        const bool matches = (v == el && w == er) || (v == er && w == el);
        if (!matches) problems.push_back("edge at position " + std::to_string(i) + " does not join its endpoints");
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (cycle.vertices[i] == cycle.vertices[j]) {
                problems.push_back("cycle revisits a vertex");
                j = k, i = k;
            }

    elem_index acc = graph.group.zero();
    const auto signs = cycle_signs(cycle);
    for (std::size_t i = 0; i < k; ++i) {
        const elem_index color = graph.lambda[graph.edges[cycle.edge_ids[i]].color];
        acc = signs[i] > 0 ? graph.group.add(acc, color) : graph.group.sub(acc, color);
    }
    if (acc != graph.group.zero()) problems.push_back("signed color sum is nonzero");

    const auto special = compute_special_positions(graph, cycle.edge_ids);
    if (special.empty()) problems.push_back("cycle has no uniquely colored edge");
    if (special != cycle.special_positions) problems.push_back("recorded special positions are stale");

    if (cycle.apex_pos != SIZE_MAX) {
        const auto unique_at = [&](std::size_t pos) {
            return std::find(special.begin(), special.end(), static_cast<std::uint32_t>(pos)) != special.end();
        };
        const std::size_t before = (cycle.apex_pos + k - 1) % k;
        if (!unique_at(cycle.apex_pos) || !unique_at(before))
            problems.push_back("edges at the minimum-depth vertex are not both special");
    }
    return problems;
}

struct CycleSearchStats {
    bool aborted_no_fresh_children = false; // abort: fewer than two fresh-colored children
    int abort_depth = -1;
    bool depth_cap_reached = false;
    int levels_built = 0;
    std::size_t nodes = 0;
};

// Grows a binary tree from the canonical-least left vertex. Every node
// carries the forbidden color set F(v) = colors of v, its ancestors, and
// siblings of ancestors; children are the two fresh-colored neighbors with
// canonical-least colors. A child already in the tree closes a cycle whose
// two edges at the meeting branch point are both uniquely colored.
inline std::optional<SpecialCycle> find_special_cycle(const ColoredBipartiteGraph& graph, int depth_cap = -1,
                                                      CycleSearchStats* stats_out = nullptr) {
    CycleSearchStats stats;
    struct Node {
        CycleVertex vertex;
        int parent = -1;
        std::uint32_t edge_from_parent = 0;
        int depth = 0;
        std::vector<std::uint32_t> forbidden; // color indices
    };

    auto finish = [&](std::optional<SpecialCycle> r) {
        if (stats_out) *stats_out = stats;
        return r;
    };

    if (graph.left_size() == 0 || graph.edge_count() == 0) return finish(std::nullopt);
    if (depth_cap < 0) depth_cap = static_cast<int>(std::ceil(2.0 * std::log2(std::max<double>(2.0, (double)graph.right_size()))));

    std::vector<Node> tree;
    std::vector<int> node_of_left(graph.left_size(), -1), node_of_right(graph.right_size(), -1);
    tree.push_back({{true, 0}, -1, 0, 0, {}});
    node_of_left[0] = 0;
    stats.nodes = 1;

    // Assembles the cycle closed by edge close_e between tree node v (being
    // expanded) and the tree node u that already owns the colliding vertex.
    auto make_cycle = [&](int u, int v, std::uint32_t close_e) {
        auto chain = [&](int n) {
            std::vector<int> path;
            for (; n != -1; n = tree[n].parent) path.push_back(n);
            return path; // node .. root
        };
        std::vector<int> pu = chain(u), pv = chain(v);
        // Drop the shared tail above the meeting point; the last distinct
        // entries in each truncated chain are the children of the apex.
        while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
        }
        const int apex = pu.back() == pv.back() ? pu.back() : -1;
        // pu: u .. apex ; pv: v .. apex. Walk u -> apex -> v, then close.
        SpecialCycle cycle;
        for (std::size_t i = 0; i + 1 < pu.size(); ++i) {
            cycle.vertices.push_back(tree[pu[i]].vertex);
            cycle.edge_ids.push_back(tree[pu[i]].edge_from_parent);
        }
        cycle.vertices.push_back(tree[apex].vertex);
        cycle.apex_pos = cycle.vertices.size() - 1;
        for (std::size_t i = pv.size() - 1; i-- > 0;) {
            cycle.edge_ids.push_back(tree[pv[i]].edge_from_parent);
            cycle.vertices.push_back(tree[pv[i]].vertex);
        }
        cycle.edge_ids.push_back(close_e);
        cycle.special_positions = compute_special_positions(graph, cycle.edge_ids);
        return cycle;
    };

    std::size_t level_begin = 0, level_end = tree.size();
    for (int depth = 0; depth < depth_cap; ++depth) {
        stats.levels_built = depth;
        if (level_begin == level_end) break; // nothing left to expand
        for (std::size_t ni = level_begin; ni < level_end; ++ni) {
            const Node node = tree[ni]; // copy: tree reallocation below
            const auto& adj = node.vertex.left ? graph.adj_left[node.vertex.id] : graph.adj_right[node.vertex.id];

            // Eligible edges: fresh color, one candidate per color, ordered
            // by canonical color value (then by neighbour for determinism).
            struct Candidate {
                elem_index color_value;
                std::uint32_t color;
                std::uint32_t edge;
                std::uint32_t neighbour;
            };
            std::vector<Candidate> eligible;
            for (const auto e : adj) {
                const auto& edge = graph.edges[e];
                if (std::find(node.forbidden.begin(), node.forbidden.end(), edge.color) != node.forbidden.end())
                    continue;
                const std::uint32_t nb = node.vertex.left ? edge.right : edge.left;
                eligible.push_back({graph.lambda[edge.color], edge.color, e, nb});
            }
            std::sort(eligible.begin(), eligible.end(), [](const Candidate& a, const Candidate& b) {
                return a.color_value != b.color_value ? a.color_value < b.color_value : a.neighbour < b.neighbour;
            });
            eligible.erase(std::unique(eligible.begin(), eligible.end(),
                                       [](const Candidate& a, const Candidate& b) {
                                           return a.color_value == b.color_value;
                                       }),
                           eligible.end());

            if (eligible.size() < 2) {
                stats.aborted_no_fresh_children = true;
                stats.abort_depth = depth;
                return finish(std::nullopt);
            }
            const Candidate c1 = eligible[0], c2 = eligible[1];

            auto& node_of_child = node.vertex.left ? node_of_right : node_of_left;
            for (const auto& c : {c1, c2}) {
                if (node_of_child[c.neighbour] != -1)
                    return finish(make_cycle(node_of_child[c.neighbour], static_cast<int>(ni), c.edge));
            }
            for (const auto& c : {c1, c2}) {
                Node child;
                child.vertex = {!node.vertex.left, c.neighbour};
                child.parent = static_cast<int>(ni);
                child.edge_from_parent = c.edge;
                child.depth = node.depth + 1;
                child.forbidden = node.forbidden;
                child.forbidden.push_back(c1.color);
                child.forbidden.push_back(c2.color);
                node_of_child[c.neighbour] = static_cast<int>(tree.size());
                tree.push_back(std::move(child));
                ++stats.nodes;
            }
        }
        level_begin = level_end;
        level_end = tree.size();
    }
    stats.depth_cap_reached = true;
    return finish(std::nullopt);
}

// Integer coefficients over the color base Lambda with zero signed sum;
// refutes strict dissociativity when every |eps| <= 1 and membership in the
// weight-limited family otherwise.
struct DependencyCertificate {
    std::vector<elem_index> base;
    std::vector<int> coeffs;
    int weight = 0;

    bool refutes_strict_dissociativity() const {
        for (const auto c : coeffs)
            if (c > 1 || c < -1) return false;
        return true;
    }
};

inline bool verify_certificate(const GroupSpec& g, const DependencyCertificate& cert) {
    if (cert.base.size() != cert.coeffs.size()) return false;
    elem_index acc = g.zero();
    bool nonzero = false;
    for (std::size_t j = 0; j < cert.base.size(); ++j) {
        nonzero = nonzero || cert.coeffs[j] != 0;
        const int c = cert.coeffs[j];
        for (int r = 0; r < std::abs(c); ++r)
            acc = c > 0 ? g.add(acc, cert.base[j]) : g.sub(acc, cert.base[j]);
    }
    return nonzero && acc == g.zero();
}

/// Folds the alternating signs of a special cycle into per-color integer
/// coefficients. Uniquely colored edges contribute |eps| = 1, so the
/// certificate is nontrivial; the weight never exceeds the cycle length.
inline DependencyCertificate dependency_from_cycle(const ColoredBipartiteGraph& graph, const SpecialCycle& cycle) {
    if (cycle.length() < 4 || cycle.special_positions.empty())
        throw std::invalid_argument("dependency_from_cycle: malformed cycle");
    DependencyCertificate cert;
    cert.base = graph.lambda;
    cert.coeffs.assign(graph.lambda.size(), 0);
    const auto signs = cycle_signs(cycle);
    for (std::size_t i = 0; i < cycle.length(); ++i) cert.coeffs[graph.edges[cycle.edge_ids[i]].color] += signs[i];
    for (const auto c : cert.coeffs) cert.weight += std::abs(c);
    if (!verify_certificate(graph.group, cert))
        throw std::invalid_argument("dependency_from_cycle: cycle does not close in the group");
    return cert;
}

} // namespace addcomb

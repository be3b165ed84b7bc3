#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dismantle/graph.hpp"

namespace dismantle::centrality {

using Scores = std::map<NodeId, double>;

class DegenerateGraphError : public std::runtime_error {
public:
    explicit DegenerateGraphError(const std::string& what) : std::runtime_error(what) {}
};

class OversizeGraphError : public std::runtime_error {
public:
    OversizeGraphError(std::size_t n, std::size_t bound)
        : std::runtime_error("brute-force oracle limited to " + std::to_string(bound) +
                             " nodes, got " + std::to_string(n)) {}
};

// deg(i) / (n-1); undefined on graphs with fewer than two nodes.
inline Scores degree_centrality(const Network& g) {
    const std::size_t n = g.node_count();
    if (n <= 1)
        throw DegenerateGraphError("degree centrality needs at least 2 nodes, got " +
                                   std::to_string(n));
    Scores scores;
    for (const auto& [v, nbrs] : g.adjacency())
        scores[v] = static_cast<double>(nbrs.size()) / static_cast<double>(n - 1);
    return scores;
}

// Brandes accumulation over unordered pairs, endpoints excluded, hop
// distances, no normalization.  Shortest-path counts stay well inside
// double's exact-integer range at the graph sizes this library targets.
inline Scores betweenness_centrality(const Network& g) {
    Scores bc;
    for (const auto& [v, _] : g.adjacency()) bc[v] = 0.0;

    for (const auto& [s, s_nbrs] : g.adjacency()) {
        (void)s_nbrs;
        std::vector<NodeId> stack;
        std::map<NodeId, std::vector<NodeId>> pred;
        std::map<NodeId, double> sigma;
        std::map<NodeId, int> dist;
        for (const auto& [v, _] : g.adjacency()) {
            pred[v];
            sigma[v] = 0.0;
            dist[v] = -1;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<NodeId> queue{s};
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            stack.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if (dist[v] == dist[u] + 1) {
                    sigma[v] += sigma[u];
                    pred[v].push_back(u);
                }
            }
        }
        std::map<NodeId, double> delta;
        for (const auto& [v, _] : g.adjacency()) delta[v] = 0.0;
        while (!stack.empty()) {
            NodeId w = stack.back();
            stack.pop_back();
            for (NodeId u : pred[w])
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    for (auto& [v, score] : bc) score /= 2.0;
    return bc;
}

// Verification oracle: all-pairs BFS path counting composed per
// intermediate node, no dependent accumulation.
inline Scores betweenness_bruteforce(const Network& g, std::size_t bound = 64) {
    const std::size_t n = g.node_count();
    if (n > bound) throw OversizeGraphError(n, bound);

    const std::vector<NodeId> nodes = g.nodes();
    std::map<NodeId, std::map<NodeId, int>> dist;
    std::map<NodeId, std::map<NodeId, double>> sigma;
    for (NodeId s : nodes) {
        std::map<NodeId, int>& d = dist[s];
        std::map<NodeId, double>& sg = sigma[s];
        d[s] = 0;
        sg[s] = 1.0;
        std::deque<NodeId> queue{s};
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (NodeId v : g.neighbors(u)) {
                if (d.count(v) == 0) {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
                if (d[v] == d[u] + 1) sg[v] += sg[u];
            }
        }
    }

    Scores bc;
    for (NodeId v : nodes) bc[v] = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            NodeId h = nodes[a], k = nodes[b];
            if (dist[h].count(k) == 0) continue;
            int dhk = dist[h][k];
            double paths_hk = sigma[h][k];
            for (NodeId i : nodes) {
                if (i == h || i == k) continue;
                if (dist[h].count(i) && dist[i].count(k) &&
                    dist[h][i] + dist[i][k] == dhk)
                    bc[i] += sigma[h][i] * sigma[i][k] / paths_hk;
            }
        }
    }
    return bc;
}

// Component-size numerator over the sum of hop distances to reachable
// nodes; an isolated node scores 0.  Values can exceed 1 by design.
inline Scores closeness_centrality(const Network& g) {
    Scores cl;
    for (const auto& [u, _] : g.adjacency()) {
        DistanceMap dm = bfs_distances(g, u);
        long long total = 0;
        for (const auto& [t, d] : dm.distances) total += d;
        cl[u] = total == 0
                    ? 0.0
                    : static_cast<double>(dm.distances.size()) / static_cast<double>(total);
    }
    return cl;
}

}  // namespace dismantle::centrality

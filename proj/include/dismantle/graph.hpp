#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dismantle/roles.hpp"

namespace dismantle {

using NodeId = std::uint32_t;

class UnknownNodeError : public std::runtime_error {
public:
    explicit UnknownNodeError(NodeId v)
        : std::runtime_error("unknown node " + std::to_string(v)) {}
};

// Undirected simple graph with stable node identities, positive edge
// weights, and an optional role label per node.  Weights are metadata:
// every distance in the library is a hop count.  Copying gives an
// independent snapshot; removal never renumbers survivors.
class Network {
public:
    void add_node(NodeId v) { adj_.try_emplace(v); }

    bool has_node(NodeId v) const { return adj_.count(v) != 0; }

    // Collapses duplicate observations of a pair into one edge, summing
    // the weights.
    void add_edge(NodeId u, NodeId v, double weight = 1.0) {
        if (u == v)
            throw std::invalid_argument("self-loop on node " + std::to_string(u));
        if (weight <= 0.0)
            throw std::invalid_argument("non-positive edge weight");
        add_node(u);
        add_node(v);
        adj_[u].insert(v);
        adj_[v].insert(u);
        weights_[edge_key(u, v)] += weight;
    }

    bool has_edge(NodeId u, NodeId v) const {
        return weights_.count(edge_key(u, v)) != 0;
    }

    double edge_weight(NodeId u, NodeId v) const {
        auto it = weights_.find(edge_key(u, v));
        if (it == weights_.end())
            throw std::invalid_argument("no edge " + std::to_string(u) + "-" + std::to_string(v));
        return it->second;
    }

    void remove_node(NodeId v) {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw UnknownNodeError(v);
        for (NodeId w : it->second) {
            adj_[w].erase(v);
            weights_.erase(edge_key(v, w));
        }
        adj_.erase(it);
        labels_.erase(v);
    }

    std::size_t degree(NodeId v) const { return neighbors(v).size(); }

    const std::set<NodeId>& neighbors(NodeId v) const {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw UnknownNodeError(v);
        return it->second;
    }

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return weights_.size(); }

    std::vector<NodeId> nodes() const {
        std::vector<NodeId> out;
        out.reserve(adj_.size());
        for (const auto& [v, _] : adj_) out.push_back(v);
        return out;
    }

    const std::map<NodeId, std::set<NodeId>>& adjacency() const { return adj_; }

    void set_label(NodeId v, const Role& r) {
        if (!has_node(v)) throw UnknownNodeError(v);
        labels_[v] = r;
    }

    const Role* label(NodeId v) const {
        auto it = labels_.find(v);
        return it == labels_.end() ? nullptr : &it->second;
    }

    const std::map<NodeId, Role>& labels() const { return labels_; }

    std::vector<std::pair<NodeId, NodeId>> edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(weights_.size());
        for (const auto& [key, _] : weights_) out.push_back(key);
        return out;
    }

    bool operator==(const Network& other) const {
        return adj_ == other.adj_ && weights_ == other.weights_ && labels_ == other.labels_;
    }
    bool operator!=(const Network& other) const { return !(*this == other); }

private:
    static std::pair<NodeId, NodeId> edge_key(NodeId u, NodeId v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    }

    std::map<NodeId, std::set<NodeId>> adj_;
    std::map<std::pair<NodeId, NodeId>, double> weights_;
    std::map<NodeId, Role> labels_;
};

struct ComponentPartition {
    std::vector<std::vector<NodeId>> components;
    std::size_t count = 0;
    std::size_t largest_size = 0;
};

// unreachable nodes are absent from distances
struct DistanceMap {
    NodeId source = 0;
    std::map<NodeId, int> distances;
};

inline DistanceMap bfs_distances(const Network& g, NodeId s) {
    if (!g.has_node(s)) throw UnknownNodeError(s);
    DistanceMap out;
    out.source = s;
    out.distances[s] = 0;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        int du = out.distances[u];
        for (NodeId v : g.neighbors(u)) {
            if (out.distances.count(v) == 0) {
                out.distances[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    return out;
}

inline ComponentPartition connected_components(const Network& g) {
    ComponentPartition part;
    std::set<NodeId> seen;
    for (const auto& [s, _] : g.adjacency()) {
        if (seen.count(s)) continue;
        std::vector<NodeId> comp{s};
        seen.insert(s);
        std::deque<NodeId> queue{s};
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (NodeId v : g.neighbors(u)) {
                if (seen.insert(v).second) {
                    comp.push_back(v);
                    queue.push_back(v);
                }
            }
        }
        part.largest_size = std::max(part.largest_size, comp.size());
        part.components.push_back(std::move(comp));
    }
    part.count = part.components.size();
    return part;
}

}  // namespace dismantle

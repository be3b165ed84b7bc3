#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "dismantle/graph.hpp"

namespace testsup {

using dismantle::Network;
using dismantle::NodeId;

inline std::string data_dir() { return DISMANTLE_DATA_DIR; }

inline Network path(std::initializer_list<NodeId> ids) {
    Network g;
    const NodeId* prev = nullptr;
    for (const NodeId& v : ids) {
        g.add_node(v);
        if (prev != nullptr) g.add_edge(*prev, v);
        prev = &v;
    }
    return g;
}

inline Network star(NodeId center, std::initializer_list<NodeId> leaves) {
    Network g;
    g.add_node(center);
    for (NodeId leaf : leaves) g.add_edge(center, leaf);
    return g;
}

inline Network complete(const std::vector<NodeId>& ids) {
    Network g;
    for (NodeId v : ids) g.add_node(v);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) g.add_edge(ids[i], ids[j]);
    return g;
}

// Seeded G(n,p) on node ids 0..n-1; isolated nodes stay in the graph.
inline Network gnp(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Network g;
    for (std::size_t v = 0; v < n; ++v) g.add_node(static_cast<NodeId>(v));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < p) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    }
    return g;
}

}  // namespace testsup

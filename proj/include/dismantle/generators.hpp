#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dismantle/graph.hpp"
#include "dismantle/rng.hpp"

namespace dismantle::generators {

struct BAParams {
    std::size_t n = 100;
    std::size_t m = 2;
    std::uint64_t seed = 0;
};

class MissingRoleError : public std::runtime_error {
public:
    explicit MissingRoleError(const std::string& role)
        : std::runtime_error("no node labeled " + role) {}
};

class RankOutOfBoundsError : public std::runtime_error {
public:
    RankOutOfBoundsError(std::size_t rank, std::size_t n)
        : std::runtime_error("rank " + std::to_string(rank) + " exceeds node count " +
                             std::to_string(n)) {}
};

// 1-based positions that role-labeled nodes occupy in a degree-descending
// ordering (ties by smallest node id).
struct RankProfile {
    std::vector<std::size_t> ranks;
};

// Preferential attachment via the repeated-nodes urn: every edge drops
// both endpoints into the urn, so a draw lands on a node with
// probability proportional to its degree.  Growth starts from m
// isolated nodes; the first arrival draws from an empty urn and falls
// back to a uniform pick among the seeds, which forces it to adopt all
// m of them.  Edge count is therefore exactly m * (n - m).
inline Network barabasi_albert(const BAParams& p) {
    if (p.m < 1 || p.m >= p.n)
        throw std::invalid_argument("need 1 <= m < n, got m=" + std::to_string(p.m) +
                                    " n=" + std::to_string(p.n));

    std::mt19937_64 rng(p.seed);
    Network g;
    for (std::size_t v = 0; v < p.m; ++v) g.add_node(static_cast<NodeId>(v));

    std::vector<NodeId> urn;
    urn.reserve(2 * p.m * (p.n - p.m));
    for (std::size_t v = p.m; v < p.n; ++v) {
        std::set<NodeId> targets;
        while (targets.size() < p.m) {
            NodeId t = urn.empty() ? static_cast<NodeId>(uniform_index(rng, v))
                                   : urn[uniform_index(rng, urn.size())];
            targets.insert(t);
        }
        const NodeId nv = static_cast<NodeId>(v);
        for (NodeId t : targets) {
            g.add_edge(nv, t);
            urn.push_back(nv);
            urn.push_back(t);
        }
    }
    return g;
}

namespace detail {

inline std::vector<NodeId> degree_desc_order(const Network& g) {
    std::vector<NodeId> order = g.nodes();
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        std::size_t da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    return order;
}

}  // namespace detail

inline RankProfile degree_rank_profile(const Network& g, const Role& role) {
    std::vector<NodeId> order = detail::degree_desc_order(g);
    RankProfile profile;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Role* r = g.label(order[i]);
        if (r != nullptr && *r == role) profile.ranks.push_back(i + 1);
    }
    if (profile.ranks.empty()) throw MissingRoleError(role_display_name(role));
    return profile;
}

// Transfers a rank profile onto another graph: whichever nodes occupy
// the profile's positions in this graph's degree order get the role.
inline Network assign_supposed_roles(const Network& g, const RankProfile& profile,
                                     const Role& role) {
    std::vector<NodeId> order = detail::degree_desc_order(g);
    Network out = g;
    for (std::size_t rank : profile.ranks) {
        if (rank < 1 || rank > order.size()) throw RankOutOfBoundsError(rank, order.size());
        out.set_label(order[rank - 1], role);
    }
    return out;
}

}  // namespace dismantle::generators

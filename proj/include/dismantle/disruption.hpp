#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dismantle/centrality.hpp"
#include "dismantle/graph.hpp"
#include "dismantle/rng.hpp"

namespace dismantle::disruption {

// Mean inverse hop distance over ordered pairs; unreachable pairs
// contribute 0, graphs with fewer than two nodes score 0.
inline double global_efficiency(const Network& g) {
    const std::size_t n = g.node_count();
    if (n <= 1) return 0.0;
    double total = 0.0;
    for (const auto& [s, _] : g.adjacency()) {
        DistanceMap dm = bfs_distances(g, s);
        for (const auto& [t, d] : dm.distances) {
            if (t != s) total += 1.0 / static_cast<double>(d);
        }
    }
    return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

enum class StrategyKind {
    degree_attack,
    betweenness_attack,
    closeness_attack,
    random_removal,
    role_attack,
};

// The seven paper strategies: three social-capital attacks, three role
// attacks (caporegime, soldier, associate/entrepreneur), and uniform
// random removal.
struct Strategy {
    StrategyKind kind = StrategyKind::degree_attack;
    std::optional<Role> role_target;        // required iff kind == role_attack
    std::optional<std::uint64_t> seed;      // required iff kind == random_removal
    // Ranking policy for role attacks: false recomputes degrees on the
    // surviving graph each step, true freezes the intact-graph order.
    bool role_rank_fixed = false;

    static Strategy degree() { return {StrategyKind::degree_attack, {}, {}, false}; }
    static Strategy betweenness() { return {StrategyKind::betweenness_attack, {}, {}, false}; }
    static Strategy closeness() { return {StrategyKind::closeness_attack, {}, {}, false}; }
    static Strategy random(std::uint64_t seed) {
        return {StrategyKind::random_removal, {}, seed, false};
    }
    static Strategy role(const Role& target, bool fixed = false) {
        return {StrategyKind::role_attack, target, {}, fixed};
    }
};

struct TrajectoryRecord {
    int step = 0;
    NodeId removed = 0;
    double cc_norm = 0.0;
    double lcc_norm = 0.0;
    double eff_norm = 0.0;
};

struct Baseline {
    std::size_t cc0 = 0;
    std::size_t lcc0 = 0;
    double eff0 = 0.0;
};

struct Trajectory {
    Strategy strategy;
    std::string network_id;
    Baseline baseline;
    std::vector<TrajectoryRecord> records;
};

struct MeanRecord {
    int step = 0;
    double cc_norm = 0.0;
    double lcc_norm = 0.0;
    double eff_norm = 0.0;
};

class EmptyCandidateError : public std::runtime_error {
public:
    explicit EmptyCandidateError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Ties go to the smallest node id; scores iterate in id order, so the
// first strict maximum wins.
inline NodeId argmax(const centrality::Scores& scores) {
    bool have = false;
    NodeId best_node = 0;
    double best = 0.0;
    for (const auto& [v, s] : scores) {
        if (!have || s > best) {
            have = true;
            best = s;
            best_node = v;
        }
    }
    if (!have) throw EmptyCandidateError("no candidates to rank");
    return best_node;
}

inline std::vector<NodeId> role_members(const Network& g, const Role& target) {
    std::vector<NodeId> out;
    for (const auto& [v, r] : g.labels()) {
        if (r == target) out.push_back(v);
    }
    return out;
}

inline NodeId max_degree_member(const Network& g, const std::vector<NodeId>& members) {
    bool have = false;
    NodeId best_node = 0;
    std::size_t best = 0;
    for (NodeId v : members) {
        std::size_t d = g.degree(v);
        if (!have || d > best) {
            have = true;
            best = d;
            best_node = v;
        }
    }
    if (!have) throw EmptyCandidateError("role subset exhausted");
    return best_node;
}

inline void require_valid(const Strategy& s) {
    if (s.kind == StrategyKind::role_attack && !s.role_target)
        throw std::invalid_argument("role attack needs a target role");
    if (s.kind == StrategyKind::random_removal && !s.seed)
        throw std::invalid_argument("random removal needs a seed");
}

}  // namespace detail

// Picks the next node to arrest.  Social strategies rank the surviving
// graph as it stands this step; the role strategy ranks surviving
// role-subset members by degree; random draws uniformly from survivors.
inline NodeId select_target(const Network& g, const Strategy& strategy,
                            std::mt19937_64* rng = nullptr) {
    detail::require_valid(strategy);
    if (g.node_count() == 0) throw EmptyCandidateError("empty graph");
    switch (strategy.kind) {
        case StrategyKind::degree_attack:
            // deg/(n-1) is undefined on a single node; the last survivor
            // is removed directly.
            if (g.node_count() == 1) return g.nodes().front();
            return detail::argmax(centrality::degree_centrality(g));
        case StrategyKind::betweenness_attack:
            return detail::argmax(centrality::betweenness_centrality(g));
        case StrategyKind::closeness_attack:
            return detail::argmax(centrality::closeness_centrality(g));
        case StrategyKind::random_removal: {
            if (rng == nullptr) throw std::invalid_argument("random removal needs an RNG");
            std::vector<NodeId> alive = g.nodes();
            return alive[uniform_index(*rng, alive.size())];
        }
        case StrategyKind::role_attack:
            return detail::max_degree_member(g, detail::role_members(g, *strategy.role_target));
    }
    throw std::logic_error("unreachable strategy kind");
}

// Runs one attack to completion: T = |V| steps for social and random
// strategies (the graph ends empty), T = |S| steps for role attacks.
// Each record normalizes (component count, largest component, global
// efficiency) by its intact-graph baseline; a zero efficiency baseline
// pins eff_norm to 0 throughout.
inline Trajectory run_disruption(const Network& g0, const Strategy& strategy,
                                 std::string network_id = "") {
    detail::require_valid(strategy);
    if (g0.node_count() == 0)
        throw std::invalid_argument("cannot disrupt an empty graph");

    Trajectory traj;
    traj.strategy = strategy;
    traj.network_id = std::move(network_id);

    Network g = g0;
    ComponentPartition base = connected_components(g);
    traj.baseline = {base.count, base.largest_size, global_efficiency(g)};

    std::size_t steps = g.node_count();
    std::vector<NodeId> fixed_order;
    if (strategy.kind == StrategyKind::role_attack) {
        std::vector<NodeId> members = detail::role_members(g, *strategy.role_target);
        if (members.empty())
            throw EmptyCandidateError("no node carries the target role");
        steps = members.size();
        if (strategy.role_rank_fixed) {
            std::sort(members.begin(), members.end(), [&](NodeId a, NodeId b) {
                std::size_t da = g.degree(a), db = g.degree(b);
                return da != db ? da > db : a < b;
            });
            fixed_order = std::move(members);
        }
    }

    std::mt19937_64 rng;
    if (strategy.kind == StrategyKind::random_removal) rng.seed(*strategy.seed);

    for (std::size_t s = 1; s <= steps; ++s) {
        NodeId target = fixed_order.empty() ? select_target(g, strategy, &rng)
                                            : fixed_order[s - 1];
        g.remove_node(target);

        ComponentPartition part = connected_components(g);
        TrajectoryRecord rec;
        rec.step = static_cast<int>(s);
        rec.removed = target;
        rec.cc_norm = static_cast<double>(part.count) / static_cast<double>(traj.baseline.cc0);
        rec.lcc_norm =
            static_cast<double>(part.largest_size) / static_cast<double>(traj.baseline.lcc0);
        rec.eff_norm =
            traj.baseline.eff0 == 0.0 ? 0.0 : global_efficiency(g) / traj.baseline.eff0;
        traj.records.push_back(rec);
    }
    return traj;
}

struct Ensemble {
    std::vector<Trajectory> trajectories;
    std::vector<MeanRecord> mean;
};

// Random-removal replications with per-replication seeds derived from
// (base_seed, replication index); the mean averages each metric
// pointwise across replications.
inline Ensemble run_random_ensemble(const Network& g, std::size_t replications,
                                    std::uint64_t base_seed,
                                    const std::string& network_id = "") {
    if (replications < 1) throw std::invalid_argument("need at least 1 replication");

    Ensemble ens;
    for (std::size_t r = 1; r <= replications; ++r) {
        Strategy s = Strategy::random(seed_for(base_seed, r));
        ens.trajectories.push_back(run_disruption(g, s, network_id));
    }

    const std::size_t steps = ens.trajectories.front().records.size();
    ens.mean.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        MeanRecord& m = ens.mean[i];
        m.step = static_cast<int>(i + 1);
        for (const Trajectory& t : ens.trajectories) {
            m.cc_norm += t.records[i].cc_norm;
            m.lcc_norm += t.records[i].lcc_norm;
            m.eff_norm += t.records[i].eff_norm;
        }
        m.cc_norm /= static_cast<double>(replications);
        m.lcc_norm /= static_cast<double>(replications);
        m.eff_norm /= static_cast<double>(replications);
    }
    return ens;
}

}  // namespace dismantle::disruption

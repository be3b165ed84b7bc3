#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dismantle/dataset.hpp"
#include "dismantle/disruption.hpp"
#include "dismantle/generators.hpp"
#include "dismantle/graph.hpp"
#include "dismantle/rng.hpp"

namespace dismantle::experiment {

// A network cell of the experiment matrix: either a named dataset or a
// synthetic model spec written as "ba:n,m".
struct NetworkSpec {
    enum class Kind { dataset, ba };
    Kind kind = Kind::dataset;
    std::string name;
    std::size_t ba_n = 0;
    std::size_t ba_m = 0;

    static NetworkSpec parse(const std::string& token) {
        NetworkSpec spec;
        if (token.rfind("ba:", 0) == 0) {
            spec.kind = Kind::ba;
            std::string_view rest(token);
            rest.remove_prefix(3);
            std::size_t comma = rest.find(',');
            if (comma == std::string_view::npos)
                throw std::invalid_argument("bad network spec \"" + token +
                                            "\", expected ba:n,m");
            auto parse_num = [&](std::string_view s) {
                std::size_t value = 0;
                auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
                if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0)
                    throw std::invalid_argument("bad network spec \"" + token + "\"");
                return value;
            };
            spec.ba_n = parse_num(rest.substr(0, comma));
            spec.ba_m = parse_num(rest.substr(comma + 1));
            spec.name = "ba_" + std::to_string(spec.ba_n) + "_" + std::to_string(spec.ba_m);
            return spec;
        }
        if (token != "meetings" && token != "phone_calls")
            throw std::invalid_argument("unknown network \"" + token +
                                        "\" (want meetings, phone_calls, or ba:n,m)");
        spec.kind = Kind::dataset;
        spec.name = token;
        return spec;
    }

    const std::string& id() const { return name; }
};

inline const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> names{
        "degree", "betweenness", "closeness", "random",
        "caporegime", "soldier", "entrepreneur"};
    return names;
}

// Maps a CLI strategy token to a Strategy; random strategies get their
// seed later, per replication.
inline disruption::Strategy strategy_from_name(const std::string& token) {
    using disruption::Strategy;
    if (token == "degree") return Strategy::degree();
    if (token == "betweenness") return Strategy::betweenness();
    if (token == "closeness") return Strategy::closeness();
    if (token == "random") return Strategy::random(0);
    if (token == "caporegime") return Strategy::role(Role::of(RoleKind::caporegime));
    if (token == "soldier") return Strategy::role(Role::of(RoleKind::soldier));
    if (token == "entrepreneur")
        return Strategy::role(Role::associate(AssociateType::entrepreneur));
    throw std::invalid_argument("unknown strategy \"" + token + "\"");
}

struct ExperimentConfig {
    std::vector<NetworkSpec> networks;
    std::vector<std::string> strategies;
    std::size_t replications = 30;
    std::uint64_t base_seed = 42;
    std::string output_dir = "results";
    std::string data_dir = "data";
    // Reference dataset whose degree-rank profile labels the supposed
    // role holders when a role attack runs on a synthetic network.
    std::string profile_from = "meetings";
    bool allow_isolated = false;
    bool role_rank_fixed = false;
};

struct ResultRow {
    std::string network;
    std::string strategy;
    std::size_t replication = 1;
    int step = 0;
    NodeId removed = 0;
    double cc_norm = 0.0;
    double lcc_norm = 0.0;
    double eff_norm = 0.0;
};

struct ResultTable {
    std::vector<ResultRow> rows;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline bool is_stochastic(const NetworkSpec& net, const std::string& strategy) {
    return strategy == "random" || net.kind == NetworkSpec::Kind::ba;
}

inline void append_trajectory(ResultTable& table, const std::string& network,
                              const std::string& strategy, std::size_t replication,
                              const disruption::Trajectory& traj) {
    for (const auto& rec : traj.records) {
        table.rows.push_back({network, strategy, replication, rec.step, rec.removed,
                              rec.cc_norm, rec.lcc_norm, rec.eff_norm});
    }
}

class NetworkCache {
public:
    explicit NetworkCache(const ExperimentConfig& config) : config_(config) {}

    const Network& dataset(const std::string& name) {
        auto it = loaded_.find(name);
        if (it != loaded_.end()) return it->second;
        auto desc = dataset::descriptor_by_name(name, config_.data_dir);
        if (!desc) throw std::invalid_argument("unknown dataset \"" + name + "\"");
        return loaded_.emplace(name, dataset::load_network(*desc, config_.allow_isolated))
            .first->second;
    }

    const generators::RankProfile& profile(const Role& role) {
        std::string key = role_display_name(role);
        auto it = profiles_.find(key);
        if (it != profiles_.end()) return it->second;
        const Network& ref = dataset(config_.profile_from);
        return profiles_.emplace(key, generators::degree_rank_profile(ref, role))
            .first->second;
    }

private:
    const ExperimentConfig& config_;
    std::map<std::string, Network> loaded_;
    std::map<std::string, generators::RankProfile> profiles_;
};

}  // namespace detail

// Executes every (network, strategy) cell.  Deterministic strategies on
// real networks run once; random strategies and synthetic networks run
// the configured replication count, with the BA graph regrown from a
// per-replication seed.  Rows come back in canonical order (network,
// strategy, replication, step) regardless of execution order.
inline ResultTable run_matrix(const ExperimentConfig& config) {
    if (config.networks.empty() || config.strategies.empty())
        throw std::invalid_argument("need at least one network and one strategy");
    if (config.replications < 1)
        throw std::invalid_argument("need at least 1 replication");

    detail::NetworkCache cache(config);
    ResultTable table;

    for (const NetworkSpec& net : config.networks) {
        for (const std::string& strategy_token : config.strategies) {
            disruption::Strategy strategy = strategy_from_name(strategy_token);
            strategy.role_rank_fixed = config.role_rank_fixed;
            const std::size_t reps =
                detail::is_stochastic(net, strategy_token) ? config.replications : 1;

            if (net.kind == NetworkSpec::Kind::dataset &&
                strategy.kind == disruption::StrategyKind::random_removal) {
                disruption::Ensemble ens = disruption::run_random_ensemble(
                    cache.dataset(net.name), reps, config.base_seed, net.id());
                for (std::size_t r = 1; r <= reps; ++r)
                    detail::append_trajectory(table, net.id(), strategy_token, r,
                                              ens.trajectories[r - 1]);
                continue;
            }

            for (std::size_t r = 1; r <= reps; ++r) {
                const std::uint64_t rep_seed = seed_for(config.base_seed, r);
                Network g;
                if (net.kind == NetworkSpec::Kind::ba) {
                    g = generators::barabasi_albert({net.ba_n, net.ba_m, rep_seed});
                    if (strategy.kind == disruption::StrategyKind::role_attack)
                        g = generators::assign_supposed_roles(
                            g, cache.profile(*strategy.role_target), *strategy.role_target);
                } else {
                    g = cache.dataset(net.name);
                }
                disruption::Strategy run_strategy = strategy;
                if (strategy.kind == disruption::StrategyKind::random_removal)
                    run_strategy.seed = seed_for(rep_seed, 1);
                detail::append_trajectory(table, net.id(), strategy_token, r,
                                          disruption::run_disruption(g, run_strategy, net.id()));
            }
        }
    }

    std::sort(table.rows.begin(), table.rows.end(),
              [](const ResultRow& a, const ResultRow& b) {
                  return std::tie(a.network, a.strategy, a.replication, a.step) <
                         std::tie(b.network, b.strategy, b.replication, b.step);
              });
    return table;
}

inline constexpr std::string_view result_csv_header =
    "network,strategy,replication,step,removed_node,cc_norm,lcc_norm,eff_norm";

namespace detail {

inline void write_rows(std::ofstream& out, const std::vector<const ResultRow*>& rows) {
    out << result_csv_header << "\n";
    for (const ResultRow* row : rows) {
        out << row->network << "," << row->strategy << "," << row->replication << ","
            << row->step << "," << row->removed << "," << format_double(row->cc_norm) << ","
            << format_double(row->lcc_norm) << "," << format_double(row->eff_norm) << "\n";
    }
}

}  // namespace detail

// Writes one CSV per network plus merged.csv under output_dir; returns
// the paths written.  Any failure removes everything written so far.
inline std::vector<std::string> write_outputs(const ResultTable& table,
                                              const std::string& output_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    try {
        fs::create_directories(output_dir);

        std::map<std::string, std::vector<const ResultRow*>> by_network;
        std::vector<const ResultRow*> all;
        for (const ResultRow& row : table.rows) {
            by_network[row.network].push_back(&row);
            all.push_back(&row);
        }

        for (const auto& [network, rows] : by_network) {
            std::string path = output_dir + "/" + network + ".csv";
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot write " + path);
            written.push_back(path);
            detail::write_rows(out, rows);
            if (!out.good()) throw std::runtime_error("write failed for " + path);
        }
        std::string merged = output_dir + "/merged.csv";
        std::ofstream out(merged);
        if (!out) throw std::runtime_error("cannot write " + merged);
        written.push_back(merged);
        detail::write_rows(out, all);
        if (!out.good()) throw std::runtime_error("write failed for " + merged);
        return written;
    } catch (...) {
        for (const std::string& path : written) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        throw;
    }
}

inline ResultTable run_experiment(const ExperimentConfig& config) {
    ResultTable table = run_matrix(config);
    write_outputs(table, config.output_dir);
    return table;
}

inline ResultTable load_result_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || dataset::detail::strip_cr(line) != result_csv_header)
        throw dataset::ParseError(path, 1, "expected header \"" +
                                              std::string(result_csv_header) + "\"");
    ResultTable table;
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        std::string_view row = dataset::detail::strip_cr(line);
        if (row.empty()) continue;
        auto fields = dataset::detail::split_fields(row);
        if (fields.size() != 8)
            throw dataset::ParseError(path, lineno, "expected 8 fields");
        auto parse_num = [&](std::string_view s, auto& value) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw dataset::ParseError(path, lineno,
                                          "bad numeric field \"" + std::string(s) + "\"");
        };
        ResultRow r;
        r.network = std::string(fields[0]);
        r.strategy = std::string(fields[1]);
        parse_num(fields[2], r.replication);
        parse_num(fields[3], r.step);
        parse_num(fields[4], r.removed);
        parse_num(fields[5], r.cc_norm);
        parse_num(fields[6], r.lcc_norm);
        parse_num(fields[7], r.eff_norm);
        table.rows.push_back(std::move(r));
    }
    return table;
}

struct SummaryCell {
    std::string network;
    std::string strategy;
    std::vector<disruption::MeanRecord> mean;
    std::optional<int> dismantling_step;
};

// Per (network, strategy): pointwise mean across replications plus the
// first step whose mean lcc_norm drops below the threshold.  Cells that
// never cross report no step at all rather than zero.
inline std::vector<SummaryCell> summarize(const ResultTable& table, double threshold = 0.25) {
    if (table.rows.empty()) throw std::invalid_argument("empty result table");

    struct Accum {
        std::vector<double> cc, lcc, eff;
        std::vector<std::size_t> count;
    };
    std::map<std::pair<std::string, std::string>, Accum> cells;
    for (const ResultRow& row : table.rows) {
        Accum& acc = cells[{row.network, row.strategy}];
        const std::size_t idx = static_cast<std::size_t>(row.step) - 1;
        if (acc.cc.size() <= idx) {
            acc.cc.resize(idx + 1, 0.0);
            acc.lcc.resize(idx + 1, 0.0);
            acc.eff.resize(idx + 1, 0.0);
            acc.count.resize(idx + 1, 0);
        }
        acc.cc[idx] += row.cc_norm;
        acc.lcc[idx] += row.lcc_norm;
        acc.eff[idx] += row.eff_norm;
        acc.count[idx] += 1;
    }

    std::vector<SummaryCell> out;
    for (auto& [key, acc] : cells) {
        SummaryCell cell;
        cell.network = key.first;
        cell.strategy = key.second;
        for (std::size_t i = 0; i < acc.cc.size(); ++i) {
            const double n = static_cast<double>(acc.count[i]);
            disruption::MeanRecord m;
            m.step = static_cast<int>(i + 1);
            m.cc_norm = acc.cc[i] / n;
            m.lcc_norm = acc.lcc[i] / n;
            m.eff_norm = acc.eff[i] / n;
            if (!cell.dismantling_step && m.lcc_norm < threshold)
                cell.dismantling_step = m.step;
            cell.mean.push_back(m);
        }
        out.push_back(std::move(cell));
    }
    return out;
}

// key=value declarative config, '#' comments; unknown keys are rejected
// so typos surface.  Flag values win over file values.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    static const std::set<std::string> known{
        "network",      "strategy", "replications", "seed",
        "out",          "data-dir", "threshold",    "profile-from",
        "allow-isolated", "fixed-role-ranking", "in", "means", "dataset"};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        std::string_view row = dataset::detail::strip_cr(line);
        while (!row.empty() && (row.front() == ' ' || row.front() == '\t')) row.remove_prefix(1);
        if (row.empty() || row.front() == '#') continue;
        std::size_t eq = row.find('=');
        if (eq == std::string_view::npos)
            throw dataset::ParseError(path, lineno, "expected key=value");
        std::string key(row.substr(0, eq));
        if (known.count(key) == 0)
            throw dataset::ParseError(path, lineno, "unknown config key \"" + key + "\"");
        std::string value(row.substr(eq + 1));
        // repeated network/strategy lines build up a list
        if ((key == "network" || key == "strategy") && out.count(key))
            out[key] += "," + value;
        else
            out[key] = std::move(value);
    }
    return out;
}

}  // namespace dismantle::experiment

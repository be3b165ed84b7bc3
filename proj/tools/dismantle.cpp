#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dismantle/experiment.hpp"

namespace {

using dismantle::experiment::ExperimentConfig;
using dismantle::experiment::NetworkSpec;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Splits a comma-separated network list, keeping the comma inside a
// "ba:n,m" spec attached to it.
std::vector<std::string> split_network_list(const std::string& value) {
    std::vector<std::string> pieces;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t pos = value.find(',', start);
        if (pos == std::string::npos) {
            pieces.push_back(value.substr(start));
            break;
        }
        pieces.push_back(value.substr(start, pos - start));
        start = pos + 1;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].rfind("ba:", 0) == 0 && pieces[i].find(',') == std::string::npos &&
            i + 1 < pieces.size()) {
            out.push_back(pieces[i] + "," + pieces[i + 1]);
            ++i;
        } else if (!pieces[i].empty()) {
            out.push_back(pieces[i]);
        }
    }
    return out;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t pos = value.find(',', start);
        std::string piece = value.substr(start, pos == std::string::npos ? pos : pos - start);
        if (!piece.empty()) out.push_back(piece);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw UsageError("bad boolean for " + key + ": \"" + value + "\"");
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw UsageError("bad value for " + key + ": \"" + value + "\"");
    return out;
}

struct RunArgs {
    std::vector<std::string> networks;
    std::vector<std::string> strategies;
    std::optional<std::size_t> replications;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> data_dir;
    std::optional<std::string> profile_from;
    bool allow_isolated = false;
    bool fixed_role_ranking = false;
    std::string config_path;
};

ExperimentConfig build_run_config(const RunArgs& args) {
    std::map<std::string, std::string> file;
    if (!args.config_path.empty())
        file = dismantle::experiment::parse_config_file(args.config_path);

    std::vector<std::string> network_tokens;
    for (const std::string& v : args.networks)
        for (std::string& t : split_network_list(v)) network_tokens.push_back(std::move(t));
    if (network_tokens.empty() && file.count("network"))
        network_tokens = split_network_list(file.at("network"));
    std::vector<std::string> strategy_tokens;
    for (const std::string& v : args.strategies)
        for (std::string& t : split_list(v)) strategy_tokens.push_back(std::move(t));
    if (strategy_tokens.empty() && file.count("strategy"))
        strategy_tokens = split_list(file.at("strategy"));

    if (network_tokens.empty()) throw UsageError("no networks given (--network)");
    if (strategy_tokens.empty()) throw UsageError("no strategies given (--strategy)");

    ExperimentConfig config;
    for (const std::string& token : network_tokens) {
        try {
            config.networks.push_back(NetworkSpec::parse(token));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    for (const std::string& token : strategy_tokens) {
        try {
            dismantle::experiment::strategy_from_name(token);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        config.strategies.push_back(token);
    }

    if (args.replications)
        config.replications = *args.replications;
    else if (file.count("replications"))
        config.replications = parse_number<std::size_t>(file.at("replications"), "replications");
    if (config.replications < 1) throw UsageError("replications must be at least 1");

    if (args.seed)
        config.base_seed = *args.seed;
    else if (file.count("seed"))
        config.base_seed = parse_number<std::uint64_t>(file.at("seed"), "seed");

    const char* env_out = std::getenv("DISMANTLE_OUT_DIR");
    if (args.out)
        config.output_dir = *args.out;
    else if (file.count("out"))
        config.output_dir = file.at("out");
    else if (env_out != nullptr && *env_out != '\0')
        config.output_dir = env_out;

    if (args.data_dir)
        config.data_dir = *args.data_dir;
    else if (file.count("data-dir"))
        config.data_dir = file.at("data-dir");

    if (args.profile_from)
        config.profile_from = *args.profile_from;
    else if (file.count("profile-from"))
        config.profile_from = file.at("profile-from");

    config.allow_isolated =
        args.allow_isolated ||
        (file.count("allow-isolated") && parse_bool(file.at("allow-isolated"), "allow-isolated"));
    config.role_rank_fixed =
        args.fixed_role_ranking ||
        (file.count("fixed-role-ranking") &&
         parse_bool(file.at("fixed-role-ranking"), "fixed-role-ranking"));
    return config;
}

int cmd_run(const RunArgs& args) {
    ExperimentConfig config = build_run_config(args);
    dismantle::experiment::ResultTable table = dismantle::experiment::run_matrix(config);
    std::vector<std::string> written =
        dismantle::experiment::write_outputs(table, config.output_dir);
    for (const std::string& path : written) std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_validate(const std::string& dataset_arg, const std::string& data_dir,
                 bool allow_isolated) {
    namespace ds = dismantle::dataset;
    std::optional<ds::DatasetDescriptor> desc = ds::descriptor_by_name(dataset_arg, data_dir);
    if (!desc) {
        std::size_t slash = dataset_arg.find_last_of('/');
        std::string base =
            slash == std::string::npos ? dataset_arg : dataset_arg.substr(slash + 1);
        if (base == "meetings" || base == "phone_calls") {
            std::size_t cut = dataset_arg.size() - base.size();
            std::string dir =
                cut == 0 ? std::string(".") : dataset_arg.substr(0, cut - 1);
            desc = ds::descriptor_by_name(base, dir.empty() ? "." : dir);
        }
    }
    if (!desc)
        throw UsageError("--dataset wants meetings, phone_calls, or a path ending in one");

    dismantle::Network g = ds::load_network(*desc, allow_isolated);
    ds::ValidationReport report = ds::validate(g, *desc);

    std::cout << desc->name << ": " << g.node_count() << " nodes (expected "
              << desc->expected_nodes << "), " << g.edge_count() << " edges (expected "
              << desc->expected_edges << ")\n";
    for (const auto& rc : report.role_counts)
        std::cout << rc.role << ": found " << rc.found << ", expected " << rc.expected << "\n";
    if (report.passed()) {
        std::cout << "validation passed\n";
        return 0;
    }
    for (const std::string& m : report.mismatches) std::cout << "MISMATCH " << m << "\n";
    return 2;
}

int cmd_summarize(const std::string& in_path, double threshold,
                  const std::string& means_path) {
    namespace ex = dismantle::experiment;
    ex::ResultTable table = ex::load_result_table(in_path);
    std::vector<ex::SummaryCell> cells = ex::summarize(table, threshold);

    std::cout << "network,strategy,dismantling_step\n";
    for (const auto& cell : cells) {
        std::cout << cell.network << "," << cell.strategy << ",";
        if (cell.dismantling_step) std::cout << *cell.dismantling_step;
        std::cout << "\n";
    }

    if (!means_path.empty()) {
        std::ofstream out(means_path);
        if (!out) throw std::runtime_error("cannot write " + means_path);
        out << "network,strategy,step,mean_cc_norm,mean_lcc_norm,mean_eff_norm\n";
        for (const auto& cell : cells) {
            for (const auto& m : cell.mean) {
                out << cell.network << "," << cell.strategy << "," << m.step << ","
                    << ex::detail::format_double(m.cc_norm) << ","
                    << ex::detail::format_double(m.lcc_norm) << ","
                    << ex::detail::format_double(m.eff_norm) << "\n";
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulates targeted dismantling of covert networks"};
    app.require_subcommand(1);

    RunArgs run_args;
    std::size_t replications_opt = 0;
    std::uint64_t seed_opt = 0;
    std::string out_opt, data_dir_opt, profile_from_opt;

    CLI::App* run = app.add_subcommand("run", "Run attack strategies over networks");
    run->add_option("--network", run_args.networks,
                    "Network: meetings, phone_calls, or ba:n,m (repeatable)");
    run->add_option("--strategy", run_args.strategies,
                    "Strategy: degree, betweenness, closeness, random, caporegime, "
                    "soldier, entrepreneur (repeatable)");
    CLI::Option* rep_flag = run->add_option("--replications", replications_opt,
                                            "Replications for random strategies and "
                                            "synthetic networks (default 30)");
    CLI::Option* seed_flag = run->add_option("--seed", seed_opt, "Base seed (default 42)");
    CLI::Option* out_flag =
        run->add_option("--out", out_opt,
                        "Output directory (default $DISMANTLE_OUT_DIR or ./results)");
    CLI::Option* data_flag =
        run->add_option("--data-dir", data_dir_opt, "Dataset directory (default ./data)");
    CLI::Option* profile_flag = run->add_option(
        "--profile-from", profile_from_opt,
        "Reference dataset for supposed-role ranks on synthetic networks");
    run->add_flag("--allow-isolated", run_args.allow_isolated,
                  "Admit attribute-only nodes as degree-0 nodes");
    run->add_flag("--fixed-role-ranking", run_args.fixed_role_ranking,
                  "Freeze role-attack ranking to the intact graph");
    run->add_option("--config", run_args.config_path,
                    "key=value config file; explicit flags win");

    std::string dataset_arg, val_data_dir = "data";
    bool val_allow_isolated = false;
    CLI::App* validate = app.add_subcommand("validate", "Check a dataset against the "
                                                        "published counts");
    validate->add_option("--dataset", dataset_arg,
                         "meetings, phone_calls, or a path ending in one")
        ->required();
    validate->add_option("--data-dir", val_data_dir, "Dataset directory (default ./data)");
    validate->add_flag("--allow-isolated", val_allow_isolated,
                       "Admit attribute-only nodes as degree-0 nodes");

    std::string in_path, means_path;
    double threshold = 0.25;
    CLI::App* summarize =
        app.add_subcommand("summarize", "Mean trajectories and dismantling steps");
    summarize->add_option("--in", in_path, "Result CSV produced by run")->required();
    summarize->add_option("--threshold", threshold,
                          "lcc_norm dismantling threshold (default 0.25)");
    summarize->add_option("--means", means_path, "Also write mean trajectories to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            if (*rep_flag) run_args.replications = replications_opt;
            if (*seed_flag) run_args.seed = seed_opt;
            if (*out_flag) run_args.out = out_opt;
            if (*data_flag) run_args.data_dir = data_dir_opt;
            if (*profile_flag) run_args.profile_from = profile_from_opt;
            return cmd_run(run_args);
        }
        if (validate->parsed())
            return cmd_validate(dataset_arg, val_data_dir, val_allow_isolated);
        if (summarize->parsed()) return cmd_summarize(in_path, threshold, means_path);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

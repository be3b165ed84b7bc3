#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dismantle/graph.hpp"
#include "dismantle/roles.hpp"

namespace dismantle::dataset {

struct DatasetDescriptor {
    std::string name;
    std::string edge_path;
    std::string attr_path;
    std::size_t expected_nodes = 0;
    std::size_t expected_edges = 0;
};

inline DatasetDescriptor meetings_descriptor(const std::string& data_dir) {
    return {"meetings", data_dir + "/meetings_edges.csv",
            data_dir + "/meetings_attributes.csv", 101, 256};
}

inline DatasetDescriptor phone_calls_descriptor(const std::string& data_dir) {
    return {"phone_calls", data_dir + "/phone_calls_edges.csv",
            data_dir + "/phone_calls_attributes.csv", 100, 124};
}

inline std::optional<DatasetDescriptor> descriptor_by_name(const std::string& name,
                                                           const std::string& data_dir) {
    if (name == "meetings") return meetings_descriptor(data_dir);
    if (name == "phone_calls") return phone_calls_descriptor(data_dir);
    return std::nullopt;
}

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& msg)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg) {}
};

class DuplicateLabelError : public std::runtime_error {
public:
    DuplicateLabelError(const std::string& path, std::size_t line, NodeId v)
        : std::runtime_error(path + ":" + std::to_string(line) + ": contradictory labels for node " +
                             std::to_string(v)) {}
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline NodeId parse_node_id(std::string_view s, const std::string& path, std::size_t line) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(path, line, "bad node id \"" + std::string(s) + "\"");
    return value;
}

inline double parse_weight(std::string_view s, const std::string& path, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value <= 0.0)
        throw ParseError(path, line, "bad edge weight \"" + std::string(s) + "\"");
    return value;
}

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

inline void expect_header(std::ifstream& in, const std::string& path,
                          std::string_view expected) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != expected)
        throw ParseError(path, 1, "expected header \"" + std::string(expected) + "\"");
}

}  // namespace detail

// Loads the canonical CSV pair: an undirected edge list
// (source,target,weight) and node attributes (node_id,role,subtype).
// Repeated pairs collapse into one edge with summed weight; nodes
// missing from the attribute file are labeled unclear.  Nodes that
// appear only in the attribute file are rejected unless allow_isolated.
inline Network load_network(const DatasetDescriptor& d, bool allow_isolated = false) {
    Network g;

    {
        std::ifstream in = detail::open_or_throw(d.edge_path);
        detail::expect_header(in, d.edge_path, "source,target,weight");
        std::string line;
        for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
            std::string_view row = detail::strip_cr(line);
            if (row.empty()) continue;
            auto fields = detail::split_fields(row);
            if (fields.size() != 3)
                throw ParseError(d.edge_path, lineno, "expected 3 fields");
            NodeId u = detail::parse_node_id(fields[0], d.edge_path, lineno);
            NodeId v = detail::parse_node_id(fields[1], d.edge_path, lineno);
            double w = detail::parse_weight(fields[2], d.edge_path, lineno);
            if (u == v) throw ParseError(d.edge_path, lineno, "self-loop on node " +
                                                                  std::to_string(u));
            g.add_edge(u, v, w);
        }
    }

    {
        std::ifstream in = detail::open_or_throw(d.attr_path);
        detail::expect_header(in, d.attr_path, "node_id,role,subtype");
        std::string line;
        for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
            std::string_view row = detail::strip_cr(line);
            if (row.empty()) continue;
            auto fields = detail::split_fields(row);
            if (fields.size() != 3)
                throw ParseError(d.attr_path, lineno, "expected 3 fields");
            NodeId v = detail::parse_node_id(fields[0], d.attr_path, lineno);
            Role role;
            try {
                role = parse_role(fields[1], fields[2]);
            } catch (const UnknownRoleError& e) {
                throw ParseError(d.attr_path, lineno, e.what());
            }
            if (!g.has_node(v)) {
                if (!allow_isolated)
                    throw ParseError(d.attr_path, lineno,
                                     "node " + std::to_string(v) +
                                         " appears only in the attribute file");
                g.add_node(v);
            }
            const Role* existing = g.label(v);
            if (existing != nullptr && *existing != role)
                throw DuplicateLabelError(d.attr_path, lineno, v);
            g.set_label(v, role);
        }
    }

    for (NodeId v : g.nodes()) {
        if (g.label(v) == nullptr) g.set_label(v, Role::of(RoleKind::unclear));
    }
    return g;
}

struct RoleCount {
    std::string role;
    std::size_t found = 0;
    std::size_t expected = 0;
};

struct ValidationReport {
    bool node_count_ok = false;
    bool edge_count_ok = false;
    std::vector<RoleCount> role_counts;
    std::vector<std::string> mismatches;

    bool passed() const { return mismatches.empty(); }
};

namespace detail {

struct CensusRow {
    const char* role;
    std::size_t meetings;
    std::size_t phone_calls;
};

// Published census for the three roles the attacks target.
inline constexpr CensusRow census[] = {
    {"caporegime", 12, 7},
    {"soldier", 18, 18},
    {"entrepreneur", 26, 25},
};

inline std::size_t count_role(const Network& g, std::string_view role) {
    Role want = role == "entrepreneur" ? Role::associate(AssociateType::entrepreneur)
                                       : parse_role(role, "");
    std::size_t n = 0;
    for (const auto& [v, r] : g.labels())
        if (r == want) ++n;
    return n;
}

}  // namespace detail

inline ValidationReport validate(const Network& g, const DatasetDescriptor& d) {
    ValidationReport report;
    report.node_count_ok = g.node_count() == d.expected_nodes;
    report.edge_count_ok = g.edge_count() == d.expected_edges;
    if (!report.node_count_ok)
        report.mismatches.push_back("node count: found " + std::to_string(g.node_count()) +
                                    ", expected " + std::to_string(d.expected_nodes));
    if (!report.edge_count_ok)
        report.mismatches.push_back("edge count: found " + std::to_string(g.edge_count()) +
                                    ", expected " + std::to_string(d.expected_edges));

    for (const auto& row : detail::census) {
        RoleCount rc;
        rc.role = row.role;
        rc.found = detail::count_role(g, row.role);
        if (d.name == "meetings")
            rc.expected = row.meetings;
        else if (d.name == "phone_calls")
            rc.expected = row.phone_calls;
        else
            rc.expected = rc.found;
        if (rc.found != rc.expected)
            report.mismatches.push_back(std::string(rc.role) + ": found " +
                                        std::to_string(rc.found) + ", expected " +
                                        std::to_string(rc.expected));
        report.role_counts.push_back(rc);
    }
    return report;
}

namespace detail {

inline std::string format_weight(double w) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
}

}  // namespace detail

// Writes the canonical CSV pair back out: edges sorted by endpoint
// pair, one attribute row per node (unlabeled nodes export as unclear).
inline void export_network(const Network& g, const std::string& edge_path,
                           const std::string& attr_path) {
    {
        std::ofstream out(edge_path);
        if (!out) throw std::runtime_error("cannot write " + edge_path);
        out << "source,target,weight\n";
        for (const auto& [u, v] : g.edges())
            out << u << "," << v << "," << detail::format_weight(g.edge_weight(u, v)) << "\n";
    }
    {
        std::ofstream out(attr_path);
        if (!out) throw std::runtime_error("cannot write " + attr_path);
        out << "node_id,role,subtype\n";
        for (NodeId v : g.nodes()) {
            const Role* r = g.label(v);
            Role role = r == nullptr ? Role::of(RoleKind::unclear) : *r;
            out << v << "," << role_kind_name(role.kind) << ",";
            if (role.subtype) out << associate_type_name(*role.subtype);
            out << "\n";
        }
    }
}

}  // namespace dismantle::dataset

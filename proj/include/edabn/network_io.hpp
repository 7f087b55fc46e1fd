#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "edabn/bayes_network.hpp"
#include "edabn/errors.hpp"

namespace edabn {

// Plain-text network format, three sections in order (see docs/network-format.md;
// data/asia.bn is the reference example):
//
//   nodes            one "name cardinality" line per node; order assigns indices
//   arcs             "parent -> child" lines, names from the nodes section
//   cpt <name>       one block per node: q_i rows of r_i probabilities, rows
//                    enumerated row-major over parents sorted by node index
//
// '#' starts a comment; blank lines are ignored.

namespace detail {

inline std::string strip(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline double parse_probability(const std::string& tok, int line_no) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" + tok + "'");
    }
    if (used != tok.size())
        throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" + tok + "'");
    return value;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Parse and validate a network file. Syntax problems raise ParseError with
/// the line number; semantic problems (cyclic structure, bad CPT row, wrong
/// row count) raise ValidationError naming the node.
inline BayesNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open network file: " + path);

    std::vector<std::string> names;
    std::vector<int> cards;
    std::map<std::string, int> index_of;
    std::vector<std::pair<int, int>> arcs;
    std::map<int, std::vector<std::vector<double>>> cpt_rows;

    enum class Section { none, nodes, arcs, cpt };
    Section section = Section::none;
    int cpt_node = -1;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::strip(raw);
        if (line.empty()) continue;
        const auto toks = detail::tokens(line);

        if (toks[0] == "nodes" && toks.size() == 1) {
            section = Section::nodes;
            continue;
        }
        if (toks[0] == "arcs" && toks.size() == 1) {
            section = Section::arcs;
            continue;
        }
        if (toks[0] == "cpt") {
            if (toks.size() != 2)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'cpt <node>'");
            auto it = index_of.find(toks[1]);
            if (it == index_of.end())
                throw ParseError("line " + std::to_string(line_no) + ": unknown node '" + toks[1] + "'");
            if (cpt_rows.count(it->second))
                throw ParseError("line " + std::to_string(line_no) + ": duplicate cpt block for '" +
                                 toks[1] + "'");
            section = Section::cpt;
            cpt_node = it->second;
            cpt_rows[cpt_node] = {};
            continue;
        }

        switch (section) {
            case Section::none:
                throw ParseError("line " + std::to_string(line_no) +
                                 ": content before the 'nodes' section");
            case Section::nodes: {
                if (toks.size() != 2)
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": expected '<name> <cardinality>'");
                if (index_of.count(toks[0]))
                    throw ParseError("line " + std::to_string(line_no) + ": duplicate node '" + toks[0] +
                                     "'");
                int card = 0;
                try {
                    card = std::stoi(toks[1]);
                } catch (const std::exception&) {
                    throw ParseError("line " + std::to_string(line_no) + ": bad cardinality '" + toks[1] +
                                     "'");
                }
                index_of[toks[0]] = static_cast<int>(names.size());
                names.push_back(toks[0]);
                cards.push_back(card);
                break;
            }
            case Section::arcs: {
                if (toks.size() != 3 || toks[1] != "->")
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": expected '<parent> -> <child>'");
                auto pi = index_of.find(toks[0]);
                auto ci = index_of.find(toks[2]);
                if (pi == index_of.end())
                    throw ParseError("line " + std::to_string(line_no) + ": unknown node '" + toks[0] +
                                     "'");
                if (ci == index_of.end())
                    throw ParseError("line " + std::to_string(line_no) + ": unknown node '" + toks[2] +
                                     "'");
                if (pi->second == ci->second)
                    throw ParseError("line " + std::to_string(line_no) + ": self-loop on '" + toks[0] +
                                     "'");
                arcs.emplace_back(pi->second, ci->second);
                break;
            }
            case Section::cpt: {
                std::vector<double> row;
                row.reserve(toks.size());
                for (const auto& tok : toks) row.push_back(detail::parse_probability(tok, line_no));
                cpt_rows[cpt_node].push_back(std::move(row));
                break;
            }
        }
    }

    if (names.empty()) throw ParseError("network file has no nodes section");

    const int n = static_cast<int>(names.size());
    AdjacencyMatrix structure(n);
    for (auto [i, j] : arcs) {
        if (structure.at(i, j))
            throw ParseError("duplicate arc " + names[i] + " -> " + names[j]);
        structure.set(i, j, true);
    }
    std::vector<Cpt> cpts(static_cast<std::size_t>(n));
    for (auto& [node, rows] : cpt_rows) cpts[static_cast<std::size_t>(node)].rows = std::move(rows);

    // Cyclic structure, row sums, row counts and cardinalities are all
    // checked here; a node with no cpt block fails the row-count check.
    return BayesNetwork::create(std::move(structure), std::move(names), std::move(cards),
                                std::move(cpts));
}

/// Write a network in the same format load_network reads. Probabilities are
/// printed with 17 significant digits so a round trip is value-exact.
inline void save_network(const BayesNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write network file: " + path);
    out << "nodes\n";
    for (int i = 0; i < net.n(); ++i)
        out << net.names()[i] << " " << net.cardinalities()[i] << "\n";
    out << "\narcs\n";
    for (auto [i, j] : net.structure().arcs()) out << net.names()[i] << " -> " << net.names()[j] << "\n";
    for (int i = 0; i < net.n(); ++i) {
        out << "\ncpt " << net.names()[i] << "\n";
        for (const auto& row : net.cpt(i).rows) {
            for (std::size_t k = 0; k < row.size(); ++k)
                out << (k ? " " : "") << detail::format_double(row[k]);
            out << "\n";
        }
    }
    if (!out) throw IoError("error while writing network file: " + path);
}

}  // namespace edabn

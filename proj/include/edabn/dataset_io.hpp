#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "edabn/bayes_network.hpp"
#include "edabn/errors.hpp"

namespace edabn {

/// Dataset CSV: a header line of variable names, then one comma-separated row
/// of integer state indices per record.
inline void write_dataset_csv(const Dataset& data, const std::vector<std::string>& names,
                              const std::string& path) {
    if (static_cast<int>(names.size()) != data.n_vars)
        throw DimensionMismatch("write_dataset_csv: name count does not match variable count");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write dataset file: " + path);
    for (int v = 0; v < data.n_vars; ++v) out << (v ? "," : "") << names[v];
    out << "\n";
    const std::size_t records = data.size();
    for (std::size_t t = 0; t < records; ++t) {
        for (int v = 0; v < data.n_vars; ++v) out << (v ? "," : "") << data.columns[v][t];
        out << "\n";
    }
    if (!out) throw IoError("error while writing dataset file: " + path);
}

/// Read a dataset CSV against a network: the header must name every network
/// node exactly once (any column order), and every value must be an integer
/// state index within the node's cardinality.
inline Dataset read_dataset_csv(const std::string& path, const BayesNetwork& net) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            out.push_back(field);
        }
        return out;
    };

    std::string line;
    if (!std::getline(in, line)) throw ParseError("dataset file is empty: " + path);
    const auto header = split(line);
    if (static_cast<int>(header.size()) != net.n())
        throw ParseError("dataset header has " + std::to_string(header.size()) +
                         " columns, network has " + std::to_string(net.n()) + " nodes");

    // column position -> node index
    std::vector<int> node_of(header.size(), -1);
    std::vector<char> seen(static_cast<std::size_t>(net.n()), 0);
    for (std::size_t c = 0; c < header.size(); ++c) {
        int found = -1;
        for (int i = 0; i < net.n(); ++i)
            if (net.names()[i] == header[c]) found = i;
        if (found < 0) throw ParseError("dataset column '" + header[c] + "' is not a network node");
        if (seen[found]) throw ParseError("dataset column '" + header[c] + "' appears twice");
        seen[found] = 1;
        node_of[c] = found;
    }

    Dataset data;
    data.n_vars = net.n();
    data.cardinalities = net.cardinalities();
    data.columns.assign(static_cast<std::size_t>(net.n()), {});

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split(line);
        if (fields.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const int node = node_of[c];
            int value = 0;
            try {
                std::size_t used = 0;
                value = std::stoi(fields[c], &used);
                if (used != fields[c].size()) throw std::invalid_argument(fields[c]);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) + ": bad state value '" + fields[c] +
                                 "'");
            }
            if (value < 0 || value >= net.cardinalities()[node])
                throw ValidationError("line " + std::to_string(line_no) + ": state " +
                                      std::to_string(value) + " out of range for node '" +
                                      net.names()[node] + "'");
            data.columns[static_cast<std::size_t>(node)].push_back(value);
        }
    }
    if (data.size() == 0) throw ParseError("dataset file has no records: " + path);
    return data;
}

}  // namespace edabn

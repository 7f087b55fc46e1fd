#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "edabn/asia.hpp"
#include "edabn/dataset_io.hpp"
#include "edabn/errors.hpp"
#include "edabn/network_io.hpp"

#ifndef EDABN_DATA_DIR
#define EDABN_DATA_DIR "data"
#endif

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
    void write(const std::string& text) const {
        std::ofstream out(path);
        out << text;
    }
};

}  // namespace

TEST_CASE("network save/load round trip") {
    const auto net = edabn::asia_fixture();
    TempFile tmp("edabn_roundtrip.bn");
    edabn::save_network(net, tmp.path);
    const auto loaded = edabn::load_network(tmp.path);
    REQUIRE(loaded == net);
}

TEST_CASE("bundled asia file matches the fixture") {
    const auto loaded = edabn::load_network(std::string(EDABN_DATA_DIR) + "/asia.bn");
    REQUIRE(loaded == edabn::asia_fixture());
}

TEST_CASE("network parse errors carry line numbers") {
    TempFile tmp("edabn_parse.bn");

    SECTION("missing file") {
        REQUIRE_THROWS_AS(edabn::load_network("/nonexistent/net.bn"), edabn::IoError);
    }
    SECTION("content before nodes") {
        tmp.write("a 2\n");
        REQUIRE_THROWS_WITH(edabn::load_network(tmp.path),
                            Catch::Matchers::ContainsSubstring("line 1"));
    }
    SECTION("unknown arc endpoint") {
        tmp.write("nodes\na 2\nb 2\n\narcs\na -> c\n");
        REQUIRE_THROWS_WITH(edabn::load_network(tmp.path),
                            Catch::Matchers::ContainsSubstring("line 6"));
    }
    SECTION("self loop") {
        tmp.write("nodes\na 2\n\narcs\na -> a\n");
        REQUIRE_THROWS_AS(edabn::load_network(tmp.path), edabn::ParseError);
    }
    SECTION("duplicate node") {
        tmp.write("nodes\na 2\na 2\n");
        REQUIRE_THROWS_AS(edabn::load_network(tmp.path), edabn::ParseError);
    }
    SECTION("bad probability token") {
        tmp.write("nodes\na 2\n\ncpt a\n0.5 x\n");
        REQUIRE_THROWS_WITH(edabn::load_network(tmp.path),
                            Catch::Matchers::ContainsSubstring("line 5"));
    }
}

TEST_CASE("network semantic errors name the node") {
    TempFile tmp("edabn_semantic.bn");

    SECTION("row sum off") {
        tmp.write("nodes\na 2\nb 2\n\narcs\na -> b\n\ncpt a\n0.5 0.5\n\ncpt b\n0.6 0.5\n0.5 0.5\n");
        REQUIRE_THROWS_WITH(edabn::load_network(tmp.path), Catch::Matchers::ContainsSubstring("b"));
    }
    SECTION("wrong row count") {
        tmp.write("nodes\na 2\nb 2\n\narcs\na -> b\n\ncpt a\n0.5 0.5\n\ncpt b\n0.5 0.5\n");
        REQUIRE_THROWS_AS(edabn::load_network(tmp.path), edabn::ValidationError);
    }
    SECTION("two-cycle structure") {
        tmp.write("nodes\na 2\nb 2\n\narcs\na -> b\nb -> a\n\ncpt a\n0.5 0.5\n0.5 0.5\n\n"
                  "cpt b\n0.5 0.5\n0.5 0.5\n");
        REQUIRE_THROWS_AS(edabn::load_network(tmp.path), edabn::ValidationError);
    }
    SECTION("missing cpt block") {
        tmp.write("nodes\na 2\nb 2\n\ncpt a\n0.5 0.5\n");
        REQUIRE_THROWS_AS(edabn::load_network(tmp.path), edabn::ValidationError);
    }
}

TEST_CASE("dataset csv round trip") {
    const auto net = edabn::asia_fixture();
    const auto data = edabn::forward_sample(net, 250, 21);
    TempFile tmp("edabn_data.csv");
    edabn::write_dataset_csv(data, net.names(), tmp.path);
    const auto loaded = edabn::read_dataset_csv(tmp.path, net);
    REQUIRE(loaded.columns == data.columns);
    REQUIRE(loaded.cardinalities == data.cardinalities);
}

TEST_CASE("dataset csv accepts any column order") {
    const auto net = edabn::BayesNetwork::create(edabn::AdjacencyMatrix(2),
                                                 {std::string("a"), std::string("b")}, {2, 3},
                                                 {edabn::Cpt{{{0.5, 0.5}}},
                                                  edabn::Cpt{{{0.4, 0.3, 0.3}}}});
    TempFile tmp("edabn_reorder.csv");
    tmp.write("b,a\n2,1\n0,0\n");
    const auto data = edabn::read_dataset_csv(tmp.path, net);
    REQUIRE(data.columns[0] == std::vector<int>{1, 0});
    REQUIRE(data.columns[1] == std::vector<int>{2, 0});
}

TEST_CASE("dataset csv validation") {
    const auto net = edabn::BayesNetwork::create(edabn::AdjacencyMatrix(2),
                                                 {std::string("a"), std::string("b")}, {2, 2},
                                                 {edabn::Cpt{{{0.5, 0.5}}}, edabn::Cpt{{{0.5, 0.5}}}});
    TempFile tmp("edabn_badcsv.csv");

    SECTION("unknown column") {
        tmp.write("a,c\n0,0\n");
        REQUIRE_THROWS_AS(edabn::read_dataset_csv(tmp.path, net), edabn::ParseError);
    }
    SECTION("missing column") {
        tmp.write("a\n0\n");
        REQUIRE_THROWS_AS(edabn::read_dataset_csv(tmp.path, net), edabn::ParseError);
    }
    SECTION("value beyond cardinality") {
        tmp.write("a,b\n0,2\n");
        REQUIRE_THROWS_WITH(edabn::read_dataset_csv(tmp.path, net),
                            Catch::Matchers::ContainsSubstring("line 2"));
    }
    SECTION("negative value") {
        tmp.write("a,b\n0,-1\n");
        REQUIRE_THROWS_AS(edabn::read_dataset_csv(tmp.path, net), edabn::ValidationError);
    }
    SECTION("ragged row") {
        tmp.write("a,b\n0\n");
        REQUIRE_THROWS_AS(edabn::read_dataset_csv(tmp.path, net), edabn::ParseError);
    }
}

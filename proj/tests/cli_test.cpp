#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lfrgen/io/graph_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lfrgen;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LFRGEN_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return result;
    while (std::fgets(buf.data(), buf.size(), pipe))
        result.output += buf.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("lfrgen-cli-test-" + std::to_string(::getpid()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(CliTest, HhRealizesHandSequence) {
    {
        std::ofstream degrees(path("d.txt"));
        degrees << "1\n1\n2\n2\n3\n3\n";
    }
    const auto result = run_cli("hh --input " + path("d.txt"));
    EXPECT_EQ(result.exit_code, 0);
    // 1-based trace [1,5],[2,6],[3,4],[3,5],[4,6],[5,6] shifted to 0-based.
    EXPECT_EQ(result.output, "0\t4\n1\t5\n2\t3\n2\t4\n3\t5\n4\t5\n");
}

TEST_F(CliTest, MuOutOfRangeExitsTwo) {
    const auto result = run_cli("lfr --n 100 --mu 1.5");
    EXPECT_EQ(result.exit_code, 2);
}

TEST_F(CliTest, UnknownFlagExitsTwo) {
    EXPECT_EQ(run_cli("degrees --n 10 --bogus 3").exit_code, 2);
}

TEST_F(CliTest, EsWithZeroFactorEchoesInput) {
    {
        std::ofstream graph(path("g.txt"));
        graph << "0\t1\n2\t3\n";
    }
    const auto result =
        run_cli("es --input " + path("g.txt") + " --swaps-factor 0");
    EXPECT_EQ(result.exit_code, 0);
    EXPECT_EQ(result.output, "0\t1\n2\t3\n");
}

TEST_F(CliTest, DegreesDeterministicPerSeed) {
    const auto a = run_cli("degrees --n 50 --dmin 1 --dmax 10 --seed 7");
    const auto b = run_cli("degrees --n 50 --dmin 1 --dmax 10 --seed 7");
    const auto c = run_cli("degrees --n 50 --dmin 1 --dmax 10 --seed 8");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.output, b.output);
    EXPECT_NE(a.output, c.output);
}

TEST_F(CliTest, BinaryAndTextRoundTrip) {
    auto r = run_cli("lfr --n 300 --dmin 4 --dmax 20 --smin 15 --smax 60 --mu 0.3"
                     " --seed 5 --format bin --output " + path("g.bin"));
    ASSERT_EQ(r.exit_code, 0);
    const auto file = read_graph(fs::path(path("g.bin")), FileFormat::binary);
    EXPECT_TRUE(is_simple_edge_list(file.edges));
    EXPECT_EQ(file.n, 300u);

    // Re-emit the same seed as text; the edge lists must match exactly.
    auto t = run_cli("lfr --n 300 --dmin 4 --dmax 20 --smin 15 --smax 60 --mu 0.3"
                     " --seed 5 --output " + path("g.txt"));
    ASSERT_EQ(t.exit_code, 0);
    const auto text_file = read_graph(fs::path(path("g.txt")), FileFormat::text);
    EXPECT_EQ(text_file.edges, file.edges);
}

TEST_F(CliTest, CmRepairProducesSimpleGraph) {
    {
        std::ofstream degrees(path("d.txt"));
        for (int i = 0; i < 200; ++i)
            degrees << (1 + i % 7) << '\n';
    }
    const auto r = run_cli("cm --input " + path("d.txt") + " --repair --seed 3 --output " +
                           path("g.txt"));
    ASSERT_EQ(r.exit_code, 0);
    const auto file = read_graph(fs::path(path("g.txt")), FileFormat::text);
    EXPECT_TRUE(is_simple_edge_list(file.edges));
}

TEST_F(CliTest, CaOutputsValidAssignment) {
    {
        std::ofstream sizes(path("s.txt"));
        sizes << "3\n2\n";
        std::ofstream degrees(path("d.txt"));
        degrees << "1\n1\n0\n0\n0\n";
    }
    const auto r = run_cli("ca --sizes " + path("s.txt") + " --degrees " + path("d.txt") +
                           " --seed 2");
    ASSERT_EQ(r.exit_code, 0);
    std::istringstream in(r.output);
    std::uint64_t node, community, lines = 0;
    while (in >> node >> community) {
        EXPECT_LT(node, 5u);
        EXPECT_LT(community, 2u);
        ++lines;
    }
    EXPECT_EQ(lines, 5u);
}

TEST_F(CliTest, MetricsReportsMeasures) {
    {
        std::ofstream graph(path("g.txt"));
        graph << "0\t1\n0\t2\n1\t2\n";
    }
    const auto r = run_cli("metrics --input " + path("g.txt"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("triangles\t1"), std::string::npos);
    EXPECT_NE(r.output.find("assortativity\tundefined"), std::string::npos);
    EXPECT_NE(r.output.find("clustering\t1"), std::string::npos);
}

TEST_F(CliTest, ConvergeEmitsCsv) {
    {
        std::ofstream graph(path("g.txt"));
        for (int i = 0; i < 40; ++i)
            graph << (2 * i) << '\t' << (2 * i + 1) << '\n';
    }
    const auto r = run_cli("converge --input " + path("g.txt") +
                           " --ensemble 4 --max-multiple 2 --seed 1 --jobs 2");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output.rfind("metric,snapshot_swaps_per_m,mean,stddev,S", 0), 0u);
}

} // namespace

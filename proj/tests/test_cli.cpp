#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(TCONIC_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("verify-gb passes on the bundled basis") {
    auto r = run_cli("verify-gb --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["basis_size"] == 27);
    CHECK(j["eliminants_regenerate"] == true);
    CHECK(j["schema"] == "report-v1");
}

TEST_CASE("verify-gb identifies the failing S-pair of a corrupted basis") {
    // flip one sign in the first eliminant line
    std::string path = std::string(TCONIC_DATA_DIR) + "/square-locus-basis.txt";
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string content = ss.str();
    auto pos = content.find("8*a^2*d - 4*c*b*a + b^3");
    REQUIRE(pos != std::string::npos);
    content.replace(pos, 23, "8*a^2*d + 4*c*b*a + b^3");
    std::string tmp = "/tmp/tconic_corrupted_square-locus-basis.txt";
    std::ofstream(tmp) << content;
    auto r = run_cli("verify-gb --file " + tmp + " --json");
    CHECK(r.exit_code != 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == false);
    REQUIRE(j.contains("failing_s_pair"));
    CHECK(j["failing_s_pair"].size() == 2);
}

TEST_CASE("parse errors exit with code 2") {
    auto r = run_cli("section --plane \"1 0 zebra 0\"");
    CHECK(r.exit_code == 2);
    auto r2 = run_cli("section --plane \"1 0 0\"");
    CHECK(r2.exit_code == 2);
}

TEST_CASE("section command classifies the bundled examples") {
    auto r = run_cli("section --plane \"0 0 0 1\" --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["section"]["kind"] == "Smooth");

    auto r2 = run_cli("section --plane \"-1/2 -1/2 -1/2 1\" --json");
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["section"]["kind"] == "Degenerate");
    CHECK(j2["section"]["reason"] == "non-reduced section");
}

TEST_CASE("reports are byte-identical across runs") {
    auto r1 = run_cli("bitangents --plane \"0 0 0 1\" --precision 64 --json");
    auto r2 = run_cli("bitangents --plane \"0 0 0 1\" --precision 64 --json");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    auto j = nlohmann::json::parse(r1.out);
    CHECK(j["result"]["count"] == 28);
    // json and text render the same payload
    auto rt = run_cli("bitangents --plane \"0 0 0 1\" --precision 64 --text");
    CHECK(rt.exit_code == 0);
    CHECK(rt.out.find("count: 28") != std::string::npos);
}

TEST_CASE("orbits command emits the lattice censuses") {
    auto r = run_cli("orbits --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["group_order"] == 192);
    CHECK(j["result"]["pair_total"] == 378);
    CHECK(j["result"]["family_total"] == 63);
    CHECK(j["result"]["group_structure_ok"] == true);
    // line orbit size multiset {1,1,1,8,8,8}
    std::multiset<int> sizes;
    for (auto& o : j["result"]["line_orbits"]) sizes.insert(o["size"].get<int>());
    CHECK(sizes == std::multiset<int>{1, 1, 1, 8, 8, 8});
}

TEST_CASE("spec file loading and the quartic command") {
    auto r = run_cli("quartic --spec " + std::string(TCONIC_DATA_DIR) + "/diagonal-half.qspec --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["validation"]["ok"] == true);
    CHECK(j["nodes"]["count"] == 13);
    CHECK(j["hessian_rank_at_real_node"] == 3);
    CHECK(j["branch_sextic"]["six_distinct_contacts"] == true);
}

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string cli_path() {
    const char* bin = std::getenv("FAREY_CLI_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tmp = "cli_capture_" + std::to_string(counter++) + ".txt";
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > " + tmp + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    std::ifstream in(tmp);
    std::stringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    std::remove(tmp.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, ',')) fields.push_back(f);
    return fields;
}

// data rows only: no header, no comment lines
std::vector<std::vector<std::string>> rows_of(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    const auto lines = lines_of(text);
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (lines[i][0] != '#') rows.push_back(fields_of(lines[i]));
    return rows;
}

double comment_value(const std::string& text, const std::string& key) {
    for (const auto& line : lines_of(text))
        if (line.rfind("# " + key + ":", 0) == 0)
            return std::stod(line.substr(line.find(':') + 1));
    FAIL("comment not found: " + key);
    return 0.0;
}

} // namespace

TEST_CASE("verify subcommand reports success") {
    const auto r = run_cli("verify");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("checks passed") != std::string::npos);
    REQUIRE(r.out.find("[FAIL]") == std::string::npos);

    REQUIRE(run_cli("verify --suite transform").code == 0);
    REQUIRE(run_cli("verify --suite nonsense").code == 2);
}

TEST_CASE("interactions emits one row per twist") {
    const auto r = run_cli("interactions --k 4");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines[0] == "index,bits,weight,coefficient");
    const auto rows = rows_of(r.out);
    REQUIRE(rows.size() == 16);
    REQUIRE(rows[0][0] == "0");
    REQUIRE(rows[0][1] == "0000");
    REQUIRE(rows[0][2] == "2"); // trace of the all-0 configuration
    REQUIRE(rows[1][1] == "1000");
    REQUIRE(rows[1][3] == "0"); // odd parity vanishes exactly
    REQUIRE(r.out.find("# min coefficient over t != 0:") != std::string::npos);
}

TEST_CASE("interactions covers the other ensembles") {
    REQUIRE(run_cli("interactions --k 4 --ensemble canonical").code == 0);
    REQUIRE(run_cli("interactions --k 4 --ensemble grand").code == 0);
    const auto r = run_cli("interactions --k 3 --ensemble constrained --n 2");
    REQUIRE(r.code == 0);
    REQUIRE(rows_of(r.out).size() == 8);
    REQUIRE(run_cli("interactions --k 3 --ensemble constrained").code == 2);
}

TEST_CASE("cluster traces the series against its reference") {
    const auto r = run_cli("cluster --k 2 --t 11 --order 12");
    REQUIRE(r.code == 0);
    const auto rows = rows_of(r.out);
    REQUIRE(rows.size() == 12);
    const double reference = std::stod(rows[0][3]);
    REQUIRE(std::abs(reference - 0.202732554054) < 1e-10);
    REQUIRE(std::stod(rows.back()[4]) < 1e-6); // truncation error at order 12
    REQUIRE(r.out.find("# converged: yes") != std::string::npos);

    // decimal index spelling selects the same twist
    const auto r2 = run_cli("cluster --k 2 --t 3 --order 12");
    REQUIRE(r2.out == r.out);
}

TEST_CASE("cluster rejects bad twists and oversized chains") {
    REQUIRE(run_cli("cluster --k 2 --t 7 --order 5").code == 2);
    REQUIRE(run_cli("cluster --k 2 --t abc --order 5").code == 2);
    REQUIRE(run_cli("cluster --k 11 --t 0 --order 5").code == 2);
}

TEST_CASE("sweep walks the k schedule and beta grid") {
    const auto r = run_cli("sweep --kmax 10 --betas 0.5:2:0.5");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines[0] == "k,beta,z,f,u,msq");
    const auto rows = rows_of(r.out);
    REQUIRE(rows.size() == 12); // k in {4,8,10} x 4 betas
    REQUIRE(rows[0][0] == "4");
    REQUIRE(rows.back()[0] == "10");

    const auto rl = run_cli("sweep --kmax 6 --betas 1,2");
    REQUIRE(rows_of(rl.out).size() == 4);
}

TEST_CASE("sweep output is byte-identical for any thread count") {
    const auto one = run_cli("--threads 1 sweep --kmax 12");
    const auto four = run_cli("--threads 4 sweep --kmax 12");
    REQUIRE(one.code == 0);
    REQUIRE(four.code == 0);
    REQUIRE(one.out == four.out);
}

TEST_CASE("correlate reports translation-invariant correlations") {
    const auto r = run_cli("correlate --k 8 --beta 1.0");
    REQUIRE(r.code == 0);
    REQUIRE(rows_of(r.out).size() == 7); // j = 2..8
    REQUIRE(comment_value(r.out, "translation invariance max gap") < 1e-12);
}

TEST_CASE("gks lists nonnegative conditional expectations") {
    const auto r = run_cli("gks --k 5 --n 2 --beta 1 --maxsize 2");
    REQUIRE(r.code == 0);
    const auto rows = rows_of(r.out);
    REQUIRE(rows.size() == 15); // C(5,1) + C(5,2)
    bool found_pair = false;
    for (const auto& row : rows)
        if (row[0] == "5") {
            REQUIRE(row[1] == "1+3");
            found_pair = true;
        }
    REQUIRE(found_pair);
    REQUIRE(comment_value(r.out, "min value") >= -1e-12);
    REQUIRE(run_cli("gks --k 20 --n 1 --beta 1").code == 2);
}

TEST_CASE("events reports the run-length profile") {
    const auto r = run_cli("events --g 12 --beta 1 --eps 0.2");
    REQUIRE(r.code == 0);
    const auto rows = rows_of(r.out);
    REQUIRE(rows.size() == 9); // g - 3
    REQUIRE(comment_value(r.out, "total") <= 0.5 + 1e-12);
    REQUIRE(comment_value(r.out, "nmax_for_eps") >= 1);

    const auto plain = run_cli("events --g 12 --beta 1");
    REQUIRE(plain.out.find("nmax_for_eps") == std::string::npos);
    REQUIRE(run_cli("events --g 12 --beta 1 --nmax 20").code == 2);
}

TEST_CASE("results can be redirected to a file") {
    const std::string path = "cli_out_redirect.csv";
    const auto r = run_cli("events --g 10 --beta 0.5 --out " + path);
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "n,probability,cumulative");
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
    REQUIRE(run_cli("").code == 2);
    REQUIRE(run_cli("frobnicate").code == 2);
    REQUIRE(run_cli("interactions").code == 2);
    REQUIRE(run_cli("interactions --k 40").code == 2);
    REQUIRE(run_cli("interactions --k -2").code == 2);
    REQUIRE(run_cli("sweep --kmax 8 --betas nonsense").code == 2);
    REQUIRE(run_cli("--help").code == 0);
}

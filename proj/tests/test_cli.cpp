#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::vector<std::string> lines;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string path = "/tmp/ppl_cli_test_" + std::to_string(getpid()) + "_" +
                       std::to_string(counter++) + ".out";
    std::string cmd = std::string(PPL_CLI_PATH) + " " + args + " > " + path + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult out;
    out.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) out.lines.push_back(line);
    in.close();
    std::remove(path.c_str());
    return out;
}

std::vector<json> parse_records(const RunResult& r) {
    std::vector<json> out;
    for (const auto& line : r.lines) out.push_back(json::parse(line));
    return out;
}

json find_record(const std::vector<json>& records, const std::string& kind) {
    for (const auto& j : records)
        if (j.at("record") == kind) return j;
    FAIL("no record of kind " << kind);
    return {};
}

} // namespace

TEST_CASE("record streams are deterministic across runs") {
    auto a = run_cli("search --k 3 --ell 3 --height 10");
    auto b = run_cli("search --k 3 --ell 3 --height 10");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    REQUIRE(a.lines.size() == b.lines.size());
    REQUIRE(a.lines.size() >= 3);
    for (std::size_t i = 0; i + 1 < a.lines.size(); ++i) REQUIRE(a.lines[i] == b.lines[i]);

    json da = json::parse(a.lines.back()), db = json::parse(b.lines.back());
    REQUIRE(da.at("record") == "digest");
    REQUIRE(da.at("fnv1a64") == db.at("fnv1a64"));
    REQUIRE(da.at("payload_records") == db.at("payload_records"));
    REQUIRE(da.contains("wall_ms"));
}

TEST_CASE("search emits manifest, points, summary, digest") {
    auto r = run_cli("search --k 3 --ell 3 --height 10");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);

    REQUIRE(records.front().at("record") == "manifest");
    REQUIRE(records.front().at("command") == "search");
    REQUIRE(records.front().at("params").at("k") == 3);
    REQUIRE(records.front().at("params").at("height") == "10");

    std::vector<json> points;
    for (const auto& j : records)
        if (j.at("record") == "point") points.push_back(j);
    REQUIRE(points.size() == 5);

    std::vector<json> nontrivial;
    for (const auto& j : points)
        if (!j.at("trivial").get<bool>()) nontrivial.push_back(j);
    REQUIRE(nontrivial.size() == 2);
    REQUIRE(nontrivial[0].at("x") == "-4/3");
    REQUIRE(nontrivial[0].at("y") == "2/3");
    REQUIRE(nontrivial[0].at("family") == "cubic-sporadic");
    REQUIRE(nontrivial[1].at("x") == "-2/3");
    REQUIRE(nontrivial[1].at("y") == "-2/3");
    REQUIRE(nontrivial[1].at("family") == "cubic-sporadic");

    auto summary = find_record(records, "summary");
    REQUIRE(summary.at("count") == 5);
    REQUIRE(summary.at("nontrivial") == 2);

    REQUIRE(records.back().at("record") == "digest");
    REQUIRE(records.back().at("payload_records") == 6);
}

TEST_CASE("table mode renders text instead of records") {
    auto r = run_cli("search --k 3 --ell 3 --height 10 --table");
    REQUIRE(r.code == 0);
    bool saw_family = false;
    for (const auto& line : r.lines) {
        REQUIRE((line.empty() || line[0] != '{'));
        if (line.find("family=cubic-sporadic") != std::string::npos) saw_family = true;
    }
    REQUIRE(saw_family);
}

TEST_CASE("reduce pinned single-factor run") {
    auto r = run_cli("reduce --n 243 --d 1 --k 3 --ell 5 --p 3");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);

    auto dec = find_record(records, "decomposition");
    REQUIRE(dec.at("terms").size() == 3);
    REQUIRE(dec.at("terms")[0].at("value") == "243");
    REQUIRE(dec.at("terms")[0].at("coefficient") == "1");
    REQUIRE(dec.at("terms")[0].at("root") == "3");
    REQUIRE(dec.at("terms")[1].at("coefficient") == "244");

    auto red = find_record(records, "reduction");
    REQUIRE(red.at("case") == "single-factor");
    REQUIRE(red.at("index") == 0);
    REQUIRE(red.at("triple").at("a") == "1");
    REQUIRE(red.at("triple").at("b") == "-244");
    REQUIRE(red.at("triple").at("c") == "1");
    REQUIRE(red.at("triple").at("u") == "3");
    REQUIRE(red.at("triple").at("v") == "1");
    REQUIRE(red.at("triple").at("w") == "1");
    REQUIRE(red.at("triple").at("ell") == 5);

    auto norm = find_record(records, "normalized");
    REQUIRE(norm.at("triple").at("a") == "1");
    REQUIRE(norm.at("triple").at("b") == "-244");

    auto cond = find_record(records, "conditions");
    REQUIRE(cond.at("coefficients_power_free").at("holds") == true);
    REQUIRE(cond.at("support_bounded").at("holds") == false);
    REQUIRE(cond.at("support_bounded").at("witness") == "61");
    REQUIRE(cond.at("coprime_to_p").at("holds") == true);
    REQUIRE(cond.at("single_p_divisor").at("holds") == true);
    REQUIRE(cond.at("all") == false);
}

TEST_CASE("reduce pinned double-factor run") {
    auto r = run_cli("reduce --n 14 --d 1 --k 3 --ell 5 --p 2");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);
    auto red = find_record(records, "reduction");
    REQUIRE(red.at("case") == "double-factor");
    REQUIRE(red.at("index") == 0);
    REQUIRE(red.at("triple").at("a") == "7");
    REQUIRE(red.at("triple").at("b") == "-225");
    REQUIRE(red.at("triple").at("c") == "1");
    REQUIRE(red.at("triple").at("u") == "2");
}

TEST_CASE("frey pinned run with traces") {
    auto r = run_cli("frey --triple 1,1,-2,1,1,1 --ell 3 --q 3,5");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);

    auto curve = find_record(records, "curve");
    REQUIRE(curve.at("A") == "1");
    REQUIRE(curve.at("B") == "1");
    REQUIRE(curve.at("discriminant") == "64");

    std::vector<json> types;
    for (const auto& j : records)
        if (j.at("record") == "reduction_type") types.push_back(j);
    REQUIRE(types.size() == 2);
    REQUIRE(types[0].at("q") == 3);
    REQUIRE(types[0].at("type") == "good");
    REQUIRE(types[0].at("point_count") == "4");
    REQUIRE(types[0].at("a_q") == "0");
    REQUIRE(types[1].at("q") == 5);
    REQUIRE(types[1].at("point_count") == "8");
    REQUIRE(types[1].at("a_q") == "-2");

    auto level = find_record(records, "level");
    REQUIRE(level.at("rad2_abc") == "1");
    REQUIRE(level.at("level_max") == "32");
    REQUIRE_FALSE(level.contains("divisor_bound"));
}

TEST_CASE("frey with k and p reports the divisor bound") {
    auto r = run_cli("frey --triple 7,-225,1,2,1,1 --ell 5 --q 3 --k 3 --p 2");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);

    auto types = find_record(records, "reduction_type");
    REQUIRE(types.at("type") == "multiplicative");
    REQUIRE_FALSE(types.contains("point_count"));

    auto level = find_record(records, "level");
    REQUIRE(level.at("rad2_abc") == "105");
    REQUIRE(level.at("level_max") == "3360");
    REQUIRE(level.at("divisor_bound") == "48");
    REQUIRE(level.at("level_divides_twice_bound") == false);
}

TEST_CASE("bound --k 35 certifies and reports the pinned values") {
    auto r = run_cli("bound --k 35");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);
    auto b = find_record(records, "bound");
    REQUIRE(b.at("k") == 35);
    REQUIRE(b.at("p") == 31);
    REQUIRE(b.at("divisor_bound") == "103515091680");
    REQUIRE(b.at("verdict") == "certified");
}

TEST_CASE("verify over a small range certifies") {
    auto r = run_cli("verify --kmin 35 --kmax 40");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);
    auto summary = find_record(records, "summary");
    REQUIRE(summary.at("overall") == "certified");
}

TEST_CASE("theta subcommand reports the prefix sum and schoenfeld check") {
    auto r = run_cli("theta --limit 1000");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);
    auto sch = find_record(records, "schoenfeld");
    REQUIRE(sch.at("threshold") == "1.000081");
    REQUIRE(sch.at("violation").is_null());
}

TEST_CASE("es-check over a small grid finds nothing") {
    auto r = run_cli("es-check --kmax 4 --xmax 50 --ellmax 4");
    REQUIRE(r.code == 0);
    auto records = parse_records(r);
    auto summary = find_record(records, "summary");
    REQUIRE(summary.at("count") == 0);
    REQUIRE(summary.at("nontrivial") == 0);
}

TEST_CASE("exit codes") {
    // usage errors
    REQUIRE(run_cli("--help").code == 0);
    REQUIRE(run_cli("no-such-command").code == 2);
    REQUIRE(run_cli("search --k 3 --height 5").code == 2);           // missing --ell
    REQUIRE(run_cli("search --k 3 --ell 3 --height 10 --json --table").code == 2);
    // domain errors surface as usage errors too
    REQUIRE(run_cli("reduce --n 6 --d 3 --k 3 --ell 5 --p 2").code == 2);   // gcd(n, d) != 1
    REQUIRE(run_cli("frey --triple 1,1,-3,1,1,1 --ell 3 --q 5").code == 2); // no zero sum
    REQUIRE(run_cli("frey --triple 1,1,-2,1,1,1 --ell 3 --k 3").code == 2); // --k without --p
    REQUIRE(run_cli("bound --k 10").code == 2);                     // below 35, no override
    REQUIRE(run_cli("bound --k 100 --coeff-primes 53").code == 2);  // 53 > 100/2
    // budget errors
    REQUIRE(run_cli("theta --limit 200000000").code == 3);  // beyond the sieve budget
    // successes
    REQUIRE(run_cli("bound --k 10 --allow-small-k").code == 0);
    REQUIRE(run_cli("bound --k 100 --coeff-primes 2,3,5,7").code == 0);
    REQUIRE(run_cli("es-check --kmax 3 --xmax 10 --ellmax 3 --negative").code == 0);
}

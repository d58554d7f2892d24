#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sncharlab/cache.hpp"
#include "sncharlab/character.hpp"

using namespace sncharlab;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// run the CLI binary, capture stdout and the exit code
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SNCHARLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sncharlab-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("cache round-trip: values and bytes identical, n <= 8") {
    TempDir dir;
    for (int n : {0, 5, 8})
        for (std::optional<int> modulus : {std::optional<int>{}, std::optional<int>{2}}) {
            const CharTable table = character_table(n, modulus);
            const fs::path file = dir.path / cache_file_name(n, modulus);
            write_table_cache(file.string(), table);
            const CharTable loaded = read_table_cache(file.string(), modulus);
            CHECK(loaded.n == table.n);
            CHECK(loaded.modulus == table.modulus);
            for (std::size_t mi = 0; mi < table.columns.size(); ++mi) {
                CHECK(loaded.columns[mi].mu == table.columns[mi].mu);
                for (std::size_t li = 0; li < table.index.size(); ++li)
                    CHECK(loaded.value(li, mi) == table.value(li, mi));
            }
            // rewriting the loaded table reproduces the file byte for byte
            const fs::path second = dir.path / ("again-" + cache_file_name(n, modulus));
            write_table_cache(second.string(), loaded);
            CHECK(slurp(file) == slurp(second));
        }
}

TEST_CASE("cache refuses modulus mismatch and malformed files") {
    TempDir dir;
    const CharTable mod2 = character_table(5, 2);
    const fs::path file = dir.path / "t.jsonl";
    write_table_cache(file.string(), mod2);

    // a residue cache must not satisfy an exact request (or another modulus)
    CHECK_THROWS_AS(read_table_cache(file.string(), std::nullopt), cache_error);
    CHECK_THROWS_AS(read_table_cache(file.string(), 3), cache_error);
    CHECK_NOTHROW(read_table_cache(file.string(), 2));

    // unknown version
    {
        std::ofstream bad(dir.path / "bad-version.jsonl");
        bad << R"({"format":"sgct-cache","version":2,"n":1,"modulus":null,"order":"revlex"})"
            << "\n";
    }
    CHECK_THROWS_AS(read_table_cache((dir.path / "bad-version.jsonl").string(), std::nullopt),
                    cache_error);

    // wrong format marker
    {
        std::ofstream bad(dir.path / "bad-format.jsonl");
        bad << R"({"format":"something","version":1,"n":1,"modulus":null,"order":"revlex"})"
            << "\n";
    }
    CHECK_THROWS_AS(read_table_cache((dir.path / "bad-format.jsonl").string(), std::nullopt),
                    cache_error);

    // truncated body
    {
        std::ofstream bad(dir.path / "short.jsonl");
        bad << R"({"format":"sgct-cache","version":1,"n":2,"modulus":null,"order":"revlex"})"
            << "\n";
    }
    CHECK_THROWS_AS(read_table_cache((dir.path / "short.jsonl").string(), std::nullopt),
                    cache_error);

    CHECK_THROWS_AS(read_table_cache((dir.path / "missing.jsonl").string(), std::nullopt),
                    cache_error);
}

TEST_CASE("cli: usage and domain errors exit 2") {
    CHECK(run_cli("table --n -1").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("table").exit_code == 2);
    CHECK(run_cli("count r --max-n 10 --mod 2 --ks 2").exit_code == 2);
}

TEST_CASE("cli: verifiers exit 0 with a summary line") {
    const RunResult r = run_cli("verify lemma22 --max-n 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0 violations") != std::string::npos);

    const RunResult r21 = run_cli("verify lemma21 --max-n 6");
    CHECK(r21.exit_code == 0);
    CHECK(r21.out.find("0 violations") != std::string::npos);

    CHECK(run_cli("verify covering").exit_code == 0);
    CHECK(run_cli("verify eq21 --max-n 12").exit_code == 0);
}

TEST_CASE("cli: density exact on S_3 emits the pinned CSV schema") {
    const RunResult r = run_cli("density exact --n 3 --mod 2 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "n,p,method,total_entries,divisible_count,certified_count,zero_count,"
          "density_decimal\n3,2,exact-table,9,2,,1,0.222222\n");
}

TEST_CASE("cli: byte-deterministic outputs") {
    const std::string cmds[] = {
        "table --n 6 --mod 2",
        "density certified --n 12 --mod 2",
        "density sampled --n 30 --mod 2 --samples 200 --seed 5",
        "sample --n 20 --samples 5 --seed 9 --format json",
        "asym erdos-lehner --n 1000",
    };
    for (const std::string& cmd : cmds) {
        const RunResult a = run_cli(cmd);
        const RunResult b = run_cli(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("cli: resource budgets exit 3") {
    CHECK(run_cli("density exact --n 17 --mod 2").exit_code == 3);
}

TEST_CASE("cli: cache write and reload through the table subcommand") {
    TempDir dir;
    const std::string base = "table --n 7 --mod 3 --cache-dir " + dir.path.string();
    const RunResult first = run_cli(base);
    CHECK(first.exit_code == 0);
    const fs::path cache_file = dir.path / cache_file_name(7, 3);
    REQUIRE(fs::exists(cache_file));
    const std::string cached_bytes = slurp(cache_file);

    // second run loads from cache and prints identical output
    const RunResult second = run_cli(base);
    CHECK(second.exit_code == 0);
    CHECK(second.out == first.out);
    CHECK(slurp(cache_file) == cached_bytes);

    // the cached values match a fresh computation
    const CharTable fresh = character_table(7, 3);
    const CharTable loaded = read_table_cache(cache_file.string(), 3);
    for (std::size_t mi = 0; mi < fresh.columns.size(); ++mi)
        for (std::size_t li = 0; li < fresh.index.size(); ++li)
            CHECK(loaded.value(li, mi) == fresh.value(li, mi));
}

TEST_CASE("cli: count subcommands emit exact coefficients") {
    const RunResult pn = run_cli("count pn --max-n 10");
    CHECK(pn.exit_code == 0);
    CHECK(pn.out.find("10,42") != std::string::npos);

    const RunResult qp = run_cli("count qp --max-n 4 --mod 2");
    CHECK(qp.out.find("4,4") != std::string::npos);

    const RunResult r = run_cli("count r --max-n 5 --mod 2 --ks 1");
    CHECK(r.out.find("5,1") != std::string::npos);

    const RunResult tc = run_cli("count tcore --max-n 10 --t 2");
    CHECK(tc.out.find("10,1") != std::string::npos);
    CHECK(tc.out.find("9,0") != std::string::npos);
}

TEST_CASE("cli: density --max-n emits one schema row per n") {
    const RunResult r = run_cli("density certified --n 6 --max-n 9 --mod 2");
    CHECK(r.exit_code == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 5);  // header + 4 rows
    CHECK(r.out.find("6,2,certificate-exact") != std::string::npos);
    CHECK(r.out.find("9,2,certificate-exact") != std::string::npos);
    CHECK(run_cli("density exact --n 9 --max-n 6 --mod 2").exit_code == 2);
}

TEST_CASE("cli: moments agree with the library and flag the lemma41 ratio") {
    const RunResult m = run_cli("moments --n 4 --k 1 --mod 2");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("4,1,2,17,65,17,65") != std::string::npos);

    const RunResult l = run_cli("moments --n 20 --mod 2 --ks 1 --ks 3 --cap 20");
    CHECK(l.exit_code == 0);
    CHECK(l.out.find("1.000000") != std::string::npos);  // ratio is exactly 1 at cap = n
}

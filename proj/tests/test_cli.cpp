#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("CSST_CLI");
    REQUIRE_MESSAGE(env != nullptr, "CSST_CLI must point at the csst binary");
    return env;
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "csst_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const fs::path& path) {
    const std::string text = slurp(path);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    return lines;
}

} // namespace

TEST_CASE("cli pipeline") {
    const fs::path dir = scratch_dir();
    const std::string data = (dir / "peaks.csv").string();

    SUBCASE("gen peaks writes the full grid") {
        CHECK(run("gen peaks --n 49 --out " + data) == 0);
        CHECK(line_count(data) == 2402);
        CHECK(fs::exists(data + ".manifest.json"));
    }

    SUBCASE("usage errors exit with 2") {
        CHECK(run("gen peaks --n 49") == 2);
        CHECK(run("") == 2);
        CHECK(run("frobnicate") == 2);
    }

    SUBCASE("domain errors exit with 1") {
        CHECK(run("gen peaks --n 1 --out " + (dir / "bad.csv").string()) == 1);
        CHECK(run("train --data " + (dir / "absent.csv").string() + " --out-dir " +
                  (dir / "t").string()) == 1);
    }

    SUBCASE("gauss generation is deterministic at the file level") {
        const std::string a = (dir / "a.csv").string();
        const std::string b = (dir / "b.csv").string();
        CHECK(run("gen gauss --n 50 --sep 10 --bridge 0.2 --seed 5 --out " + a) == 0);
        CHECK(run("gen gauss --n 50 --sep 10 --bridge 0.2 --seed 5 --out " + b) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(slurp(a) != "");

        const std::string c = (dir / "c.csv").string();
        CHECK(run("gen gauss --n 50 --sep 10 --bridge 0.2 --seed 6 --out " + c) == 0);
        CHECK(slurp(a) != slurp(c));
    }

    SUBCASE("train and analyze on a tiny run") {
        const std::string small = (dir / "small.csv").string();
        const std::string train_dir = (dir / "train").string();
        REQUIRE(run("gen peaks --n 9 --out " + small) == 0);
        REQUIRE(run("train --data " + small + " --rows 2 --cols 2 --rough-epochs 3 "
                    "--fine-epochs 3 --sigma-start 1 --sigma-end 0.5 --out-dir " +
                    train_dir) == 0);
        CHECK(fs::exists(train_dir + "/codebook.json"));
        CHECK(fs::exists(train_dir + "/umatrix.pgm"));
        CHECK(fs::exists(train_dir + "/train_manifest.json"));
        CHECK(line_count(train_dir + "/umatrix.csv") == 3); // 2x2 grid -> 3x3 cells

        const std::string manifest = slurp(train_dir + "/train_manifest.json");
        CHECK(manifest.find("quantization_error_before") != std::string::npos);
        CHECK(manifest.find("quantization_error_after") != std::string::npos);

        const std::string analyze_dir = (dir / "analyze").string();
        REQUIRE(run("analyze --data " + small + " --codebook " + train_dir +
                    "/codebook.json --m 2 --k 4 --min-support 5 --out-dir " +
                    analyze_dir) == 0);
        CHECK(fs::exists(analyze_dir + "/euclid.csv"));
        CHECK(fs::exists(analyze_dir + "/csst.csv"));
        CHECK(fs::exists(analyze_dir + "/euclid.pgm"));
        CHECK(fs::exists(analyze_dir + "/csst.pgm"));
        CHECK(fs::exists(analyze_dir + "/analyze_manifest.json"));
        CHECK(slurp(analyze_dir + "/euclid.csv").rfind("region,", 0) == 0);

        // Both coarse and fine sub-region counts work, and the manifest
        // records the effective k.
        const std::string k2_dir = (dir / "k2").string();
        REQUIRE(run("analyze --data " + small + " --codebook " + train_dir +
                    "/codebook.json --m 2 --k 2 --min-support 5 --out-dir " + k2_dir) == 0);
        CHECK(slurp(k2_dir + "/analyze_manifest.json").find("\"k\": 2") != std::string::npos);
        CHECK(slurp(analyze_dir + "/analyze_manifest.json").find("\"k\": 4") !=
              std::string::npos);

        // Region overrides: explicit lists are honored verbatim; duplicates
        // are a usage error, out-of-range a domain error.
        const std::string regions_dir = (dir / "regions").string();
        REQUIRE(run("analyze --data " + small + " --codebook " + train_dir +
                    "/codebook.json --regions 0,3 --out-dir " + regions_dir) == 0);
        CHECK(slurp(regions_dir + "/analyze_manifest.json").find("\"regions\": [\n    0,\n    3\n  ]") !=
              std::string::npos);
        CHECK(run("analyze --data " + small + " --codebook " + train_dir +
                  "/codebook.json --regions 1,1 --out-dir " + (dir / "x").string()) == 2);
        CHECK(run("analyze --data " + small + " --codebook " + train_dir +
                  "/codebook.json --regions 0,999 --out-dir " + (dir / "y").string()) == 1);
    }
}

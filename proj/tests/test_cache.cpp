#include <cstdio>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "descent/beta_table.hpp"

using namespace descent;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("descent-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("exact table round trip") {
    TempDir dir;
    auto path = dir.path / "beta_n10.dsbt";
    BetaTable t = build_beta_table(10);
    save_table(t, path);
    BetaTable loaded = load_table(path);
    CHECK(loaded.n == 10);
    CHECK(loaded.values == t.values);
}

TEST_CASE("residue table round trip") {
    TempDir dir;
    auto path = dir.path / "res.dsrt";
    auto residues = build_residue_table(9, 1000);
    save_residue_table(9, 1000, residues, path);
    int n = 0;
    u64 m = 0;
    auto loaded = load_residue_table(path, n, m);
    CHECK(n == 9);
    CHECK(m == 1000);
    CHECK(loaded == residues);
}

TEST_CASE("corrupt caches are rejected") {
    TempDir dir;
    auto path = dir.path / "beta_n6.dsbt";
    BetaTable t = build_beta_table(6);
    save_table(t, path);

    SECTION("truncated file") {
        auto size = std::filesystem::file_size(path);
        std::filesystem::resize_file(path, size - 5);
        CHECK_THROWS_AS(load_table(path), cache_error);
    }
    SECTION("bad magic") {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.write("XXXX", 4);
        f.close();
        CHECK_THROWS_AS(load_table(path), cache_error);
    }
    SECTION("header count mismatch") {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(8);        // the n field
        char n_bytes[4] = {7, 0, 0, 0};  // payload still belongs to n = 6
        f.write(n_bytes, 4);
        f.close();
        CHECK_THROWS_AS(load_table(path), cache_error);
    }
    SECTION("trailing garbage") {
        std::ofstream f(path, std::ios::app | std::ios::binary);
        f.put(0);
        f.close();
        CHECK_THROWS_AS(load_table(path), cache_error);
    }
    SECTION("missing file") { CHECK_THROWS_AS(load_table(dir.path / "nope.dsbt"), cache_error); }
}

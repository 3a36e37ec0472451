#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_common.hpp"
#include "wlab/config.hpp"
#include "wlab/io.hpp"
#include "wlab/presets.hpp"

using namespace wlab;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"(
[grid]
nx = 128
np = 128
x_min = -10
x_max = 10
p_min = -10
p_max = 10

[potential]
family = harmonic
m = 1
omega = 1

[initial]
x0 = 0.5
p0 = 0.0
sigma_x = 1.0

[run]
mechanics = quantum
dt = 0.01
t_final = 1.0
m = 1
)";

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "wlab_io_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config: minimal config parses with defaults applied") {
    const auto c = parse_config(kMinimalConfig);
    CHECK(c.nx == 128);
    CHECK(c.hbar == 1.0);            // default
    CHECK(c.record_every == 100);    // default
    CHECK(c.n_steps == 100);
    CHECK(c.mechanics == RunMechanics::quantum);
    CHECK(c.snapshot_format == SnapshotFormat::none);

    const std::string echo = render_config(c);
    CHECK(echo.find("hbar = 1") != std::string::npos);
    CHECK(echo.find("record_every = 100") != std::string::npos);
    CHECK(echo.find("family = harmonic") != std::string::npos);
}

TEST_CASE("config: violations are reported together, nothing ignored") {
    std::string text = kMinimalConfig;
    text.replace(text.find("nx = 128"), 8, "nx = 100");
    text += "hbar_bar = 2\n";  // lands in [run]
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("power of two") != std::string::npos);
        CHECK(what.find("hbar_bar") != std::string::npos);
        CHECK(e.violations().size() >= 2);
    }
}

TEST_CASE("config: missing required keys are named") {
    std::string text = kMinimalConfig;
    text.replace(text.find("dt = 0.01"), 9, "# dt gone");
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("[run] dt") != std::string::npos);
    }
}

TEST_CASE("config: aliasing margins are rejected at parse time") {
    std::string text = kMinimalConfig;
    text.replace(text.find("x0 = 0.5"), 8, "x0 = 7.5");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("config: t_final must be a multiple of dt") {
    std::string text = kMinimalConfig;
    text.replace(text.find("t_final = 1.0"), 13, "t_final = 1.005");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("config: shipped presets parse and match the files in presets/") {
    for (const auto& name : preset_names()) {
        const std::string text = preset_text(name);
        CHECK_NOTHROW(parse_config(text));

        const fs::path file =
            fs::path(WLAB_SOURCE_DIR) / "presets" / (name + ".ini");
        REQUIRE(fs::exists(file));
        std::ifstream in(file);
        std::ostringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == text);
    }
    CHECK_THROWS_AS(preset_text("no-such-preset"), std::invalid_argument);
}

TEST_CASE("io: diagnostics series has the pinned header and 17-digit values") {
    const auto dir = temp_dir();
    const auto path = dir / "diagnostics.csv";
    DivergenceReport r;
    r.t = M_PI;
    r.norm = 1.0 / 3.0;
    r.energy = -0.1234567890123456789;
    r.purity = 1.0;
    r.min_eig = -1e-17;
    r.diag_dist = 0.0;
    r.band_inner = 2.0 / 7.0;
    r.band_mid = 0.5;
    r.band_outer = 1e300;
    write_series({r}, path);

    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    CHECK(header ==
          "t,norm,energy,purity,min_eig,diag_dist,band_inner,band_mid,band_outer");
    std::getline(in, row);
    // Lossless round trip of every field.
    std::istringstream ss(row);
    std::string field;
    std::vector<double> parsed;
    while (std::getline(ss, field, ',')) parsed.push_back(std::stod(field));
    REQUIRE(parsed.size() == 9);
    CHECK(parsed[0] == r.t);
    CHECK(parsed[1] == r.norm);
    CHECK(parsed[2] == r.energy);
    CHECK(parsed[4] == r.min_eig);
    CHECK(parsed[6] == r.band_inner);
    CHECK(parsed[8] == r.band_outer);
}

TEST_CASE("io: binary snapshots are bit-exact and sized exactly") {
    const auto dir = temp_dir();
    const auto g = test::default_grid(32);
    auto w = test::random_state(g, 7);
    w.f[5] = -0.0;
    w.f[6] = 1e-310;  // subnormal survives the round trip

    const auto path = dir / "snap.bin";
    write_snapshot_binary(w, g, path);
    CHECK(fs::file_size(path) == 32 + 32 * 32 * 8);

    const auto snap = read_snapshot_binary(path);
    CHECK(snap.nx == 32);
    CHECK(snap.np == 32);
    REQUIRE(snap.f.size() == w.f.size());
    for (std::size_t i = 0; i < w.f.size(); ++i) {
        CHECK(std::memcmp(&snap.f[i], &w.f[i], 8) == 0);
    }

    // 256x256 size formula: 32 + 256*256*8 bytes.
    const auto g2 = test::default_grid(256);
    WignerState big;
    big.f.assign(g2.size(), 0.25);
    const auto path2 = dir / "snap256.bin";
    write_snapshot_binary(big, g2, path2);
    CHECK(fs::file_size(path2) == 524320);
}

TEST_CASE("io: csv snapshot holds x,p,F triples") {
    const auto dir = temp_dir();
    const auto g = test::default_grid(8);
    WignerState w;
    w.f.assign(g.size(), 0.0);
    w.f[g.at(1, 2)] = 0.75;
    const auto path = dir / "snap.csv";
    write_snapshot_csv(w, g, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,p,F");
    int rows = 0;
    bool found = false;
    while (std::getline(in, line)) {
        ++rows;
        if (line.find("0.75") != std::string::npos) found = true;
    }
    CHECK(rows == 64);
    CHECK(found);
}

TEST_CASE("io: malformed binary snapshots are rejected") {
    const auto dir = temp_dir();
    const auto path = dir / "bad.bin";
    std::ofstream(path, std::ios::binary) << "NOTMAGIC overall garbage";
    CHECK_THROWS_AS(read_snapshot_binary(path), std::runtime_error);
}

// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/app.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = QTHERMO_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qthermo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = qthermo::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("qthermo-it-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> row(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("simulate phase damping with defaults", "[cli]") {
  TempDir dir;
  const auto csv = dir / "pd.csv";
  const Run r = cli({"simulate", "--channel", "phase-damping", "--theta", "pi/6", "--emit-oracle", "--out", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("residual=") != std::string::npos);

  const std::string text = slurp(csv);
  CHECK(text.find('\r') == std::string::npos);
  const auto ls = lines(text);
  REQUIRE(ls.size() == 4002);
  CHECK(ls.front() == "tau,delta_u,work,heat,coherence,heat_oracle,coherence_oracle");
  CHECK(ls[1] == "0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,"
                 "0.00000000000e+00,0.00000000000e+00");

  const auto last = row(ls.back());
  CHECK(last[0] == 8.0);
  CHECK(std::abs(last[3] - 0.17316105991312036) <= 1e-5);
  CHECK(std::abs(last[5] - 0.17316105991312036) <= 1e-11);

  double prev = -1.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto v = row(ls[i]);
    REQUIRE(v.size() == 7);
    CHECK(v[0] > prev);
    prev = v[0];
  }
}

TEST_CASE("simulate output is byte-stable", "[cli]") {
  TempDir dir;
  const std::vector<std::string> base = {"simulate", "--channel", "phase-flip", "--theta", "0.4", "--steps", "300"};
  auto a = base;
  a.insert(a.end(), {"--out", (dir / "a.csv").string()});
  auto b = base;
  b.insert(b.end(), {"--out", (dir / "b.csv").string()});
  REQUIRE(cli(a).code == 0);
  REQUIRE(cli(b).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(lines(slurp(dir / "a.csv")).front() == "tau,delta_u,work,heat,coherence");
}

TEST_CASE("config files and flag precedence", "[cli]") {
  TempDir dir;
  SECTION("the fig2 config reproduces the fig2 preset byte for byte") {
    REQUIRE(cli({"simulate", "--config", (kData / "fig2_config.json").string(), "--out", (dir / "cfg.csv").string()})
                .code == 0);
    REQUIRE(cli({"reproduce", "fig2", "--out-dir", (dir / "fig").string()}).code == 0);
    CHECK(slurp(dir / "cfg.csv") == slurp(dir / "fig" / "fig2.csv"));
  }
  SECTION("flags override file values") {
    const Run r = cli({"simulate", "--config", (kData / "fig2_config.json").string(), "--steps", "100", "--out",
                       (dir / "s.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(dir / "s.csv")).size() == 102);
  }
  SECTION("unknown keys are rejected") {
    write(dir / "bad.json", R"js({"channel": "phase-flip", "theta": 0.5, "stepz": 10})js");
    const Run r = cli({"simulate", "--config", (dir / "bad.json").string(), "--out", (dir / "x.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("stepz") != std::string::npos);
  }
  SECTION("malformed JSON") {
    write(dir / "bad.json", "{\"channel\": ");
    CHECK(cli({"simulate", "--config", (dir / "bad.json").string(), "--out", (dir / "x.csv").string()}).code == 2);
  }
  SECTION("inline custom channel object") {
    write(dir / "c.json", R"js({"channel": {"kind": "custom", "dim": 2,
        "kraus": [[[["1","0"],["0","0"]],[["0","0"],["exp(-t/2)","0"]]],
                  [[["0","0"],["0","0"]],[["0","0"],["sqrt(1-exp(-t))","0"]]]]},
        "theta": "pi/6", "steps": 200})js");
    REQUIRE(cli({"simulate", "--config", (dir / "c.json").string(), "--out", (dir / "c.csv").string()}).code == 0);
    REQUIRE(cli({"simulate", "--channel", "phase-damping", "--theta", "pi/6", "--steps", "200", "--out",
                 (dir / "b.csv").string()})
                .code == 0);
    const auto custom = lines(slurp(dir / "c.csv"));
    const auto builtin = lines(slurp(dir / "b.csv"));
    REQUIRE(custom.size() == builtin.size());
    for (std::size_t i = 1; i < custom.size(); ++i) {
      const auto x = row(custom[i]);
      const auto y = row(builtin[i]);
      for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(x[k] - y[k]) <= 1e-12);
    }
  }
}

TEST_CASE("simulate usage errors exit 2", "[cli]") {
  TempDir dir;
  const std::string out = (dir / "x.csv").string();
  CHECK(cli({"simulate", "--channel", "phase-damping", "--theta", "pi/6", "--steps", "5", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "phase-damping", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--theta", "0.3", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "amplitude-damping", "--theta", "0.3", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "phase-flip", "--theta", "2.0", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "phase-flip", "--theta", "0.3", "--tau-max", "0", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "phase-flip", "--theta", "abc", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "custom:/nonexistent.json", "--theta", "0.3", "--out", out}).code == 2);
  CHECK(cli({"simulate", "--channel", "phase-flip", "--theta", "0.3"}).code == 2);
  CHECK_FALSE(fs::exists(out));

  SECTION("oracle columns only where closed forms exist") {
    CHECK(cli({"simulate", "--channel", "bit-flip", "--theta", "pi/6", "--emit-oracle", "--out", out}).code == 2);
    CHECK(cli({"simulate", "--channel", "phase-flip", "--theta", "0.3", "--emit-oracle", "--out", out}).code == 2);
    CHECK(cli({"simulate", "--channel", "phase-flip", "--theta", "pi/6", "--emit-oracle", "--steps", "50", "--out",
               out})
              .code == 0);
  }
}

TEST_CASE("numeric failures exit 3 with the time", "[cli]") {
  TempDir dir;
  const Run r = cli({"simulate", "--channel", "custom:" + (kData / "spike_channel.json").string(), "--theta", "pi/6",
                     "--tau-max", "8", "--steps", "40", "--out", (dir / "x.csv").string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("tau=3") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "x.csv"));

  write(dir / "neg.json", R"js({"kind": "custom", "dim": 2,
      "kraus": [[[["sqrt(1-t)","0"],["0","0"]],[["0","0"],["sqrt(1-t)","0"]]],
                [[["sqrt(t)","0"],["0","0"]],[["0","0"],["sqrt(t)","0"]]]]})js");
  const Run d = cli({"simulate", "--channel", "custom:" + (dir / "neg.json").string(), "--theta", "0.3", "--tau-max",
                     "2", "--steps", "20", "--out", (dir / "y.csv").string()});
  CHECK(d.code == 3);
  CHECK(d.err.find("tau=1.1") != std::string::npos);
}

TEST_CASE("reproduce writes data and report", "[cli]") {
  TempDir dir;
  SECTION("fig2") {
    const Run r = cli({"reproduce", "fig2", "--out-dir", (dir / "out").string()});
    REQUIRE(r.code == 0);
    const auto ls = lines(slurp(dir / "out" / "fig2.csv"));
    REQUIRE(ls.size() == 4002);
    double worst_heat = 0.0;
    double worst_sum = 0.0;
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const auto v = row(ls[i]);
      worst_heat = std::max(worst_heat, std::abs(v[3] - v[5]));
      worst_sum = std::max(worst_sum, std::abs(v[3] + v[4]));
    }
    CHECK(worst_heat <= 1e-5);
    CHECK(worst_sum <= 5e-6);
    const std::string report = slurp(dir / "out" / "fig2_report.txt");
    CHECK(report.find("max |heat - heat_oracle|") != std::string::npos);
    CHECK(report == r.out);
  }
  SECTION("fig3") {
    REQUIRE(cli({"reproduce", "fig3", "--out-dir", (dir / "out").string()}).code == 0);
    const auto ls = lines(slurp(dir / "out" / "fig3.csv"));
    std::size_t peak = 1;
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const auto v = row(ls[i]);
      CHECK(std::abs(v[1]) <= 1e-9);
      if (v[3] > row(ls[peak])[3]) peak = i;
    }
    const auto p = row(ls[peak]);
    CHECK(std::abs(p[0] - std::log(2.0)) <= 2.0 * 8.0 / 4000);
    CHECK(std::abs(p[3] - 0.17328679513998632) <= 1e-4);
  }
  SECTION("bad figure") { CHECK(cli({"reproduce", "fig4", "--out-dir", (dir / "out").string()}).code == 2); }
}

TEST_CASE("channel-info", "[cli]") {
  SECTION("phase damping at ln 4") {
    const Run r = cli({"channel-info", "--channel", "phase-damping", "--t", "log(4)"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("[ 1, 0 ]") != std::string::npos);
    CHECK(r.out.find("[ 0, 0.5 ]") != std::string::npos);
    CHECK(r.out.find("0.8660254") != std::string::npos);
  }
  SECTION("phase flip at 0") {
    const Run r = cli({"channel-info", "--channel", "phase-flip", "--t", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("cptp deviation 0.00000000000e+00 (ok)") != std::string::npos);
  }
  SECTION("non-CPTP custom channel is flagged") {
    TempDir dir;
    write(dir / "ii.json", R"js({"kind": "custom", "dim": 2,
        "kraus": [[[["1","0"],["0","0"]],[["0","0"],["1","0"]]], [[["1","0"],["0","0"]],[["0","0"],["1","0"]]]]})js");
    const Run r = cli({"channel-info", "--channel", "custom:" + (dir / "ii.json").string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("cptp deviation 1.00000000000e+00 (NOT CPTP)") != std::string::npos);
  }
  SECTION("expression errors exit 3") {
    TempDir dir;
    write(dir / "d.json", R"js({"kind": "custom", "dim": 1, "kraus": [[[["sqrt(-1-t)","0"]]]]})js");
    const Run r = cli({"channel-info", "--channel", "custom:" + (dir / "d.json").string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("sqrt") != std::string::npos);
  }
  SECTION("usage errors") {
    CHECK(cli({"channel-info", "--channel", "phase-flip", "--t", "-1"}).code == 2);
    CHECK(cli({"channel-info", "--channel", "phase-flip", "--t", "t+1"}).code == 2);
    CHECK(cli({"channel-info"}).code == 2);
  }
}

TEST_CASE("top-level usage", "[cli]") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  const Run h = cli({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("simulate") != std::string::npos);
  CHECK(cli({"verify", "--tol", "-1"}).code == 2);
}

TEST_CASE("verify with a tolerance below the method order fails", "[cli][slow]") {
  const Run r = cli({"verify", "--tol", "1e-12"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL  1") != std::string::npos);
  CHECK(r.out.find("max |Q - closed form|") != std::string::npos);
  // Structural checks keep their pinned tolerances.
  CHECK(r.out.find("PASS  9") != std::string::npos);
  CHECK(r.out.find("PASS 11") != std::string::npos);
}

TEST_CASE("helpers", "[cli]") {
  using namespace qthermo::cli;
  CHECK(parse_angle("pi/6") == std::numbers::pi / 6);
  CHECK(parse_angle("2*pi/3") == 2 * std::numbers::pi / 3);
  CHECK(parse_angle("0.25") == 0.25);
  CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
  CHECK(format_value(-0.0) == "0.00000000000e+00");
  CHECK(format_value(0.1732) == "1.73200000000e-01");
  CHECK(format_value(-2.5e-7) == "-2.50000000000e-07");
}

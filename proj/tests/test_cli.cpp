#include "doctest.h"

#include "tempered/cli.hpp"
#include "tempered/gallery.hpp"
#include "tempered/io.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace tempered;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tempered_cli_" + name)).string();
}

}  // namespace

TEST_CASE("detect recovers an emitted crystal") {
  const std::string pts = temp_path("pts.json");
  REQUIRE(run({"--seed", "7", "gallery", "emit", "shifted-crystal", "--what", "points", "-o", pts}).code == 0);
  const auto r = run({"detect", pts});
  REQUIRE(r.code == 0);
  const auto det = detection_from_json(r.out);
  REQUIRE(det.found());
  const auto truth = gallery("shifted-crystal", {}, 7);
  CHECK(lattices_equal(det.crystal->lattice, truth.crystal->lattice));
  CHECK(det.crystal->cosets.size() == truth.crystal->cosets.size());
  // Same seed, same bytes.
  CHECK(run({"--seed", "7", "gallery", "emit", "shifted-crystal", "--what", "points"}).out == read_file(pts));
}

TEST_CASE("verify on the remark series flags unbounded kappa") {
  const std::string path = temp_path("remark.json");
  REQUIRE(run({"gallery", "emit", "remark", "--param", "J=30", "-o", path}).code == 0);
  const auto r = run({"verify", path, "--window", "32"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"sup-kappa-bounded\",\n      \"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("verify on the incommensurate pair names the broken hypothesis") {
  const std::string path = temp_path("pair.json");
  REQUIRE(run({"gallery", "emit", "incommensurate-pair", "-o", path}).code == 0);
  const auto r = run({"verify", path, "--window", "50"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"not-crystal\"") != std::string::npos);
  CHECK(r.out.find("hypothesis not met: finite-type") != std::string::npos);
}

TEST_CASE("spectrum of the integer comb") {
  const std::string path = temp_path("z.json");
  REQUIRE(run({"gallery", "emit", "zd-comb", "-o", path}).code == 0);
  const auto r = run({"spectrum", path, "--out", "csv", "--radius", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.find(',', line.find(',') + 1)) == ",1,0,1");
  }
  CHECK(rows == 5);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  const auto bad = run({"gallery", "emit", "no-such-entry"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("\"error\":\"invalid-argument\"") != std::string::npos);

  const std::string path = temp_path("pair2.json");
  REQUIRE(run({"gallery", "emit", "incommensurate-pair", "-o", path}).code == 0);
  const auto r = run({"spectrum", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("incommensurable") != std::string::npos);
}

TEST_CASE("convolve then almost-periods") {
  const std::string dist = temp_path("zc.json"), fn = temp_path("fn.json"), csv = temp_path("g.csv");
  REQUIRE(run({"gallery", "emit", "zd-comb", "-o", dist}).code == 0);
  write_file(fn, to_json(TestFunction::gaussian(zero_point(1))));
  REQUIRE(run({"convolve", dist, fn, "--window", "4", "--step", "0.0625", "-o", csv}).code == 0);
  const auto r = run({"almost-periods", csv, "--eps", "1e-9"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"count\": 5") != std::string::npos);
}

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "hocomp_cli_test";
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const fs::path log = scratch() / "stdout.txt";
  const std::string cmd = std::string(HOCOMP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("distance command") {
  const std::string out = (scratch() / "d").string();
  const Run r = run("--out " + out + " distance --from 0,0 --to 1,1");
  CHECK(r.code == 0);
  const auto pos = r.out.find("distance ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 9)) == doctest::Approx(1.5035).epsilon(0.01));
  const std::string csv = slurp(fs::path(out) / "distance_path.csv");
  CHECK(csv.rfind("# hocomp 0.1.0 command=distance config=fnv1a:", 0) == 0);
  CHECK(csv.find("seed=1\nx,y\n") != std::string::npos);

  const Run zero = run("--out " + out + " distance --from 0,0 --to 0,0");
  CHECK(zero.code == 0);
  CHECK(zero.out.find("distance 0\n") != std::string::npos);

  const std::string wall = write_config("wall.ini", "[metric]\np = inf\n");
  const Run blocked = run("--config " + wall + " --out " + out + " distance --from 0,0 --to 0.5,0.5");
  CHECK(blocked.code == 2);
  CHECK(blocked.out.find("disconnected") != std::string::npos);

  CHECK(run("--out " + out + " distance --from 0,0 --to oops").code == 1);
  CHECK(run("distance --from 0,0").code == 1);
}

TEST_CASE("usage and config errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--config /nonexistent.ini lambda").code == 1);
  const std::string bad = write_config("bad.ini", "[metric]\nbogus = 1\n");
  const Run r = run("--config " + bad + " lambda");
  CHECK(r.code == 1);
  CHECK(r.out.find("bogus") != std::string::npos);
  const std::string empty = write_config("empty.ini", "[experiment]\nk_range = []\n");
  CHECK(run("--config " + empty + " critical").code == 1);
  const std::string reversed = write_config("rev.ini", "[experiment]\nk_range = [5, 2]\n");
  CHECK(run("--config " + reversed + " critical").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("resource limits exit with 3") {
  const std::string huge = write_config("huge.ini", "[solver]\nnodes_per_cell = 4096\n");
  const Run r = run("--config " + huge + " --out " + (scratch() / "h").string() + " distance --from 0,0 --to 50,50");
  CHECK(r.code == 3);
}

TEST_CASE("lambda command") {
  Run r = run("lambda");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out.substr(r.out.find("lambda ") + 7)) == doctest::Approx(1.5708).epsilon(1e-4));
  const std::string tri = write_config("tri.ini", "[shape]\nshape = polygon\nvertices = [[0.2,0.2],[0.8,0.2],[0.5,0.8]]\n");
  r = run("--config " + tri + " lambda");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out.substr(r.out.find("lambda ") + 7)) >= 1.0);
}

TEST_CASE("homogenize validates the direction count") {
  const Run r = run("--out " + (scratch() / "hom").string() + " homogenize --directions 3");
  CHECK(r.code == 1);
  CHECK(r.out.find("n_directions >= 8 required") != std::string::npos);
}

TEST_CASE("critical runs are byte-identical and carry the header") {
  const std::string cfg = write_config("crit.ini", "seed = 9\n[metric]\np_list = [1, inf]\n[solver]\nnodes_per_cell = 32\n"
                                                   "[experiment]\nk_range = [1, 3]\n");
  const fs::path a = scratch() / "crit_a", b = scratch() / "crit_b";
  REQUIRE(run("--config " + cfg + " --out " + a.string() + " --svg critical").code == 0);
  REQUIRE(run("--config " + cfg + " --out " + b.string() + " --svg critical").code == 0);
  const std::string ca = slurp(a / "critical.csv");
  CHECK(ca == slurp(b / "critical.csv"));
  CHECK(slurp(a / "critical_verdicts.csv") == slurp(b / "critical_verdicts.csv"));
  CHECK(slurp(a / "critical_p1.svg") == slurp(b / "critical_p1.svg"));
  CHECK(ca.rfind("# hocomp 0.1.0 command=critical config=fnv1a:", 0) == 0);
  CHECK(ca.find(" seed=9\n") != std::string::npos);
  CHECK(fs::exists(a / "critical_pinf.svg"));
}

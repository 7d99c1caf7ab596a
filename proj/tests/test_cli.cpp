// End-to-end checks of the command line tool. The binary path is argv[1],
// handed over by the build so the tests run against the current build tree.
#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

std::string g_cli;
fs::path g_work;

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  fs::path d = g_work / (tag + "_" + std::to_string(counter++));
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Runs the tool with the given arguments; stdout+stderr land in `log`.
int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("frame check accepts a two-channel geometry") {
  const fs::path dir = fresh_dir("frame_ok");
  write_file(dir / "cfg", "omega = 3.141592653589793\nt0 = 1.25\n");
  const int rc = run_cli("check-frame --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  const std::string log = slurp(dir / "log");
  CHECK(rc == 0);
  CHECK(contains(log, "regime: even"));
  CHECK(contains(log, "channels: 2"));
  CHECK(contains(log, "is_frame: true"));
  const std::string report = slurp(dir / "frame_report.csv");
  CHECK(first_line(report) == "quantity,value");
  CHECK(contains(report, "is_frame,1"));
  CHECK(contains(report, "violations") == false);
}

TEST_CASE("frame check flags an undersampled geometry") {
  const fs::path dir = fresh_dir("frame_bad");
  write_file(dir / "cfg", "omega = 3.141592653589793\nt0 = 0.6\n");
  const int rc = run_cli("check-frame --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  CHECK(rc == 2);
  CHECK(contains(slurp(dir / "log"), "is_frame: false"));
}

TEST_CASE("config problems exit with the usage code") {
  const fs::path dir = fresh_dir("cfg_err");
  write_file(dir / "no_eq", "omega 3.14\n");
  write_file(dir / "no_t0", "omega = 3.141592653589793\n");
  write_file(dir / "dup", "t0 = 1.25\nt0 = 1.5\nomega = 3.14\n");
  CHECK(run_cli("check-frame --config \"" + (dir / "no_eq").string() + "\"",
                dir / "log1") == 1);
  CHECK(run_cli("check-frame --config \"" + (dir / "no_t0").string() + "\"",
                dir / "log2") == 1);
  CHECK(run_cli("check-frame --config \"" + (dir / "dup").string() + "\"",
                dir / "log3") == 1);
  CHECK(run_cli("check-frame --config \"" + (dir / "absent").string() + "\"",
                dir / "log4") == 1);
  CHECK(run_cli("frobnicate", dir / "log5") == 1);
  CHECK(run_cli("", dir / "log6") == 1);
}

TEST_CASE("dual tables carry one column pair per channel") {
  const fs::path dir = fresh_dir("duals");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 1.25\nfreq_points = 17\n"
             "time_points = 9\n");
  const int rc = run_cli("duals --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  const std::string log = slurp(dir / "log");
  CHECK(rc == 0);
  CHECK(contains(log, "dual_path: closed-form"));
  CHECK(contains(log, "projection_defect:"));
  CHECK(first_line(slurp(dir / "duals_freq.csv")) ==
        "frequency,re_dual1,im_dual1,re_dual2,im_dual2");
  CHECK(first_line(slurp(dir / "duals_time.csv")) == "t,dual1,dual2");
}

TEST_CASE("sampling writes the masked lattice window") {
  const fs::path dir = fresh_dir("sample");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 1.25\nsignal = 1@0\n"
             "window_radius = 5\nmissing = -2, 1\nlambda = 1\n");
  const int rc = run_cli("sample --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  CHECK(rc == 0);
  CHECK(contains(slurp(dir / "log"), "masked: 2 x 1"));
  const std::string csv = slurp(dir / "samples.csv");
  CHECK(first_line(csv) == "channel,n,value,missing");
  CHECK(contains(csv, "1,-2,0,1"));   // masked entry: zero value, flag set
  CHECK(contains(csv, "1,-1,"));
  CHECK(contains(csv, "2,-2,"));
  CHECK(contains(csv, "2,-2,0,1") == false);  // mask stops at lambda
}

TEST_CASE("seeded signals are reproducible and distinct across seeds") {
  const fs::path dir = fresh_dir("seed");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 1.25\nwindow_radius = 4\n");
  const std::string base =
      "sample --config \"" + (dir / "cfg").string() + "\" --out \"";
  REQUIRE(run_cli(base + (dir / "a").string() + "\" --seed 5", dir / "log1") == 0);
  REQUIRE(run_cli(base + (dir / "b").string() + "\" --seed 5", dir / "log2") == 0);
  REQUIRE(run_cli(base + (dir / "c").string() + "\" --seed 6", dir / "log3") == 0);
  const std::string a = slurp(dir / "a" / "samples.csv");
  CHECK(a == slurp(dir / "b" / "samples.csv"));
  CHECK(a != slurp(dir / "c" / "samples.csv"));
}

TEST_CASE("reconstruction command reports its error metrics") {
  const fs::path dir = fresh_dir("recon");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 1.25\nsignal = 1@2.1, -0.7@-1.7\n"
             "window_radius = 40\neval_lo = -4\neval_hi = 4\neval_grid = 17\n");
  const int rc = run_cli("reconstruct --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  const std::string log = slurp(dir / "log");
  CHECK(rc == 0);
  CHECK(contains(log, "sup_err:"));
  CHECK(contains(log, "rms_err:"));
  CHECK(first_line(slurp(dir / "reconstruction.csv")) ==
        "x,f_true,f_recon,abs_err");
}

TEST_CASE("recovery round-trip writes every artifact deterministically") {
  const fs::path dir = fresh_dir("recover");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 1.25\nsignal = 1@2.1, -0.7@-1.7\n"
             "window_radius = 60\nmissing = -2, 3\nlambda = 2\n"
             "eval_lo = -4\neval_hi = 4\neval_grid = 9\n");
  const std::string base =
      "recover --config \"" + (dir / "cfg").string() + "\" --out \"";
  REQUIRE(run_cli(base + (dir / "a").string() + "\"", dir / "log1") == 0);
  REQUIRE(run_cli(base + (dir / "b").string() + "\"", dir / "log2") == 0);

  const std::string log = slurp(dir / "log1");
  CHECK(contains(log, "missing: 2 indices x 2 channels"));
  CHECK(contains(log, "max_abs_err:"));
  CHECK(first_line(slurp(dir / "a" / "recovery_report.csv")) ==
        "channel,index,true,recovered,abs_err,rel_err");
  CHECK(first_line(slurp(dir / "a" / "recovery_metrics.csv")) == "metric,value");
  CHECK(first_line(slurp(dir / "a" / "reconstruction.csv")) ==
        "x,f_true,f_recon_zeroed,f_recon_recovered,abs_err_zeroed,abs_err_recovered");
  CHECK(first_line(slurp(dir / "a" / "samples_recovered.csv")) ==
        "channel,n,value,missing");
  // No masked entries survive the round trip.
  CHECK(contains(slurp(dir / "a" / "samples_recovered.csv"), ",1\n") == false);

  for (const char* name : {"recovery_report.csv", "recovery_metrics.csv",
                           "reconstruction.csv", "samples_recovered.csv"}) {
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
}

TEST_CASE("recovery at the critical sampling step exits with its own code") {
  const fs::path dir = fresh_dir("critical");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 2\nsignal = 1@2.1\n"
             "window_radius = 30\nmissing = 0\nlambda = 2\n");
  const int rc = run_cli("recover --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  const std::string log = slurp(dir / "log");
  CHECK(rc == 3);
  CHECK(contains(log, "not recoverable"));
  CHECK(contains(log, "certificate:"));
}

TEST_CASE("recovery with nothing missing is a clean no-op") {
  const fs::path dir = fresh_dir("noop");
  write_file(dir / "cfg",
             "omega = 3.141592653589793\nt0 = 1.25\nsignal = 1@2.1\n"
             "window_radius = 20\neval_grid = 5\n");
  const int rc = run_cli("recover --config \"" + (dir / "cfg").string() +
                             "\" --out \"" + dir.string() + "\"",
                         dir / "log");
  CHECK(rc == 0);
  CHECK(contains(slurp(dir / "log"), "missing: 0 indices"));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <bandlim binary> [doctest options]\n",
                 argv[0]);
    return 1;
  }
  g_cli = argv[1];
  g_work = fs::temp_directory_path() /
           ("bandlim_cli_" + std::to_string(::getpid()));
  fs::create_directories(g_work);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  const int rc = ctx.run();
  std::error_code ec;
  fs::remove_all(g_work, ec);
  return rc;
}

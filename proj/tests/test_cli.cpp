#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef FMBOUND_CLI_PATH
#define FMBOUND_CLI_PATH "fmbound"
#endif

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "fmbound_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

CliResult run_cli(const std::string& args) {
  const fs::path out_path = scratch_dir() / "stdout.txt";
  const std::string cmd =
      std::string(FMBOUND_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.stdout_text = buffer.str();
  return result;
}

}  // namespace

TEST_CASE("cli mu: identity symbol on S3 and the zero symbol") {
  const auto cfg = write_config("mu_s3.json", R"({
    "model": {"kind": "finite_group", "name": "S3"},
    "symbol": {"kind": "identity"}
  })");
  const CliResult res = run_cli("mu --config " + cfg.string() + " --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text == "value,width,cumulative_width\n1,1,1\n");

  const auto zero_cfg = write_config("mu_zero.json", R"({
    "model": {"kind": "finite_group", "name": "S3"},
    "symbol": {"kind": "zero"}
  })");
  const CliResult zero = run_cli("mu --config " + zero_cfg.string() + " --format csv");
  CHECK(zero.exit_code == 0);
  CHECK(zero.stdout_text == "value,width,cumulative_width\n");
}

TEST_CASE("cli mu: diagonal symbol on Z4 has four width-1/4 rows") {
  const auto cfg = write_config("mu_z4.json", R"({
    "model": {"kind": "finite_abelian", "orders": [4]},
    "symbol": {"kind": "diagonal", "values": [1, 2, 3, 4]}
  })");
  const CliResult res = run_cli("mu --config " + cfg.string() + " --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text ==
        "value,width,cumulative_width\n4,0.25,0.25\n3,0.25,0.5\n2,0.25,0.75\n1,0.25,1\n");
}

TEST_CASE("cli bound: averaging symbol closed form and SU(2) projection") {
  const auto avg = write_config("bound_avg.json", R"({
    "model": {"kind": "finite_abelian", "orders": [8]},
    "symbol": {"kind": "averaging"},
    "exponents": {"p": 1.5, "q": 3.0}
  })");
  const CliResult res = run_cli("bound --config " + avg.string() + " --format csv");
  CHECK(res.exit_code == 0);
  // 8^(1/q - 1/p) = 8^(-1/3) = 0.5
  CHECK(res.stdout_text.find("level-set,1.5,3,0.5\n") != std::string::npos);

  const auto proj = write_config("bound_su2.json", R"({
    "model": {"kind": "su2", "max_level": 1},
    "symbol": {"kind": "projection", "blocks": 3},
    "exponents": {"p": 1.5, "q": 3.0}
  })");
  const CliResult su2 = run_cli("bound --config " + proj.string());
  CHECK(su2.exit_code == 0);
  // 14^(1/r), 1/r = 1/3
  CHECK(su2.stdout_text.find("2.4101422641752297") != std::string::npos);
}

TEST_CASE("cli verify: passing experiment exits 0") {
  const auto cfg = write_config("verify_sharp.json", R"({
    "model": {"kind": "finite_abelian", "orders": [8]},
    "experiment": {"name": "sharpness-l2", "trials": 10, "seed": 3}
  })");
  const CliResult res = run_cli("verify --config " + cfg.string());
  CHECK(res.exit_code == 0);
}

TEST_CASE("cli verify: infinite M_phi is a configuration error (exit 2)") {
  const auto cfg = write_config("verify_hyp_bad.json", R"({
    "model": {"kind": "finite_abelian", "orders": [12]},
    "phi": {"kind": "reciprocal", "alpha": 2.0},
    "exponents": {"p": 1.5, "b": 1.5},
    "experiment": {"name": "hyp", "trials": 5, "seed": 3}
  })");
  const CliResult res = run_cli("verify --config " + cfg.string());
  CHECK(res.exit_code == 2);
}

TEST_CASE("cli config errors exit 2") {
  const auto broken = write_config("broken.json", "{ not json");
  CHECK(run_cli("verify --config " + broken.string()).exit_code == 2);

  const auto unknown = write_config("unknown_key.json", R"({
    "model": {"kind": "finite_abelian", "orders": [8]},
    "experiment": {"name": "sharpness-l2", "trials": 5},
    "surprise": true
  })");
  CHECK(run_cli("verify --config " + unknown.string()).exit_code == 2);

  const auto bad_model = write_config("bad_model.json", R"({
    "model": {"kind": "finite_abelian", "orders": [0]},
    "experiment": {"name": "sharpness-l2", "trials": 5}
  })");
  CHECK(run_cli("verify --config " + bad_model.string()).exit_code == 2);

  CHECK(run_cli("verify --config /nonexistent.json").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("cli verify: reports written via --out are byte-identical across runs") {
  const auto cfg = write_config("verify_hy.json", R"({
    "model": {"kind": "finite_abelian", "orders": [6]},
    "exponents": {"p": 1.5},
    "experiment": {"name": "hausdorff-young", "trials": 25, "seed": 11}
  })");
  const fs::path out1 = scratch_dir() / "report1.json";
  const fs::path out2 = scratch_dir() / "report2.json";
  CHECK(run_cli("verify --config " + cfg.string() + " --out " + out1.string()).exit_code == 0);
  CHECK(run_cli("verify --config " + cfg.string() + " --out " + out2.string()).exit_code == 0);
  std::ifstream a(out1), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().find("\"schema\": \"fmbound/1\"") != std::string::npos);
}

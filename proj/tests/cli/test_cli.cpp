#include <doctest.h>

#include <cmath>
#include <string>

#include "cli_support.hpp"
#include "paramp/constants.hpp"

using paramp::testing::cli;
using paramp::testing::split_csv;
using paramp::testing::TempFile;

namespace {

double cell(const std::string& row, std::size_t col) { return std::stod(split_csv(row).at(col)); }

}  // namespace

TEST_CASE("CSV schemas") {
  CHECK(cli({"qfi"}).table().at(0) == "r,theta,f,n_th,method,qfi,convergence_estimate,status");
  CHECK(cli({"plan", "--f", "0.02"}).table().at(0) ==
        "r,theta,f,n_th,method,qfi,m,delta_f,relative_error,target_error,status");
  CHECK(cli({"flux"}).table().at(0) ==
        "phi_ext_over_phi0,d_phi_over_phi0,i_c,l_0,e_j,l_eff,sensitivity_per_unit_dphi,dl_over_l,"
        "relative_error_factor");
  CHECK(cli({"sweep", "--r-range", "0:2:3"}).table().at(0) ==
        "r,theta,f,n_th,method,objective,qfi,value,status");
  CHECK(cli({"simulate", "--f", "0.02", "--trials", "3"}).table().at(0) ==
        "kind,trial,seed,f_hat,log_likelihood,converged,mean,std,quantum_bound,classical_bound,"
        "std_over_quantum,std_over_classical,qfi,fisher_heterodyne,non_converged");
}

TEST_CASE("metadata preamble") {
  const auto r = cli({"qfi", "--r", "1.5"});
  const auto lines = r.lines();
  REQUIRE(lines.size() > 3);
  CHECK(lines[0] == "# paramp " PARAMP_VERSION);
  CHECK(lines[1] == "# command = qfi");
  CHECK(r.has_line("# r = 1.5 (flag)"));
  CHECK(r.has_line("# theta = 0 (default)"));
  CHECK(r.has_line("# f = 0.020010144290380848 (derived from drive)"));
}

TEST_CASE("qfi subcommand") {
  const auto a = cli({"qfi", "--method", "two-analytic", "--r", "2", "--theta", "0", "--f", "0.02", "--n-th", "8e-3"});
  REQUIRE(a.code == 0);
  CHECK(std::abs(cell(a.table().at(1), 5) - 2888.5) <= 0.1);

  const auto z = cli({"qfi", "--method", "two-analytic", "--r", "0", "--theta", "0", "--f", "0", "--n-th", "0"});
  REQUIRE(z.code == 0);
  const auto row = split_csv(z.table().at(1));
  CHECK(std::stod(row.at(5)) == 0.0);
  CHECK(row.at(7) == "leading-order");
  CHECK(row.at(6).empty());

  const auto n = cli({"qfi", "--method", "two-numeric", "--f", "0.02"});
  REQUIRE(n.code == 0);
  CHECK(split_csv(n.table().at(1)).at(7) == "ok");
  CHECK_FALSE(split_csv(n.table().at(1)).at(6).empty());
}

TEST_CASE("qfi numeric row agrees with the analytic row") {
  const std::vector<std::string> point{"--r", "2", "--theta", "0", "--f", "0.02", "--n-th", "8e-3"};
  std::vector<std::string> a{"qfi", "--method", "two-analytic"};
  std::vector<std::string> n{"qfi", "--method", "two-numeric"};
  a.insert(a.end(), point.begin(), point.end());
  n.insert(n.end(), point.begin(), point.end());
  const double ha = cell(cli(a).table().at(1), 5);
  const double hn = cell(cli(n).table().at(1), 5);
  CAPTURE(ha);
  CAPTURE(hn);
  CHECK(std::abs(hn - ha) <= 0.01 * ha);
}

TEST_CASE("plan subcommand") {
  const auto ok = cli({"plan", "--r", "2", "--theta", "0", "--f", "0.02", "--n-th", "8e-3", "--target-error", "0.1"});
  REQUIRE(ok.code == 0);
  auto row = split_csv(ok.table().at(1));
  CHECK(row.at(6) == "87");
  CHECK(row.at(10) == "ok");

  const auto big = cli({"plan", "--r", "1", "--theta", "0", "--f", "0.02", "--n-th", "0", "--target-error", "0.1"});
  REQUIRE(big.code == 0);
  row = split_csv(big.table().at(1));
  CHECK(row.at(6) == "4744");
  CHECK(row.at(10) == "exceeds-array");

  const auto fixed = cli({"plan", "--f", "0.02", "--m", "1000"});
  REQUIRE(fixed.code == 0);
  row = split_csv(fixed.table().at(1));
  CHECK(std::stod(row.at(8)) == doctest::Approx(0.0294).epsilon(2e-3));
  CHECK(row.at(9).empty());

  CHECK(cli({"plan", "--f", "0.02", "--m", "0"}).code == 2);
  CHECK(cli({"plan", "--r", "0", "--n-th", "0", "--f", "0.02"}).code == 3);
}

TEST_CASE("flux subcommand") {
  const auto r = cli({"flux", "--phi-ext-over-phi0", "0.35", "--d-phi-over-phi0", "1e-3"});
  REQUIRE(r.code == 0);
  const auto row = r.table().at(1);
  CHECK(cell(row, 5) == doctest::Approx(4e-4).epsilon(1e-12));
  CHECK(cell(row, 7) == doctest::Approx(6.166e-3).epsilon(1e-4));
  CHECK(cell(row, 8) == doctest::Approx(2.158).epsilon(1e-3));

  CHECK(cell(cli({"flux", "--phi-ext-over-phi0", "0"}).table().at(1), 7) == 0.0);

  const auto guard = cli({"flux", "--phi-ext-over-phi0", "0.4999"});
  CHECK(guard.code == 3);
  CHECK(guard.err.find("phi_0/2") != std::string::npos);
}

TEST_CASE("sweep presets") {
  const auto f1 = cli({"sweep", "--preset", "fig1"});
  REQUIRE(f1.code == 0);
  CHECK(f1.table().size() == 1 + 64 * 64);
  const auto last = f1.lines().back();
  CHECK(last.rfind("# argmax:", 0) == 0);
  const auto pos = last.find("theta=");
  REQUIRE(pos != std::string::npos);
  const double theta = std::stod(last.substr(pos + 6));
  CHECK((std::abs(theta - paramp::constants::kPi / 2) < 0.06 || std::abs(theta - 3 * paramp::constants::kPi / 2) < 0.06));

  const auto f5 = cli({"sweep", "--preset", "fig5"});
  REQUIRE(f5.code == 0);
  CHECK(f5.lines().back().rfind("# argmin:", 0) == 0);
  const auto rows = f5.table();
  REQUIRE(rows.size() == 1 + 64 * 3);
  // r outer, f inner: M decreasing along each f column and across f
  for (std::size_t k = 0; k < 64; ++k) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double m = cell(rows[1 + 3 * k + j], 7);
      if (k > 0) CHECK(m < cell(rows[1 + 3 * (k - 1) + j], 7));
      if (j > 0) CHECK(m < cell(rows[1 + 3 * k + j - 1], 7));
    }
  }
}

TEST_CASE("sweep axes and failures") {
  const auto r = cli({"sweep", "--method", "two-analytic", "--r-range", "0:2:5", "--theta-range", "0:3.14:4:open"});
  REQUIRE(r.code == 0);
  CHECK(r.table().size() == 1 + 20);
  CHECK(r.has_line("# axis theta = 0:3.1400000000000001:4:open"));

  const auto dead = cli({"sweep", "--method", "two-analytic", "--objective", "m", "--r", "0", "--n-th", "0",
                         "--f-range", "0.01:0.03:3"});
  CHECK(dead.code == 3);
  CHECK(dead.table().size() == 4);
  CHECK(split_csv(dead.table().at(1)).at(8) == "error: no-information");

  CHECK(cli({"sweep"}).code == 2);
  CHECK(cli({"sweep", "--r-range", "0:2"}).code == 2);
  CHECK(cli({"sweep", "--r-range", "0:2:1"}).code == 2);
  CHECK(cli({"sweep", "--r-range", "a:2:5"}).code == 2);
  CHECK(cli({"sweep", "--preset", "fig9"}).code == 2);
  CHECK(cli({"sweep", "--r-range", "0:2:2000", "--theta-range", "0:1:2000"}).code == 2);
}

TEST_CASE("simulate subcommand") {
  const auto one = cli({"simulate", "--f", "0.02", "--trials", "1"});
  REQUIRE(one.code == 0);
  const auto summary = split_csv(one.table().back());
  CHECK(summary.at(0) == "summary");
  CHECK(summary.at(7).empty());

  const auto run = cli({"simulate", "--f", "0.02", "--trials", "20", "--seed", "7"});
  REQUIRE(run.code == 0);
  const auto rows = run.table();
  REQUIRE(rows.size() == 1 + 20 + 1);
  CHECK(split_csv(rows[3]).at(2) == std::to_string(7 ^ 2));
  const auto s = split_csv(rows.back());
  CHECK(std::stod(s.at(9)) >= std::stod(s.at(8)));

  const auto bad = cli({"simulate", "--f", "0.02", "--m", "1", "--trials", "40"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("did not converge") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"qfi", "--help"}).code == 0);
  CHECK(cli({"--version"}).code == 0);
  CHECK(cli({"fly"}).code == 2);
  CHECK(cli({"qfi", "--bogus", "1"}).code == 2);
  CHECK(cli({"qfi", "--r", "abc"}).code == 2);
  CHECK(cli({"qfi", "--r", "-1"}).code == 2);
  CHECK(cli({"qfi", "--method", "exact"}).code == 2);
  CHECK(cli({"qfi", "--f", "1.5"}).code == 2);
  CHECK(cli({"--config", "/nonexistent/paramp.conf", "qfi"}).code == 2);
  CHECK(cli({"--workers", "-3", "qfi"}).code == 2);
  CHECK(cli({"flux", "--phi-ext-over-phi0", "0.5"}).code == 3);

  const auto e = cli({"qfi", "--r", "abc"});
  CHECK(e.out.empty());
  CHECK(e.err.find("r") != std::string::npos);
}

TEST_CASE("config file parsing") {
  const TempFile bad_key("bad_key.conf", "r = 1\nfoo = 2\n");
  const auto r = cli({"--config", bad_key.path(), "qfi"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);

  const TempFile no_eq("no_eq.conf", "# comment\nr 1\n");
  CHECK(cli({"--config", no_eq.path(), "qfi"}).code == 2);
  const TempFile empty_value("empty.conf", "r =\n");
  CHECK(cli({"--config", empty_value.path(), "qfi"}).code == 2);
  const TempFile comments("comments.conf", "  # header\n\nr = 1.25   # trailing\n");
  const auto ok = cli({"--config", comments.path(), "qfi"});
  CHECK(ok.code == 0);
  CHECK(ok.has_line("# r = 1.25 (file)"));
}

TEST_CASE("config precedence: default < file < flag") {
  const TempFile file("precedence.conf", "r = 1.5\n");
  for (int mask = 0; mask < 4; ++mask) {
    const bool use_file = mask & 1;
    const bool use_flag = mask & 2;
    std::vector<std::string> args;
    if (use_file) args.insert(args.end(), {"--config", file.path()});
    args.push_back("qfi");
    if (use_flag) args.insert(args.end(), {"--r", "1.25"});
    const auto res = cli(args);
    REQUIRE(res.code == 0);
    const std::string expect = use_flag ? "# r = 1.25 (flag)" : use_file ? "# r = 1.5 (file)" : "# r = 2 (default)";
    CAPTURE(mask);
    CHECK(res.has_line(expect));
    CHECK(cell(res.table().at(1), 0) == (use_flag ? 1.25 : use_file ? 1.5 : 2.0));
  }
}

TEST_CASE("config precedence: preset < file < flag") {
  const TempFile file("preset.conf", "method = two-analytic\n");
  auto method_of = [](const paramp::testing::CliResult& r) { return split_csv(r.table().at(1)).at(4); };
  CHECK(method_of(cli({"sweep", "--preset", "fig1", "--r-range", "0:1:2", "--theta-range", "0:1:2"})) == "single");
  CHECK(method_of(cli({"--config", file.path(), "sweep", "--preset", "fig1", "--r-range", "0:1:2",
                       "--theta-range", "0:1:2"})) == "two-analytic");
  CHECK(method_of(cli({"--config", file.path(), "sweep", "--preset", "fig1", "--method", "two-numeric",
                       "--r-range", "0:1:2", "--theta-range", "0:1:2"})) == "two-numeric");
  const auto r = cli({"sweep", "--preset", "fig1", "--r-range", "0:1:2", "--theta-range", "0:1:2"});
  CHECK(r.has_line("# method = single (preset)"));
  CHECK(r.has_line("# preset = fig1"));
}

TEST_CASE("output file") {
  const TempFile out("out.csv");
  const auto r = cli({"--output", out.path(), "flux"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(out.read() == cli({"flux"}).out);
  CHECK(cli({"--output", "/nonexistent/dir/x.csv", "flux"}).code == 2);
}

TEST_CASE("determinism") {
  const std::vector<std::vector<std::string>> runs = {
      {"qfi", "--method", "two-numeric"},
      {"plan", "--f", "0.02"},
      {"flux"},
      {"sweep", "--method", "two-numeric", "--r-range", "0:2:9", "--theta-range", "0:6.283185307179586:8:open"},
      {"simulate", "--f", "0.02", "--trials", "30"},
  };
  for (const auto& args : runs) {
    CAPTURE(args.front());
    CHECK(cli(args).out == cli(args).out);
  }
  auto with_workers = [](std::vector<std::string> args, const char* n) {
    args.insert(args.begin(), {"--workers", n});
    return cli(args).out;
  };
  CHECK(with_workers(runs[3], "1") == with_workers(runs[3], "4"));
  CHECK(with_workers(runs[4], "1") == with_workers(runs[4], "3"));
}

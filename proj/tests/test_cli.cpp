#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qmf/cli.hpp"

using qmf::cli::CliResult;
using qmf::cli::run_cli;

namespace {

qmf::json payload_without_timing(const qmf::json& envelope) {
    qmf::json copy = envelope;
    copy.erase("elapsed_ms");
    return copy;
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(QMF_CLI_PATH) + " " + args + " > /tmp/qmf_cli_out.json 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("tau command") {
    CliResult r = run_cli({"tau", "-n", "1", "--method", "all"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.envelope["result"]["agree"] == true);
    CHECK(r.envelope["result"]["values"]["eta"] == "1");
    CHECK(r.envelope["result"]["values"]["manin"] == "1");
    CHECK(r.envelope["schema"] == 1);

    CliResult manin = run_cli({"tau", "-n", "6911", "--method", "manin"});
    REQUIRE(manin.exit_code == 0);
    CHECK(manin.envelope["result"]["tau"] == "-615012709514736031488");

    CliResult both = run_cli({"tau", "-n", "100", "--method", "all"});
    REQUIRE(both.exit_code == 0);
    CHECK(both.envelope["result"]["agree"] == true);
}

TEST_CASE("qexp command") {
    CliResult delta = run_cli({"qexp", "delta", "--terms", "19"});
    REQUIRE(delta.exit_code == 0);
    auto coeffs = delta.envelope["result"]["series"]["coeffs"];
    REQUIRE(coeffs.size() == 20);
    CHECK(coeffs[1] == "1");
    CHECK(coeffs[2] == "-24");
    CHECK(coeffs[19] == "10661420");

    CliResult part = run_cli({"qexp", "partition", "--terms", "5"});
    REQUIRE(part.exit_code == 0);
    CHECK(part.envelope["result"]["series"]["coeffs"] ==
          qmf::json::array({"1", "1", "2", "3", "5", "7"}));

    CliResult j = run_cli({"qexp", "j", "--terms", "2"});
    REQUIRE(j.exit_code == 0);
    CHECK(j.envelope["result"]["series"]["coeffs"] == qmf::json::array({"1", "744", "196884"}));

    CliResult gstar = run_cli({"qexp", "Gstar4", "--terms", "10", "--p", "5"});
    REQUIRE(gstar.exit_code == 0);
    CHECK(gstar.envelope["result"]["series"]["coeffs"][10] == "9");

    SECTION("invalid forms are usage errors") {
        CHECK(run_cli({"qexp", "nonsense", "--terms", "5"}).exit_code == 1);
        CHECK(run_cli({"qexp", "E3", "--terms", "5"}).exit_code == 1);
        CHECK(run_cli({"qexp", "Gstar4", "--terms", "5"}).exit_code == 1);  // missing --p
    }

    SECTION("text format renders the series") {
        CliResult text = run_cli({"--format", "text", "qexp", "delta", "--terms", "3"});
        REQUIRE(text.exit_code == 0);
        CHECK(text.output() == "q - 24*q^2 + 252*q^3 + O(q^4)");
    }
}

TEST_CASE("check command") {
    CHECK(run_cli({"check", "ramanujan-691", "--nmax", "200"}).exit_code == 0);
    CHECK(run_cli({"check", "gauss-identity", "--terms", "100"}).exit_code == 0);
    CHECK(run_cli({"check", "jacobi-triple", "--u", "2", "--terms", "40"}).exit_code == 0);
    CHECK(run_cli({"check", "cauchy", "--a", "1/2", "--t", "1/2", "--terms", "25"}).exit_code == 0);
    CHECK(run_cli({"check", "kummer", "--p", "5", "--N", "2", "--c", "2", "--h", "x^2-x^22"})
              .exit_code == 0);
    CHECK(run_cli({"check", "eisenstein-congruence", "--p", "5", "--k", "6", "--k2", "26", "--N",
                   "2", "--terms", "50"})
              .exit_code == 0);
    CHECK(run_cli({"check", "r4", "--nmax", "300"}).exit_code == 0);
    CHECK(run_cli({"check", "three-squares", "--nmax", "300"}).exit_code == 0);
    CHECK(run_cli({"check", "deligne", "--pmax", "100"}).exit_code == 0);
    CHECK(run_cli({"check", "lehmer", "--nmax", "300"}).exit_code == 0);
    CHECK(run_cli({"check", "hecke", "--nmax", "20"}).exit_code == 0);
    CHECK(run_cli({"check", "hardy-ramanujan", "--n", "1000"}).exit_code == 0);

    SECTION("failing checks exit 2") {
        // hypothesis of the kummer theorem fails for h = x
        CliResult r = run_cli({"check", "kummer", "--p", "5", "--N", "1", "--c", "2", "--h", "x"});
        CHECK(r.exit_code == 2);
        CHECK(r.envelope["result"]["pass"] == false);
        // an over-tight tolerance makes the asymptotic check fail honestly
        CHECK(run_cli({"check", "hardy-ramanujan", "--n", "100", "--tol", "0.0001"}).exit_code ==
              2);
    }

    SECTION("gauss report carries the surviving exponents") {
        CliResult r = run_cli({"check", "gauss-identity", "--terms", "20"});
        CHECK(r.envelope["result"]["report"]["exponents"] ==
              qmf::json::array({0, 1, 3, 6, 10, 15}));
    }

    SECTION("unknown check is a usage error") {
        CHECK(run_cli({"check", "nonsense"}).exit_code == 1);
    }
}

TEST_CASE("pzeta command") {
    CliResult r = run_cli({"pzeta", "--k", "1", "--p", "5", "--N", "3"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.envelope["result"]["rational"] == "1/3");
    CHECK(r.envelope["result"]["padic"]["residue"] == "42");

    CliResult zero = run_cli({"pzeta", "--k", "2", "--p", "7", "--N", "2"});
    REQUIRE(zero.exit_code == 0);
    CHECK(zero.envelope["result"]["rational"] == "0");

    // zeta(-4) = 0 is 5-integral, so this is a value, not an error
    CliResult k4 = run_cli({"pzeta", "--k", "4", "--p", "5", "--N", "2"});
    REQUIRE(k4.exit_code == 0);
    CHECK(k4.envelope["result"]["rational"] == "0");

    SECTION("von Staudt weights are structured errors with exit 2") {
        CliResult bad = run_cli({"pzeta", "--k", "3", "--p", "5", "--N", "2"});
        CHECK(bad.exit_code == 2);
        CHECK(bad.envelope["error"]["code"] == "NonPIntegral");
    }

    SECTION("regularized value with --c") {
        CliResult reg = run_cli({"pzeta", "--k", "1", "--p", "5", "--N", "2", "--c", "2"});
        REQUIRE(reg.exit_code == 0);
        CHECK(reg.envelope["result"]["rational"] == "-1");
    }
}

TEST_CASE("envelope determinism") {
    CliResult a = run_cli({"tau", "-n", "50", "--method", "all"});
    CliResult b = run_cli({"tau", "-n", "50", "--method", "all"});
    CHECK(payload_without_timing(a.envelope).dump() == payload_without_timing(b.envelope).dump());

    CliResult c = run_cli({"check", "gauss-identity", "--terms", "60"});
    CliResult d = run_cli({"check", "gauss-identity", "--terms", "60"});
    CHECK(payload_without_timing(c.envelope).dump() == payload_without_timing(d.envelope).dump());
}

TEST_CASE("config limits") {
    std::string path = "/tmp/qmf_test_config.toml";
    {
        std::ofstream out(path);
        out << "# test limits\nmax_terms = 10\nmax_prime = 100\nmax_precision = 4\n";
    }
    CHECK(run_cli({"--config", path, "qexp", "delta", "--terms", "19"}).exit_code == 1);
    CHECK(run_cli({"--config", path, "qexp", "delta", "--terms", "9"}).exit_code == 0);
    CHECK(run_cli({"--config", path, "pzeta", "--k", "1", "--p", "5", "--N", "6"}).exit_code == 1);
    CHECK(run_cli({"--config", path, "pzeta", "--k", "1", "--p", "103", "--N", "2"}).exit_code ==
          1);
    CHECK(run_cli({"--config", "/nonexistent/qmf.toml", "tau", "-n", "1"}).exit_code == 1);

    SECTION("QMF_CONFIG environment variable points at the file") {
        setenv("QMF_CONFIG", path.c_str(), 1);
        qmf::Limits limits = qmf::load_limits();
        unsetenv("QMF_CONFIG");
        CHECK(limits.max_terms == 10);
        CHECK(limits.max_prime == 100);
        CHECK(limits.max_precision == 4);
        CHECK(limits.max_weight == 64);  // untouched key keeps its default
    }

    SECTION("values are clamped to the hard caps") {
        std::istringstream big("max_terms = 999999999\nmax_precision = 1000\n");
        qmf::Limits limits = qmf::parse_limits(big);
        CHECK(limits.max_terms == qmf::Limits::kMaxTermsCap);
        CHECK(limits.max_precision == qmf::Limits::kMaxPrecisionCap);
    }

    SECTION("unknown keys are rejected") {
        std::istringstream bad("max_typo = 3\n");
        CHECK_THROWS_AS(qmf::parse_limits(bad), qmf::error);
    }

    std::remove(path.c_str());
}

TEST_CASE("binary smoke runs") {
    CHECK(run_binary("tau -n 1 --method all") == 0);
    CHECK(run_binary("qexp delta --terms 19") == 0);
    CHECK(run_binary("check gauss-identity --terms 100") == 0);
    CHECK(run_binary("pzeta --k 3 --p 5 --N 2") == 2);
    CHECK(run_binary("frobnicate") == 1);
    CHECK(run_binary("tau") == 1);

    SECTION("stdout carries parseable JSON") {
        REQUIRE(run_binary("tau -n 19 --method all") == 0);
        std::ifstream in("/tmp/qmf_cli_out.json");
        qmf::json env = qmf::json::parse(in);
        CHECK(env["result"]["tau"] == "10661420");
        CHECK(env["version"] == qmf::kVersion);
    }
}

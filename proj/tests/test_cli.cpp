#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "sqzqfi/dynamics.hpp"

#ifndef SQZQFI_CLI_PATH
#error "SQZQFI_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string base = std::string("/tmp/sqzqfi_cli_") + std::to_string(getpid()) + "_" +
                             std::to_string(counter++);
    const std::string out_path = base + ".out", err_path = base + ".err";
    const std::string cmd =
        std::string(SQZQFI_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return kv;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text, std::string* header) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            if (header) *header = line;
            first = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

TEST_CASE("cli qfi") {
    SECTION("t = 0 reports unit QFI on every route") {
        const auto res = run_cli("qfi --gamma-t 0");
        REQUIRE(res.exit_code == 0);
        const auto kv = parse_key_values(res.out);
        REQUIRE(std::stod(kv.at("qfi_analytic")) == 1.0);
        REQUIRE(std::stod(kv.at("qfi_eigen")) == 1.0);
        REQUIRE(std::stod(kv.at("qfi_bloch")) == 1.0);
        REQUIRE(std::stod(kv.at("thermal_baseline")) == 1.0);
        REQUIRE(kv.at("advantage") == "false");
        REQUIRE(std::stod(kv.at("cramer_rao_delta_phi")) == 1.0);
    }
    SECTION("markovian thermal point gives e^{-2}") {
        const auto res = run_cli("qfi --r 0 --gamma-t 1 --mode markovian --kT 0");
        REQUIRE(res.exit_code == 0);
        const auto kv = parse_key_values(res.out);
        REQUIRE_THAT(std::stod(kv.at("qfi_analytic")),
                     Catch::Matchers::WithinAbs(std::exp(-2.0), 1e-6));
    }
    SECTION("matched phase prints B2^2") {
        const auto res = run_cli("qfi --gamma-t 3 --lambda 0.1 --r 1 --theta 0.8 --phi 0.4");
        REQUIRE(res.exit_code == 0);
        sqzqfi::ReservoirSpec spec;
        spec.lambda_over_gamma = 0.1;
        spec.r = 1.0;
        const auto c = sqzqfi::solution_coefficients(
            sqzqfi::vartheta(3.0, spec, sqzqfi::EvolutionMode::nonMarkovian), 0.0, 1.0);
        const auto kv = parse_key_values(res.out);
        REQUIRE_THAT(std::stod(kv.at("qfi_analytic")),
                     Catch::Matchers::WithinAbs(c.B2 * c.B2, 1e-6));
        REQUIRE(kv.at("advantage") == "true");
    }
    SECTION("bad flag values exit 1") {
        REQUIRE(run_cli("qfi --lambda -3").exit_code == 1);
        REQUIRE(run_cli("qfi --mode sometimes").exit_code == 1);
        REQUIRE(run_cli("qfi --nu 0").exit_code == 1);
        REQUIRE(run_cli("qfi --no-such-flag 1").exit_code == 1);
    }
    SECTION("numerical degeneracy exits 2") {
        // fully decohered thermal point: the QFI denominator underflows
        const auto res = run_cli("qfi --r 0 --kT 0 --mode markovian --gamma-t 30");
        REQUIRE(res.exit_code == 2);
        REQUIRE(res.err.find("vanishing denominator") != std::string::npos);
    }
    SECTION("single-row csv is written and stable across reruns") {
        const std::string path = "/tmp/sqzqfi_test_qfi.csv";
        const std::string args = "qfi --gamma-t 2 --r 0.5 --kT 0.5 --csv " + path;
        REQUIRE(run_cli(args).exit_code == 0);
        const std::string first = slurp(path);
        REQUIRE(run_cli(args).exit_code == 0);
        REQUIRE(slurp(path) == first);
        std::string header;
        const auto rows = parse_csv_rows(first, &header);
        REQUIRE(rows.size() == 1);
        REQUIRE(header.rfind("gamma_t,", 0) == 0);
        std::remove(path.c_str());
    }
}

TEST_CASE("cli evolve") {
    SECTION("t-end 0 emits exactly the initial sample") {
        const auto res = run_cli("evolve --t-end 0");
        REQUIRE(res.exit_code == 0);
        std::string header;
        const auto rows = parse_csv_rows(res.out, &header);
        REQUIRE(header == "gamma_t,rho_ee,re_rho_eg,im_rho_eg,purity");
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0][0] == 0.0);
        REQUIRE(rows[0][1] == 0.5);
        REQUIRE_THAT(rows[0][4], Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("markovian vacuum: |rho_eg| = e^{-gamma t}/2") {
        const auto res =
            run_cli("evolve --mode markovian --r 0 --kT 0 --phi 0.9 --t-end 1 --dt 0.001 "
                    "--stride 250");
        REQUIRE(res.exit_code == 0);
        const auto rows = parse_csv_rows(res.out, nullptr);
        REQUIRE(rows.back()[0] == 1.0);
        const double coh = std::hypot(rows.back()[2], rows.back()[3]);
        REQUIRE_THAT(coh, Catch::Matchers::WithinAbs(0.5 * std::exp(-1.0), 1e-6));
    }
    SECTION("stride thins the output but keeps the final sample") {
        const auto res = run_cli("evolve --t-end 0.01 --dt 0.001 --stride 3");
        REQUIRE(res.exit_code == 0);
        const auto rows = parse_csv_rows(res.out, nullptr);
        REQUIRE(rows.size() == 5); // samples 0,3,6,9 plus the final index 10
        REQUIRE_THAT(rows.back()[0], Catch::Matchers::WithinAbs(0.01, 1e-12));
    }
    SECTION("unstable step exits 2") {
        const auto res =
            run_cli("evolve --mode markovian --r 1.5 --kT 1 --t-end 5 --dt 0.5");
        REQUIRE(res.exit_code == 2);
        REQUIRE(res.err.find("smaller dt") != std::string::npos);
    }
}

TEST_CASE("cli figure") {
    SECTION("fig3a: four temperature curves with the expected ordering") {
        const auto res = run_cli("figure fig3a --points 21 --output-dir /tmp");
        REQUIRE(res.exit_code == 0);
        const std::string text = slurp("/tmp/fig3a.csv");
        std::string header;
        const auto rows = parse_csv_rows(text, &header);
        REQUIRE(header == "gamma_t,kT,qfi_analytic");
        REQUIRE(rows.size() == 21 * 4);
        std::map<double, std::map<double, double>> by_t;
        for (const auto& row : rows) by_t[row[0]][row[1]] = row[2];
        for (const auto& [t, curve] : by_t) {
            if (t == 0.0) continue;
            REQUIRE(curve.at(0.0) > curve.at(0.5));
            REQUIRE(curve.at(0.5) > curve.at(1.0));
            REQUIRE(curve.at(1.0) > curve.at(2.0));
        }
        // byte-identical rerun
        REQUIRE(run_cli("figure fig3a --points 21 --output-dir /tmp").exit_code == 0);
        REQUIRE(slurp("/tmp/fig3a.csv") == text);
        std::remove("/tmp/fig3a.csv");
    }
    SECTION("plot script references only the csv") {
        const auto res = run_cli("figure fig6 --points 5 --output-dir /tmp --plot-script");
        REQUIRE(res.exit_code == 0);
        const std::string script = slurp("/tmp/fig6_plot.py");
        REQUIRE(script.find("fig6.csv") != std::string::npos);
        REQUIRE(script.find("sqzqfi") == std::string::npos);
        std::remove("/tmp/fig6.csv");
        std::remove("/tmp/fig6_plot.py");
    }
    SECTION("unknown id exits 1 and lists the valid ids") {
        const auto res = run_cli("figure fig99");
        REQUIRE(res.exit_code == 1);
        REQUIRE(res.err.find("fig2a") != std::string::npos);
        REQUIRE(res.err.find("fig6") != std::string::npos);
    }
    SECTION("unwritable output path exits 1") {
        REQUIRE(run_cli("figure fig3a --points 5 --output-dir /no/such/dir").exit_code == 1);
    }
}

TEST_CASE("cli config files") {
    const std::string cfg = "/tmp/sqzqfi_test.cfg";
    {
        std::ofstream out(cfg);
        out << "# reference thermal point\n"
            << "gamma-t = 1\n"
            << "r = 0\n"
            << "kT = 0\n"
            << "mode = markovian\n";
    }
    SECTION("config supplies defaults") {
        const auto res = run_cli("qfi --config " + cfg);
        REQUIRE(res.exit_code == 0);
        const auto kv = parse_key_values(res.out);
        REQUIRE_THAT(std::stod(kv.at("qfi_analytic")),
                     Catch::Matchers::WithinAbs(std::exp(-2.0), 1e-6));
    }
    SECTION("flags take precedence and --print-config echoes the result") {
        const auto res = run_cli("qfi --config " + cfg + " --gamma-t 0 --print-config");
        REQUIRE(res.exit_code == 0);
        const auto kv = parse_key_values(res.out);
        REQUIRE(kv.at("gamma-t") == "0");
        REQUIRE(kv.at("mode") == "markovian");
        REQUIRE(std::stod(kv.at("qfi_analytic")) == 1.0);
    }
    SECTION("unknown config keys are rejected") {
        const std::string bad = "/tmp/sqzqfi_test_bad.cfg";
        {
            std::ofstream out(bad);
            out << "gamma-t = 1\nbogus = 7\n";
        }
        REQUIRE(run_cli("qfi --config " + bad).exit_code == 1);
        std::remove(bad.c_str());
    }
    std::remove(cfg.c_str());
}

TEST_CASE("cli verify") {
    SECTION("injected fault trips the suite with exit 3") {
        const auto res = run_cli("verify --inject-fault b1b2-swap");
        REQUIRE(res.exit_code == 3);
        REQUIRE(res.out.find("FAIL  boundary-identities-and-phase-matching") !=
                std::string::npos);
    }
    SECTION("bad density exits 1") {
        REQUIRE(run_cli("verify --grid-density 0").exit_code == 1);
    }
}

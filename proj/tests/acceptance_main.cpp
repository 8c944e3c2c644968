// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 11 drives the installed CLI, whose path is argv[1].

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "sqzqfi/verify.hpp"

namespace {

struct Criterion {
    int number;
    std::string check_name;
    double time_budget_s;
};

} // namespace

int main(int argc, char** argv) {
    using namespace sqzqfi;

    const std::vector<Criterion> criteria{
        {1, "closed-form-vs-integrator", 30.0},
        {2, "three-route-agreement", 30.0},
        {3, "thermal-reduction", 1.0},
        {4, "boundary-identities-and-phase-matching", 5.0},
        {5, "periodicity", 1.0},
        {6, "temperature-ordering", 1.0},
        {7, "squeezing-crossover-and-matching", 5.0},
        {8, "matched-sweep-surface", 5.0},
        {9, "spectral-width-ordering", 5.0},
        {10, "initial-point", 1.0},
    };

    const VerifyReport report = verify_suite(1);
    bool all_pass = true;

    for (const auto& crit : criteria) {
        const VerifyCheck* check = report.find(crit.check_name);
        bool pass = check && check->pass && check->seconds < crit.time_budget_s;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << crit.number << " ("
                  << crit.check_name << "): ";
        if (!check) {
            std::cout << "check missing";
        } else {
            std::cout << "worst " << format_brief(check->worst_error) << ", tol "
                      << format_brief(check->tolerance) << ", " << format_brief(check->seconds)
                      << " s (budget " << format_brief(crit.time_budget_s) << " s)";
            if (!check->note.empty()) std::cout << " [" << check->note << "]";
        }
        std::cout << '\n';
        all_pass = all_pass && pass;
    }

    // criterion 11: the verify subcommand itself passes, in under 60 s
    {
        bool pass = false;
        std::string detail;
        if (argc < 2) {
            detail = "CLI path not supplied";
        } else {
            const std::string cmd = std::string(argv[1]) + " verify >/dev/null 2>&1";
            const auto start = std::chrono::steady_clock::now();
            const int status = std::system(cmd.c_str());
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            pass = code == 0 && seconds < 60.0;
            detail = "exit " + std::to_string(code) + ", " + format_brief(seconds) +
                     " s (budget 60 s)";
        }
        std::cout << (pass ? "PASS" : "FAIL") << " criterion 11 (verify-cli): " << detail << '\n';
        all_pass = all_pass && pass;
    }

    std::cout << (all_pass ? "acceptance: PASS" : "acceptance: FAIL") << '\n';
    return all_pass ? 0 : 1;
}

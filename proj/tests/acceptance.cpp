// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "tcat/suite.hpp"

namespace {

// Seconds allowed per criterion, index = criterion id.
constexpr double kLimit[] = {0, 1.0, 1.0, 10.0, 15.0, 10.0, 20.0, 20.0, 20.0, 30.0, 60.0};

bool report(int id, const std::string& title, bool pass, double secs, const std::string& detail)
{
    bool in_time = secs < kLimit[id];
    bool ok = pass && in_time;
    std::printf("criterion %2d %-32s %s  %.2fs (limit %.0fs)%s%s\n", id, title.c_str(), ok ? "PASS" : "FAIL", secs,
                kLimit[id], detail.empty() ? "" : "  ", detail.c_str());
    if (pass && !in_time)
        std::printf("             time limit exceeded\n");
    return ok;
}

}  // namespace

int main()
{
    tcat::SuiteOptions opt;
    bool all = true;
    for (int id = 1; id <= 9; ++id) {
        auto r = tcat::run_criterion(id, opt);
        all = report(id, r.title, r.pass, r.seconds, r.detail) && all;
    }

    std::string cmd = std::string("\"") + TCAT_BIN_PATH + "\" selftest > /dev/null 2>&1";
    auto start = std::chrono::steady_clock::now();
    int status = std::system(cmd.c_str());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int code = status != -1 && WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    all = report(10, "full selftest", code == 0, secs, "exit " + std::to_string(code)) && all;

    std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
    return all ? 0 : 1;
}

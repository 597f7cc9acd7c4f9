// Runs the hyperquad executable and captures stdout and the exit status.
#ifndef HYPERQUAD_TESTS_RUN_CLI_HPP
#define HYPERQUAD_TESTS_RUN_CLI_HPP

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

struct CliResult {
    int status;
    std::string out;
};

inline CliResult run_cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + HYPERQUAD_CLI_PATH + "\" " + args + " 2>/dev/null";
    CliResult r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

#endif

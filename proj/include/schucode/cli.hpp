#pragma once

#include <string>
#include <vector>

namespace schucode::cli {

/// Outcome of one CLI invocation. `json` and `csv` hold the machine
/// artifacts when the command produces them; main_entry writes them to the
/// requested paths. `text` is the human-readable report for stdout and
/// `notices` go to stderr. run() performs no output IO itself, so two runs
/// with the same configuration can be compared byte for byte.
struct RunResult {
    int exit_code = 0;
    std::string json;
    std::string json_path;
    std::string csv;
    std::string csv_path;
    std::string text;
    std::vector<std::string> notices;
};

/// Parses and executes argv[1:].
/// Exit codes: 0 success, 1 a check or assertion failed, 2 bad input,
/// 3 a cap was exceeded, 4 internal error.
RunResult run(const std::vector<std::string>& args);

/// Full binary behavior: run(), print text and notices, write artifacts.
int main_entry(int argc, char** argv);

} // namespace schucode::cli

#ifndef ODDCOVER_CLI_HPP
#define ODDCOVER_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oddcover/elliptic.hpp"
#include "oddcover/enumeration.hpp"
#include "oddcover/error.hpp"
#include "oddcover/monodromy.hpp"

namespace oddcover::cli
{

enum ExitCode : int
{
    Success = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    ResourceRefused = 3,
};

int exit_code(ErrorCode code);

struct RunConfig
{
    std::string subcommand;
    int genus = 1;
    std::optional<std::vector<int>> profile;
    std::uint64_t seed = 0;
    int max_attempts = default_max_attempts;
    std::optional<Shard> shard;
    std::optional<Complex> tau;
    std::string in;
    std::string out;               ///< empty: stdout
    std::string format = "json";   ///< json | csv
    std::optional<int> jobs;       ///< unset: ODDCOVER_JOBS, then hardware threads
    std::string resume;            ///< census checkpoint to resume from
    std::string checkpoint;        ///< census checkpoint to keep updated
    bool verify_each = false;
    bool include_nontransitive = false;
};

/// Parsers for the comma-separated flag values; throw ParseError.
std::vector<int> parse_profile(const std::string &s);
Complex parse_tau(const std::string &s);
/// "i/k" with 1 <= i <= k, mapped to the zero-based Shard{i-1, k}.
Shard parse_shard(const std::string &s);

/// Throws InvalidInput-class errors for flags that do not belong to the
/// chosen subcommand or are missing.
void validate(const RunConfig &config);

/// Executes one subcommand. Results go to `out` (or config.out), errors are
/// written to `err` as a JSON object. Returns the process exit code.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv and runs. Help text exits 0, usage errors exit 2.
int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace oddcover::cli

#endif

#pragma once

// The command-line front end as plain functions: each command returns its
// stdout/stderr text and exit status, so the CLI binary is only a parser.

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "odfact/limits.hpp"

namespace odfact::cli {

enum ExitStatus : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
};

struct CommandResult {
  int status = kExitOk;
  std::string out;
  std::string err;
};

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// "a..b" or a single integer "a". Throws parse_error.
Range parse_range(std::string_view text);

enum class BitsFormat { bbe, binary, bfile };
/// Throws parse_error.
BitsFormat parse_bits_format(std::string_view text);

/// One row per e in 2..e_max: BBE of od(2^e!) to `bits` bits with a space
/// after bit e.
CommandResult cmd_table(unsigned e_max, unsigned bits);

/// First n bits of a limit. The certificate summary goes to err.
CommandResult cmd_bits(LimitName which, unsigned n, BitsFormat format);

/// Sweeps a registered checker over the cartesian product of the ranges.
/// Parameters without a range take the checker's defaults.
CommandResult cmd_verify(std::string_view id, const std::map<std::string, Range>& ranges,
                         unsigned threads = 0);

/// Checker ids with their summaries.
CommandResult cmd_list_checkers();

/// Per-level multiplication counts for od(2^e!) mod 2^B; timings go to err.
CommandResult cmd_bench(unsigned e, unsigned B);

/// Compares a b-file against the bits of a limit. Index k is bit k.
CommandResult cmd_oeis_compare(std::istream& bfile, LimitName which = LimitName::z);
CommandResult cmd_oeis_compare_file(const std::string& path, LimitName which = LimitName::z);

}  // namespace odfact::cli

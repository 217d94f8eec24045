// Command-line front end. Subcommands: narayana-verify, pb-verify,
// hyp-verify, stein-check.
//
// Exit codes: 0 every check passed, 1 at least one row violated a check,
// 2 usage error or parameters outside the hypotheses of the bound.

#ifndef STEIN_CLI_HPP_
#define STEIN_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "stein/rational.hpp"
#include "stein/report.hpp"

namespace stein::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Row builders used by the subcommands.
report::Row narayana_row(long n, std::uint64_t seed);
report::Row pb_row(long index, const std::vector<Rational>& p);
report::Row hyp_row(long N, long n, long m);

/// Seeded lists of rationals in [0, 1] with denominators up to 16.
std::vector<std::vector<Rational>> random_p_lists(size_t count, size_t min_len,
                                                  size_t max_len, std::uint64_t seed);

}  // namespace stein::cli

#endif  // STEIN_CLI_HPP_

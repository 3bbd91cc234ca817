#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dqkit/io/json_io.hpp"

namespace dqkit::cli {

using io::json;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> order;
  std::optional<int> degree;
};

struct JobResult {
  json report;
  bool passed = true;
};

inline constexpr const char* kSubcommands[] = {"star",    "moment-check", "trace-check", "close",
                                               "kahler-check", "futaki",  "bergman",     "dfweight"};

/// Runs one job. Throws io::InputError on malformed job data.
JobResult run_job(const std::string& subcommand, const json& job, const Overrides& o);

}  // namespace dqkit::cli

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "onion/peel.hpp"

namespace onion::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,     ///< bad flags, size cap, unsupported engine/input combination
    kParse = 3,     ///< malformed input file
    kInternal = 4,  ///< a certificate or cross-check failed
};

enum class Format { json, csv, text };

struct RunConfig {
    std::string command;
    std::optional<std::size_t> d;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> side;
    std::string input;
    std::string output;
    std::string output_dir = ".";
    std::string engine = "auto";
    std::optional<std::uint64_t> cap;
    Format format = Format::text;
    unsigned threads = 1;
    bool cross_check = false;
    bool one_based = false;
    std::vector<std::uint32_t> steps;
    std::vector<std::uint64_t> sides;
};

/// Environment variable overriding the default point-count cap.
inline constexpr const char* kCapEnv = "ONION_MAX_POINTS";

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onion::cli

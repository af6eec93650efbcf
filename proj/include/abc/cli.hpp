#pragma once

#include "abc/group.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace abc {

struct RunConfig {
  std::string subcommand;  // enumerate | ratio | conjtest | folner | spectral | rewrite
  std::string group;       // lamplighter:m | bs:k | matrix:path
  std::size_t radius = 8;
  std::string f = "sqrt";
  std::string out;    // empty: stdout
  std::string cache;  // ball index cache file
  std::size_t oracle_radius = 0;  // 0: twice the radius
  std::int64_t k = 2;
  std::size_t n = 1;
  std::string matrix;  // JSON file for spectral
  std::string emit = "json";
  std::string word;  // rewrite input, e.g. "g0 t g0 T"
  std::size_t element_cap = 50'000'000;
  std::int64_t n1_cap = 512;
  std::int64_t orbit_bound = 64;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws Error on malformed arguments; args exclude the program name.
RunConfig parse_run_config(const std::vector<std::string>& args);
std::vector<std::string> format_run_config(const RunConfig& cfg);

// lamplighter:m, bs:k or matrix:<json file>.
GroupContext parse_group_descriptor(const std::string& text);

// Exit codes: 0 success, 1 validation failure, 2 resource cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace abc

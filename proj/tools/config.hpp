#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hocomp::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings read from a sectioned key = value file. Keys outside the known
/// set are rejected. Values use JSON syntax, and the bare word inf is
/// accepted wherever a number is.
struct RunConfig {
  std::uint64_t seed = 1;

  std::string shape = "disk";  // disk | square | polygon
  std::array<double, 2> center{0.5, 0.5};
  double radius = 0.25;
  double half_side = 0.25;
  std::vector<std::array<double, 2>> vertices;

  double beta = 2.0;
  double p = 0.5;
  std::vector<double> p_list;
  double epsilon = 1.0;
  std::vector<double> epsilon_list;

  int nodes_per_cell = 64;
  int stencil = 16;
  double padding_cells = 1.0;

  std::vector<int> k_range{1, 12};  // inclusive [first, last]
  std::int64_t n_pairs = 100;
  std::int64_t directions = 8;
  std::vector<double> R_list{4.0, 8.0, 16.0, 32.0};

  std::string out_dir = ".";
  bool emit_svg = false;

  RunConfig();

  /// Sorted JSON rendering of every field; the config hash is taken over it.
  std::string canonical() const;
  std::string hash() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace hocomp::cli

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dissim/hubbard.hpp"
#include "dissim/lattice.hpp"
#include "dissim/noise.hpp"

namespace dissim {

/// Flat key-value configuration with [section] headers, one experiment per
/// file. `#` and `;` start comments. Lookups carry field-level context in
/// their error messages.
class Config {
public:
  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int_or(const std::string& section, const std::string& key, long fallback) const;
  std::vector<int> get_int_list_or(const std::string& section, const std::string& key,
                                   const std::vector<int>& fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

private:
  std::optional<std::string> lookup(const std::string& section, const std::string& key) const;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Typed parameter blocks built from a config; each block is validated
/// before any run starts and errors name the offending field.
LatticeParams lattice_from_config(const Config& cfg, const std::string& section = "lattice");
HubbardParams hubbard_from_config(const Config& cfg, const std::string& section = "hubbard");
NoiseParams noise_from_config(const Config& cfg, const std::string& section = "noise");

}  // namespace dissim

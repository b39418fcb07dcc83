#include "dissim/harness/config.hpp"

#include <fstream>
#include <sstream>

namespace dissim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void config_fail(const std::string& section, const std::string& key,
                              const std::string& why) {
  throw validation_error("config [" + section + "] " + key + ": " + why);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "config line " + std::to_string(line_no) +
                                      ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      require(!section.empty(), "config line " + std::to_string(line_no) + ": empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos,
            "config line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), "config line " + std::to_string(line_no) + ": empty key");
    require(!section.empty(),
            "config line " + std::to_string(line_no) + ": key '" + key + "' outside any [section]");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

std::optional<std::string> Config::lookup(const std::string& section,
                                          const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return lookup(section, key).has_value();
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  const auto v = lookup(section, key);
  if (!v) config_fail(section, key, "missing required key");
  return *v;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  return lookup(section, key).value_or(fallback);
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get_string(section, key);
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    config_fail(section, key, "expected a number, got '" + v + "'");
  }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int(const std::string& section, const std::string& key) const {
  const std::string v = get_string(section, key);
  try {
    size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    config_fail(section, key, "expected an integer, got '" + v + "'");
  }
}

long Config::get_int_or(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<int> Config::get_int_list_or(const std::string& section, const std::string& key,
                                         const std::vector<int>& fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key);
  std::vector<int> out;
  std::istringstream is(v);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      out.push_back(std::stoi(trim(tok)));
    } catch (const std::exception&) {
      config_fail(section, key, "expected a comma-separated integer list, got '" + v + "'");
    }
  }
  if (out.empty()) config_fail(section, key, "empty list");
  return out;
}

LatticeParams lattice_from_config(const Config& cfg, const std::string& section) {
  LatticeParams p;
  p.gamma_h = cfg.get_double_or(section, "gamma_h", 1.0);
  p.omega = cfg.get_double_or(section, "omega", 0.0);
  p.gamma = cfg.get_double(section, "gamma");
  p.beta = cfg.get_double(section, "beta");
  p.k = cfg.get_double_or(section, "k", 0.0);
  p.dt = cfg.get_double(section, "dt");
  p.n_steps = static_cast<int>(cfg.get_int_or(section, "n_steps", 0));
  try {
    p.validate();
  } catch (const validation_error& e) {
    throw validation_error("config [" + section + "]: " + e.what());
  }
  return p;
}

HubbardParams hubbard_from_config(const Config& cfg, const std::string& section) {
  HubbardParams p;
  p.u = cfg.get_double_or(section, "u", 1.0);
  p.b_field = cfg.get_double_or(section, "b_field", 0.0);
  p.beta = cfg.get_double(section, "beta");
  if (cfg.has(section, "mu")) {
    p.mu = cfg.get_double(section, "mu");
    require(!cfg.has(section, "filling"),
            "config [" + section + "]: give either mu or filling, not both");
  } else if (cfg.has(section, "filling")) {
    p.mu = chemical_potential_for_filling(p.u, p.b_field, p.beta,
                                          cfg.get_double(section, "filling"));
  } else {
    p.mu = 0.0;
  }
  try {
    p.validate();
  } catch (const validation_error& e) {
    throw validation_error("config [" + section + "]: " + e.what());
  }
  return p;
}

NoiseParams noise_from_config(const Config& cfg, const std::string& section) {
  // the reset count is per-series (the `resets` key is a list); callers set it
  NoiseParams np;
  np.p0 = cfg.get_double_or(section, "p0", 0.97);
  np.p1 = cfg.get_double_or(section, "p1", 0.91);
  np.reset_time = cfg.get_double_or(section, "reset_time", 0.06);
  np.resets = 1;
  try {
    np.validate();
  } catch (const validation_error& e) {
    throw validation_error("config [" + section + "]: " + e.what());
  }
  return np;
}

}  // namespace dissim

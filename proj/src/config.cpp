#include "spinsinglet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spinsinglet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigEntries parse_config_text(const std::string& text, const std::string& origin) {
  ConfigEntries out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": empty key or value");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

ConfigEntries parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::pair<std::string, std::string> parse_assignment(const std::string& text) {
  const auto entries = parse_config_text(text, "--set " + text);
  if (entries.size() != 1) throw ConfigError("--set expects key=value, got '" + text + "'");
  return entries.front();
}

double parse_number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !std::isfinite(v)) {
    throw ConfigError("value for '" + key + "' is not a finite number: '" + value + "'");
  }
  return v;
}

}  // namespace spinsinglet

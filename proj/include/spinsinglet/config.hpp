#pragma once

// Flat "key = value" configuration files and --set overrides.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinsinglet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// One "key = value" per line; '#' starts a comment; blank lines ignored.
/// Keys are case-sensitive and trimmed. Later duplicates win when applied.
ConfigEntries parse_config_text(const std::string& text, const std::string& origin = "<config>");
ConfigEntries parse_config_file(const std::string& path);

/// "key=value" from the command line.
std::pair<std::string, std::string> parse_assignment(const std::string& text);

/// Strict number parse: the whole string must be consumed.
double parse_number(const std::string& key, const std::string& value);

}  // namespace spinsinglet

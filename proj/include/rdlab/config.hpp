#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rdlab/types.hpp"

namespace rdlab {

/// Flat `key = value` configuration with dotted section names. Blank lines and
/// `#` comments are ignored. Keys must be known (see `default_entries`).
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  /// Sets or replaces one entry (validated like a parsed line).
  void set(const std::string& key, const std::string& value);

  /// Entries exactly as given, in input order.
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  /// The raw text this config was parsed from (empty if built by `set`).
  const std::string& source_text() const { return text_; }

  bool has(const std::string& key) const;
  /// Value as given, or the built-in default.
  std::string raw(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  Vec3 vec3(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;

  /// Every known key with its effective value.
  std::map<std::string, std::string> effective() const;

  /// Checks cross-key invariants; throws ErrorCode::Config.
  void validate() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string text_;
};

/// Built-in defaults, in documentation order.
const std::vector<std::pair<std::string, std::string>>& default_entries();

}  // namespace rdlab

#ifndef CASIMIR_CONFIG_HPP
#define CASIMIR_CONFIG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace casimir {

/// Flat `key = value` scenario configuration with `#` comments and dotted
/// keys. Every key a scenario understands is pulled through a typed getter;
/// whatever remains unread is an unknown key and a hard error. The getters
/// also record the effective (default-resolved) values so the scenario can
/// echo a re-runnable config next to its outputs.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& def);
  double get_double(const std::string& key, double def);
  int get_int(const std::string& key, int def);
  bool get_bool(const std::string& key, bool def);
  std::vector<double> get_double_list(const std::string& key, const std::vector<double>& def);

  /// Required variants: missing key is a ConfigError.
  std::string require_string(const std::string& key);
  double require_double(const std::string& key);

  /// ConfigError on any raw key that was never consumed by a getter.
  void fail_on_unknown() const;

  /// Default-resolved key/value map of everything the scenario consumed.
  const std::map<std::string, std::string>& effective() const { return effective_; }

  const std::string& origin() const { return origin_; }

 private:
  std::string raw_value(const std::string& key, bool& found);
  std::string origin_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, int> line_of_;
  std::set<std::string> consumed_;
  std::map<std::string, std::string> effective_;
};

/// Canonical shortest-round-trip formatting used in echoed configs.
std::string format_double(double v);

}  // namespace casimir

#endif

#include "casimir/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (c.raw_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    c.raw_[key] = val;
    c.line_of_[key] = lineno;
  }
  return c;
}

std::string Config::raw_value(const std::string& key, bool& found) {
  auto it = raw_.find(key);
  found = it != raw_.end();
  if (found) consumed_.insert(key);
  return found ? it->second : std::string{};
}

std::string Config::get_string(const std::string& key, const std::string& def) {
  bool found;
  const std::string v = raw_value(key, found);
  const std::string out = found ? v : def;
  effective_[key] = out;
  return out;
}

double Config::get_double(const std::string& key, double def) {
  bool found;
  const std::string v = raw_value(key, found);
  if (!found) {
    effective_[key] = format_double(def);
    return def;
  }
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    effective_[key] = format_double(d);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ":" + std::to_string(line_of_[key]) + ": key '" + key +
                      "' is not a number: " + v);
  }
}

int Config::get_int(const std::string& key, int def) {
  const double d = get_double(key, def);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ConfigError(origin_ + ": key '" + key + "' must be an integer");
  effective_[key] = std::to_string(i);
  return i;
}

bool Config::get_bool(const std::string& key, bool def) {
  bool found;
  const std::string v = raw_value(key, found);
  const auto set = [&](bool b) {
    effective_[key] = b ? "true" : "false";
    return b;
  };
  if (!found) return set(def);
  if (v == "true" || v == "yes" || v == "1") return set(true);
  if (v == "false" || v == "no" || v == "0") return set(false);
  throw ConfigError(origin_ + ":" + std::to_string(line_of_[key]) + ": key '" + key +
                    "' must be a boolean, got: " + v);
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& def) {
  bool found;
  const std::string v = raw_value(key, found);
  std::vector<double> out;
  if (!found) {
    out = def;
  } else {
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError(origin_ + ":" + std::to_string(line_of_[key]) + ": key '" + key +
                          "' has a non-numeric entry: " + item);
      }
    }
    if (out.empty())
      throw ConfigError(origin_ + ": key '" + key + "' must list at least one number");
  }
  std::string joined;
  for (std::size_t i = 0; i < out.size(); ++i)
    joined += (i ? "," : "") + format_double(out[i]);
  effective_[key] = joined;
  return out;
}

std::string Config::require_string(const std::string& key) {
  if (!has(key)) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return get_string(key, "");
}

double Config::require_double(const std::string& key) {
  if (!has(key)) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return get_double(key, 0.0);
}

void Config::fail_on_unknown() const {
  std::string unknown;
  for (const auto& [k, v] : raw_) {
    if (!consumed_.count(k)) {
      unknown += "\n  " + origin_ + ":" + std::to_string(line_of_.at(k)) + ": " + k;
    }
  }
  if (!unknown.empty()) throw ConfigError("unknown configuration keys:" + unknown);
}

}  // namespace casimir

#include <fstream>
#include <set>
#include <sstream>

#include "irusim/cli/ini.h"
#include "irusim/types.h"

namespace irusim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

IniFile parse_ini(const std::string& text) {
  IniFile out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError("empty section name", lineno);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
    if (section.empty()) throw ParseError("key outside of a section", lineno);
    IniEntry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) throw ParseError("empty key", lineno);
    if (!seen.insert({e.section, e.key}).second) {
      throw ParseError("duplicate key '" + e.key + "' in [" + e.section + "]", lineno);
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

IniFile load_ini(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_ini(ss.str());
  } catch (const ParseError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace irusim

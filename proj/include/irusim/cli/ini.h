#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace irusim {

// Sectioned key=value text. '#' and ';' start comments; keys outside any
// section are an error, as are duplicate keys.
struct IniEntry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct IniFile {
  std::vector<IniEntry> entries;  // file order
};

IniFile parse_ini(const std::string& text);
IniFile load_ini(const std::string& path);

}  // namespace irusim

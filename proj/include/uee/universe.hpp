#pragma once

// Symbol universe file: `symbol,company,sector` with a header line.
// When a universe is active, records for other symbols are filtered out.

#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace uee {

struct UniverseEntry {
  std::string symbol, company, sector;
};

struct Universe {
  std::vector<UniverseEntry> entries;
  std::unordered_set<std::string> symbols;

  bool contains(std::string_view sym) const {
    return symbols.find(std::string(sym)) != symbols.end();
  }

  static Universe load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open universe file: " + path);
    Universe u;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (first) {  // header
        first = false;
        continue;
      }
      if (line.empty()) continue;
      UniverseEntry e;
      const auto c1 = line.find(',');
      if (c1 == std::string::npos)
        throw std::runtime_error(path + ": bad universe line: " + line);
      const auto c2 = line.find(',', c1 + 1);
      e.symbol = line.substr(0, c1);
      if (c2 == std::string::npos) {
        e.company = line.substr(c1 + 1);
      } else {
        e.company = line.substr(c1 + 1, c2 - c1 - 1);
        e.sector = line.substr(c2 + 1);
      }
      if (e.symbol.empty())
        throw std::runtime_error(path + ": empty symbol in universe");
      u.symbols.insert(e.symbol);
      u.entries.push_back(std::move(e));
    }
    if (u.entries.empty())
      throw std::runtime_error(path + ": universe file has no entries");
    return u;
  }
};

}  // namespace uee

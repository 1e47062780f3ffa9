#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corename/analytics.hpp"
#include "corename/facts.hpp"
#include "corename/mining.hpp"

namespace fixtures {

inline std::string path(const std::string& rel) { return std::string(CORENAME_FIXTURES) + "/" + rel; }

inline std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline corename::CodeFacts facts_of(const std::string& rel_dir) {
  return corename::extract_facts(corename::read_source_dir(path(rel_dir)));
}

inline corename::CodeFacts facts_of_source(const std::string& file, const std::string& code) {
  return corename::extract_facts({{file, code}});
}

/// One detector answering for every commit.
struct SharedFacts {
  explicit SharedFacts(const corename::CodeFacts& facts)
      : detector(std::make_shared<corename::RelationshipDetector>(facts)) {}

  corename::FactsLookup lookup() const {
    auto d = detector;
    return [d](const std::string&) { return d.get(); };
  }

  std::shared_ptr<corename::RelationshipDetector> detector;
};

inline std::vector<corename::RenameRecord> records_of(const std::string& rel) {
  return corename::load_rename_records_file(path(rel));
}

/// Lowercase identifier built from words over a small vocabulary, in camelCase.
inline std::string camel(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (i > 0 && !w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    out += w;
  }
  return out;
}

}  // namespace fixtures

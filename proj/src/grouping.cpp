#include "corename/grouping.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "corename/error.hpp"
#include "json.hpp"

namespace corename {

std::size_t RenameSetCollection::total_members() const {
  std::size_t n = 0;
  for (const auto& s : sets) n += s.size();
  return n;
}

RenameSetCollection build_rename_sets(std::span<const RenameRecord> records, Mode mode) {
  RenameSetCollection coll;
  coll.mode = mode;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (const auto& chunk : records[r].chunks) {
      ChunkKey key = chunk_key(chunk);
      auto [it, fresh] = index.try_emplace({records[r].commit, key.text}, coll.sets.size());
      if (fresh) coll.sets.push_back({records[r].commit, std::move(key), {}});
      auto& members = coll.sets[it->second].members;
      if (members.empty() || members.back() != r) members.push_back(r);
    }
  }
  return coll;
}

std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(const MeaningfulRenameSet& set) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const auto& m = set.members;
  if (m.size() > 1) pairs.reserve(m.size() * (m.size() - 1) / 2);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) pairs.emplace_back(m[i], m[j]);
  }
  return pairs;
}

namespace {

std::vector<std::size_t> sorted_members(const MeaningfulRenameSet& s) {
  std::vector<std::size_t> m = s.members;
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

std::vector<MeaningfulRenameSet> collection_difference(const RenameSetCollection& lemma_coll,
                                                       const RenameSetCollection& raw_coll) {
  std::set<std::vector<std::size_t>> raw_members;
  for (const auto& s : raw_coll.sets) raw_members.insert(sorted_members(s));
  std::vector<MeaningfulRenameSet> out;
  for (const auto& s : lemma_coll.sets) {
    if (!raw_members.contains(sorted_members(s))) out.push_back(s);
  }
  return out;
}

void write_rename_sets(std::ostream& out, const RenameSetCollection& coll) {
  for (const auto& s : coll.sets) {
    nlohmann::json doc = {{"commit", s.commit}, {"key", s.key.text}, {"members", s.members}};
    out << doc.dump() << '\n';
  }
}

RenameSetCollection load_rename_sets(std::istream& in, Mode mode, std::size_t record_count) {
  RenameSetCollection coll;
  coll.mode = mode;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    MeaningfulRenameSet s;
    try {
      auto doc = nlohmann::json::parse(line);
      s.commit = doc.at("commit").get<std::string>();
      s.key.text = doc.at("key").get<std::string>();
      s.members = doc.at("members").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, std::string("malformed set: ") + e.what());
    }
    if (s.members.empty()) throw ParseError(number, "set has no members");
    std::set<std::size_t> unique(s.members.begin(), s.members.end());
    if (unique.size() != s.members.size()) throw ParseError(number, "duplicate member");
    if (*unique.rbegin() >= record_count) throw ParseError(number, "member index out of range");
    if (!seen.insert({s.commit, s.key.text}).second) throw ParseError(number, "duplicate (commit, key)");
    coll.sets.push_back(std::move(s));
  }
  return coll;
}

}  // namespace corename

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corename/chunks.hpp"
#include "corename/mining.hpp"

namespace corename {

/// U_{c,h}: the renames of commit c whose chunks include h. Members are
/// indices into the record list the collection was built from.
struct MeaningfulRenameSet {
  std::string commit;
  ChunkKey key;
  std::vector<std::size_t> members;

  std::size_t size() const { return members.size(); }
  friend bool operator==(const MeaningfulRenameSet&, const MeaningfulRenameSet&) = default;
};

struct RenameSetCollection {
  Mode mode = Mode::Raw;
  std::vector<MeaningfulRenameSet> sets;

  /// Sum of set sizes.
  std::size_t total_members() const;
  friend bool operator==(const RenameSetCollection&, const RenameSetCollection&) = default;
};

/// One set per distinct (commit, chunk key), in order of first occurrence.
/// Records must carry chunks computed under `mode`.
RenameSetCollection build_rename_sets(std::span<const RenameRecord> records, Mode mode);

/// All unordered member pairs (i < j by position in the set).
std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(const MeaningfulRenameSet& set);

/// Sets of `lemma_coll` whose member set matches no set of `raw_coll`.
std::vector<MeaningfulRenameSet> collection_difference(const RenameSetCollection& lemma_coll,
                                                       const RenameSetCollection& raw_coll);

/// JSONL, one {"commit", "key", "members"} object per line.
void write_rename_sets(std::ostream& out, const RenameSetCollection& coll);
/// Throws ParseError with the line number; member indices must be below `record_count`.
RenameSetCollection load_rename_sets(std::istream& in, Mode mode, std::size_t record_count);

}  // namespace corename

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corename/facts.hpp"
#include "corename/grouping.hpp"

namespace corename {

/// Relationship kind -> share of all detections (all 14 kinds present).
using RelationshipRates = std::map<RelationshipKind, double>;
/// Chunk kind -> share of all chunk occurrences (all 5 kinds present).
using ChunkRates = std::map<ChunkKind, double>;

/// RQ1 ratio: members of sets with at least two members over all members.
/// Throws Error(NoData) for an empty collection.
double co_rename_rate(const RenameSetCollection& coll);

struct SizeRow {
  std::size_t n = 0;        // set size
  std::size_t m = 0;        // distinct old names in the set
  std::size_t members = 0;  // members of sets with this (n, m)
  double cumulative = 0;    // share of co-renaming members in sets of size <= n

  friend bool operator==(const SizeRow&, const SizeRow&) = default;
};

/// Histogram over sets with n >= 2, ordered by (n, m). Throws Error(NoData)
/// for an empty collection.
std::vector<SizeRow> size_distribution(const RenameSetCollection& coll,
                                       std::span<const RenameRecord> records);

/// Relationship detector for the parent snapshot of a commit, or null when
/// no facts are available for it.
using FactsLookup = std::function<const RelationshipDetector*(const std::string& commit)>;

struct RelationshipCounts {
  std::array<std::uint64_t, kRelationshipKindCount> detections{};
  std::uint64_t sets = 0;
  std::uint64_t pairs = 0;
  /// Sets skipped because the lookup had no facts for their commit.
  std::uint64_t sets_without_facts = 0;

  std::uint64_t total() const;
  RelationshipCounts& operator+=(const RelationshipCounts& other);
  friend bool operator==(const RelationshipCounts&, const RelationshipCounts&) = default;
};

/// Counts each relationship kind at most once per unordered pair, over sets
/// with at least two members (and, with a filter, at least one member of
/// that kind). Sets are processed in parallel.
RelationshipCounts count_relationships(std::span<const MeaningfulRenameSet> sets,
                                       std::span<const RenameRecord> records, const FactsLookup& facts,
                                       std::optional<IdentifierKind> filter = std::nullopt);
/// Serial reference for count_relationships.
RelationshipCounts count_relationships_serial(std::span<const MeaningfulRenameSet> sets,
                                              std::span<const RenameRecord> records,
                                              const FactsLookup& facts,
                                              std::optional<IdentifierKind> filter = std::nullopt);

/// Detections per kind over the total. Throws Error(NoData) when nothing was detected.
RelationshipRates rates_from_counts(const RelationshipCounts& counts);

RelationshipRates relationship_rates(std::span<const MeaningfulRenameSet> sets,
                                     std::span<const RenameRecord> records, const FactsLookup& facts,
                                     std::optional<IdentifierKind> filter = std::nullopt);

/// Share of each chunk kind among all chunks of the records (chunks must be
/// computed for one mode). Throws Error(NoData) when there are no chunks.
ChunkRates chunk_type_rates(std::span<const RenameRecord> records);

/// Rates, or nullopt standing for NoData.
template <typename T>
using Maybe = std::optional<T>;

struct InflectionImpact {
  double raw_rate = 0;
  double lemma_rate = 0;
  std::size_t raw_sets = 0;
  std::size_t lemma_sets = 0;
  /// Sets built in lemma mode whose membership does not occur in raw mode.
  std::vector<MeaningfulRenameSet> difference;
  Maybe<RelationshipRates> difference_rates;
  std::map<IdentifierKind, Maybe<RelationshipRates>> difference_filtered;
};

/// Runs both modes over the records (their chunks are recomputed on copies).
/// Throws Error(NoData) when there are no records.
InflectionImpact inflection_impact(std::span<const RenameRecord> records, const FactsLookup& facts,
                                   const ExceptionTable& table = ExceptionTable::bundled());

/// Everything reported for one repository. RQ1/RQ2 figures use raw mode.
struct RepoStats {
  std::string repo;
  std::size_t records = 0;
  std::size_t raw_sets = 0;
  Maybe<double> co_rename_rate;
  std::vector<SizeRow> size_histogram;
  Maybe<RelationshipRates> relationship_rates;
  std::map<IdentifierKind, Maybe<RelationshipRates>> filtered_rates;
  std::map<Mode, Maybe<ChunkRates>> chunk_type_rates;
  Maybe<double> lemma_co_rename_rate;
  std::size_t lemma_sets = 0;
  std::size_t difference_sets = 0;
  Maybe<RelationshipRates> difference_rates;
  std::map<IdentifierKind, Maybe<RelationshipRates>> difference_filtered;

  friend bool operator==(const RepoStats&, const RepoStats&) = default;
};

/// Full per-repository analysis. `raw_sets`, when given, replaces the raw
/// collection built from the records.
RepoStats analyze_repository(const std::string& repo, std::vector<RenameRecord> records,
                             const FactsLookup& facts,
                             const std::optional<RenameSetCollection>& raw_sets = std::nullopt,
                             const ExceptionTable& table = ExceptionTable::bundled());

}  // namespace corename

#include "corename/analytics.hpp"

#include <algorithm>
#include <set>

#include "corename/error.hpp"
#include "corename/parallel.hpp"

namespace corename {

double co_rename_rate(const RenameSetCollection& coll) {
  std::size_t all = 0;
  std::size_t co = 0;
  for (const auto& s : coll.sets) {
    all += s.size();
    if (s.size() >= 2) co += s.size();
  }
  if (all == 0) throw Error(ErrorKind::NoData, "no meaningful rename sets");
  return static_cast<double>(co) / static_cast<double>(all);
}

std::vector<SizeRow> size_distribution(const RenameSetCollection& coll, std::span<const RenameRecord> records) {
  if (coll.sets.empty()) throw Error(ErrorKind::NoData, "no meaningful rename sets");
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cells;
  std::map<std::size_t, std::size_t> by_size;
  std::size_t co_members = 0;
  for (const auto& s : coll.sets) {
    if (s.size() < 2) continue;
    std::set<std::string_view> names;
    for (auto r : s.members) names.insert(records[r].old_name);
    cells[{s.size(), names.size()}] += s.size();
    by_size[s.size()] += s.size();
    co_members += s.size();
  }
  std::map<std::size_t, double> cumulative;
  std::size_t running = 0;
  for (auto [n, members] : by_size) {
    running += members;
    cumulative[n] = static_cast<double>(running) / static_cast<double>(co_members);
  }
  std::vector<SizeRow> rows;
  for (auto [nm, members] : cells) rows.push_back({nm.first, nm.second, members, cumulative[nm.first]});
  return rows;
}

std::uint64_t RelationshipCounts::total() const {
  std::uint64_t t = 0;
  for (auto d : detections) t += d;
  return t;
}

RelationshipCounts& RelationshipCounts::operator+=(const RelationshipCounts& other) {
  for (std::size_t k = 0; k < detections.size(); ++k) detections[k] += other.detections[k];
  sets += other.sets;
  pairs += other.pairs;
  sets_without_facts += other.sets_without_facts;
  return *this;
}

namespace {

void count_set(const MeaningfulRenameSet& set, std::span<const RenameRecord> records, const FactsLookup& facts,
               std::optional<IdentifierKind> filter, RelationshipCounts& counts) {
  if (set.size() < 2) return;
  if (filter && std::none_of(set.members.begin(), set.members.end(),
                             [&](std::size_t r) { return records[r].kind == *filter; })) {
    return;
  }
  const RelationshipDetector* detector = facts ? facts(set.commit) : nullptr;
  if (!detector) {
    ++counts.sets_without_facts;
    return;
  }
  ++counts.sets;
  for (auto [i, j] : enumerate_pairs(set)) {
    ++counts.pairs;
    RelationshipSet found = detector->detect(records[i].old_name, records[j].old_name);
    for (auto kind : found.kinds()) ++counts.detections[static_cast<std::size_t>(kind)];
  }
}

}  // namespace

RelationshipCounts count_relationships_serial(std::span<const MeaningfulRenameSet> sets,
                                              std::span<const RenameRecord> records, const FactsLookup& facts,
                                              std::optional<IdentifierKind> filter) {
  RelationshipCounts counts;
  for (const auto& s : sets) count_set(s, records, facts, filter, counts);
  return counts;
}

RelationshipCounts count_relationships(std::span<const MeaningfulRenameSet> sets,
                                       std::span<const RenameRecord> records, const FactsLookup& facts,
                                       std::optional<IdentifierKind> filter) {
  RelationshipCounts total;
  const auto count = static_cast<std::ptrdiff_t>(sets.size());
#pragma omp parallel num_threads(worker_count())
  {
    RelationshipCounts local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      count_set(sets[static_cast<std::size_t>(s)], records, facts, filter, local);
    }
#pragma omp critical(corename_relationship_counts)
    total += local;
  }
  return total;
}

RelationshipRates rates_from_counts(const RelationshipCounts& counts) {
  const auto total = counts.total();
  if (total == 0) throw Error(ErrorKind::NoData, "no relationships detected");
  RelationshipRates rates;
  for (auto kind : kAllRelationshipKinds) {
    rates[kind] = static_cast<double>(counts.detections[static_cast<std::size_t>(kind)]) / static_cast<double>(total);
  }
  return rates;
}

RelationshipRates relationship_rates(std::span<const MeaningfulRenameSet> sets,
                                     std::span<const RenameRecord> records, const FactsLookup& facts,
                                     std::optional<IdentifierKind> filter) {
  return rates_from_counts(count_relationships(sets, records, facts, filter));
}

ChunkRates chunk_type_rates(std::span<const RenameRecord> records) {
  std::map<ChunkKind, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& r : records) {
    for (const auto& c : r.chunks) {
      ++counts[c.kind];
      ++total;
    }
  }
  if (total == 0) throw Error(ErrorKind::NoData, "no operational chunks");
  ChunkRates rates;
  for (auto kind : kAllChunkKinds) rates[kind] = static_cast<double>(counts[kind]) / static_cast<double>(total);
  return rates;
}

namespace {

template <typename F>
auto maybe(F&& f) -> Maybe<decltype(f())> {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoData) throw;
    return std::nullopt;
  }
}

std::map<IdentifierKind, Maybe<RelationshipRates>> filtered(std::span<const MeaningfulRenameSet> sets,
                                                            std::span<const RenameRecord> records,
                                                            const FactsLookup& facts) {
  std::map<IdentifierKind, Maybe<RelationshipRates>> out;
  for (auto kind : kAllIdentifierKinds) {
    out[kind] = maybe([&] { return relationship_rates(sets, records, facts, kind); });
  }
  return out;
}

}  // namespace

InflectionImpact inflection_impact(std::span<const RenameRecord> records, const FactsLookup& facts,
                                   const ExceptionTable& table) {
  if (records.empty()) throw Error(ErrorKind::NoData, "no rename records");
  std::vector<RenameRecord> raw(records.begin(), records.end());
  std::vector<RenameRecord> lemma(records.begin(), records.end());
  compute_chunks(raw, Mode::Raw, table);
  compute_chunks(lemma, Mode::Lemma, table);
  const auto raw_coll = build_rename_sets(raw, Mode::Raw);
  const auto lemma_coll = build_rename_sets(lemma, Mode::Lemma);
  InflectionImpact impact;
  impact.raw_rate = co_rename_rate(raw_coll);
  impact.lemma_rate = co_rename_rate(lemma_coll);
  impact.raw_sets = raw_coll.sets.size();
  impact.lemma_sets = lemma_coll.sets.size();
  impact.difference = collection_difference(lemma_coll, raw_coll);
  impact.difference_rates = maybe([&] { return relationship_rates(impact.difference, lemma, facts); });
  impact.difference_filtered = filtered(impact.difference, lemma, facts);
  return impact;
}

RepoStats analyze_repository(const std::string& repo, std::vector<RenameRecord> records, const FactsLookup& facts,
                             const std::optional<RenameSetCollection>& raw_sets, const ExceptionTable& table) {
  RepoStats stats;
  stats.repo = repo;
  stats.records = records.size();

  std::vector<RenameRecord> lemma = records;
  compute_chunks(records, Mode::Raw, table);
  compute_chunks(lemma, Mode::Lemma, table);
  const RenameSetCollection raw_coll = raw_sets ? *raw_sets : build_rename_sets(records, Mode::Raw);
  const RenameSetCollection lemma_coll = build_rename_sets(lemma, Mode::Lemma);

  stats.raw_sets = raw_coll.sets.size();
  stats.co_rename_rate = maybe([&] { return co_rename_rate(raw_coll); });
  stats.size_histogram = maybe([&] { return size_distribution(raw_coll, records); }).value_or(std::vector<SizeRow>{});
  stats.relationship_rates = maybe([&] { return relationship_rates(raw_coll.sets, records, facts); });
  stats.filtered_rates = filtered(raw_coll.sets, records, facts);
  stats.chunk_type_rates[Mode::Raw] = maybe([&] { return chunk_type_rates(records); });
  stats.chunk_type_rates[Mode::Lemma] = maybe([&] { return chunk_type_rates(lemma); });

  stats.lemma_sets = lemma_coll.sets.size();
  stats.lemma_co_rename_rate = maybe([&] { return co_rename_rate(lemma_coll); });
  const auto difference = collection_difference(lemma_coll, raw_coll);
  stats.difference_sets = difference.size();
  stats.difference_rates = maybe([&] { return relationship_rates(difference, lemma, facts); });
  stats.difference_filtered = filtered(difference, lemma, facts);
  return stats;
}

}  // namespace corename

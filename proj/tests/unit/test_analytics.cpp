#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "corename/analytics.hpp"
#include "corename/error.hpp"
#include "corename/parallel.hpp"
#include "corename/report.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace corename;
namespace fs = std::filesystem;

namespace {

using R = RelationshipKind;

RenameRecord rec(const std::string& commit, IdentifierKind kind, const std::string& old_name,
                 const std::string& new_name) {
  RenameRecord r;
  r.commit = commit;
  r.kind = kind;
  r.old_name = old_name;
  r.new_name = new_name;
  r.file = "F.java";
  return r;
}

MeaningfulRenameSet make_set(std::vector<std::size_t> members) {
  MeaningfulRenameSet s;
  s.commit = "c";
  s.key = {"R|a|b"};
  s.members = std::move(members);
  return s;
}

RenameSetCollection coll_of(std::vector<std::vector<std::size_t>> sets) {
  RenameSetCollection c;
  for (auto& m : sets) c.sets.push_back(make_set(std::move(m)));
  return c;
}

double sum(const RelationshipRates& r) {
  return std::accumulate(r.begin(), r.end(), 0.0, [](double a, const auto& kv) { return a + kv.second; });
}

// Independent recount: group by (commit, key) with a map, then test every
// unordered pair of each co-renaming set against the detector.
struct Recount {
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
  std::map<R, std::uint64_t> detections;
  std::uint64_t total = 0;
};

Recount recount(const std::vector<RenameRecord>& rs, const RelationshipDetector& d,
                std::optional<IdentifierKind> filter = std::nullopt) {
  Recount out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::set<std::string> seen;
    for (const auto& c : rs[i].chunks) {
      const auto key = chunk_key(c).text;
      if (seen.insert(key).second) out.groups[{rs[i].commit, key}].push_back(i);
    }
  }
  for (const auto& [id, members] : out.groups) {
    if (members.size() < 2) continue;
    if (filter && std::none_of(members.begin(), members.end(), [&](std::size_t m) { return rs[m].kind == *filter; })) {
      continue;
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        for (R k : kAllRelationshipKinds) {
          if (d.detect(rs[members[a]].old_name, rs[members[b]].old_name).contains(k)) {
            ++out.detections[k];
            ++out.total;
          }
        }
      }
    }
  }
  return out;
}

struct Corpus {
  std::vector<RenameRecord> records = fixtures::records_of("corpus/renames.jsonl");
  fixtures::SharedFacts facts{fixtures::facts_of("corpus/facts/default")};
};

std::vector<RenameRecord> with_chunks(std::vector<RenameRecord> rs, Mode mode) {
  compute_chunks(rs, mode);
  return rs;
}

}  // namespace

TEST_CASE("co-rename rate") {
  CHECK(co_rename_rate(coll_of({{0, 1, 2}, {3}})) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(co_rename_rate(coll_of({{0}, {1}, {2}})) == 0.0);
  CHECK_THROWS_AS(co_rename_rate(RenameSetCollection{}), Error);
}

TEST_CASE("size distribution rows") {
  std::vector<RenameRecord> rs = {rec("c", IdentifierKind::Variable, "a", "x"),
                                  rec("c", IdentifierKind::Variable, "b", "y"),
                                  rec("c", IdentifierKind::Variable, "a", "z")};
  auto rows = size_distribution(coll_of({{0, 1}}), rs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == SizeRow{2, 2, 2, 1.0});
  rows = size_distribution(coll_of({{0, 1, 2}, {1}}), rs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 3);
  CHECK(rows[0].m == 2);
  CHECK(rows[0].members == 3);
  CHECK_THROWS_AS(size_distribution(RenameSetCollection{}, rs), Error);
}

TEST_CASE("relationship rates on the metric commit") {
  auto facts = fixtures::facts_of("metric/before");
  fixtures::SharedFacts shared(facts);
  auto rs = with_chunks({rec("c", IdentifierKind::Class, "MetricType", "MetricAttribute"),
                         rec("c", IdentifierKind::Parameter, "metricType", "metricAttribute"),
                         rec("c", IdentifierKind::Method, "getDisabledMetricTypes", "getDisabledMetricAttributes")},
                        Mode::Lemma);
  auto coll = build_rename_sets(rs, Mode::Lemma);
  REQUIRE(coll.sets.size() == 1);
  auto counts = count_relationships(coll.sets, rs, shared.lookup());
  CHECK(counts.detections[static_cast<std::size_t>(R::TypeV)] >= 1);
  CHECK(counts.detections[static_cast<std::size_t>(R::TypeM)] >= 1);
  CHECK(counts.pairs == 3);
  auto rates = rates_from_counts(counts);
  CHECK(rates.size() == 14);
  CHECK(sum(rates) == doctest::Approx(1.0).epsilon(1e-12));
  try {
    relationship_rates(coll.sets, rs, shared.lookup(), IdentifierKind::Variable);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoData);
  }
}

TEST_CASE("commits without facts are skipped and counted") {
  auto rs = with_chunks({rec("c", IdentifierKind::Variable, "aB", "aC"), rec("c", IdentifierKind::Variable, "dB", "dC")},
                        Mode::Raw);
  auto coll = build_rename_sets(rs, Mode::Raw);
  auto counts = count_relationships(coll.sets, rs, [](const std::string&) { return nullptr; });
  CHECK(counts.sets_without_facts == 1);
  CHECK(counts.total() == 0);
}

TEST_CASE("chunk type rates") {
  auto node = std::vector<RenameRecord>{rec("c", IdentifierKind::Variable, "node", "nodes")};
  auto raw = chunk_type_rates(with_chunks(node, Mode::Raw));
  CHECK(raw.at(ChunkKind::Replace) == 1.0);
  CHECK(raw.size() == 5);
  CHECK(chunk_type_rates(with_chunks(node, Mode::Lemma)).at(ChunkKind::Inflect) == 1.0);
  auto times = std::vector<RenameRecord>{rec("c", IdentifierKind::Attribute, "TIMES", "times")};
  CHECK(chunk_type_rates(with_chunks(times, Mode::Lemma)).at(ChunkKind::Other) == 1.0);
  CHECK_THROWS_AS(chunk_type_rates(std::vector<RenameRecord>{}), Error);
}

TEST_CASE("inflection impact without inflected renames") {
  auto facts = fixtures::facts_of("sample");
  fixtures::SharedFacts shared(facts);
  std::vector<RenameRecord> rs = {rec("c", IdentifierKind::Method, "addItem", "addElement"),
                                  rec("c", IdentifierKind::Method, "removeItem", "removeElement")};
  auto impact = inflection_impact(rs, shared.lookup());
  CHECK(impact.difference.empty());
  CHECK(impact.raw_rate == impact.lemma_rate);
  CHECK(impact.raw_sets == impact.lemma_sets);
  CHECK_FALSE(impact.difference_rates.has_value());
  CHECK_THROWS_AS(inflection_impact(std::vector<RenameRecord>{}, shared.lookup()), Error);
}

TEST_CASE("query fixture merges instances of the class in lemma mode") {
  auto rs = fixtures::records_of("query/renames.jsonl");
  fixtures::SharedFacts shared(fixtures::facts_of("query/src"));
  auto impact = inflection_impact(rs, shared.lookup());
  REQUIRE(impact.difference.size() == 1);
  CHECK(impact.difference[0].members.size() == 3);
  REQUIRE(impact.difference_rates.has_value());
  CHECK(impact.difference_rates->at(R::TypeV) > 0);
}

TEST_CASE("synthetic corpus matches the hand tally") {
  Corpus c;
  auto stats = analyze_repository("corpus", c.records, c.facts.lookup());
  CHECK(stats.records == 44);
  CHECK(stats.raw_sets == 28);
  REQUIRE(stats.co_rename_rate.has_value());
  CHECK(*stats.co_rename_rate == doctest::Approx(30.0 / 46).epsilon(1e-12));
  CHECK(stats.lemma_sets == 26);
  REQUIRE(stats.lemma_co_rename_rate.has_value());
  CHECK(*stats.lemma_co_rename_rate == doctest::Approx(33.0 / 46).epsilon(1e-12));
  CHECK(stats.difference_sets == 2);

  REQUIRE(stats.size_histogram.size() == 4);
  const std::vector<std::array<double, 4>> rows = {
      {2, 1, 2, 14.0 / 30}, {2, 2, 12, 14.0 / 30}, {3, 3, 12, 26.0 / 30}, {4, 3, 4, 1.0}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(stats.size_histogram[i].n == rows[i][0]);
    CHECK(stats.size_histogram[i].m == rows[i][1]);
    CHECK(stats.size_histogram[i].members == rows[i][2]);
    CHECK(stats.size_histogram[i].cumulative == doctest::Approx(rows[i][3]).epsilon(1e-12));
  }

  auto expect_rates = [](const Maybe<RelationshipRates>& got, std::map<R, int> tally) {
    REQUIRE(got.has_value());
    int total = 0;
    for (auto [k, v] : tally) total += v;
    for (R k : kAllRelationshipKinds) {
      CAPTURE(to_string(k));
      const double expected = tally.count(k) ? double(tally[k]) / total : 0.0;
      CHECK(got->at(k) == doctest::Approx(expected).epsilon(1e-12));
    }
  };
  expect_rates(stats.relationship_rates, {{R::Accesses, 8}, {R::CoOccursM, 1}, {R::Passes, 2}, {R::TypeV, 1},
                                          {R::BelongsM, 2}, {R::BelongsF, 3}, {R::Assigns, 1}});
  using K = IdentifierKind;
  expect_rates(stats.filtered_rates.at(K::Class),
               {{R::TypeV, 1}, {R::BelongsM, 2}, {R::BelongsF, 3}, {R::Accesses, 2}, {R::Assigns, 1}});
  expect_rates(stats.filtered_rates.at(K::Method), {{R::Accesses, 8}, {R::CoOccursM, 1}, {R::Passes, 1},
                                                    {R::BelongsM, 2}, {R::BelongsF, 3}, {R::Assigns, 1}});
  expect_rates(stats.filtered_rates.at(K::Attribute), {{R::Accesses, 8}, {R::CoOccursM, 1}, {R::Passes, 1},
                                                       {R::BelongsM, 1}, {R::BelongsF, 3}, {R::Assigns, 1}});
  expect_rates(stats.filtered_rates.at(K::Parameter),
               {{R::Accesses, 3}, {R::Passes, 2}, {R::TypeV, 1}, {R::BelongsF, 2}, {R::Assigns, 1}});
  expect_rates(stats.filtered_rates.at(K::Variable), {{R::Passes, 1}});

  const std::map<R, int> diff = {{R::Accesses, 1}, {R::Passes, 1}, {R::TypeM, 1}, {R::TypeV, 2}, {R::BelongsM, 1}};
  const std::map<R, int> diff_no_belongs = {{R::Accesses, 1}, {R::Passes, 1}, {R::TypeM, 1}, {R::TypeV, 2}};
  expect_rates(stats.difference_rates, diff);
  expect_rates(stats.difference_filtered.at(K::Class), diff);
  expect_rates(stats.difference_filtered.at(K::Method), diff);
  expect_rates(stats.difference_filtered.at(K::Attribute), diff_no_belongs);
  expect_rates(stats.difference_filtered.at(K::Parameter), diff_no_belongs);
  CHECK_FALSE(stats.difference_filtered.at(K::Variable).has_value());

  auto raw_chunks = stats.chunk_type_rates.at(Mode::Raw);
  auto lemma_chunks = stats.chunk_type_rates.at(Mode::Lemma);
  REQUIRE(raw_chunks.has_value());
  REQUIRE(lemma_chunks.has_value());
  const std::map<ChunkKind, std::pair<int, int>> chunk_tally = {{ChunkKind::Insert, {8, 8}},
                                                                {ChunkKind::Delete, {4, 4}},
                                                                {ChunkKind::Replace, {32, 31}},
                                                                {ChunkKind::Other, {2, 2}},
                                                                {ChunkKind::Inflect, {0, 1}}};
  for (auto [k, counts] : chunk_tally) {
    CHECK(raw_chunks->at(k) == doctest::Approx(counts.first / 46.0).epsilon(1e-12));
    CHECK(lemma_chunks->at(k) == doctest::Approx(counts.second / 46.0).epsilon(1e-12));
  }
}

TEST_CASE("synthetic corpus matches an independent recount") {
  Corpus c;
  auto rs = with_chunks(c.records, Mode::Raw);
  const auto& d = *c.facts.detector;
  auto coll = build_rename_sets(rs, Mode::Raw);
  for (std::optional<IdentifierKind> filter :
       {std::optional<IdentifierKind>{}, std::optional{IdentifierKind::Class}, std::optional{IdentifierKind::Method},
        std::optional{IdentifierKind::Attribute}, std::optional{IdentifierKind::Parameter},
        std::optional{IdentifierKind::Variable}}) {
    auto oracle = recount(rs, d, filter);
    auto counts = count_relationships(coll.sets, rs, c.facts.lookup(), filter);
    CHECK(counts.total() == oracle.total);
    for (R k : kAllRelationshipKinds) CHECK(counts.detections[static_cast<std::size_t>(k)] == oracle.detections[k]);
  }
  // size rows from the same grouping
  auto oracle = recount(rs, d);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> rows;
  for (const auto& [id, members] : oracle.groups) {
    if (members.size() < 2) continue;
    std::set<std::string> olds;
    for (auto m : members) olds.insert(rs[m].old_name);
    rows[{members.size(), olds.size()}] += members.size();
  }
  auto hist = size_distribution(coll, rs);
  REQUIRE(hist.size() == rows.size());
  std::size_t i = 0;
  for (auto [nm, members] : rows) {
    CHECK(hist[i].n == nm.first);
    CHECK(hist[i].m == nm.second);
    CHECK(hist[i].members == members);
    ++i;
  }
}

TEST_CASE("inflection impact matches two independent single-mode passes") {
  Corpus c;
  auto impact = inflection_impact(c.records, c.facts.lookup());
  auto raw = with_chunks(c.records, Mode::Raw);
  auto lemma = with_chunks(c.records, Mode::Lemma);
  auto raw_coll = build_rename_sets(raw, Mode::Raw);
  auto lemma_coll = build_rename_sets(lemma, Mode::Lemma);
  CHECK(impact.raw_rate == co_rename_rate(raw_coll));
  CHECK(impact.lemma_rate == co_rename_rate(lemma_coll));
  auto diff = collection_difference(lemma_coll, raw_coll);
  CHECK(impact.difference == diff);
  CHECK(impact.difference_rates == relationship_rates(diff, lemma, c.facts.lookup()));
}

TEST_CASE("parallel relationship counting matches serial") {
  Corpus c;
  auto rs = with_chunks(c.records, Mode::Raw);
  auto coll = build_rename_sets(rs, Mode::Raw);
  const int saved = worker_count();
  for (int w : {1, 2, 8}) {
    set_worker_count(w);
    for (std::optional<IdentifierKind> filter : {std::optional<IdentifierKind>{}, std::optional{IdentifierKind::Method}}) {
      CHECK(count_relationships(coll.sets, rs, c.facts.lookup(), filter) ==
            count_relationships_serial(coll.sets, rs, c.facts.lookup(), filter));
    }
  }
  set_worker_count(saved);
}

TEST_CASE("report round trip and files") {
  Corpus c;
  std::vector<RepoStats> repos = {analyze_repository("corpus", c.records, c.facts.lookup())};
  repos.push_back(analyze_repository("empty", {}, c.facts.lookup()));
  auto doc = report_to_json(repos);
  CHECK(report_from_json(doc) == repos);
  CHECK(report_from_json(nlohmann::json::parse(doc.dump())) == repos);
  CHECK(doc["repos"][1]["co_rename_rate"] == "NoData");

  auto dir = fs::temp_directory_path() / "corename-report-test";
  fs::remove_all(dir);
  emit_report(repos, dir.string(), false);
  for (const char* f : {"report.json", "co_rename.csv", "size_distribution.csv", "relationship_rates.csv",
                        "chunk_types.csv", "summary.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK(fixtures::slurp((dir / "co_rename.csv").string())
            .starts_with("repo,records,raw_sets,raw_rate,lemma_sets,lemma_rate,difference_sets\n"));
  CHECK(fixtures::slurp((dir / "size_distribution.csv").string()).starts_with("repo,n,m,members,cumulative_rate\n"));
  CHECK(fixtures::slurp((dir / "relationship_rates.csv").string())
            .starts_with("repo,scope,filter,relationship,rate\n"));
  CHECK(fixtures::slurp((dir / "chunk_types.csv").string()).starts_with("repo,mode,chunk,rate\n"));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".svg");
  emit_report(repos, dir.string(), true);
  CHECK(fs::exists(dir / "size_distribution.svg"));
  CHECK(fs::exists(dir / "relationship_rates.svg"));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
  fs::remove_all(dir);
}

#include <algorithm>
#include <random>

#include "corename/error.hpp"
#include "corename/parallel.hpp"
#include "corename/recommend.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace corename;

namespace {

using R = RelationshipKind;

RenameRecord trigger(const std::string& old_name, const std::string& new_name, IdentifierKind kind) {
  RenameRecord r;
  r.commit = "t";
  r.kind = kind;
  r.old_name = old_name;
  r.new_name = new_name;
  return r;
}

const RecommendationCandidate* find(const std::vector<RecommendationCandidate>& cs, const std::string& name,
                                    const std::string& proposed) {
  for (const auto& c : cs) {
    if (c.name == name && c.proposed_name == proposed) return &c;
  }
  return nullptr;
}

std::size_t rank_of(const std::vector<RecommendationCandidate>& cs, const std::string& name) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].name == name) return i;
  }
  return cs.size();
}

std::vector<std::string> order(const std::vector<RecommendationCandidate>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.name + ">" + c.proposed_name + "@" + std::to_string(c.entity));
  return out;
}

}  // namespace

TEST_CASE("bundled profile") {
  const auto& p = PriorProfile::bundled();
  CHECK(p.weight(IdentifierKind::Method, R::CoOccursM) == doctest::Approx(0.408).epsilon(1e-12));
  CHECK(p.weight(IdentifierKind::Method, R::Assigns) == doctest::Approx(0.259).epsilon(1e-12));
  CHECK(p.weight(IdentifierKind::Class, R::TypeV) > p.weight(IdentifierKind::Class, R::TypeM));
  CHECK(p.default_weight == 0);
  CHECK(PriorProfile::from_json(p.to_json()) == p);
}

TEST_CASE("profile validation") {
  auto doc = nlohmann::json::parse(R"({"default_weight":0,"weights":{"Method":{"CoOccursM":-1}}})");
  CHECK_THROWS_AS(PriorProfile::from_json(doc), Error);
  doc = nlohmann::json::parse(R"({"default_weight":0,"weights":{"Method":{"CoOccursM":0}}})");
  CHECK_THROWS_AS(PriorProfile::from_json(doc), Error);
  doc = nlohmann::json::parse(R"({"weights":{"Method":{"Calls":1}}})");
  CHECK_THROWS_AS(PriorProfile::from_json(doc), Error);
  doc = nlohmann::json::parse(R"({"weights":{"Enum":{"Passes":1}}})");
  CHECK_THROWS_AS(PriorProfile::from_json(doc), Error);
}

TEST_CASE("profile from rates") {
  RelationshipRates single;
  for (R k : kAllRelationshipKinds) single[k] = 0;
  single[R::Passes] = 1.0;
  auto p = build_prior_profile({{IdentifierKind::Variable, single}, {IdentifierKind::Class, std::nullopt}});
  CHECK(p.weight(IdentifierKind::Variable, R::Passes) == 1.0);
  CHECK(p.weights.count(IdentifierKind::Class) == 0);
  CHECK_THROWS_AS(build_prior_profile({{IdentifierKind::Class, std::nullopt}}), Error);

  // corpus: Variable-filtered rates are {Passes: 1} by the hand tally
  auto records = fixtures::records_of("corpus/renames.jsonl");
  fixtures::SharedFacts facts(fixtures::facts_of("corpus/facts/default"));
  auto stats = analyze_repository("corpus", records, facts.lookup());
  auto corpus = build_prior_profile(stats.filtered_rates);
  CHECK(corpus.weight(IdentifierKind::Variable, R::Passes) == 1.0);
  CHECK(corpus.weight(IdentifierKind::Class, R::BelongsF) == doctest::Approx(3.0 / 9).epsilon(1e-12));
  CHECK(corpus.weight(IdentifierKind::Method, R::Accesses) == doctest::Approx(8.0 / 16).epsilon(1e-12));
}

TEST_CASE("metric trigger candidates") {
  auto facts = fixtures::facts_of("metric/before");
  auto t = trigger("MetricType", "MetricAttribute", IdentifierKind::Class);
  auto cs = generate_candidates(t, facts, Mode::Lemma);
  const auto* metric = find(cs, "metricType", "metricAttribute");
  const auto* getter = find(cs, "getDisabledMetricTypes", "getDisabledMetricAttributes");
  const auto* ganglia = find(cs, "GMetricType", "GMetricAttribute");
  REQUIRE(metric);
  REQUIRE(getter);
  REQUIRE(ganglia);
  CHECK(metric->relationships.contains(R::TypeV));
  CHECK(getter->relationships.contains(R::TypeM));
  CHECK(ganglia->relationships.empty());

  auto ranked = rank_candidates(cs, PriorProfile::bundled(), IdentifierKind::Class);
  CHECK(rank_of(ranked, "metricType") < rank_of(ranked, "GMetricType"));
  CHECK(rank_of(ranked, "getDisabledMetricTypes") < rank_of(ranked, "GMetricType"));
  auto cut = rank_candidates(cs, PriorProfile::bundled(), IdentifierKind::Class, 1e-9);
  CHECK(rank_of(cut, "GMetricType") == cut.size());
  CHECK(rank_of(cut, "metricType") < cut.size());
}

TEST_CASE("triggers without applicable words") {
  auto facts = fixtures::facts_of("metric/before");
  CHECK(generate_candidates(trigger("zebraWidth", "zebraHeight", IdentifierKind::Variable), facts, Mode::Lemma).empty());
  auto other = generate_candidates(trigger("TYPE", "type", IdentifierKind::Attribute), facts, Mode::Lemma);
  CHECK(other.empty());
}

TEST_CASE("relationship-free candidates are dropped under a positive cutoff") {
  auto facts = fixtures::facts_of_source("A.java", "class A { int fooCount; } class B { int fooSize; }");
  auto cs = generate_candidates(trigger("fooTotal", "barTotal", IdentifierKind::Variable), facts, Mode::Lemma);
  REQUIRE_FALSE(cs.empty());
  for (const auto& c : cs) CHECK(c.relationships.empty());
  CHECK(rank_candidates(cs, PriorProfile::bundled(), IdentifierKind::Variable, 0.001).empty());
}

TEST_CASE("add/remove scenario ranks the co-occurring method first") {
  auto facts = fixtures::facts_of("sample");
  auto cs = generate_candidates(trigger("addItem", "addElement", IdentifierKind::Method), facts, Mode::Lemma);
  auto ranked = rank_candidates(cs, PriorProfile::bundled(), IdentifierKind::Method);
  REQUIRE_FALSE(ranked.empty());
  CHECK(ranked[0].name == "removeItem");
  CHECK(ranked[0].proposed_name == "removeElement");
  CHECK(ranked[0].relationships.contains(R::CoOccursM));
}

TEST_CASE("properties of ranking") {
  auto facts = fixtures::facts_of("corpus/facts/default");
  const std::vector<RenameRecord> triggers = {trigger("getItemCount", "getProductCount", IdentifierKind::Method),
                                              trigger("customerName", "clientName", IdentifierKind::Attribute),
                                              trigger("LineItem", "LineEntry", IdentifierKind::Class),
                                              trigger("total", "sum", IdentifierKind::Variable),
                                              trigger("getPrice", "getCost", IdentifierKind::Method)};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  for (const auto& t : triggers) {
    CAPTURE(t.old_name);
    auto cs = generate_candidates(t, facts, Mode::Lemma);
    REQUIRE_FALSE(cs.empty());

    // self-exclusion
    for (const auto& c : cs) CHECK_FALSE((c.kind == t.kind && c.name == t.old_name));

    // proposed names carry the trigger's chunk
    const auto trigger_keys = [&] {
      std::vector<std::string> k;
      for (const auto& c : diff_chunks(normalize(t.old_name, Mode::Lemma), normalize(t.new_name, Mode::Lemma), Mode::Lemma)) {
        k.push_back(chunk_key(c).text);
      }
      return k;
    }();
    for (const auto& c : cs) {
      auto chunks = diff_chunks(normalize(c.name, Mode::Lemma), normalize(c.proposed_name, Mode::Lemma), Mode::Lemma);
      bool found = false;
      for (const auto& ch : chunks) {
        found = found || std::find(trigger_keys.begin(), trigger_keys.end(), chunk_key(ch).text) != trigger_keys.end();
      }
      CAPTURE(c.name);
      CAPTURE(c.proposed_name);
      CHECK(found);
    }

    // random profile, scaled copy, boosted candidate
    PriorProfile p;
    for (auto k : kAllIdentifierKinds) {
      std::array<double, kRelationshipKindCount> row{};
      for (auto& x : row) x = w(rng);
      p.weights[k] = row;
    }
    auto base = rank_candidates(cs, p, t.kind);
    PriorProfile scaled = p;
    for (auto& [k, row] : scaled.weights) {
      for (auto& x : row) x *= 3.5;
    }
    CHECK(order(rank_candidates(cs, scaled, t.kind)) == order(base));

    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (R k : kAllRelationshipKinds) {
        if (cs[i].relationships.contains(k)) continue;
        auto boosted = cs;
        boosted[i].relationships.insert(k);
        auto before = rank_candidates(cs, p, t.kind);
        auto after = rank_candidates(boosted, p, t.kind);
        auto pos = [&](const std::vector<RecommendationCandidate>& v) {
          return std::find_if(v.begin(), v.end(), [&](const RecommendationCandidate& c) {
                   return c.entity == cs[i].entity && c.proposed_name == cs[i].proposed_name;
                 }) - v.begin();
        };
        CHECK(pos(after) <= pos(before));
      }
    }
  }
}

TEST_CASE("parallel candidate generation matches serial") {
  auto facts = fixtures::facts_of("corpus/facts/default");
  auto t = trigger("getItemCount", "getProductCount", IdentifierKind::Method);
  const int saved = worker_count();
  for (int n : {1, 3, 8}) {
    set_worker_count(n);
    for (Mode mode : {Mode::Raw, Mode::Lemma}) {
      CHECK(generate_candidates(t, facts, mode) == generate_candidates_serial(t, facts, mode));
    }
  }
  set_worker_count(saved);
}

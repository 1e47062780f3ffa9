#include <algorithm>

#include "corename/error.hpp"
#include "corename/facts.hpp"
#include "corename/facts_io.hpp"
#include "corename/parallel.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using namespace corename;

namespace {

bool has_row(const std::vector<NameRow>& rows, const CodeFacts& f, const std::string& entity, const std::string& name) {
  return std::any_of(rows.begin(), rows.end(),
                     [&](const NameRow& r) { return f.entity(r.entity).name == entity && r.name == name; });
}

const Entity* find_entity(const CodeFacts& f, const std::string& name, EntityKind kind) {
  for (const auto& e : f.entities) {
    if (e.name == name && e.kind == kind) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("metric fixture facts") {
  auto f = fixtures::facts_of("metric/before");
  CHECK(has_row(f.typed, f, "metricType", "MetricType"));
  CHECK(has_row(f.returns, f, "getDisabledMetricTypes", "MetricType"));
  CHECK(has_row(f.typed, f, "disabledMetricTypes", "MetricType"));
  CHECK(detect_relationships(f, "MetricType", "metricType") == RelationshipSet{RelationshipKind::TypeV});
  CHECK(detect_relationships(f, "MetricType", "getDisabledMetricTypes") == RelationshipSet{RelationshipKind::TypeM});
  CHECK(detect_relationships(f, "absentOne", "absentTwo").empty());
  CHECK(detect_relationships(f, "MetricType", "GMetricType").empty());
}

TEST_CASE("empty file set gives empty tables") {
  auto f = extract_facts({});
  CHECK(f == CodeFacts{});
}

TEST_CASE("entity extraction") {
  auto f = fixtures::facts_of_source("A.java", R"(
package p;
import java.util.*;
@Deprecated
public class A<T> extends B implements C, D<T> {
  private static final int MAX = 1;
  @Override public String name(int x, final List<String> ys) { int local = x; return local; }
  public A(int seed) { this.count = seed; }
  interface Inner { void run(); }
  enum Mode { ON, OFF }
}
)");
  REQUIRE(f.skipped.empty());
  const auto* cls = find_entity(f, "A", EntityKind::Class);
  REQUIRE(cls);
  CHECK(find_entity(f, "name", EntityKind::Method));
  CHECK(find_entity(f, "A", EntityKind::Constructor));
  CHECK(find_entity(f, "MAX", EntityKind::Attribute));
  CHECK(find_entity(f, "x", EntityKind::Parameter));
  CHECK(find_entity(f, "ys", EntityKind::Parameter));
  CHECK(find_entity(f, "local", EntityKind::Variable));
  CHECK(find_entity(f, "seed", EntityKind::Parameter));
  CHECK(find_entity(f, "Inner", EntityKind::Interface));
  CHECK(find_entity(f, "run", EntityKind::Method));
  CHECK(has_row(f.extends, f, "A", "B"));
  CHECK(has_row(f.implements, f, "A", "C"));
  CHECK(has_row(f.implements, f, "A", "D"));
  CHECK(has_row(f.typed, f, "ys", "String"));
  CHECK(has_row(f.typed, f, "ys", "List"));
  CHECK(has_row(f.returns, f, "name", "String"));
  CHECK(identifier_kind_of(EntityKind::Interface) == IdentifierKind::Class);
  CHECK_FALSE(identifier_kind_of(EntityKind::Constructor).has_value());
}

TEST_CASE("unbalanced file is skipped, the rest is kept") {
  auto f = extract_facts({{"Bad.java", "class Bad { void f( { }"}, {"Good.java", "class Good { int g; }"}});
  REQUIRE(f.skipped.size() == 1);
  CHECK(f.skipped[0].file == "Bad.java");
  CHECK(find_entity(f, "Good", EntityKind::Class));
  CHECK_FALSE(find_entity(f, "Bad", EntityKind::Class));
}

TEST_CASE("relationship catalog") {
  const auto& table = relationship_table();
  REQUIRE(table.size() == 14);
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(table[i].kind == kAllRelationshipKinds[i]);
    CHECK_FALSE(table[i].predicate.empty());
    CHECK(relationship_kind_from_string(to_string(table[i].kind)) == table[i].kind);
  }
  CHECK_THROWS_AS(relationship_kind_from_string("Calls"), Error);
}

TEST_CASE("co-occurring methods and self invocation") {
  auto f = fixtures::facts_of("sample");
  CHECK(detect_relationships(f, "addItem", "removeItem").contains(RelationshipKind::CoOccursM));
  auto g = fixtures::facts_of_source("R.java", "class R { void m() { m(); } }");
  CHECK_FALSE(detect_relationships(g, "m", "m").contains(RelationshipKind::Invokes));
}

TEST_CASE("golden relationship fixtures") {
  const auto manifest = nlohmann::json::parse(fixtures::slurp(fixtures::path("relationships/manifest.json")));
  REQUIRE(manifest.size() == 14);
  for (const auto& item : manifest) {
    const auto kind = relationship_kind_from_string(item["kind"].get<std::string>());
    const auto first = item["first"].get<std::string>();
    const auto second = item["second"].get<std::string>();
    CAPTURE(item.dump());
    for (bool positive : {true, false}) {
      const auto file = item[positive ? "positive" : "negative"].get<std::string>();
      auto f = fixtures::facts_of_source(file, fixtures::slurp(fixtures::path("relationships/" + file)));
      CHECK(f.skipped.empty());
      RelationshipDetector d(f);
      CHECK(d.detect(first, second).contains(kind) == positive);
      CHECK(d.oriented(first, second).contains(kind) == positive);
    }
  }
}

TEST_CASE("property: detection is symmetric in its arguments") {
  auto f = fixtures::facts_of("corpus/facts/default");
  RelationshipDetector d(f);
  std::vector<std::string> names;
  for (const auto& e : f.entities) names.push_back(e.name);
  for (const auto& a : names) {
    for (const auto& b : names) {
      auto both = d.detect(a, b);
      CHECK(both == d.detect(b, a));
      auto oriented = d.oriented(a, b);
      oriented |= d.oriented(b, a);
      CHECK(both == oriented);
    }
  }
}

TEST_CASE("parallel and serial extraction agree") {
  auto files = read_source_dir(fixtures::path("relationships"));
  auto more = read_source_dir(fixtures::path("corpus/facts/default"));
  files.insert(files.end(), more.begin(), more.end());
  const int saved = worker_count();
  for (int w : {1, 3, 8}) {
    set_worker_count(w);
    CHECK(extract_facts(files) == extract_facts_serial(files));
  }
  set_worker_count(saved);
}

TEST_CASE("facts json round trip") {
  auto f = fixtures::facts_of("metric/before");
  auto doc = facts_to_json(f);
  CHECK(facts_from_json(doc) == f);
  CHECK(facts_from_json(nlohmann::json::parse(doc.dump())) == f);
  auto broken = doc;
  broken["entities"][0]["container"] = 999999;
  CHECK_THROWS_AS(facts_from_json(broken), Error);
  CHECK_THROWS_AS(facts_from_json(nlohmann::json::array()), Error);
}

TEST_CASE("restricting and appending facts") {
  auto f = fixtures::facts_of("corpus/facts/default");
  auto order = f.restricted_to({"Order.java"});
  CHECK(find_entity(order, "getPrice", EntityKind::Method));
  CHECK_FALSE(find_entity(order, "Customer", EntityKind::Class));
  for (const auto& e : order.entities) CHECK(e.file == "Order.java");
  CodeFacts twice = order;
  twice.append(order);
  CHECK(twice.entities.size() == 2 * order.entities.size());
  for (std::size_t i = 0; i < twice.entities.size(); ++i) CHECK(twice.entities[i].id == i);
}

TEST_CASE("passes resolve actuals to formals") {
  auto f = fixtures::facts_of("corpus/facts/default");
  auto passes = [&](const std::string& formal, const std::string& actual) {
    return std::any_of(f.passes.begin(), f.passes.end(),
                       [&](const PassRow& p) { return p.formal == formal && p.actual == actual; });
  };
  CHECK(passes("items", "lineItems"));
  CHECK(passes("target", "address"));
  CHECK(passes("payload", "order"));
  CHECK_FALSE(passes("target", "order"));
}

TEST_CASE("read_source_dir errors") {
  CHECK_THROWS_AS(read_source_dir(fixtures::path("does-not-exist")), Error);
  auto files = read_source_dir(fixtures::path("metric/before"));
  CHECK(std::is_sorted(files.begin(), files.end(),
                       [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; }));
}

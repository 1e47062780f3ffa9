#include <algorithm>
#include <random>

#include "corename/chunks.hpp"
#include "corename/error.hpp"
#include "doctest.h"

using namespace corename;

namespace {

std::vector<std::string> keys(const std::vector<OperationalChunk>& chunks) {
  std::vector<std::string> out;
  for (const auto& c : chunks) out.push_back(chunk_key(c).text);
  return out;
}

std::vector<std::string> diff_keys(const char* old_name, const char* new_name, Mode mode) {
  return keys(diff_chunks(normalize(old_name, mode), normalize(new_name, mode), mode));
}

std::vector<std::string> rendered(const OperationalChunk& chunk, const char* target, Mode mode) {
  std::vector<std::string> out;
  for (const auto& s : apply_chunk(chunk, normalize(target, mode), mode)) out.push_back(s.origin);
  return out;
}

OperationalChunk replace(std::vector<std::string> del, std::vector<std::string> add) {
  OperationalChunk c;
  c.kind = ChunkKind::Replace;
  c.deleted = std::move(del);
  c.added = std::move(add);
  return c;
}

// Longest common subsequence by enumerating subsequences of a (oracle).
std::size_t brute_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t best = 0;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    std::size_t bits = 0, j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      ++bits;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      else ++j;
    }
    if (ok) best = std::max(best, bits);
  }
  return best;
}

WordSequence seq_of(const std::vector<std::string>& words) {
  std::string name;
  for (std::size_t i = 0; i < words.size(); ++i) name += (i ? "_" : "") + words[i];
  return normalize(name, Mode::Raw);
}

}  // namespace

TEST_CASE("chunk examples") {
  CHECK(diff_keys("dataProviderId", "dataProviderInstanceId", Mode::Raw) == std::vector<std::string>{"I||instance"});
  CHECK(diff_keys("skipConstantResult", "skipResult", Mode::Raw) == std::vector<std::string>{"D|constant|"});
  CHECK(diff_keys("getRandom", "createRandom", Mode::Raw) == std::vector<std::string>{"R|get|create"});
  CHECK(diff_keys("minimumVersion", "versionSpec", Mode::Raw) ==
        std::vector<std::string>{"D|minimum|", "I||spec"});
  CHECK(diff_keys("node", "nodes", Mode::Lemma) == std::vector<std::string>{"F|node|"});
  CHECK(diff_keys("node", "nodes", Mode::Raw) == std::vector<std::string>{"R|node|nodes"});
  CHECK(diff_keys("TIMES", "times", Mode::Lemma) == std::vector<std::string>{"O|time|"});
  CHECK(diff_keys("instance", "instances", Mode::Lemma) == std::vector<std::string>{"F|instance|"});
  CHECK(diff_keys("TIMES", "times", Mode::Raw) == std::vector<std::string>{"O|times|"});
}

TEST_CASE("chunk shapes") {
  auto chunks = diff_chunks(normalize("getItemCount", Mode::Raw), normalize("getProductCount", Mode::Raw), Mode::Raw);
  REQUIRE(chunks.size() == 1);
  CHECK(chunks[0].kind == ChunkKind::Replace);
  CHECK(chunks[0].anchor == 1);
  auto ins = diff_chunks(normalize("dataProviderId", Mode::Raw), normalize("dataProviderInstanceId", Mode::Raw),
                         Mode::Raw);
  REQUIRE(ins.size() == 1);
  CHECK(ins[0].context == "provider");
  CHECK_FALSE(ins[0].context_right);
  auto front = diff_chunks(normalize("count", Mode::Raw), normalize("maxCount", Mode::Raw), Mode::Raw);
  REQUIRE(front.size() == 1);
  CHECK(front[0].context == "count");
  CHECK(front[0].context_right);
  CHECK(diff_chunks(normalize("sameName", Mode::Raw), normalize("sameName", Mode::Raw), Mode::Raw).empty());
  CHECK(changed_word_count(chunks) == 2);
}

TEST_CASE("chunk keys") {
  OperationalChunk ins;
  ins.kind = ChunkKind::Insert;
  ins.added = {"instance"};
  CHECK(chunk_key(ins).text == "I||instance");
  CHECK(chunk_key(replace({"get"}, {"create"})).text == "R|get|create");
  CHECK(chunk_key(replace({"a", "b"}, {"c"})).text == "R|a+b|c");
  OperationalChunk inflect;
  inflect.kind = ChunkKind::Inflect;
  inflect.deleted = {"node"};
  CHECK(chunk_key(inflect).text == "F|node|");
  auto moved = ins;
  moved.anchor = 5;
  moved.context = "other";
  CHECK(chunk_key(moved) == chunk_key(ins));
}

TEST_CASE("apply_chunk rewrites targets") {
  auto c = replace({"type"}, {"attribute"});
  CHECK(rendered(c, "metricType", Mode::Lemma) == std::vector<std::string>{"metricAttribute"});
  CHECK(rendered(c, "getDisabledMetricTypes", Mode::Lemma) == std::vector<std::string>{"getDisabledMetricAttributes"});
  CHECK(rendered(c, "MetricType", Mode::Lemma) == std::vector<std::string>{"MetricAttribute"});
  CHECK(rendered(c, "METRIC_TYPE", Mode::Lemma) == std::vector<std::string>{"METRIC_ATTRIBUTE"});
  CHECK(rendered(c, "typeOfType", Mode::Lemma) == std::vector<std::string>{"attributeOfType", "typeOfAttribute"});
  CHECK(rendered(c, "count", Mode::Lemma).empty());

  OperationalChunk del;
  del.kind = ChunkKind::Delete;
  del.deleted = {"x"};
  CHECK(rendered(del, "fooBar", Mode::Raw).empty());
  del.deleted = {"foo"};
  CHECK(rendered(del, "fooBar", Mode::Raw) == std::vector<std::string>{"bar"});
  CHECK_THROWS_AS(apply_chunk(del, normalize("foo", Mode::Raw), Mode::Raw), Error);

  OperationalChunk other;
  other.kind = ChunkKind::Other;
  other.deleted = {"time"};
  CHECK(rendered(other, "timeout", Mode::Lemma).empty());
}

TEST_CASE("apply_chunk insert needs its context word") {
  auto chunks = diff_chunks(normalize("dataProviderId", Mode::Raw), normalize("dataProviderInstanceId", Mode::Raw),
                            Mode::Raw);
  REQUIRE(chunks.size() == 1);
  CHECK(rendered(chunks[0], "providerName", Mode::Raw) == std::vector<std::string>{"providerInstanceName"});
  CHECK(rendered(chunks[0], "userName", Mode::Raw).empty());
}

TEST_CASE("align_words prefers fewest changes, then fewest runs") {
  const std::vector<std::string> a = {"a", "b", "a"}, b = {"b", "c", "a"};
  auto ops = align_words(a, b);
  std::size_t keeps = std::count(ops.begin(), ops.end(), EditOp::Keep);
  CHECK(keeps == 2);
}

TEST_CASE("property: changed words equal the brute-force minimum") {
  const std::vector<std::string> letters = {"a", "b", "c", "d"};
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(0, 6), pick(0, 3);
  for (int t = 0; t < 4000; ++t) {
    std::vector<std::string> a, b;
    for (int i = len(rng); i > 0; --i) a.push_back(letters[pick(rng)]);
    for (int i = len(rng); i > 0; --i) b.push_back(letters[pick(rng)]);
    if (a.empty() || b.empty()) continue;
    auto chunks = diff_chunks(seq_of(a), seq_of(b), Mode::Raw);
    const auto expected = a.size() + b.size() - 2 * brute_lcs(a, b);
    CAPTURE(t);
    CHECK(changed_word_count(chunks) == expected);
  }
}

TEST_CASE("property: chunks applied at anchors reproduce the new sequence") {
  const std::vector<std::string> vocab = {"get", "set", "item", "items", "count", "node", "nodes", "max", "id"};
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  for (int t = 0; t < 3000; ++t) {
    std::vector<std::string> a, b;
    for (int i = len(rng); i > 0; --i) a.push_back(vocab[pick(rng)]);
    for (int i = len(rng); i > 0; --i) b.push_back(vocab[pick(rng)]);
    for (Mode mode : {Mode::Raw, Mode::Lemma}) {
      auto old_seq = normalize(seq_of(a).origin, mode);
      auto new_seq = normalize(seq_of(b).origin, mode);
      auto chunks = diff_chunks(old_seq, new_seq, mode);
      CHECK(apply_at_anchors(chunks, old_seq.lemmas()) == new_seq.lemmas());
      for (const auto& c : chunks) {
        const bool shaped = (c.kind == ChunkKind::Insert && c.deleted.empty() && !c.added.empty()) ||
                            (c.kind == ChunkKind::Delete && !c.deleted.empty() && c.added.empty()) ||
                            (c.kind == ChunkKind::Replace && !c.deleted.empty() && !c.added.empty()) ||
                            ((c.kind == ChunkKind::Other || c.kind == ChunkKind::Inflect) &&
                             c.deleted.size() == 1 && c.added.empty());
        CHECK(shaped);
      }
    }
  }
}

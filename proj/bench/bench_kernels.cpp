// Serial reference vs OpenMP kernel for each data-parallel loop.
// The second argument of every parallel benchmark is the worker count.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "corename/analytics.hpp"
#include "corename/facts.hpp"
#include "corename/grouping.hpp"
#include "corename/mining.hpp"
#include "corename/parallel.hpp"
#include "corename/recommend.hpp"

using namespace corename;

namespace {

const std::vector<std::string> kVocab = {"get",   "set",   "item",  "items",  "count", "node",  "nodes", "query",
                                         "entry", "value", "price", "cost",   "total", "order", "line",  "name",
                                         "id",    "type",  "types", "status", "max",   "min",   "user",  "client"};

std::string camel(const std::vector<std::string>& words, bool upper_first) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (i > 0 || upper_first) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    out += w;
  }
  return out;
}

std::string random_name(std::mt19937& rng, bool upper_first) {
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<std::size_t> pick(0, kVocab.size() - 1);
  std::vector<std::string> words;
  for (int i = len(rng); i > 0; --i) words.push_back(kVocab[pick(rng)]);
  return camel(words, upper_first);
}

std::vector<RenameRecord> make_records(std::size_t n) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> commit(0, static_cast<int>(n / 8));
  std::vector<RenameRecord> out;
  while (out.size() < n) {
    RenameRecord r;
    r.commit = "c" + std::to_string(commit(rng));
    r.kind = IdentifierKind::Method;
    r.old_name = random_name(rng, false);
    r.new_name = random_name(rng, false);
    r.file = "F.java";
    if (r.old_name != r.new_name) out.push_back(std::move(r));
  }
  return out;
}

std::vector<SourceFile> make_sources(std::size_t files) {
  std::mt19937 rng(2);
  std::vector<SourceFile> out;
  for (std::size_t f = 0; f < files; ++f) {
    const auto cls = random_name(rng, true) + std::to_string(f);
    std::string code = "class " + cls + " extends " + random_name(rng, true) + " {\n";
    std::vector<std::string> fields;
    for (int i = 0; i < 6; ++i) {
      fields.push_back(random_name(rng, false) + std::to_string(i));
      code += "  private " + random_name(rng, true) + " " + fields.back() + ";\n";
    }
    for (int m = 0; m < 6; ++m) {
      const auto param = random_name(rng, false);
      code += "  public " + random_name(rng, true) + " " + random_name(rng, false) + std::to_string(m) + "(" +
              random_name(rng, true) + " " + param + ") {\n";
      code += "    " + fields[static_cast<std::size_t>(m)] + " = " + param + ";\n";
      code += "    " + random_name(rng, true) + " local = " + random_name(rng, false) + "(" + param + ");\n";
      code += "    return local;\n  }\n";
    }
    code += "}\n";
    out.push_back({cls + ".java", std::move(code)});
  }
  return out;
}

struct Workers {
  explicit Workers(int n) : saved(worker_count()) { set_worker_count(n); }
  ~Workers() { set_worker_count(saved); }
  int saved;
};

void BM_ComputeChunksSerial(benchmark::State& state) {
  const auto records = make_records(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto rs = records;
    compute_chunks_serial(rs, Mode::Lemma);
    benchmark::DoNotOptimize(rs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ComputeChunksParallel(benchmark::State& state) {
  const auto records = make_records(static_cast<std::size_t>(state.range(0)));
  Workers w(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto rs = records;
    compute_chunks(rs, Mode::Lemma);
    benchmark::DoNotOptimize(rs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExtractFactsSerial(benchmark::State& state) {
  const auto files = make_sources(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_facts_serial(files).entities.size());
}

void BM_ExtractFactsParallel(benchmark::State& state) {
  const auto files = make_sources(static_cast<std::size_t>(state.range(0)));
  Workers w(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_facts(files).entities.size());
}

struct CountingInput {
  explicit CountingInput(std::size_t n) : records(make_records(n)), facts(extract_facts(make_sources(n / 8))),
                                          detector(facts) {
    compute_chunks(records, Mode::Raw);
    sets = build_rename_sets(records, Mode::Raw);
  }
  FactsLookup lookup() const {
    return [this](const std::string&) { return &detector; };
  }
  std::vector<RenameRecord> records;
  CodeFacts facts;
  RelationshipDetector detector;
  RenameSetCollection sets;
};

void BM_CountRelationshipsSerial(benchmark::State& state) {
  const CountingInput in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_relationships_serial(in.sets.sets, in.records, in.lookup()).pairs);
}

void BM_CountRelationshipsParallel(benchmark::State& state) {
  const CountingInput in(static_cast<std::size_t>(state.range(0)));
  Workers w(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(count_relationships(in.sets.sets, in.records, in.lookup()).pairs);
}

RenameRecord trigger() {
  RenameRecord r;
  r.kind = IdentifierKind::Method;
  r.old_name = "getItemCount";
  r.new_name = "getEntryCount";
  return r;
}

void BM_GenerateCandidatesSerial(benchmark::State& state) {
  const auto facts = extract_facts(make_sources(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(generate_candidates_serial(trigger(), facts, Mode::Lemma).size());
}

void BM_GenerateCandidatesParallel(benchmark::State& state) {
  const auto facts = extract_facts(make_sources(static_cast<std::size_t>(state.range(0))));
  Workers w(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(generate_candidates(trigger(), facts, Mode::Lemma).size());
}

}  // namespace

BENCHMARK(BM_ComputeChunksSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeChunksParallel)->Args({20000, 1})->Args({20000, 2})->Args({20000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractFactsSerial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractFactsParallel)->Args({400, 1})->Args({400, 2})->Args({400, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountRelationshipsSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountRelationshipsParallel)->Args({20000, 1})->Args({20000, 2})->Args({20000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateCandidatesSerial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateCandidatesParallel)->Args({400, 1})->Args({400, 2})->Args({400, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include "corename/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "bundled_data.hpp"
#include "corename/error.hpp"
#include "corename/parallel.hpp"

namespace corename {

using nlohmann::json;

double PriorProfile::weight(IdentifierKind trigger, RelationshipKind rel) const {
  auto it = weights.find(trigger);
  return it == weights.end() ? 0.0 : it->second[static_cast<std::size_t>(rel)];
}

void PriorProfile::validate() const {
  if (!std::isfinite(default_weight) || default_weight < 0) {
    throw Error(ErrorKind::ParseError, "default_weight must be finite and non-negative");
  }
  for (const auto& [kind, row] : weights) {
    bool positive = false;
    for (double w : row) {
      if (!std::isfinite(w) || w < 0) {
        throw Error(ErrorKind::ParseError, "weights for " + std::string(to_string(kind)) +
                                               " must be finite and non-negative");
      }
      positive = positive || w > 0;
    }
    if (!positive) throw Error(ErrorKind::ParseError, "no positive weight for " + std::string(to_string(kind)));
  }
}

json PriorProfile::to_json() const {
  json doc;
  doc["default_weight"] = default_weight;
  json w = json::object();
  for (const auto& [kind, row] : weights) {
    json r = json::object();
    for (auto rel : kAllRelationshipKinds) r[std::string(to_string(rel))] = row[static_cast<std::size_t>(rel)];
    w[std::string(to_string(kind))] = std::move(r);
  }
  doc["weights"] = std::move(w);
  return doc;
}

PriorProfile PriorProfile::from_json(const json& doc) {
  PriorProfile p;
  try {
    p.default_weight = doc.value("default_weight", 0.0);
    for (const auto& [kind, row] : doc.at("weights").items()) {
      std::array<double, kRelationshipKindCount> w{};
      for (const auto& [rel, value] : row.items()) {
        w[static_cast<std::size_t>(relationship_kind_from_string(rel))] = value.get<double>();
      }
      p.weights[identifier_kind_from_string(kind)] = w;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed profile: ") + e.what());
  }
  p.validate();
  return p;
}

const PriorProfile& PriorProfile::bundled() {
  static const PriorProfile profile = from_json(json::parse(bundled::default_profile));
  return profile;
}

PriorProfile build_prior_profile(const std::map<IdentifierKind, Maybe<RelationshipRates>>& rates,
                                 double default_weight) {
  PriorProfile p;
  p.default_weight = default_weight;
  for (const auto& [kind, r] : rates) {
    if (!r) continue;
    std::array<double, kRelationshipKindCount> w{};
    for (const auto& [rel, value] : *r) w[static_cast<std::size_t>(rel)] = value;
    p.weights[kind] = w;
  }
  if (p.weights.empty()) throw Error(ErrorKind::NoData, "no relationship rates for any identifier kind");
  return p;
}

namespace {

std::vector<RecommendationCandidate> candidates_for(const Entity& e, const RenameRecord& rename,
                                                    const std::vector<OperationalChunk>& chunks,
                                                    const CodeFacts& facts, const RelationshipDetector& detector,
                                                    Mode mode, const ExceptionTable& table) {
  auto kind = identifier_kind_of(e.kind);
  if (!kind) return {};
  if (*kind == rename.kind && e.name == rename.old_name) return {};
  std::vector<WordSequence> current;
  try {
    current.push_back(normalize(e.name, mode, table));
  } catch (const Error&) {
    return {};
  }
  bool applied = false;
  for (const auto& chunk : chunks) {
    std::vector<WordSequence> next;
    for (const auto& seq : current) {
      try {
        for (auto& r : apply_chunk(chunk, seq, mode, table)) {
          if (std::none_of(next.begin(), next.end(), [&](const WordSequence& s) { return s.origin == r.origin; })) {
            next.push_back(std::move(r));
          }
        }
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::DegenerateResult) throw;
      }
    }
    if (!next.empty()) {
      current = std::move(next);
      applied = true;
    }
  }
  if (!applied) return {};
  std::vector<RecommendationCandidate> out;
  const RelationshipSet rels = detector.detect(e.name, rename.old_name);
  std::string container;
  if (e.container != kNoEntity) container = facts.entity(e.container).name;
  for (const auto& seq : current) {
    if (seq.origin == e.name) continue;
    out.push_back({e.id, e.name, *kind, e.file, container, seq.origin, rels, 0.0});
  }
  return out;
}

std::vector<OperationalChunk> trigger_chunks(const RenameRecord& rename, Mode mode, const ExceptionTable& table) {
  return diff_chunks(normalize(rename.old_name, mode, table), normalize(rename.new_name, mode, table), mode);
}

}  // namespace

std::vector<RecommendationCandidate> generate_candidates_serial(const RenameRecord& rename, const CodeFacts& facts,
                                                                Mode mode, const ExceptionTable& table) {
  const auto chunks = trigger_chunks(rename, mode, table);
  const RelationshipDetector detector(facts);
  std::vector<RecommendationCandidate> out;
  for (const auto& e : facts.entities) {
    auto c = candidates_for(e, rename, chunks, facts, detector, mode, table);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<RecommendationCandidate> generate_candidates(const RenameRecord& rename, const CodeFacts& facts,
                                                         Mode mode, const ExceptionTable& table) {
  const auto chunks = trigger_chunks(rename, mode, table);
  const RelationshipDetector detector(facts);
  const auto count = static_cast<std::ptrdiff_t>(facts.entities.size());
  std::vector<std::vector<RecommendationCandidate>> per_entity(facts.entities.size());
  std::vector<std::exception_ptr> errors(facts.entities.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      per_entity[k] = candidates_for(facts.entities[k], rename, chunks, facts, detector, mode, table);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<RecommendationCandidate> out;
  for (auto& c : per_entity) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<RecommendationCandidate> rank_candidates(std::vector<RecommendationCandidate> candidates,
                                                     const PriorProfile& profile, IdentifierKind trigger,
                                                     std::optional<double> min_score) {
  for (auto& c : candidates) {
    if (c.relationships.empty()) {
      c.score = profile.default_weight;
    } else {
      double s = 0;
      for (auto rel : c.relationships.kinds()) s += profile.weight(trigger, rel);
      c.score = s;
    }
  }
  if (min_score) {
    std::erase_if(candidates, [&](const RecommendationCandidate& c) { return c.score < *min_score; });
  }
  std::sort(candidates.begin(), candidates.end(), [](const RecommendationCandidate& a, const RecommendationCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.kind, a.name, a.proposed_name, a.file, a.entity) <
           std::tie(b.kind, b.name, b.proposed_name, b.file, b.entity);
  });
  return candidates;
}

}  // namespace corename

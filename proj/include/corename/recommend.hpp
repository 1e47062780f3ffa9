#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corename/analytics.hpp"
#include "corename/facts.hpp"
#include "corename/mining.hpp"
#include "json.hpp"

namespace corename {

/// Per trigger kind, a weight for each relationship kind.
struct PriorProfile {
  std::map<IdentifierKind, std::array<double, kRelationshipKindCount>> weights;
  double default_weight = 0;

  double weight(IdentifierKind trigger, RelationshipKind rel) const;
  /// Throws Error(ParseError) unless every weight is finite and non-negative
  /// and each listed kind has a positive weight.
  void validate() const;

  nlohmann::json to_json() const;
  /// {"default_weight": x, "weights": {"Method": {"CoOccursM": 0.408, ...}, ...}}
  static PriorProfile from_json(const nlohmann::json& doc);
  /// Shipped defaults (data/default_profile.json).
  static const PriorProfile& bundled();

  friend bool operator==(const PriorProfile&, const PriorProfile&) = default;
};

/// weights[k][rel] = rate of rel among sets filtered by k; kinds without data
/// are left out. Throws Error(NoData) when no kind has rates.
PriorProfile build_prior_profile(const std::map<IdentifierKind, Maybe<RelationshipRates>>& rates,
                                 double default_weight = 0);

struct RecommendationCandidate {
  EntityId entity = kNoEntity;
  std::string name;
  IdentifierKind kind = IdentifierKind::Variable;
  std::string file;
  std::string container;
  std::string proposed_name;
  RelationshipSet relationships;
  double score = 0;

  friend bool operator==(const RecommendationCandidate&, const RecommendationCandidate&) = default;
};

/// Applies the rename's chunks (in order) to every other entity of the facts.
/// Entities named like the trigger and of the trigger's kind are skipped, as
/// are constructors. One candidate per distinct proposed name, carrying the
/// relationships between the entity name and the trigger's old name.
/// Candidate order follows entity order.
std::vector<RecommendationCandidate> generate_candidates(const RenameRecord& rename, const CodeFacts& facts,
                                                         Mode mode,
                                                         const ExceptionTable& table = ExceptionTable::bundled());
/// Serial reference for generate_candidates.
std::vector<RecommendationCandidate> generate_candidates_serial(
    const RenameRecord& rename, const CodeFacts& facts, Mode mode,
    const ExceptionTable& table = ExceptionTable::bundled());

/// Scores candidates additively, sorts by descending score, then kind order
/// (Class < Method < Attribute < Parameter < Variable), name, proposed name,
/// file and entity id. With a cutoff, candidates scoring below it are dropped.
std::vector<RecommendationCandidate> rank_candidates(std::vector<RecommendationCandidate> candidates,
                                                     const PriorProfile& profile, IdentifierKind trigger,
                                                     std::optional<double> min_score = std::nullopt);

}  // namespace corename

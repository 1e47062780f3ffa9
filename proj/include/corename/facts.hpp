#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corename/kinds.hpp"

namespace corename {

using EntityId = std::size_t;
inline constexpr EntityId kNoEntity = std::numeric_limits<EntityId>::max();

enum class EntityKind { Class, Interface, Method, Constructor, Attribute, Parameter, Variable };

std::string_view to_string(EntityKind kind);
EntityKind entity_kind_from_string(std::string_view text);
/// Rename-record kind an entity would be reported as; nullopt for constructors.
std::optional<IdentifierKind> identifier_kind_of(EntityKind kind);

/// How a value reaches an assignment or an argument list.
enum class ValueForm { Attribute, Parameter, Variable, Invocation };

std::string_view to_string(ValueForm form);
ValueForm value_form_from_string(std::string_view text);

struct SourceFile {
  std::string path;
  std::string content;
};

struct Entity {
  EntityId id = 0;
  EntityKind kind = EntityKind::Class;
  std::string name;
  EntityId container = kNoEntity;
  std::string file;

  friend bool operator==(const Entity&, const Entity&) = default;
};

/// (entity, name) row: extends, implements, typed, returns, invokes, accesses.
struct NameRow {
  EntityId entity = 0;
  std::string name;

  friend bool operator==(const NameRow&, const NameRow&) = default;
};

struct AssignRow {
  std::string lhs;
  std::string rhs;
  ValueForm form = ValueForm::Variable;
  /// Method, constructor or class the statement appears in.
  EntityId scope = kNoEntity;

  friend bool operator==(const AssignRow&, const AssignRow&) = default;
};

struct PassRow {
  std::string formal;
  std::string actual;
  ValueForm form = ValueForm::Variable;
  EntityId caller = kNoEntity;

  friend bool operator==(const PassRow&, const PassRow&) = default;
};

struct CallArgument {
  std::string name;
  ValueForm form = ValueForm::Variable;

  friend bool operator==(const CallArgument&, const CallArgument&) = default;
};

/// A method invocation with its arguments; input to Passes resolution.
struct CallRow {
  EntityId caller = kNoEntity;
  std::string callee;
  std::vector<std::optional<CallArgument>> args;

  friend bool operator==(const CallRow&, const CallRow&) = default;
};

struct SkippedFile {
  std::string file;
  std::string reason;

  friend bool operator==(const SkippedFile&, const SkippedFile&) = default;
};

/// Entity and relation tables extracted from a source snapshot.
struct CodeFacts {
  std::vector<Entity> entities;
  std::vector<std::pair<EntityId, EntityId>> contains;
  std::vector<NameRow> extends;
  std::vector<NameRow> implements;
  std::vector<NameRow> typed;
  std::vector<NameRow> returns;
  std::vector<NameRow> invokes;
  std::vector<NameRow> accesses;
  std::vector<AssignRow> assigns;
  std::vector<PassRow> passes;
  std::vector<CallRow> calls;
  std::vector<SkippedFile> skipped;

  const Entity& entity(EntityId id) const { return entities.at(id); }
  /// Appends another fact set, renumbering its entities.
  void append(const CodeFacts& other);
  /// Recomputes passes from calls: formals come from every method with the
  /// callee's name and the call's arity, paired positionally.
  void resolve_passes();
  /// Facts restricted to entities declared in the given files.
  CodeFacts restricted_to(const std::set<std::string>& files) const;

  friend bool operator==(const CodeFacts&, const CodeFacts&) = default;
};

/// Parses one source file of the supported Java subset. A file that cannot
/// be tokenized or has unbalanced brackets yields a SkippedFile entry.
CodeFacts extract_file_facts(const SourceFile& file);

/// Facts for a set of files (parsed in parallel, merged in input order),
/// with passes resolved across the whole set.
CodeFacts extract_facts(const std::vector<SourceFile>& files);
/// Serial reference for extract_facts.
CodeFacts extract_facts_serial(const std::vector<SourceFile>& files);

/// Reads every *.java file under `dir` (sorted by relative path).
std::vector<SourceFile> read_source_dir(const std::string& dir);

enum class RelationshipKind : std::uint8_t {
  BelongsC,
  BelongsM,
  BelongsF,
  BelongsA,
  BelongsL,
  CoOccursM,
  Extends,
  Implements,
  TypeM,
  TypeV,
  Invokes,
  Accesses,
  Assigns,
  Passes,
};

inline constexpr std::size_t kRelationshipKindCount = 14;

inline constexpr std::array<RelationshipKind, kRelationshipKindCount> kAllRelationshipKinds = {
    RelationshipKind::BelongsC,  RelationshipKind::BelongsM,   RelationshipKind::BelongsF,
    RelationshipKind::BelongsA,  RelationshipKind::BelongsL,   RelationshipKind::CoOccursM,
    RelationshipKind::Extends,   RelationshipKind::Implements, RelationshipKind::TypeM,
    RelationshipKind::TypeV,     RelationshipKind::Invokes,    RelationshipKind::Accesses,
    RelationshipKind::Assigns,   RelationshipKind::Passes};

std::string_view to_string(RelationshipKind kind);
RelationshipKind relationship_kind_from_string(std::string_view text);

/// Small bit set over the 14 relationship kinds.
class RelationshipSet {
 public:
  RelationshipSet() = default;
  RelationshipSet(std::initializer_list<RelationshipKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  void insert(RelationshipKind k) { bits_ |= bit(k); }
  bool contains(RelationshipKind k) const { return (bits_ & bit(k)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<RelationshipKind> kinds() const;
  RelationshipSet& operator|=(RelationshipSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  std::uint16_t bits() const { return bits_; }

  friend bool operator==(RelationshipSet, RelationshipSet) = default;

 private:
  static std::uint16_t bit(RelationshipKind k) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(k));
  }
  std::uint16_t bits_ = 0;
};

struct RelationshipInfo {
  RelationshipKind kind;
  std::string_view category;
  std::string_view first;
  std::string_view second;
  std::string_view predicate;
};

/// Machine-readable catalog of the 14 predicates.
const std::vector<RelationshipInfo>& relationship_table();

/// Name-keyed index of every relationship row in a fact set. Matching is by
/// identifier text only, so equally named entities in different scopes are
/// not told apart.
class RelationshipDetector {
 public:
  explicit RelationshipDetector(const CodeFacts& facts);

  /// Kinds holding between the two names in either orientation.
  RelationshipSet detect(std::string_view name_i, std::string_view name_j) const;
  /// Kinds holding with `first` in the kind's first-argument role.
  RelationshipSet oriented(std::string_view first, std::string_view second) const;

 private:
  void add(RelationshipKind kind, std::string_view first, std::string_view second);

  std::unordered_map<std::string, RelationshipSet> index_;
};

RelationshipSet detect_relationships(const CodeFacts& facts, std::string_view name_i,
                                     std::string_view name_j);

}  // namespace corename

#include "corename/facts.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "corename/error.hpp"
#include "corename/parallel.hpp"

namespace corename {

std::string_view to_string(IdentifierKind kind) {
  switch (kind) {
    case IdentifierKind::Class: return "Class";
    case IdentifierKind::Method: return "Method";
    case IdentifierKind::Attribute: return "Attribute";
    case IdentifierKind::Parameter: return "Parameter";
    case IdentifierKind::Variable: return "Variable";
  }
  return "Class";
}

IdentifierKind identifier_kind_from_string(std::string_view text) {
  for (auto kind : kAllIdentifierKinds) {
    if (to_string(kind) == text) return kind;
  }
  throw Error(ErrorKind::UnknownKind, "unknown identifier kind '" + std::string(text) + "'");
}

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Class: return "Class";
    case EntityKind::Interface: return "Interface";
    case EntityKind::Method: return "Method";
    case EntityKind::Constructor: return "Constructor";
    case EntityKind::Attribute: return "Attribute";
    case EntityKind::Parameter: return "Parameter";
    case EntityKind::Variable: return "Variable";
  }
  return "Class";
}

EntityKind entity_kind_from_string(std::string_view text) {
  for (auto kind : {EntityKind::Class, EntityKind::Interface, EntityKind::Method,
                    EntityKind::Constructor, EntityKind::Attribute, EntityKind::Parameter,
                    EntityKind::Variable}) {
    if (to_string(kind) == text) return kind;
  }
  throw Error(ErrorKind::UnknownKind, "unknown entity kind '" + std::string(text) + "'");
}

std::optional<IdentifierKind> identifier_kind_of(EntityKind kind) {
  switch (kind) {
    case EntityKind::Class:
    case EntityKind::Interface: return IdentifierKind::Class;
    case EntityKind::Method: return IdentifierKind::Method;
    case EntityKind::Attribute: return IdentifierKind::Attribute;
    case EntityKind::Parameter: return IdentifierKind::Parameter;
    case EntityKind::Variable: return IdentifierKind::Variable;
    case EntityKind::Constructor: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view to_string(ValueForm form) {
  switch (form) {
    case ValueForm::Attribute: return "attribute";
    case ValueForm::Parameter: return "parameter";
    case ValueForm::Variable: return "variable";
    case ValueForm::Invocation: return "invocation";
  }
  return "variable";
}

ValueForm value_form_from_string(std::string_view text) {
  for (auto form : {ValueForm::Attribute, ValueForm::Parameter, ValueForm::Variable,
                    ValueForm::Invocation}) {
    if (to_string(form) == text) return form;
  }
  throw Error(ErrorKind::ParseError, "unknown value form '" + std::string(text) + "'");
}

void CodeFacts::append(const CodeFacts& other) {
  const EntityId offset = entities.size();
  auto shift = [offset](EntityId id) { return id == kNoEntity ? kNoEntity : id + offset; };
  for (Entity e : other.entities) {
    e.id = shift(e.id);
    e.container = shift(e.container);
    entities.push_back(std::move(e));
  }
  for (auto [p, c] : other.contains) contains.emplace_back(shift(p), shift(c));
  auto copy_rows = [&](std::vector<NameRow>& into, const std::vector<NameRow>& from) {
    for (NameRow r : from) {
      r.entity = shift(r.entity);
      into.push_back(std::move(r));
    }
  };
  copy_rows(extends, other.extends);
  copy_rows(implements, other.implements);
  copy_rows(typed, other.typed);
  copy_rows(returns, other.returns);
  copy_rows(invokes, other.invokes);
  copy_rows(accesses, other.accesses);
  for (AssignRow r : other.assigns) {
    r.scope = shift(r.scope);
    assigns.push_back(std::move(r));
  }
  for (PassRow r : other.passes) {
    r.caller = shift(r.caller);
    passes.push_back(std::move(r));
  }
  for (CallRow r : other.calls) {
    r.caller = shift(r.caller);
    calls.push_back(std::move(r));
  }
  skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
}

void CodeFacts::resolve_passes() {
  if (calls.empty()) return;
  // (method name, arity) -> formal parameter lists
  std::map<std::pair<std::string, std::size_t>, std::vector<std::vector<std::string>>> formals;
  std::map<EntityId, std::vector<std::string>> params_of;
  for (const auto& e : entities) {
    if (e.kind == EntityKind::Parameter && e.container != kNoEntity) params_of[e.container].push_back(e.name);
  }
  for (const auto& e : entities) {
    if (e.kind != EntityKind::Method) continue;
    auto it = params_of.find(e.id);
    std::vector<std::string> names = it == params_of.end() ? std::vector<std::string>{} : it->second;
    formals[{e.name, names.size()}].push_back(std::move(names));
  }
  passes.clear();
  for (const auto& call : calls) {
    auto it = formals.find({call.callee, call.args.size()});
    if (it == formals.end()) continue;
    for (const auto& names : it->second) {
      for (std::size_t k = 0; k < names.size(); ++k) {
        if (!call.args[k]) continue;
        PassRow row{names[k], call.args[k]->name, call.args[k]->form, call.caller};
        if (std::find(passes.begin(), passes.end(), row) == passes.end()) passes.push_back(std::move(row));
      }
    }
  }
}

CodeFacts CodeFacts::restricted_to(const std::set<std::string>& files) const {
  CodeFacts out;
  std::vector<EntityId> remap(entities.size(), kNoEntity);
  EntityId next = 0;
  for (const auto& e : entities) {
    if (files.contains(e.file)) remap[e.id] = next++;
  }
  auto map_id = [&](EntityId id) { return id == kNoEntity || id >= remap.size() ? kNoEntity : remap[id]; };
  for (const auto& e : entities) {
    if (remap[e.id] == kNoEntity) continue;
    Entity copy = e;
    copy.id = remap[e.id];
    copy.container = map_id(e.container);
    out.entities.push_back(std::move(copy));
  }
  for (auto [p, c] : contains) {
    if (map_id(p) != kNoEntity && map_id(c) != kNoEntity) out.contains.emplace_back(map_id(p), map_id(c));
  }
  auto filter_rows = [&](std::vector<NameRow>& into, const std::vector<NameRow>& from) {
    for (const auto& r : from) {
      if (map_id(r.entity) != kNoEntity) into.push_back({map_id(r.entity), r.name});
    }
  };
  filter_rows(out.extends, extends);
  filter_rows(out.implements, implements);
  filter_rows(out.typed, typed);
  filter_rows(out.returns, returns);
  filter_rows(out.invokes, invokes);
  filter_rows(out.accesses, accesses);
  for (const auto& r : assigns) {
    if (map_id(r.scope) != kNoEntity) out.assigns.push_back({r.lhs, r.rhs, r.form, map_id(r.scope)});
  }
  for (const auto& r : passes) {
    if (map_id(r.caller) != kNoEntity) out.passes.push_back({r.formal, r.actual, r.form, map_id(r.caller)});
  }
  for (const auto& r : calls) {
    if (map_id(r.caller) != kNoEntity) out.calls.push_back({map_id(r.caller), r.callee, r.args});
  }
  return out;
}

CodeFacts extract_facts_serial(const std::vector<SourceFile>& files) {
  CodeFacts facts;
  for (const auto& file : files) facts.append(extract_file_facts(file));
  facts.resolve_passes();
  return facts;
}

CodeFacts extract_facts(const std::vector<SourceFile>& files) {
  std::vector<CodeFacts> parts(files.size());
  const auto count = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    parts[static_cast<std::size_t>(i)] = extract_file_facts(files[static_cast<std::size_t>(i)]);
  }
  CodeFacts facts;
  for (const auto& part : parts) facts.append(part);
  facts.resolve_passes();
  return facts;
}

std::vector<SourceFile> read_source_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::IoError, "not a directory: '" + dir + "'");
  std::vector<SourceFile> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".java") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream content;
    content << in.rdbuf();
    files.push_back({fs::relative(entry.path(), dir).generic_string(), content.str()});
  }
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  return files;
}

// ---- relationships ---------------------------------------------------------------

std::string_view to_string(RelationshipKind kind) {
  switch (kind) {
    case RelationshipKind::BelongsC: return "BelongsC";
    case RelationshipKind::BelongsM: return "BelongsM";
    case RelationshipKind::BelongsF: return "BelongsF";
    case RelationshipKind::BelongsA: return "BelongsA";
    case RelationshipKind::BelongsL: return "BelongsL";
    case RelationshipKind::CoOccursM: return "CoOccursM";
    case RelationshipKind::Extends: return "Extends";
    case RelationshipKind::Implements: return "Implements";
    case RelationshipKind::TypeM: return "TypeM";
    case RelationshipKind::TypeV: return "TypeV";
    case RelationshipKind::Invokes: return "Invokes";
    case RelationshipKind::Accesses: return "Accesses";
    case RelationshipKind::Assigns: return "Assigns";
    case RelationshipKind::Passes: return "Passes";
  }
  return "BelongsC";
}

RelationshipKind relationship_kind_from_string(std::string_view text) {
  for (auto kind : kAllRelationshipKinds) {
    if (to_string(kind) == text) return kind;
  }
  throw Error(ErrorKind::UnknownKind, "unknown relationship kind '" + std::string(text) + "'");
}

std::size_t RelationshipSet::size() const {
  std::size_t n = 0;
  for (auto k : kAllRelationshipKinds) n += contains(k) ? 1 : 0;
  return n;
}

std::vector<RelationshipKind> RelationshipSet::kinds() const {
  std::vector<RelationshipKind> out;
  for (auto k : kAllRelationshipKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

const std::vector<RelationshipInfo>& relationship_table() {
  static const std::vector<RelationshipInfo> table = {
      {RelationshipKind::BelongsC, "Location", "class", "inner class",
       "a class or interface declared directly inside another class or interface"},
      {RelationshipKind::BelongsM, "Location", "class", "method",
       "a method declared directly in a class or interface"},
      {RelationshipKind::BelongsF, "Location", "class", "attribute",
       "an attribute (field or enum constant) declared directly in a class"},
      {RelationshipKind::BelongsA, "Location", "method", "parameter",
       "a parameter of a method"},
      {RelationshipKind::BelongsL, "Location", "method", "local variable",
       "a local variable declared in a method body"},
      {RelationshipKind::CoOccursM, "Location", "method", "method",
       "two distinct methods declared in the same class"},
      {RelationshipKind::Extends, "Type", "superclass", "subclass",
       "a class and its direct subclass (or an interface and an interface extending it)"},
      {RelationshipKind::Implements, "Type", "interface", "class",
       "an interface and a class listing it in its implements clause"},
      {RelationshipKind::TypeM, "Type", "method", "return type",
       "a method and its return type (outer type and first-level type arguments)"},
      {RelationshipKind::TypeV, "Type", "variable", "type",
       "an attribute, parameter or local variable and its declared type"},
      {RelationshipKind::Invokes, "Call and Data Dependency", "caller", "callee",
       "a method and a differently named method it invokes"},
      {RelationshipKind::Accesses, "Call and Data Dependency", "method", "attribute",
       "a method and an attribute of its own class that it references"},
      {RelationshipKind::Assigns, "Call and Data Dependency", "left side", "right side",
       "the assigned attribute or variable and the attribute, parameter, variable or "
       "invoked method on the right side of an assignment or initializer"},
      {RelationshipKind::Passes, "Call and Data Dependency", "formal parameter", "argument",
       "a formal parameter of a method and an attribute, variable or invoked method "
       "passed in its position"},
  };
  return table;
}

namespace {

std::string pair_key(std::string_view a, std::string_view b) {
  std::string key;
  key.reserve(a.size() + b.size() + 1);
  key.append(a);
  key.push_back('\0');
  key.append(b);
  return key;
}

bool is_type_entity(EntityKind k) { return k == EntityKind::Class || k == EntityKind::Interface; }

}  // namespace

void RelationshipDetector::add(RelationshipKind kind, std::string_view first, std::string_view second) {
  index_[pair_key(first, second)].insert(kind);
}

RelationshipDetector::RelationshipDetector(const CodeFacts& facts) {
  const auto& es = facts.entities;
  auto container_of = [&](const Entity& e) -> const Entity* {
    return e.container == kNoEntity || e.container >= es.size() ? nullptr : &es[e.container];
  };

  std::map<EntityId, std::vector<EntityId>> methods_by_class;
  for (const auto& e : es) {
    const Entity* parent = container_of(e);
    if (!parent) continue;
    const bool in_type = is_type_entity(parent->kind);
    const bool in_method = parent->kind == EntityKind::Method;
    if (in_type && is_type_entity(e.kind)) add(RelationshipKind::BelongsC, parent->name, e.name);
    if (in_type && e.kind == EntityKind::Method) {
      add(RelationshipKind::BelongsM, parent->name, e.name);
      methods_by_class[parent->id].push_back(e.id);
    }
    if (in_type && e.kind == EntityKind::Attribute) add(RelationshipKind::BelongsF, parent->name, e.name);
    if (in_method && e.kind == EntityKind::Parameter) add(RelationshipKind::BelongsA, parent->name, e.name);
    if (in_method && e.kind == EntityKind::Variable) add(RelationshipKind::BelongsL, parent->name, e.name);
  }
  for (const auto& [cls, methods] : methods_by_class) {
    for (std::size_t a = 0; a < methods.size(); ++a) {
      for (std::size_t b = a + 1; b < methods.size(); ++b) {
        add(RelationshipKind::CoOccursM, es[methods[a]].name, es[methods[b]].name);
      }
    }
  }
  for (const auto& r : facts.extends) add(RelationshipKind::Extends, r.name, es.at(r.entity).name);
  for (const auto& r : facts.implements) add(RelationshipKind::Implements, r.name, es.at(r.entity).name);
  for (const auto& r : facts.returns) {
    if (es.at(r.entity).kind == EntityKind::Method) add(RelationshipKind::TypeM, es[r.entity].name, r.name);
  }
  for (const auto& r : facts.typed) {
    EntityKind k = es.at(r.entity).kind;
    if (k == EntityKind::Attribute || k == EntityKind::Parameter || k == EntityKind::Variable) {
      add(RelationshipKind::TypeV, es[r.entity].name, r.name);
    }
  }
  for (const auto& r : facts.invokes) {
    const Entity& caller = es.at(r.entity);
    if (caller.kind == EntityKind::Method && caller.name != r.name) {
      add(RelationshipKind::Invokes, caller.name, r.name);
    }
  }
  for (const auto& r : facts.accesses) {
    const Entity& method = es.at(r.entity);
    if (method.kind != EntityKind::Method) continue;
    // Only attributes declared in the method's own class.
    const Entity* cls = container_of(method);
    if (!cls) continue;
    bool own = false;
    for (const auto& e : es) {
      if (e.container == cls->id && e.kind == EntityKind::Attribute && e.name == r.name) {
        own = true;
        break;
      }
    }
    if (own) add(RelationshipKind::Accesses, method.name, r.name);
  }
  for (const auto& r : facts.assigns) add(RelationshipKind::Assigns, r.lhs, r.rhs);
  for (const auto& r : facts.passes) add(RelationshipKind::Passes, r.formal, r.actual);
}

RelationshipSet RelationshipDetector::oriented(std::string_view first, std::string_view second) const {
  auto it = index_.find(pair_key(first, second));
  return it == index_.end() ? RelationshipSet{} : it->second;
}

RelationshipSet RelationshipDetector::detect(std::string_view name_i, std::string_view name_j) const {
  RelationshipSet out = oriented(name_i, name_j);
  out |= oriented(name_j, name_i);
  return out;
}

RelationshipSet detect_relationships(const CodeFacts& facts, std::string_view name_i,
                                     std::string_view name_j) {
  return RelationshipDetector(facts).detect(name_i, name_j);
}

}  // namespace corename

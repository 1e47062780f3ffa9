#include <filesystem>
#include <fstream>
#include <sstream>

#include "corename/error.hpp"
#include "corename/facts_io.hpp"
#include "corename/io.hpp"

namespace corename {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  }
}

namespace {

json id_json(EntityId id) { return id == kNoEntity ? json(nullptr) : json(id); }

EntityId id_from(const json& j) { return j.is_null() ? kNoEntity : j.get<EntityId>(); }

json rows_json(const std::vector<NameRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"entity", r.entity}, {"name", r.name}});
  return out;
}

std::vector<NameRow> rows_from(const json& doc, const char* key) {
  std::vector<NameRow> rows;
  if (!doc.contains(key)) return rows;
  for (const auto& r : doc.at(key)) rows.push_back({r.at("entity").get<EntityId>(), r.at("name").get<std::string>()});
  return rows;
}

}  // namespace

json facts_to_json(const CodeFacts& facts) {
  json doc;
  json entities = json::array();
  for (const auto& e : facts.entities) {
    entities.push_back({{"id", e.id},
                        {"kind", to_string(e.kind)},
                        {"name", e.name},
                        {"container", id_json(e.container)},
                        {"file", e.file}});
  }
  doc["entities"] = std::move(entities);
  json contains = json::array();
  for (auto [p, c] : facts.contains) contains.push_back({p, c});
  doc["contains"] = std::move(contains);
  doc["extends"] = rows_json(facts.extends);
  doc["implements"] = rows_json(facts.implements);
  doc["typed"] = rows_json(facts.typed);
  doc["returns"] = rows_json(facts.returns);
  doc["invokes"] = rows_json(facts.invokes);
  doc["accesses"] = rows_json(facts.accesses);
  json assigns = json::array();
  for (const auto& r : facts.assigns) {
    assigns.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}, {"form", to_string(r.form)}, {"scope", id_json(r.scope)}});
  }
  doc["assigns"] = std::move(assigns);
  json passes = json::array();
  for (const auto& r : facts.passes) {
    passes.push_back({{"formal", r.formal}, {"actual", r.actual}, {"form", to_string(r.form)},
                      {"caller", id_json(r.caller)}});
  }
  doc["passes"] = std::move(passes);
  json calls = json::array();
  for (const auto& c : facts.calls) {
    json args = json::array();
    for (const auto& a : c.args) {
      args.push_back(a ? json{{"name", a->name}, {"form", to_string(a->form)}} : json(nullptr));
    }
    calls.push_back({{"caller", id_json(c.caller)}, {"callee", c.callee}, {"args", std::move(args)}});
  }
  doc["calls"] = std::move(calls);
  json skipped = json::array();
  for (const auto& s : facts.skipped) skipped.push_back({{"file", s.file}, {"reason", s.reason}});
  doc["skipped"] = std::move(skipped);
  return doc;
}

CodeFacts facts_from_json(const json& doc) {
  try {
    CodeFacts facts;
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "facts document must be an object");
    for (const auto& e : doc.value("entities", json::array())) {
      facts.entities.push_back({e.at("id").get<EntityId>(), entity_kind_from_string(e.at("kind").get<std::string>()),
                                e.at("name").get<std::string>(), id_from(e.value("container", json(nullptr))),
                                e.value("file", std::string())});
    }
    for (std::size_t i = 0; i < facts.entities.size(); ++i) {
      const auto& e = facts.entities[i];
      if (e.id != i) throw Error(ErrorKind::ParseError, "entity ids must be 0..n-1 in order");
      if (e.container != kNoEntity && e.container >= facts.entities.size()) {
        throw Error(ErrorKind::ParseError, "entity " + std::to_string(i) + " has an unknown container");
      }
    }
    auto check = [&](EntityId id) {
      if (id != kNoEntity && id >= facts.entities.size()) {
        throw Error(ErrorKind::ParseError, "reference to unknown entity " + std::to_string(id));
      }
      return id;
    };
    for (const auto& c : doc.value("contains", json::array())) {
      facts.contains.emplace_back(check(c.at(0).get<EntityId>()), check(c.at(1).get<EntityId>()));
    }
    facts.extends = rows_from(doc, "extends");
    facts.implements = rows_from(doc, "implements");
    facts.typed = rows_from(doc, "typed");
    facts.returns = rows_from(doc, "returns");
    facts.invokes = rows_from(doc, "invokes");
    facts.accesses = rows_from(doc, "accesses");
    for (auto* rows : {&facts.extends, &facts.implements, &facts.typed, &facts.returns, &facts.invokes,
                       &facts.accesses}) {
      for (const auto& r : *rows) check(r.entity);
    }
    for (const auto& r : doc.value("assigns", json::array())) {
      facts.assigns.push_back({r.at("lhs").get<std::string>(), r.at("rhs").get<std::string>(),
                               value_form_from_string(r.at("form").get<std::string>()),
                               check(id_from(r.value("scope", json(nullptr))))});
    }
    for (const auto& r : doc.value("passes", json::array())) {
      facts.passes.push_back({r.at("formal").get<std::string>(), r.at("actual").get<std::string>(),
                              value_form_from_string(r.at("form").get<std::string>()),
                              check(id_from(r.value("caller", json(nullptr))))});
    }
    for (const auto& c : doc.value("calls", json::array())) {
      CallRow call{check(id_from(c.value("caller", json(nullptr)))), c.at("callee").get<std::string>(), {}};
      for (const auto& a : c.value("args", json::array())) {
        if (a.is_null()) {
          call.args.emplace_back(std::nullopt);
        } else {
          call.args.emplace_back(CallArgument{a.at("name").get<std::string>(),
                                              value_form_from_string(a.at("form").get<std::string>())});
        }
      }
      facts.calls.push_back(std::move(call));
    }
    for (const auto& s : doc.value("skipped", json::array())) {
      facts.skipped.push_back({s.at("file").get<std::string>(), s.value("reason", std::string())});
    }
    return facts;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed facts document: ") + e.what());
  }
}

}  // namespace corename

#include "corename/mining.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "corename/error.hpp"
#include "corename/io.hpp"
#include "corename/parallel.hpp"

namespace corename {

using nlohmann::json;

namespace {

void validate_name(const std::string& name, std::size_t line, const char* field) {
  try {
    split_identifier(name);
  } catch (const Error& e) {
    throw ParseError(line, std::string("invalid ") + field + " name: " + e.what());
  }
}

}  // namespace

std::vector<RenameRecord> load_rename_records(std::istream& in) {
  std::vector<RenameRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(number, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError(number, "expected a JSON object");
    auto text = [&](const char* key, bool required) -> std::string {
      auto it = doc.find(key);
      if (it == doc.end() || it->is_null()) {
        if (required) throw ParseError(number, std::string("missing key '") + key + "'");
        return {};
      }
      if (!it->is_string()) throw ParseError(number, std::string("key '") + key + "' must be a string");
      return it->get<std::string>();
    };
    RenameRecord r;
    r.commit = text("commit", true);
    const std::string kind = text("kind", true);
    try {
      r.kind = identifier_kind_from_string(kind);
    } catch (const Error&) {
      throw Error(ErrorKind::UnknownKind,
                  "line " + std::to_string(number) + ": unknown identifier kind '" + kind + "'");
    }
    r.old_name = text("old", true);
    r.new_name = text("new", true);
    r.file = text("file", false);
    if (doc.contains("container") && !doc["container"].is_null()) r.container = text("container", false);
    validate_name(r.old_name, number, "old");
    validate_name(r.new_name, number, "new");
    if (r.old_name == r.new_name) throw ParseError(number, "old and new names are identical");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RenameRecord> load_rename_records_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return load_rename_records(in);
}

std::string record_to_json_line(const RenameRecord& r) {
  json doc = {{"commit", r.commit}, {"kind", to_string(r.kind)}, {"old", r.old_name},
              {"new", r.new_name},  {"file", r.file}};
  if (r.container) doc["container"] = *r.container;
  return doc.dump();
}

void write_rename_records(std::ostream& out, std::span<const RenameRecord> records) {
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
}

namespace {

std::string last_token(std::string_view text) {
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto space = text.find_last_of(' ');
  return std::string(space == std::string_view::npos ? text : text.substr(space + 1));
}

// Declared name inside a RefactoringMiner codeElement string.
std::string element_name(IdentifierKind kind, const std::string& element) {
  switch (kind) {
    case IdentifierKind::Class: {
      std::string_view s = element;
      auto dot = s.find_last_of('.');
      return last_token(dot == std::string_view::npos ? s : s.substr(dot + 1));
    }
    case IdentifierKind::Method: {
      auto paren = element.find('(');
      return last_token(std::string_view(element).substr(0, paren));
    }
    default: {
      auto colon = element.find(" : ");
      return last_token(std::string_view(element).substr(0, colon));
    }
  }
}

std::optional<IdentifierKind> rename_kind(const std::string& type) {
  static const std::map<std::string, IdentifierKind> kinds = {
      {"Rename Class", IdentifierKind::Class},
      {"Rename Method", IdentifierKind::Method},
      {"Rename Attribute", IdentifierKind::Attribute},
      {"Rename Parameter", IdentifierKind::Parameter},
      {"Rename Variable", IdentifierKind::Variable}};
  auto it = kinds.find(type);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

bool valid_identifier(const std::string& name) {
  try {
    split_identifier(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::vector<RenameRecord> convert_refactoringminer(const json& doc) {
  std::vector<RenameRecord> records;
  if (!doc.is_object() || !doc.contains("commits") || !doc["commits"].is_array()) {
    throw Error(ErrorKind::ParseError, "RefactoringMiner document needs a 'commits' array");
  }
  for (const auto& commit : doc["commits"]) {
    const std::string sha = commit.value("sha1", std::string());
    for (const auto& ref : commit.value("refactorings", json::array())) {
      auto kind = rename_kind(ref.value("type", std::string()));
      if (!kind) continue;
      const auto& left = ref.value("leftSideLocations", json::array());
      const auto& right = ref.value("rightSideLocations", json::array());
      if (left.empty() || right.empty()) continue;
      RenameRecord r;
      r.commit = sha;
      r.kind = *kind;
      r.old_name = element_name(*kind, left[0].value("codeElement", std::string()));
      r.new_name = element_name(*kind, right[0].value("codeElement", std::string()));
      r.file = left[0].value("filePath", std::string());
      if (r.old_name == r.new_name || !valid_identifier(r.old_name) || !valid_identifier(r.new_name)) continue;
      records.push_back(std::move(r));
    }
  }
  return records;
}

namespace {

void chunk_one(RenameRecord& r, Mode mode, const ExceptionTable& table) {
  r.chunks = diff_chunks(normalize(r.old_name, mode, table), normalize(r.new_name, mode, table), mode);
}

}  // namespace

void compute_chunks_serial(std::vector<RenameRecord>& records, Mode mode, const ExceptionTable& table) {
  for (auto& r : records) chunk_one(r, mode, table);
}

void compute_chunks(std::vector<RenameRecord>& records, Mode mode, const ExceptionTable& table) {
  const auto count = static_cast<std::ptrdiff_t>(records.size());
  std::vector<std::exception_ptr> errors(records.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      chunk_one(records[static_cast<std::size_t>(i)], mode, table);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---- naive detector ----------------------------------------------------------------

namespace {

char group_tag(EntityKind kind) {
  switch (kind) {
    case EntityKind::Class:
    case EntityKind::Interface: return 'C';
    case EntityKind::Method: return 'M';
    case EntityKind::Constructor: return 'K';
    case EntityKind::Attribute: return 'A';
    case EntityKind::Parameter: return 'P';
    case EntityKind::Variable: return 'V';
  }
  return '?';
}

struct Declarations {
  std::vector<std::string> group;
  std::vector<std::string> path;
  std::vector<std::string> qualified;
  std::map<std::string, std::size_t> group_size;
};

Declarations index_declarations(const CodeFacts& facts) {
  Declarations d;
  const std::size_t n = facts.entities.size();
  d.group.resize(n);
  d.path.resize(n);
  d.qualified.resize(n);
  for (const auto& e : facts.entities) {
    const bool nested = e.container != kNoEntity && e.container < e.id;
    std::string group = (nested ? d.path[e.container] : std::string()) + "/" + group_tag(e.kind);
    const std::size_t ordinal = d.group_size[group]++;
    d.path[e.id] = group + "#" + std::to_string(ordinal);
    d.group[e.id] = std::move(group);
    d.qualified[e.id] = nested ? d.qualified[e.container] + "." + e.name : e.name;
  }
  return d;
}

}  // namespace

std::vector<RenameRecord> detect_renames(const CodeFacts& before, const CodeFacts& after,
                                         const std::string& commit, const std::string& file) {
  const Declarations old_decls = index_declarations(before);
  const Declarations new_decls = index_declarations(after);
  auto stable = [&](const std::string& group) {
    auto a = old_decls.group_size.find(group);
    auto b = new_decls.group_size.find(group);
    return a != old_decls.group_size.end() && b != new_decls.group_size.end() && a->second == b->second;
  };
  std::vector<bool> matchable(before.entities.size(), false);
  for (const auto& e : before.entities) {
    const bool parent_ok = e.container == kNoEntity || (e.container < e.id && matchable[e.container]);
    matchable[e.id] = parent_ok && stable(old_decls.group[e.id]);
  }
  std::map<std::string, EntityId> new_by_path;
  for (const auto& e : after.entities) new_by_path.emplace(new_decls.path[e.id], e.id);

  std::vector<RenameRecord> out;
  for (const auto& e : before.entities) {
    if (!matchable[e.id]) continue;
    auto kind = identifier_kind_of(e.kind);
    if (!kind) continue;
    auto it = new_by_path.find(old_decls.path[e.id]);
    if (it == new_by_path.end()) continue;
    const Entity& twin = after.entities[it->second];
    if (twin.name == e.name) continue;
    RenameRecord r;
    r.commit = commit;
    r.kind = *kind;
    r.old_name = e.name;
    r.new_name = twin.name;
    r.file = file.empty() ? twin.file : file;
    if (e.container != kNoEntity) r.container = old_decls.qualified[e.container];
    out.push_back(std::move(r));
  }
  return out;
}

// ---- git history -------------------------------------------------------------------

namespace {

std::string shell_quote(std::string_view arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

struct CommandResult {
  int status = 0;
  std::string output;
};

CommandResult git(const std::string& repo, std::initializer_list<std::string_view> args) {
  std::string cmd = "git -C " + shell_quote(repo);
  for (auto a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error(ErrorKind::RepoError, "cannot run git");
  CommandResult result;
  std::array<char, 65536> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.output.append(buffer.data(), got);
  result.status = pclose(pipe);
  return result;
}

std::string git_checked(const std::string& repo, std::initializer_list<std::string_view> args,
                        const std::string& what) {
  CommandResult r = git(repo, args);
  if (r.status != 0) throw Error(ErrorKind::RepoError, "git failed while reading " + what + " in '" + repo + "'");
  return std::move(r.output);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    if (end > start) out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

bool is_java(const std::string& path) { return path.size() > 5 && path.ends_with(".java"); }

std::string blob(const std::string& repo, const std::string& commit, const std::string& path) {
  return git_checked(repo, {"cat-file", "blob", commit + ":" + path}, path);
}

void require_repo(const std::string& repo) {
  if (git(repo, {"rev-parse", "--git-dir"}).status != 0) {
    throw Error(ErrorKind::RepoError, "not a readable git repository: '" + repo + "'");
  }
}

}  // namespace

std::vector<CommitChanges> walk_history(const std::string& repo, const std::string& range) {
  require_repo(repo);
  const auto commits = split(git_checked(repo, {"rev-list", "--first-parent", "--reverse", range, "--"}, range), '\n');
  std::vector<CommitChanges> out;
  for (const auto& commit : commits) {
    CommitChanges change;
    change.commit = commit;
    auto parents = split(git_checked(repo, {"rev-list", "--parents", "-n", "1", commit}, commit), ' ');
    if (parents.size() > 1) {
      change.parent = parents[1];
      while (!change.parent.empty() && std::isspace(static_cast<unsigned char>(change.parent.back()))) {
        change.parent.pop_back();
      }
    }
    std::string diff = change.parent.empty()
                           ? git_checked(repo, {"diff-tree", "-r", "-M", "-z", "--no-commit-id", "--name-status", "--root", commit}, commit)
                           : git_checked(repo, {"diff-tree", "-r", "-M", "-z", "--no-commit-id", "--name-status", change.parent, commit}, commit);
    auto fields = split(diff, '\0');
    for (std::size_t i = 0; i < fields.size();) {
      const std::string status = fields[i++];
      if (status.empty() || i >= fields.size()) break;
      FileChange fc;
      const char code = status[0];
      if (code == 'R' || code == 'C') {
        if (i + 1 >= fields.size()) break;
        fc.old_path = fields[i++];
        fc.new_path = fields[i++];
        if (code == 'C') fc.old_path.clear();
      } else {
        fc.old_path = fields[i];
        fc.new_path = fields[i];
        ++i;
        if (code == 'A') fc.old_path.clear();
        if (code == 'D') fc.new_path.clear();
      }
      if (!is_java(fc.old_path) && !is_java(fc.new_path)) continue;
      if (!fc.old_path.empty() && is_java(fc.old_path)) fc.before = blob(repo, change.parent, fc.old_path);
      else fc.old_path.clear();
      if (!fc.new_path.empty() && is_java(fc.new_path)) fc.after = blob(repo, commit, fc.new_path);
      else fc.new_path.clear();
      change.files.push_back(std::move(fc));
    }
    out.push_back(std::move(change));
  }
  return out;
}

std::vector<SourceFile> snapshot_sources(const std::string& repo, const std::string& commit) {
  require_repo(repo);
  std::vector<SourceFile> files;
  for (const auto& path : split(git_checked(repo, {"ls-tree", "-r", "-z", "--name-only", commit}, commit), '\0')) {
    if (is_java(path)) files.push_back({path, blob(repo, commit, path)});
  }
  std::sort(files.begin(), files.end(), [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  return files;
}

}  // namespace corename

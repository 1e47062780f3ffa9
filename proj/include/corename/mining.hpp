#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corename/chunks.hpp"
#include "corename/facts.hpp"
#include "corename/kinds.hpp"
#include "json.hpp"

namespace corename {

/// One identifier rename.
struct RenameRecord {
  std::string commit;
  IdentifierKind kind = IdentifierKind::Variable;
  std::string old_name;
  std::string new_name;
  std::string file;
  std::optional<std::string> container;
  /// Filled by compute_chunks for one mode.
  std::vector<OperationalChunk> chunks;

  friend bool operator==(const RenameRecord&, const RenameRecord&) = default;
};

/// Reads JSONL records (keys commit, kind, old, new, file, container).
/// Blank lines are ignored. Throws ParseError (with the line number) for
/// malformed lines, invalid identifiers or old == new, and Error(UnknownKind)
/// for kinds outside the five supported ones.
std::vector<RenameRecord> load_rename_records(std::istream& in);
std::vector<RenameRecord> load_rename_records_file(const std::string& path);

std::string record_to_json_line(const RenameRecord& record);
void write_rename_records(std::ostream& out, std::span<const RenameRecord> records);

/// Converts RefactoringMiner's JSON output ({"commits":[{"sha1", "refactorings":[...]}]})
/// keeping the five Rename refactoring types.
std::vector<RenameRecord> convert_refactoringminer(const nlohmann::json& doc);

/// Fills record.chunks for `mode`, in parallel.
void compute_chunks(std::vector<RenameRecord>& records, Mode mode,
                    const ExceptionTable& table = ExceptionTable::bundled());
/// Serial reference for compute_chunks.
void compute_chunks_serial(std::vector<RenameRecord>& records, Mode mode,
                           const ExceptionTable& table = ExceptionTable::bundled());

/// Positional declaration matcher over two versions of one file. Declarations
/// match when kind, container path and ordinal among same-kind siblings agree;
/// any sibling group whose size changed (at that level or above) is treated
/// as ambiguous and emits nothing.
std::vector<RenameRecord> detect_renames(const CodeFacts& before, const CodeFacts& after,
                                         const std::string& commit = "", const std::string& file = "");

/// One modified source file; a missing side means the file was added or removed.
struct FileChange {
  std::string old_path;
  std::string new_path;
  std::optional<std::string> before;
  std::optional<std::string> after;
};

struct CommitChanges {
  std::string commit;
  /// First parent; empty for a root commit.
  std::string parent;
  std::vector<FileChange> files;
};

/// Commits in `range` (git revision syntax, default HEAD) oldest first,
/// following first parents, with their changed *.java files. Throws
/// Error(RepoError) when the repository or range cannot be read.
std::vector<CommitChanges> walk_history(const std::string& repo, const std::string& range = "HEAD");

/// Every *.java file of the tree at `commit`, sorted by path.
std::vector<SourceFile> snapshot_sources(const std::string& repo, const std::string& commit);

}  // namespace corename

#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corename/lexicon.hpp"

namespace corename {

enum class ChunkKind { Insert, Delete, Replace, Other, Inflect };

inline constexpr ChunkKind kAllChunkKinds[] = {ChunkKind::Insert, ChunkKind::Delete,
                                               ChunkKind::Replace, ChunkKind::Other,
                                               ChunkKind::Inflect};

std::string_view to_string(ChunkKind kind);
/// One-letter tag used in chunk keys: I, D, R, O, F.
char chunk_tag(ChunkKind kind);

/// A word-level edit extracted from one rename. Payloads are lemmas.
struct OperationalChunk {
  ChunkKind kind = ChunkKind::Insert;
  std::vector<std::string> deleted;
  std::vector<std::string> added;
  /// Left boundary of the edit in the old word sequence.
  std::size_t anchor = 0;
  /// Insert only: the old word next to the insertion point (left neighbour,
  /// or right neighbour when inserting at position 0).
  std::string context;
  bool context_right = false;

  friend bool operator==(const OperationalChunk&, const OperationalChunk&) = default;
};

/// Canonical identity of a chunk: "<tag>|<deleted joined by +>|<added joined by +>".
/// The anchor and Insert context are not part of the key.
struct ChunkKey {
  std::string text;

  friend auto operator<=>(const ChunkKey&, const ChunkKey&) = default;
};

ChunkKey chunk_key(const OperationalChunk& chunk);

/// Alignment step produced by align_words.
enum class EditOp { Keep, Delete, Insert };

/// Word alignment with the fewest changed words; among those, the fewest
/// separate change runs; remaining ties prefer the earliest match.
std::vector<EditOp> align_words(std::span<const std::string> old_words,
                                std::span<const std::string> new_words);

/// Operational chunks of a rename, left to right. Both sequences must be
/// normalized with `mode`.
std::vector<OperationalChunk> diff_chunks(const WordSequence& old_seq, const WordSequence& new_seq,
                                          Mode mode);

/// Words touched by Insert/Delete/Replace chunks (deleted + added).
std::size_t changed_word_count(std::span<const OperationalChunk> chunks);

/// Applies chunks at their anchors to the old lemma sequence.
std::vector<std::string> apply_at_anchors(std::span<const OperationalChunk> chunks,
                                          std::vector<std::string> old_lemmas);

/// Rewrites `target` with the chunk's edit at every applicable position.
/// Added words copy the casing of the words they replace, follow the target's
/// camelCase/snake_case style and are pluralized when the replaced word was a
/// plural. Insert needs the chunk's context word in the target; Other and
/// Inflect never apply. Throws Error(DegenerateResult) when a deletion would
/// leave no words.
std::vector<WordSequence> apply_chunk(const OperationalChunk& chunk, const WordSequence& target,
                                      Mode mode,
                                      const ExceptionTable& table = ExceptionTable::bundled());

}  // namespace corename

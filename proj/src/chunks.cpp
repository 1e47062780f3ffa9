#include "corename/chunks.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <utility>

#include "corename/error.hpp"

namespace corename {

std::string_view to_string(ChunkKind kind) {
  switch (kind) {
    case ChunkKind::Insert: return "Insert";
    case ChunkKind::Delete: return "Delete";
    case ChunkKind::Replace: return "Replace";
    case ChunkKind::Other: return "Other";
    case ChunkKind::Inflect: return "Inflect";
  }
  return "Other";
}

char chunk_tag(ChunkKind kind) {
  switch (kind) {
    case ChunkKind::Insert: return 'I';
    case ChunkKind::Delete: return 'D';
    case ChunkKind::Replace: return 'R';
    case ChunkKind::Other: return 'O';
    case ChunkKind::Inflect: return 'F';
  }
  return 'O';
}

ChunkKey chunk_key(const OperationalChunk& chunk) {
  auto join = [](const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
      if (!out.empty()) out.push_back('+');
      out += w;
    }
    return out;
  };
  std::string text(1, chunk_tag(chunk.kind));
  text += '|';
  text += join(chunk.deleted);
  text += '|';
  text += join(chunk.added);
  return ChunkKey{std::move(text)};
}

namespace {

// (changed words, change runs) packed so that integer order is lexicographic.
using Cost = std::uint64_t;
constexpr Cost kEdit = Cost{1} << 32;
constexpr Cost kWorst = ~Cost{0};

// Exact alignment over a precomputed equality matrix eq[i * m + j].
std::vector<EditOp> align(std::size_t n, std::size_t m, const std::vector<char>& eq) {
  // best[i][j][g]: optimal cost of aligning old[i:], new[j:]; g = 1 inside a change run.
  const std::size_t width = m + 1;
  thread_local std::vector<Cost> best;
  best.assign(2 * (n + 1) * width, 0);
  auto at = [&](std::size_t i, std::size_t j, int g) -> Cost& {
    return best[(i * width + j) * 2 + static_cast<std::size_t>(g)];
  };
  auto same = [&](std::size_t i, std::size_t j) { return eq[i * m + j] != 0; };
  for (std::size_t ii = n + 1; ii-- > 0;) {
    for (std::size_t jj = m + 1; jj-- > 0;) {
      if (ii == n && jj == m) continue;
      const Cost keep = ii < n && jj < m && same(ii, jj) ? at(ii + 1, jj + 1, 0) : kWorst;
      Cost edit = kWorst;
      if (ii < n) edit = at(ii + 1, jj, 1);
      if (jj < m) edit = std::min(edit, at(ii, jj + 1, 1));
      edit += kEdit;
      // g = 1 continues a run; g = 0 opens one
      at(ii, jj, 1) = std::min(keep, edit);
      at(ii, jj, 0) = std::min(keep, edit + 1);
    }
  }

  std::vector<EditOp> ops;
  ops.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  int g = 0;
  while (i < n || j < m) {
    const Cost target = at(i, j, g);
    if (i < n && j < m && same(i, j) && at(i + 1, j + 1, 0) == target) {
      ops.push_back(EditOp::Keep);
      ++i;
      ++j;
      g = 0;
    } else if (i < n && at(i + 1, j, 1) + kEdit + (g == 0 ? 1 : 0) == target) {
      ops.push_back(EditOp::Delete);
      ++i;
      g = 1;
    } else {
      ops.push_back(EditOp::Insert);
      ++j;
      g = 1;
    }
  }
  return ops;
}

template <typename Old, typename New>
std::vector<EditOp> align_by(std::size_t n, std::size_t m, Old old_word, New new_word) {
  thread_local std::vector<char> eq;
  eq.assign(n * m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) eq[i * m + j] = old_word(i) == new_word(j);
  }
  return align(n, m, eq);
}

}  // namespace

std::vector<EditOp> align_words(std::span<const std::string> old_words,
                                std::span<const std::string> new_words) {
  return align_by(
      old_words.size(), new_words.size(), [&](std::size_t i) -> const std::string& { return old_words[i]; },
      [&](std::size_t j) -> const std::string& { return new_words[j]; });
}

std::vector<OperationalChunk> diff_chunks(const WordSequence& old_seq, const WordSequence& new_seq,
                                          Mode mode) {
  const auto& old_words = old_seq.words;
  const auto& new_words = new_seq.words;
  const auto ops = align_by(
      old_words.size(), new_words.size(), [&](std::size_t i) -> const std::string& { return old_words[i].lemma; },
      [&](std::size_t j) -> const std::string& { return new_words[j].lemma; });

  std::vector<OperationalChunk> chunks;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k] == EditOp::Keep) {
      ++i;
      ++j;
      ++k;
      continue;
    }
    OperationalChunk chunk;
    chunk.anchor = i;
    while (k < ops.size() && ops[k] != EditOp::Keep) {
      if (ops[k] == EditOp::Delete) chunk.deleted.push_back(old_words[i++].lemma);
      else chunk.added.push_back(new_words[j++].lemma);
      ++k;
    }
    if (chunk.deleted.empty()) {
      chunk.kind = ChunkKind::Insert;
      if (chunk.anchor > 0) {
        chunk.context = old_words[chunk.anchor - 1].lemma;
      } else if (!old_words.empty()) {
        chunk.context = old_words[0].lemma;
        chunk.context_right = true;
      }
    } else if (chunk.added.empty()) {
      chunk.kind = ChunkKind::Delete;
    } else {
      chunk.kind = ChunkKind::Replace;
    }
    chunks.push_back(std::move(chunk));
  }
  if (!chunks.empty()) return chunks;

  // Lemma sequences are equal: look for case-only or inflection-only changes.
  for (std::size_t p = 0; p < old_seq.size(); ++p) {
    const Word& before = old_seq.words[p];
    const Word& after = new_seq.words[p];
    OperationalChunk chunk;
    chunk.anchor = p;
    chunk.deleted = {before.lemma};
    if (mode == Mode::Lemma && before.folded != after.folded) {
      chunk.kind = ChunkKind::Inflect;
    } else if (before.surface != after.surface) {
      chunk.kind = ChunkKind::Other;
    } else {
      continue;
    }
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

std::size_t changed_word_count(std::span<const OperationalChunk> chunks) {
  std::size_t total = 0;
  for (const auto& c : chunks) {
    if (c.kind == ChunkKind::Other || c.kind == ChunkKind::Inflect) continue;
    total += c.deleted.size() + c.added.size();
  }
  return total;
}

std::vector<std::string> apply_at_anchors(std::span<const OperationalChunk> chunks,
                                          std::vector<std::string> old_lemmas) {
  std::vector<const OperationalChunk*> order;
  for (const auto& c : chunks) {
    if (c.kind != ChunkKind::Other && c.kind != ChunkKind::Inflect) order.push_back(&c);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->anchor > b->anchor; });
  for (const auto* c : order) {
    auto first = old_lemmas.begin() + static_cast<std::ptrdiff_t>(c->anchor);
    first = old_lemmas.erase(first, first + static_cast<std::ptrdiff_t>(c->deleted.size()));
    old_lemmas.insert(first, c->added.begin(), c->added.end());
  }
  return old_lemmas;
}

namespace {

// A word of a rewritten identifier: either copied from the target or new.
struct Piece {
  std::string text;
  bool fresh = false;
};

std::string lower_first(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

std::string upper_first(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string render(const WordSequence& target, std::vector<Piece> pieces) {
  const bool snake = target.snake() || (target.size() == 1 && pieces.size() > 1 &&
                                        casing_of(target.words[0].surface) == Casing::AllCaps);
  if (!snake) {
    const Casing first = target.words.front().casing;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      std::string& text = pieces[p].text;
      Casing c = casing_of(text);
      if (p == 0) {
        if (first == Casing::Lower && c == Casing::Capitalized) text = lower_first(text);
        else if (first == Casing::Capitalized && c == Casing::Lower) text = upper_first(text);
      } else if (c == Casing::Lower || (c == Casing::Mixed && std::islower(static_cast<unsigned char>(text[0])))) {
        text = upper_first(text);
      }
    }
  }
  std::string out(target.leading_separators());
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (p > 0 && snake) out.push_back('_');
    out += pieces[p].text;
  }
  out += target.trailing_separators();
  return out;
}

bool is_plural_surface(const Word& w) {
  return w.folded != w.lemma && !w.folded.empty() && w.folded.back() == 's' &&
         (w.lemma.empty() || w.lemma.back() != 's');
}

std::vector<Piece> kept(const WordSequence& target, std::size_t from, std::size_t to) {
  std::vector<Piece> out;
  for (std::size_t p = from; p < to; ++p) out.push_back({target.words[p].surface, false});
  return out;
}

}  // namespace

std::vector<WordSequence> apply_chunk(const OperationalChunk& chunk, const WordSequence& target,
                                      Mode mode, const ExceptionTable& table) {
  std::vector<WordSequence> results;
  const auto lemmas = target.lemmas();

  if (chunk.kind == ChunkKind::Replace || chunk.kind == ChunkKind::Delete) {
    const std::size_t k = chunk.deleted.size();
    if (k == 0 || k > lemmas.size()) return results;
    for (std::size_t p = 0; p + k <= lemmas.size(); ++p) {
      if (!std::equal(chunk.deleted.begin(), chunk.deleted.end(), lemmas.begin() + static_cast<std::ptrdiff_t>(p))) continue;
      std::vector<Piece> pieces = kept(target, 0, p);
      for (std::size_t t = 0; t < chunk.added.size(); ++t) {
        const Word& replaced = target.words[p + std::min(t, k - 1)];
        std::string word = chunk.added[t];
        if (t + 1 == chunk.added.size() && is_plural_surface(target.words[p + k - 1])) {
          word = pluralize(word);
        }
        pieces.push_back({apply_casing(word, replaced.casing), true});
      }
      auto tail = kept(target, p + k, target.size());
      pieces.insert(pieces.end(), tail.begin(), tail.end());
      if (pieces.empty()) {
        throw Error(ErrorKind::DegenerateResult,
                    "applying " + chunk_key(chunk).text + " to '" + target.origin + "' leaves no words");
      }
      results.push_back(normalize(render(target, std::move(pieces)), mode, table));
    }
    return results;
  }

  if (chunk.kind == ChunkKind::Insert) {
    if (chunk.context.empty() || chunk.added.empty()) return results;
    for (std::size_t q = 0; q < lemmas.size(); ++q) {
      if (lemmas[q] != chunk.context) continue;
      const std::size_t at = chunk.context_right ? q : q + 1;
      std::vector<Piece> pieces = kept(target, 0, at);
      for (const auto& word : chunk.added) {
        pieces.push_back({apply_casing(word, target.words[q].casing), true});
      }
      auto tail = kept(target, at, target.size());
      pieces.insert(pieces.end(), tail.begin(), tail.end());
      results.push_back(normalize(render(target, std::move(pieces)), mode, table));
    }
  }
  return results;
}

}  // namespace corename

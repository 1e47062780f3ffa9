#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corename {

enum class Casing { Lower, Capitalized, AllCaps, Mixed };

enum class Mode { Raw, Lemma };

std::string_view to_string(Casing casing);
std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view text);

/// Casing class of a character run. Runs without letters count as Lower.
Casing casing_of(std::string_view surface);

struct Word {
  std::string surface;
  std::string folded;
  std::string lemma;
  Casing casing = Casing::Lower;

  bool is_number() const;
  friend bool operator==(const Word&, const Word&) = default;
};

struct WordSequence {
  std::vector<Word> words;
  std::string origin;

  std::size_t size() const { return words.size(); }
  bool empty() const { return words.empty(); }
  std::vector<std::string> lemmas() const;
  std::vector<std::string> folded() const;
  /// True when the origin separates words with underscores.
  bool snake() const;
  /// Underscores before the first word / after the last word of the origin.
  std::string_view leading_separators() const;
  std::string_view trailing_separators() const;

  friend bool operator==(const WordSequence&, const WordSequence&) = default;
};

/// Irregular-form table consulted before the suffix rules.
class ExceptionTable {
 public:
  ExceptionTable() = default;

  /// Parses "inflected lemma" lines; '#' starts a comment. Lemmas listed on
  /// the right-hand side are registered as fixed points of themselves.
  static ExceptionTable parse(std::istream& in);
  static ExceptionTable load(const std::string& path);
  /// The table shipped with the library (data/lemma_exceptions.txt).
  static const ExceptionTable& bundled();

  const std::string* find(std::string_view word) const;
  void add(std::string inflected, std::string lemma);
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

/// Splits an identifier at underscores, lower-to-upper transitions,
/// letter/digit transitions and acronym ends ("XMLParser" -> XML, Parser).
/// Throws Error(InvalidIdentifier) for empty names, all-underscore names or
/// characters outside [A-Za-z0-9_].
WordSequence split_identifier(std::string_view name);

/// Within-part-of-speech lemma of a lowercase word. Iterates the table and
/// suffix rules to a fixed point, so the function is idempotent.
std::string lemmatize_word(std::string_view folded,
                           const ExceptionTable& table = ExceptionTable::bundled());

/// split_identifier followed by lemma assignment. In Raw mode lemma == folded.
WordSequence normalize(std::string_view name, Mode mode,
                       const ExceptionTable& table = ExceptionTable::bundled());

/// Lemmas joined with '_' (a valid identifier that normalizes back to the
/// same lemma sequence).
std::string join_lemmas(const WordSequence& sequence);

/// Plural surface form of a lowercase word; inverse of the plural suffix rules.
std::string pluralize(std::string_view word);

/// Applies a casing pattern to a lowercase word.
std::string apply_casing(std::string_view folded, Casing casing);

}  // namespace corename

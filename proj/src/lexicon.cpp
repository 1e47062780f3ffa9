#include "corename/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "bundled_data.hpp"
#include "corename/error.hpp"

namespace corename {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_letter(char c) { return is_lower(c) || is_upper(c); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view s) {
  return s.find_first_of("aeiouy") != std::string_view::npos;
}

bool plain_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Porter-style consonant test: 'y' after a consonant acts as a vowel.
bool consonant_at(std::string_view w, std::size_t i) {
  char c = w[i];
  if (plain_vowel(c)) return false;
  if (c == 'y') return i == 0 || !consonant_at(w, i - 1);
  return true;
}

// Number of vowel-consonant sequences in the stem.
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool c = consonant_at(w, i);
    if (c && prev_vowel) ++m;
    prev_vowel = !c;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  if (w.size() < 3) return false;
  std::size_t n = w.size();
  char last = w[n - 1];
  return consonant_at(w, n - 3) && !consonant_at(w, n - 2) && consonant_at(w, n - 1) &&
         last != 'w' && last != 'x' && last != 'y';
}

// Stem endings after which English spells a silent final -e.
bool wants_silent_e(std::string_view stem) {
  std::size_t n = stem.size();
  if (n < 2) return false;
  char last = stem[n - 1];
  char prev = stem[n - 2];
  if (last == 'v' || last == 'u') return true;
  if (ends_with(stem, "bl") || ends_with(stem, "iz") || ends_with(stem, "yz") ||
      ends_with(stem, "rg") || ends_with(stem, "dg") || ends_with(stem, "nc") ||
      ends_with(stem, "rc") || ends_with(stem, "ur")) {
    return true;
  }
  if (n >= 3) {
    char before = stem[n - 3];
    if (ends_with(stem, "at") && !plain_vowel(before)) return true;
    if (ends_with(stem, "ut") && before != 'o') return true;
    if ((ends_with(stem, "il") || ends_with(stem, "ar") || ends_with(stem, "ir")) &&
        !plain_vowel(before)) {
      return true;
    }
    // releas-, caus-, clos-: vowel + s, but not focus-/bus-.
    if (last == 's' && plain_vowel(prev) && (prev != 'u' || plain_vowel(before))) return true;
  }
  return false;
}

// Repairs the stem left after removing -ed / -ing.
std::string repair_verb_stem(std::string stem) {
  if (wants_silent_e(stem)) return stem + 'e';
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && consonant_at(stem, n - 1)) {
    char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + 'e';
  return stem;
}

std::optional<std::string> apply_suffix_rule(std::string_view w) {
  const std::size_t n = w.size();
  if (ends_with(w, "ies") && n >= 5) return std::string(w.substr(0, n - 3)) + "y";
  if (ends_with(w, "sses")) return std::string(w.substr(0, n - 2));
  if (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") ||
      ends_with(w, "zzes")) {
    return std::string(w.substr(0, n - 2));
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
    std::string_view stem = w.substr(0, n - 1);
    if (stem.size() >= 2 && has_vowel(stem)) return std::string(stem);
    return std::nullopt;
  }
  if (ends_with(w, "ied") && n >= 5) return std::string(w.substr(0, n - 3)) + "y";
  if (ends_with(w, "ed") && !ends_with(w, "eed")) {
    std::string_view stem = w.substr(0, n - 2);
    if (stem.size() >= 2 && has_vowel(stem)) return repair_verb_stem(std::string(stem));
    return std::nullopt;
  }
  if (ends_with(w, "ing")) {
    std::string_view stem = w.substr(0, n - 3);
    if (stem.size() >= 2 && has_vowel(stem)) return repair_verb_stem(std::string(stem));
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Casing casing) {
  switch (casing) {
    case Casing::Lower: return "lower";
    case Casing::Capitalized: return "Capitalized";
    case Casing::AllCaps: return "ALLCAPS";
    case Casing::Mixed: return "mixed";
  }
  return "lower";
}

std::string_view to_string(Mode mode) { return mode == Mode::Raw ? "raw" : "lemma"; }

Mode mode_from_string(std::string_view text) {
  if (text == "raw") return Mode::Raw;
  if (text == "lemma") return Mode::Lemma;
  throw Error(ErrorKind::Usage, "unknown mode '" + std::string(text) + "' (expected raw|lemma)");
}

Casing casing_of(std::string_view surface) {
  int letters = 0;
  int uppers = 0;
  bool first_upper = false;
  bool rest_lower = true;
  for (std::size_t i = 0; i < surface.size(); ++i) {
    char c = surface[i];
    if (!is_letter(c)) continue;
    ++letters;
    if (is_upper(c)) {
      ++uppers;
      if (letters == 1) first_upper = true;
      else rest_lower = false;
    }
  }
  if (uppers == 0) return Casing::Lower;
  if (uppers == letters && letters >= 2) return Casing::AllCaps;
  if (first_upper && rest_lower) return Casing::Capitalized;
  return Casing::Mixed;
}

bool Word::is_number() const {
  return !surface.empty() && std::all_of(surface.begin(), surface.end(), is_digit);
}

std::vector<std::string> WordSequence::lemmas() const {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.lemma);
  return out;
}

std::vector<std::string> WordSequence::folded() const {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.folded);
  return out;
}

std::string_view WordSequence::leading_separators() const {
  std::string_view o = origin;
  std::size_t n = o.find_first_not_of('_');
  return o.substr(0, n == std::string_view::npos ? o.size() : n);
}

std::string_view WordSequence::trailing_separators() const {
  std::string_view o = origin;
  std::size_t n = o.find_last_not_of('_');
  return n == std::string_view::npos ? std::string_view{} : o.substr(n + 1);
}

bool WordSequence::snake() const {
  std::string_view o = origin;
  std::size_t first = o.find_first_not_of('_');
  std::size_t last = o.find_last_not_of('_');
  if (first == std::string_view::npos) return false;
  return o.substr(first, last - first + 1).find('_') != std::string_view::npos;
}

ExceptionTable ExceptionTable::parse(std::istream& in) {
  ExceptionTable table;
  std::string line;
  std::vector<std::string> lemmas;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string inflected;
    std::string lemma;
    if (!(fields >> inflected)) continue;
    if (!(fields >> lemma)) lemma = inflected;
    table.add(to_lower(inflected), to_lower(lemma));
    lemmas.push_back(to_lower(lemma));
  }
  for (auto& lemma : lemmas) {
    if (!table.entries_.contains(lemma)) table.entries_.emplace(lemma, lemma);
  }
  return table;
}

ExceptionTable ExceptionTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read lemma table '" + path + "'");
  return parse(in);
}

const ExceptionTable& ExceptionTable::bundled() {
  static const ExceptionTable table = [] {
    std::istringstream in{std::string(bundled::lemma_exceptions)};
    return parse(in);
  }();
  return table;
}

const std::string* ExceptionTable::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

void ExceptionTable::add(std::string inflected, std::string lemma) {
  entries_.insert_or_assign(std::move(inflected), std::move(lemma));
}

WordSequence split_identifier(std::string_view name) {
  if (name.empty()) throw Error(ErrorKind::InvalidIdentifier, "empty identifier");
  for (char c : name) {
    if (!is_letter(c) && !is_digit(c) && c != '_') {
      throw Error(ErrorKind::InvalidIdentifier,
                  "identifier '" + std::string(name) + "' contains '" + std::string(1, c) + "'");
    }
  }

  WordSequence seq;
  seq.origin = std::string(name);
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    Word w;
    w.surface = current;
    w.folded = to_lower(current);
    w.lemma = w.folded;
    w.casing = casing_of(current);
    seq.words.push_back(std::move(w));
    current.clear();
  };

  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (!current.empty()) {
      char prev = current.back();
      bool boundary = (is_lower(prev) && is_upper(c)) || (is_letter(prev) && is_digit(c)) ||
                      (is_digit(prev) && is_letter(c)) ||
                      (is_upper(prev) && is_upper(c) && i + 1 < name.size() &&
                       is_lower(name[i + 1]));
      if (boundary) flush();
    }
    current.push_back(c);
  }
  flush();

  if (seq.words.empty()) {
    throw Error(ErrorKind::InvalidIdentifier, "identifier '" + std::string(name) + "' has no words");
  }
  return seq;
}

std::string lemmatize_word(std::string_view folded, const ExceptionTable& table) {
  std::string word(folded);
  if (std::all_of(word.begin(), word.end(), is_digit)) return word;
  // Every step shortens the word or ends in the table, so this terminates.
  for (std::size_t guard = 0; guard <= folded.size() + 1; ++guard) {
    if (const std::string* lemma = table.find(word)) return *lemma;
    auto next = apply_suffix_rule(word);
    if (!next || *next == word) return word;
    word = std::move(*next);
  }
  return word;
}

WordSequence normalize(std::string_view name, Mode mode, const ExceptionTable& table) {
  WordSequence seq = split_identifier(name);
  if (mode == Mode::Lemma) {
    for (auto& w : seq.words) {
      if (!w.is_number()) w.lemma = lemmatize_word(w.folded, table);
    }
  }
  return seq;
}

std::string join_lemmas(const WordSequence& sequence) {
  std::string out;
  for (const auto& w : sequence.words) {
    if (!out.empty()) out.push_back('_');
    out += w.lemma;
  }
  return out;
}

std::string pluralize(std::string_view word) {
  std::string w(word);
  if (w.empty()) return w;
  std::size_t n = w.size();
  if (w.back() == 'y' && n >= 2 && !plain_vowel(w[n - 2])) return w.substr(0, n - 1) + "ies";
  if (ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") || ends_with(w, "ch") ||
      ends_with(w, "sh")) {
    return w + "es";
  }
  return w + "s";
}

std::string apply_casing(std::string_view folded, Casing casing) {
  std::string out(folded);
  switch (casing) {
    case Casing::Lower:
    case Casing::Mixed:
      break;
    case Casing::Capitalized:
      if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
      break;
    case Casing::AllCaps:
      for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
  }
  return out;
}

}  // namespace corename

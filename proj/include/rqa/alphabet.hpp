#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rqa {

/// Symbol index inside an alphabet (0-based, alphabetical-list order).
using Code = std::uint16_t;

/// Ordered set of distinct lowercase letters. A letter's code is its
/// position in the list.
class Alphabet {
 public:
  static constexpr std::size_t kMaxSize = 0xFFFF;

  /// Throws AlphabetError on duplicates, fewer than two letters, uppercase
  /// letters or whitespace.
  Alphabet(std::string name, std::u32string symbols);

  /// "english-26" or "italian-21".
  static Alphabet preset(std::string_view name);
  static std::vector<std::string> preset_names();

  /// Explicit letter list given as UTF-8, e.g. "abcde".
  static Alphabet from_letters(std::string name, std::string_view utf8_letters);

  /// Plain-text definition: `name = <id>` and `letters = <letters>` lines,
  /// '#' starts a comment. Letters may be separated by whitespace.
  static Alphabet parse(std::string_view text);
  static Alphabet load(const std::filesystem::path& path);

  /// Preset name if known, otherwise a definition file path.
  static Alphabet resolve(std::string_view preset_or_path);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const std::u32string& symbols() const noexcept { return symbols_; }

  std::optional<Code> code(char32_t letter) const noexcept;
  bool contains(char32_t letter) const noexcept { return code(letter).has_value(); }
  char32_t letter(Code c) const { return symbols_.at(c); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.name_ == b.name_ && a.symbols_ == b.symbols_;
  }

 private:
  std::string name_;
  std::u32string symbols_;
  std::unordered_map<char32_t, Code> index_;
};

/// Grapheme rewriting rules (e.g. k -> ch). Rules are tried longest source
/// first (file order breaks ties) in a single left-to-right pass, so the
/// output of one rule is never rewritten again.
class TransliterationTable {
 public:
  struct Rule {
    std::u32string source;
    std::u32string target;
  };

  TransliterationTable() = default;

  /// Every target letter must belong to `target`; sources are lowercased.
  TransliterationTable(std::vector<Rule> rules, const Alphabet& target);

  /// One `source=target` rule per line, UTF-8. Blank lines and lines
  /// starting with '#' are ignored.
  static TransliterationTable parse(std::string_view text, const Alphabet& target);
  static TransliterationTable load(const std::filesystem::path& path, const Alphabet& target);

  std::u32string apply(std::u32string_view text) const;

  /// Rules in application priority order.
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  bool empty() const noexcept { return rules_.empty(); }

 private:
  std::vector<Rule> rules_;
  std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

/// Continuous stream of letter codes.
struct SymbolSequence {
  std::vector<Code> codes;
  Alphabet alphabet;
  std::string source_id;

  std::size_t size() const noexcept { return codes.size(); }
  bool empty() const noexcept { return codes.empty(); }

  /// The letters as UTF-8.
  std::string to_string() const;
};

/// Build a sequence from explicit letters; throws if a letter is outside the alphabet.
SymbolSequence make_sequence(std::string_view utf8_letters, const Alphabet& alphabet,
                             std::string source_id = {});

/// Lowercase, transliterate, fold diacritics, drop everything outside the
/// alphabet. Throws AlphabetError when nothing survives or the input is not
/// valid UTF-8.
SymbolSequence normalize(std::string_view raw_text, const Alphabet& alphabet,
                         const TransliterationTable* translit = nullptr,
                         std::string source_id = {});

struct Histogram {
  std::vector<std::size_t> counts;  // indexed by code
  std::size_t total = 0;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

Histogram letter_histogram(const SymbolSequence& seq);

namespace text {

/// Strict UTF-8 decoding; throws AlphabetError on malformed input.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

/// Simple lowercase mapping for ASCII, Latin-1 and Latin Extended-A.
char32_t to_lower(char32_t c) noexcept;

/// Base-letter expansion of a precomposed Latin letter ("é" -> "e",
/// "æ" -> "ae"). Empty for combining marks. Returns nullopt when the
/// character has no folding.
std::optional<std::string_view> fold_diacritic(char32_t c) noexcept;

}  // namespace text

}  // namespace rqa

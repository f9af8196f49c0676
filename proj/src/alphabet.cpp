#include "rqa/alphabet.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "rqa/error.hpp"

namespace rqa {

namespace text {

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const auto fail = [&i]() {
    throw AlphabetError("invalid UTF-8 at byte offset " + std::to_string(i));
  };
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail();
    }
    if (i + len > bytes.size()) fail();
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (b & 0x3F);
    }
    // overlong forms, surrogates, out of range
    static constexpr std::array<char32_t, 5> kMin = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

char32_t to_lower(char32_t c) noexcept {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c < 0xC0) return c;
  if (c <= 0xDE) return c == 0xD7 ? c : c + 0x20;
  if (c < 0x100 || c > 0x17F) return c;
  if (c == 0x130) return U'i';
  if (c == 0x178) return 0xFF;
  if (c <= 0x137 || (c >= 0x14A && c <= 0x177)) return (c % 2 == 0) ? c + 1 : c;
  if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) return (c % 2 == 1) ? c + 1 : c;
  return c;
}

namespace {

// U+00C0..U+00FF, lowercase base letters. "" = not a letter (× and ÷).
constexpr std::array<std::string_view, 64> kLatin1 = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y",
};

struct FoldRun {
  char32_t first;
  char32_t last;
  std::string_view base;
};

// Latin Extended-A, U+0100..U+017F.
constexpr std::array<FoldRun, 22> kLatinExtA = {{
    {0x100, 0x105, "a"},  {0x106, 0x10D, "c"}, {0x10E, 0x111, "d"},  {0x112, 0x11B, "e"},
    {0x11C, 0x123, "g"},  {0x124, 0x127, "h"}, {0x128, 0x131, "i"},  {0x132, 0x133, "ij"},
    {0x134, 0x135, "j"},  {0x136, 0x138, "k"}, {0x139, 0x142, "l"},  {0x143, 0x14B, "n"},
    {0x14C, 0x151, "o"},  {0x152, 0x153, "oe"}, {0x154, 0x159, "r"}, {0x15A, 0x161, "s"},
    {0x162, 0x167, "t"},  {0x168, 0x173, "u"}, {0x174, 0x175, "w"},  {0x176, 0x178, "y"},
    {0x179, 0x17E, "z"},  {0x17F, 0x17F, "s"},
}};

}  // namespace

std::optional<std::string_view> fold_diacritic(char32_t c) noexcept {
  if (c >= 0x300 && c <= 0x36F) return std::string_view{};  // combining marks
  if (c >= 0xC0 && c <= 0xFF) {
    const auto base = kLatin1[c - 0xC0];
    if (base.empty()) return std::nullopt;
    return base;
  }
  if (c >= 0x100 && c <= 0x17F) {
    for (const auto& run : kLatinExtA) {
      if (c >= run.first && c <= run.last) return run.base;
    }
  }
  return std::nullopt;
}

}  // namespace text

namespace {

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0xA0;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AlphabetError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    f(line_no, trim(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

// --- Alphabet ---------------------------------------------------------------

Alphabet::Alphabet(std::string name, std::u32string symbols)
    : name_(std::move(name)), symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) throw AlphabetError("alphabet needs at least 2 letters");
  if (symbols_.size() > kMaxSize) throw AlphabetError("alphabet too large");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const char32_t c = symbols_[i];
    if (is_space(c)) throw AlphabetError("alphabet letters may not be whitespace");
    if (text::to_lower(c) != c) {
      throw AlphabetError("alphabet letter '" + text::encode_utf8(std::u32string(1, c)) +
                          "' is not lowercase");
    }
    const auto [it, inserted] = index_.emplace(c, static_cast<Code>(i));
    if (!inserted) {
      throw AlphabetError("duplicate letter '" + text::encode_utf8(std::u32string(1, c)) +
                          "' in alphabet " + name_);
    }
  }
}

Alphabet Alphabet::preset(std::string_view name) {
  if (name == "english-26") return Alphabet("english-26", U"abcdefghijklmnopqrstuvwxyz");
  // standard Italian alphabet: no j, k, w, x, y
  if (name == "italian-21") return Alphabet("italian-21", U"abcdefghilmnopqrstuvz");
  throw AlphabetError("unknown alphabet preset '" + std::string(name) + "'");
}

std::vector<std::string> Alphabet::preset_names() { return {"english-26", "italian-21"}; }

Alphabet Alphabet::from_letters(std::string name, std::string_view utf8_letters) {
  std::u32string letters;
  for (char32_t c : text::decode_utf8(utf8_letters)) {
    if (!is_space(c) && c != U',') letters.push_back(c);
  }
  return Alphabet(std::move(name), std::move(letters));
}

Alphabet Alphabet::parse(std::string_view text) {
  std::string name = "custom";
  std::optional<std::string> letters;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw AlphabetError("alphabet definition line " + std::to_string(line_no) +
                          ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "name") {
      name = std::string(value);
    } else if (key == "letters") {
      letters = letters.value_or("") + std::string(value);
    } else {
      throw AlphabetError("alphabet definition line " + std::to_string(line_no) +
                          ": unknown key '" + std::string(key) + "'");
    }
  });
  if (!letters) throw AlphabetError("alphabet definition has no 'letters' entry");
  return from_letters(std::move(name), *letters);
}

Alphabet Alphabet::load(const std::filesystem::path& path) { return parse(read_file(path)); }

Alphabet Alphabet::resolve(std::string_view preset_or_path) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), preset_or_path) != names.end()) {
    return preset(preset_or_path);
  }
  const std::filesystem::path path(preset_or_path);
  if (std::filesystem::is_regular_file(path)) return load(path);
  throw AlphabetError("unknown alphabet preset '" + std::string(preset_or_path) +
                      "' (and no such file)");
}

std::optional<Code> Alphabet::code(char32_t letter) const noexcept {
  const auto it = index_.find(letter);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// --- TransliterationTable -----------------------------------------------------

TransliterationTable::TransliterationTable(std::vector<Rule> rules, const Alphabet& target) {
  for (auto& rule : rules) {
    if (rule.source.empty()) throw AlphabetError("transliteration rule with empty source");
    for (auto& c : rule.source) c = text::to_lower(c);
    for (char32_t c : rule.target) {
      if (!target.contains(c)) {
        throw AlphabetError("transliteration target '" + text::encode_utf8(rule.target) +
                            "' has a letter outside alphabet " + target.name());
      }
    }
  }
  std::stable_sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    return a.source.size() > b.source.size();
  });
  rules_ = std::move(rules);
  for (std::size_t i = 0; i < rules_.size(); ++i) by_first_[rules_[i].source.front()].push_back(i);
}

TransliterationTable TransliterationTable::parse(std::string_view text, const Alphabet& target) {
  std::vector<Rule> rules;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw AlphabetError("transliteration line " + std::to_string(line_no) +
                          ": expected source=target");
    }
    rules.push_back({text::decode_utf8(trim(line.substr(0, eq))),
                     text::decode_utf8(trim(line.substr(eq + 1)))});
  });
  return TransliterationTable(std::move(rules), target);
}

TransliterationTable TransliterationTable::load(const std::filesystem::path& path,
                                                const Alphabet& target) {
  return parse(read_file(path), target);
}

std::u32string TransliterationTable::apply(std::u32string_view text) const {
  if (rules_.empty()) return std::u32string(text);
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Rule* hit = nullptr;
    if (const auto it = by_first_.find(text[pos]); it != by_first_.end()) {
      for (std::size_t idx : it->second) {
        const auto& src = rules_[idx].source;
        if (text.substr(pos, src.size()) == src) {
          hit = &rules_[idx];
          break;
        }
      }
    }
    if (hit) {
      out += hit->target;
      pos += hit->source.size();
    } else {
      out.push_back(text[pos++]);
    }
  }
  return out;
}

// --- sequences ----------------------------------------------------------------

std::string SymbolSequence::to_string() const {
  std::u32string letters;
  letters.reserve(codes.size());
  for (Code c : codes) letters.push_back(alphabet.letter(c));
  return text::encode_utf8(letters);
}

SymbolSequence make_sequence(std::string_view utf8_letters, const Alphabet& alphabet,
                             std::string source_id) {
  SymbolSequence seq{{}, alphabet, std::move(source_id)};
  for (char32_t c : text::decode_utf8(utf8_letters)) {
    const auto code = alphabet.code(c);
    if (!code) {
      throw AlphabetError("letter '" + text::encode_utf8(std::u32string(1, c)) +
                          "' not in alphabet " + alphabet.name());
    }
    seq.codes.push_back(*code);
  }
  return seq;
}

SymbolSequence normalize(std::string_view raw_text, const Alphabet& alphabet,
                         const TransliterationTable* translit, std::string source_id) {
  std::u32string chars = text::decode_utf8(raw_text);
  for (auto& c : chars) c = text::to_lower(c);
  if (translit) chars = translit->apply(chars);

  SymbolSequence seq{{}, alphabet, std::move(source_id)};
  seq.codes.reserve(chars.size());
  for (char32_t c : chars) {
    if (const auto code = alphabet.code(c)) {
      seq.codes.push_back(*code);
      continue;
    }
    if (const auto base = text::fold_diacritic(c)) {
      for (char b : *base) {
        if (const auto code = alphabet.code(static_cast<char32_t>(b))) seq.codes.push_back(*code);
      }
    }
  }
  if (seq.codes.empty()) {
    throw AlphabetError("no letters of alphabet " + alphabet.name() + " in input" +
                        (seq.source_id.empty() ? "" : " '" + seq.source_id + "'"));
  }
  return seq;
}

Histogram letter_histogram(const SymbolSequence& seq) {
  Histogram h;
  h.counts.assign(seq.alphabet.size(), 0);
  for (Code c : seq.codes) ++h.counts.at(c);
  h.total = seq.codes.size();
  return h;
}

}  // namespace rqa

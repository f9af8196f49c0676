#include <algorithm>
#include <random>

#include "doctest.h"
#include "rqa/alphabet.hpp"
#include "rqa/error.hpp"
#include "rqa/surrogates.hpp"
#include "synthetic.hpp"

using namespace rqa;

TEST_CASE("presets assign positional codes") {
  const auto en = Alphabet::preset("english-26");
  CHECK(en.size() == 26);
  CHECK(en.code(U'a') == 0);
  CHECK(en.code(U'z') == 25);

  const auto it = Alphabet::preset("italian-21");
  CHECK(it.size() == 21);
  for (char32_t c : {U'j', U'k', U'w', U'x', U'y'}) CHECK_FALSE(it.contains(c));
  CHECK(it.code(U'h') == 7);
  CHECK(it.code(U'i') == 8);
  CHECK(it.code(U'z') == 20);
}

TEST_CASE("alphabet construction errors") {
  CHECK_THROWS_AS(Alphabet::preset("klingon"), AlphabetError);
  CHECK_THROWS_AS(Alphabet::from_letters("dup", "aab"), AlphabetError);
  CHECK_THROWS_AS(Alphabet::from_letters("one", "a"), AlphabetError);
  CHECK_THROWS_AS(Alphabet::from_letters("upper", "aB"), AlphabetError);
  CHECK(Alphabet::from_letters("abc", "a, b, c").size() == 3);
}

TEST_CASE("alphabet definition file") {
  const auto a = Alphabet::parse("# swedish\nname = sv\nletters = abcdefghijklmnopqrstuvwxyz\nletters = åäö\n");
  CHECK(a.name() == "sv");
  CHECK(a.size() == 29);
  CHECK(a.code(U'ö') == 28);
  CHECK_THROWS_AS(Alphabet::parse("name = x\n"), AlphabetError);
  CHECK_THROWS_AS(Alphabet::parse("letters abc\n"), AlphabetError);
  CHECK_THROWS_AS(Alphabet::parse("colour = red\nletters = ab\n"), AlphabetError);
}

TEST_CASE("normalize keeps only alphabet letters, in order") {
  const auto en = Alphabet::preset("english-26");
  CHECK(normalize("Dr. Seuss!", en).to_string() == "drseuss");
  CHECK(normalize("l'acqua", en).to_string() == "lacqua");
  CHECK(normalize("Café DÉJÀ vu, naïve Œuvre ß", en).to_string() == "cafedejavunaiveoeuvress");
  // decomposed accent: e + U+0301
  CHECK(normalize("e\xCC\x81t\xC3\xA9", en).to_string() == "ete");
  CHECK_THROWS_AS(normalize("1234 \xE2\x80\xA6", en), AlphabetError);
  CHECK_THROWS_AS(normalize("", en), AlphabetError);
  CHECK_THROWS_AS(normalize("ab\xFF", en), AlphabetError);
  CHECK_THROWS_AS(normalize("\xC0\xAF", en), AlphabetError);  // overlong '/'
}

TEST_CASE("transliteration runs before filtering") {
  const auto it = Alphabet::preset("italian-21");
  const auto table = TransliterationTable::parse("k=ch\n", it);
  CHECK(normalize("ök, sì", it, &table).to_string() == "ochsi");
  // without the rule the k is simply dropped
  CHECK(normalize("ök, sì", it).to_string() == "osi");
  // uppercase input still matches lowercase sources
  CHECK(normalize("Kaka", it, &table).to_string() == "chacha");
}

TEST_CASE("transliteration: longest source first, single pass") {
  const auto it = Alphabet::preset("italian-21");
  const auto table = TransliterationTable::parse("# comment\nk=ch\nck = cc\nsch=sc\n\n", it);
  REQUIRE(table.rules().size() == 3);
  CHECK(table.rules()[0].source == U"sch");
  CHECK(table.rules()[1].source == U"ck");
  CHECK(table.rules()[2].source == U"k");
  // "sch" is not present; "ck" beats "k"; output is never re-scanned
  CHECK(text::encode_utf8(table.apply(U"rock kk")) == "rocc chch");
  CHECK(text::encode_utf8(table.apply(U"schk")) == "scch");
}

TEST_CASE("transliteration errors") {
  const auto it = Alphabet::preset("italian-21");
  CHECK_THROWS_AS(TransliterationTable::parse("k=kh\n", it), AlphabetError);  // k not in italian-21
  CHECK_THROWS_AS(TransliterationTable::parse("=a\n", it), AlphabetError);
  CHECK_THROWS_AS(TransliterationTable::parse("k\n", it), AlphabetError);
  CHECK_NOTHROW(TransliterationTable::parse("h=\n", it));  // deletion rule
}

TEST_CASE("custom alphabet letters are not folded away") {
  const auto sv = Alphabet::parse("name = sv\nletters = abcdefghijklmnopqrstuvwxyzåäö\n");
  CHECK(normalize("Åsa är", sv).to_string() == "åsaär");
  CHECK(normalize("é", sv).to_string() == "e");
}

TEST_CASE("normalize is idempotent on rendered output") {
  std::mt19937_64 rng(7);
  const auto it = Alphabet::preset("italian-21");
  const auto table = TransliterationTable::parse("k=ch\nw=v\nx=cs\ny=i\nj=i\n", it);
  const std::u32string pool = U"AbcdeéèìòùKkWwXxYyJj .,;'!?0123456789zZ\nÆß";
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string raw;
    const auto len = 1 + rng() % 80;
    for (std::size_t k = 0; k < len; ++k) raw += pool[rng() % pool.size()];
    raw += U"a";
    const auto once = normalize(text::encode_utf8(raw), it, &table);
    const auto twice = normalize(once.to_string(), it, &table);
    CHECK(twice.codes == once.codes);
  }
}

TEST_CASE("letter histogram") {
  const auto en = Alphabet::preset("english-26");
  const auto h = letter_histogram(make_sequence("banana", en));
  CHECK(h.total == 6);
  CHECK(h.counts[0] == 3);
  CHECK(h.counts[1] == 1);
  CHECK(h.counts[13] == 2);
  CHECK(letter_histogram(make_sequence("aaaa", en)).counts[0] == 4);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto seq = make_sequence(testing::random_letters(rng, 1 + rng() % 300, 2 + rng() % 25), en);
    CHECK(letter_histogram(shuffle(seq, rng())) == letter_histogram(seq));
    auto perm = seq;
    std::reverse(perm.codes.begin(), perm.codes.end());
    CHECK(letter_histogram(perm) == letter_histogram(seq));
  }
}

TEST_CASE("make_sequence rejects foreign letters") {
  CHECK_THROWS_AS(make_sequence("kappa", Alphabet::preset("italian-21")), AlphabetError);
}

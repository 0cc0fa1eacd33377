#include <doctest.h>

#include "readeval/random.hpp"
#include "readeval/token.hpp"

using namespace readeval;

TEST_CASE("normalization strips case and surrounding punctuation") {
  auto t = normalize_token("Kat,");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "kat");
  CHECK_FALSE(t->fragment);
  CHECK(t->raw == "Kat,");

  t = normalize_token("boom");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "boom");
  CHECK_FALSE(t->fragment);

  t = normalize_token("\"Huis!\"");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "huis");
}

TEST_CASE("trailing fragment marker is recorded and removed") {
  auto t = normalize_token("zi-");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "zi");
  CHECK(t->fragment);

  t = normalize_token("boo*");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "boo");
  CHECK(t->fragment);

  // marker followed by ordinary punctuation still counts
  t = normalize_token("zi-,");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "zi");
  CHECK(t->fragment);
}

TEST_CASE("internal hyphens and apostrophes survive") {
  CHECK(normalize_token("e-mail")->normalized == "e-mail");
  CHECK(normalize_token("auto's")->normalized == "auto's");
}

TEST_CASE("pure punctuation tokens signal drop") {
  CHECK_FALSE(normalize_token("...").has_value());
  CHECK_FALSE(normalize_token("  ").has_value());
  CHECK_FALSE(normalize_token("-").has_value());
}

TEST_CASE("whitespace is trimmed before anything else") {
  auto t = normalize_token("  Maan \t");
  REQUIRE(t.has_value());
  CHECK(t->normalized == "maan");
  CHECK(t->raw == "Maan");
}

TEST_CASE("fragments never match, equal normalized forms do") {
  CHECK(tokens_match(token("kat"), token("kat")));
  CHECK_FALSE(tokens_match(token("kat"), token("kaf")));
  CHECK_FALSE(tokens_match(token("zi", true), token("zi")));
  CHECK_FALSE(tokens_match(token("zi", true), token("zi", true)));
}

TEST_CASE("normalization is idempotent on normalized forms") {
  static const char* kPieces[] = {"a", "b", "kat", "zi", "'", "-", "*", ",", "K", "!", "e-m"};
  Rng rng(20260808);
  for (int iter = 0; iter < 500; ++iter) {
    std::string raw;
    const std::size_t parts = 1 + rng.below(4);
    for (std::size_t i = 0; i < parts; ++i) raw += kPieces[rng.below(std::size(kPieces))];
    const auto first = normalize_token(raw);
    if (!first) continue;
    const auto second = normalize_token(first->normalized);
    REQUIRE(second.has_value());
    CHECK(second->normalized == first->normalized);
    CHECK_FALSE(second->fragment);
  }
}

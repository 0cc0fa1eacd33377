#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace readeval {

// One prompted or transcribed word. `normalized` is lowercase with
// surrounding punctuation removed; `fragment` marks a broken-off word,
// annotated in transcripts with a trailing '*' or '-'.
struct WordToken {
  std::string raw;
  std::string normalized;
  bool fragment = false;

  friend bool operator==(const WordToken&, const WordToken&) = default;
};

// Whether two tokens count as the same read word: equal normalized forms
// and neither is a fragment.
bool tokens_match(const WordToken& a, const WordToken& b);

// Normalizes a raw token: trim, lowercase, strip surrounding punctuation
// (internal hyphens and apostrophes are kept), record and remove a
// trailing fragment marker. Returns nullopt when nothing is left (pure
// punctuation); callers drop such tokens.
std::optional<WordToken> normalize_token(std::string_view raw);

// Builds an already-normalized token, mostly for tests and generators.
WordToken token(std::string normalized, bool fragment = false);

}  // namespace readeval

#include "readeval/token.hpp"

namespace readeval {

namespace {

bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// ASCII-only on purpose: multi-byte UTF-8 sequences pass through untouched.
bool ascii_punct(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return (u >= '!' && u <= '/') || (u >= ':' && u <= '@') || (u >= '[' && u <= '`') ||
         (u >= '{' && u <= '~');
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

bool tokens_match(const WordToken& a, const WordToken& b) {
  return !a.fragment && !b.fragment && a.normalized == b.normalized;
}

std::optional<WordToken> normalize_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && ascii_space(raw[begin])) ++begin;
  while (end > begin && ascii_space(raw[end - 1])) --end;
  if (begin == end) return std::nullopt;

  WordToken t;
  t.raw.assign(raw.substr(begin, end - begin));

  std::string s;
  s.reserve(t.raw.size());
  for (char c : t.raw) s.push_back(ascii_lower(c));

  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && ascii_punct(s[b])) ++b;
  while (e > b && ascii_punct(s[e - 1])) {
    // A trailing '*' or '-' is the annotator's broken-word marker.
    if (s[e - 1] == '*' || s[e - 1] == '-') t.fragment = true;
    --e;
  }
  if (b == e) return std::nullopt;  // pure punctuation: drop

  t.normalized = s.substr(b, e - b);
  return t;
}

WordToken token(std::string normalized, bool fragment) {
  WordToken t;
  t.raw = normalized;
  t.normalized = std::move(normalized);
  t.fragment = fragment;
  return t;
}

}  // namespace readeval

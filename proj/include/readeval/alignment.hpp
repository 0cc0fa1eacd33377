#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "readeval/corpus.hpp"

namespace readeval {

enum class AlignKind { match, substitution, deletion, insertion };

// One step of an alignment path. Matches and substitutions consume a
// prompt word and an observed token; a deletion consumes only the prompt
// word (it was never read); an insertion consumes only an observed token
// (something extra was read).
struct AlignmentOp {
  AlignKind kind = AlignKind::match;
  std::optional<std::size_t> prompt_index;
  std::optional<std::size_t> observed_index;

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

struct AlignmentResult {
  std::vector<AlignmentOp> ops;  // forward order; indices strictly increasing
  int cost = 0;                  // number of non-match ops

  friend bool operator==(const AlignmentResult&, const AlignmentResult&) = default;
};

// Per-prompt-word binary scores, 1 = read correctly.
using BinaryLabels = std::vector<std::uint8_t>;

// Minimum-edit alignment of an observed token sequence against a
// reference sequence, unit costs for substitution/deletion/insertion.
// Tokens match when their normalized forms are equal and neither is a
// fragment. Backtrace ties break match > substitution > deletion >
// insertion, so the op path is deterministic. Throws on an empty
// reference; the observed side may be empty.
AlignmentResult align_tokens(std::span<const WordToken> observed,
                             std::span<const WordToken> reference);

AlignmentResult align(std::span<const WordToken> observed, const Prompt& prompt);

// labels[i] = 1 iff prompt position i appears in a match op. Throws when
// the alignment does not cover the prompt exactly.
BinaryLabels labels_from_alignment(const AlignmentResult& a, const Prompt& prompt);

// Three-row text diagram of an op path: prompt row, observed row, op row.
// Gaps are shown as '*'; ops as '=' (match), 'S', 'D', 'I'.
std::string render_alignment(const AlignmentResult& a,
                             std::span<const WordToken> observed,
                             const Prompt& prompt);

}  // namespace readeval

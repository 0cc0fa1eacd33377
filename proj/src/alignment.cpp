#include "readeval/alignment.hpp"

#include <algorithm>
#include <sstream>

#include "readeval/error.hpp"

namespace readeval {

AlignmentResult align_tokens(std::span<const WordToken> observed,
                             std::span<const WordToken> reference) {
  const std::size_t m = observed.size();
  const std::size_t n = reference.size();
  if (n == 0) throw ComputeError("alignment requires a non-empty reference sequence");

  // dp[i][j]: minimal edits aligning the first i observed tokens with the
  // first j reference words. Row 0 deletes every reference word, column 0
  // inserts every observed token.
  std::vector<std::vector<int>> dp(m + 1, std::vector<int>(n + 1, 0));
  for (std::size_t j = 0; j <= n; ++j) dp[0][j] = static_cast<int>(j);
  for (std::size_t i = 0; i <= m; ++i) dp[i][0] = static_cast<int>(i);

  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const int diag = dp[i - 1][j - 1] + (tokens_match(observed[i - 1], reference[j - 1]) ? 0 : 1);
      const int del = dp[i][j - 1] + 1;
      const int ins = dp[i - 1][j] + 1;
      dp[i][j] = std::min({diag, del, ins});
    }
  }

  // Backtrace with a fixed preference order (match > substitution >
  // deletion > insertion) so equal-cost paths resolve deterministically.
  AlignmentResult result;
  result.cost = dp[m][n];
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    AlignmentOp op;
    if (i > 0 && j > 0 && tokens_match(observed[i - 1], reference[j - 1]) &&
        dp[i][j] == dp[i - 1][j - 1]) {
      op = {AlignKind::match, j - 1, i - 1};
      --i;
      --j;
    } else if (i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + 1 &&
               !tokens_match(observed[i - 1], reference[j - 1])) {
      op = {AlignKind::substitution, j - 1, i - 1};
      --i;
      --j;
    } else if (j > 0 && dp[i][j] == dp[i][j - 1] + 1) {
      op = {AlignKind::deletion, j - 1, std::nullopt};
      --j;
    } else {
      op = {AlignKind::insertion, std::nullopt, i - 1};
      --i;
    }
    result.ops.push_back(op);
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

AlignmentResult align(std::span<const WordToken> observed, const Prompt& prompt) {
  if (prompt.words.empty())
    throw ComputeError("prompt '" + prompt.id + "' has no words to align against");
  return align_tokens(observed, prompt.words);
}

BinaryLabels labels_from_alignment(const AlignmentResult& a, const Prompt& prompt) {
  const std::size_t n = prompt.words.size();
  BinaryLabels labels(n, 0);
  std::size_t covered = 0;
  for (const AlignmentOp& op : a.ops) {
    if (!op.prompt_index) continue;
    if (*op.prompt_index >= n)
      throw ComputeError("alignment refers to prompt position " +
                         std::to_string(*op.prompt_index) + " of a " + std::to_string(n) +
                         "-word prompt");
    ++covered;
    if (op.kind == AlignKind::match) labels[*op.prompt_index] = 1;
  }
  if (covered != n)
    throw ComputeError("alignment covers " + std::to_string(covered) + " of " +
                       std::to_string(n) + " prompt words");
  return labels;
}

std::string render_alignment(const AlignmentResult& a, std::span<const WordToken> observed,
                             const Prompt& prompt) {
  static constexpr const char* kGap = "*";
  std::vector<std::string> prow, orow, srow;
  for (const AlignmentOp& op : a.ops) {
    prow.push_back(op.prompt_index ? prompt.words[*op.prompt_index].normalized : kGap);
    orow.push_back(op.observed_index ? observed[*op.observed_index].normalized : kGap);
    switch (op.kind) {
      case AlignKind::match: srow.push_back("="); break;
      case AlignKind::substitution: srow.push_back("S"); break;
      case AlignKind::deletion: srow.push_back("D"); break;
      case AlignKind::insertion: srow.push_back("I"); break;
    }
  }

  auto emit = [&](std::ostringstream& out, const char* head, const std::vector<std::string>& row) {
    out << head;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::size_t width = std::max({prow[k].size(), orow[k].size(), srow[k].size()});
      out << ' ' << row[k] << std::string(width - row[k].size(), ' ');
    }
    out << '\n';
  };

  std::ostringstream out;
  emit(out, "prompt:  ", prow);
  emit(out, "observed:", orow);
  emit(out, "ops:     ", srow);
  return out.str();
}

}  // namespace readeval

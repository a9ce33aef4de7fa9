#pragma once

#include <stdexcept>

#include "slicevc/render/range_map.hpp"
#include "slicevc/render/tokenizer.hpp"
#include "slicevc/slice/slice.hpp"

namespace slicevc {

/// Raised when a rendered slice fails to re-parse; carries the offending text.
class RenderError : public std::runtime_error {
public:
  RenderError(const std::string& message, std::string renderedText)
      : std::runtime_error(message), text(std::move(renderedText)) {}
  std::string text;
};

struct RenderOptions {
  const Tokenizer* tokenizer = nullptr;  // default tokenizer when null
  int contextLineCap = 40;
  bool includeContext = true;
  bool verifyReparse = true;
};

struct ContextItem {
  UnifiedId decl = kNoNode;
  std::string name;
  ByteRange range;
  bool capped = false;
};

struct RenderedSlice {
  std::string text;
  std::string language;
  int tokenCount = 0;
  int stmtCount = 0;  // kept statements plus synthesized assumes
  std::vector<ContextItem> contextItems;
  std::string fingerprint;
  std::string tokenizerName;
};

/// Renders the slice back to source text: kept statements verbatim with
/// their original formatting, sliced-away statements deleted (whole lines),
/// collapsed conditionals replaced by their synthesized assume, unreachable
/// regions replaced by assume(0), enclosing context structures preserved,
/// and name-matched declarations prepended.
RenderedSlice renderSlice(const SliceProgram& slice, const SourceUnit& unit,
                          const Cfg& cfg, const GrammarAdapter& adapter,
                          const RenderOptions& opts = {});

/// Declarations matching any identifier used by kept statements, in source
/// order, deduplicated. Over-approximation by name is intended.
std::vector<ContextItem> gatherContext(const SliceProgram& slice, const SourceUnit& unit,
                                       const Cfg& cfg);

std::string fingerprintText(std::string_view text);

}  // namespace slicevc

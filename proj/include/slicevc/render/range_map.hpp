#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slicevc/frontend/unified.hpp"

namespace slicevc {

/// Maps byte ranges of a source span to emission directives. Ranges must be
/// pairwise disjoint or strictly nested; partial overlap is a logic error.
/// Applying the map emits unmapped bytes verbatim, drops Delete ranges, and
/// substitutes Replace ranges with their text (outermost directive wins).
class RangeMap {
public:
  enum class Action { Delete, Replace };

  struct Edit {
    ByteRange range;
    Action action;
    std::string text;
  };

  /// Throws std::logic_error when the range partially overlaps an existing
  /// edit. Zero-length ranges act as insertions.
  void insert(ByteRange range, Action action, std::string text = {});

  std::string apply(std::string_view bytes, ByteRange base) const;

  const std::vector<Edit>& edits() const { return edits_; }
  bool covers(std::uint32_t pos) const;

private:
  std::vector<Edit> edits_;
};

}  // namespace slicevc

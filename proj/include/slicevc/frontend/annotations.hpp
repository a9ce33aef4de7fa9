#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "slicevc/frontend/unified.hpp"

namespace slicevc {

class AnnotationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct HoareAnnotations {
  std::optional<std::string> pre;
  std::optional<std::string> post;
  UnifiedId postNode = kNoNode;  // the tagged assert statement, when present
};

/// Collects PRE/POST markers: assume/assert statements with a trailing
/// "PRE"/"POST" comment, and standalone comments of the form "PRE: cond" /
/// "POST: cond". Multiple conflicting POST markers raise AnnotationError.
HoareAnnotations extractAnnotations(const SourceUnit& unit);

}  // namespace slicevc

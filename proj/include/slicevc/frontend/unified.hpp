#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace slicevc {

/// The fixed, language-neutral node taxonomy. Shared features of different
/// languages map to the same kind; anything unmapped degrades to Other.
enum class NodeKind {
  FunctionDef,
  If,
  While,
  For,
  Assignment,
  Call,
  Return,
  Assume,
  Block,
  ConditionExpr,
  Declaration,
  Comment,
  Other,
};

const char* kindName(NodeKind k);

using UnifiedId = std::uint32_t;
constexpr UnifiedId kNoNode = static_cast<UnifiedId>(-1);

/// Half-open byte range into the owning unit's source bytes.
struct ByteRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  bool contains(const ByteRange& other) const {
    return begin <= other.begin && other.end <= end;
  }
  std::uint32_t size() const { return end - begin; }
};

/// Language-agnostic AST node. Children are ordered by start offset, nested
/// strictly inside the parent range, and non-overlapping.
struct UnifiedNode {
  NodeKind kind = NodeKind::Other;
  ByteRange range;
  std::vector<UnifiedId> children;
  std::string nameHint;  // identifier for declarations/calls/assignment targets
  UnifiedId parent = kNoNode;
};

/// A parsed source file: raw bytes, the unified tree, and an index of
/// declaration-like nodes by name. Immutable after construction.
class SourceUnit {
public:
  SourceUnit(std::string fileId, std::string bytes, std::string language)
      : fileId_(std::move(fileId)), bytes_(std::move(bytes)), language_(std::move(language)) {}

  const std::string& fileId() const { return fileId_; }
  const std::string& bytes() const { return bytes_; }
  const std::string& language() const { return language_; }

  std::string_view text(const ByteRange& r) const {
    return std::string_view(bytes_).substr(r.begin, r.end - r.begin);
  }

  UnifiedId root() const { return root_; }
  const UnifiedNode& node(UnifiedId id) const { return nodes_[id]; }
  std::size_t nodeCount() const { return nodes_.size(); }

  /// Declaration-kind and function-def nodes keyed by nameHint.
  const std::map<std::string, std::vector<UnifiedId>>& symbolIndex() const {
    return symbolIndex_;
  }

  /// Non-fatal parse diagnostics (unrecognized regions and the like).
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  // Construction interface, used by adapters.
  UnifiedId addNode(NodeKind kind, ByteRange range, std::string nameHint = {});
  void addChild(UnifiedId parent, UnifiedId child);
  void setRoot(UnifiedId id) { root_ = id; }
  void setRange(UnifiedId id, ByteRange r) { nodes_[id].range = r; }
  void sortChildrenByRange(UnifiedId id);
  void addDiagnostic(std::string msg) { diagnostics_.push_back(std::move(msg)); }
  void buildSymbolIndex();

  /// Adapter-private payload (for example the exact mini-language AST).
  void setAdapterData(std::shared_ptr<void> data) { adapterData_ = std::move(data); }
  const std::shared_ptr<void>& adapterData() const { return adapterData_; }

private:
  std::string fileId_;
  std::string bytes_;
  std::string language_;
  std::vector<UnifiedNode> nodes_;
  UnifiedId root_ = kNoNode;
  std::map<std::string, std::vector<UnifiedId>> symbolIndex_;
  std::vector<std::string> diagnostics_;
  std::shared_ptr<void> adapterData_;
};

/// True for node kinds that lower to CFG nodes.
bool isExecutableKind(NodeKind k);

/// Walks the subtree rooted at id in preorder.
void forEachNode(const SourceUnit& unit, UnifiedId id,
                 const std::function<void(UnifiedId, const UnifiedNode&)>& fn);

/// Checks the range-containment and sibling-ordering invariants; returns an
/// empty string when they hold, otherwise a description of the violation.
std::string checkRangeInvariants(const SourceUnit& unit);

}  // namespace slicevc

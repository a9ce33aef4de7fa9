#pragma once

#include <map>
#include <memory>

#include "slicevc/frontend/adapter.hpp"
#include "slicevc/minilang/parse.hpp"

namespace slicevc {

/// Adapter payload: the exact mini-language AST plus the correspondence
/// between mini node ids and unified node ids. Lets the CFG report exact
/// defs/uses and lets tests map interpreter traces onto CFG coverage.
struct MiniUnitData {
  mini::StmtPtr program;
  std::vector<mini::CommentToken> comments;
  std::map<mini::NodeId, UnifiedId> toUnified;
  std::map<UnifiedId, const mini::Stmt*> fromUnified;
};

const MiniUnitData* miniData(const SourceUnit& unit);

std::shared_ptr<GrammarAdapter> makeMiniAdapter();

}  // namespace slicevc

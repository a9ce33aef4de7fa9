#include "slicevc/render/range_map.hpp"

#include <algorithm>

namespace slicevc {

void RangeMap::insert(ByteRange range, Action action, std::string text) {
  for (const Edit& e : edits_) {
    bool disjoint = range.end <= e.range.begin || e.range.end <= range.begin;
    bool nested = e.range.contains(range) || range.contains(e.range);
    if (!disjoint && !nested)
      throw std::logic_error("RangeMap: partially overlapping edit [" +
                             std::to_string(range.begin) + "," + std::to_string(range.end) +
                             ") vs [" + std::to_string(e.range.begin) + "," +
                             std::to_string(e.range.end) + ")");
  }
  edits_.push_back({range, action, std::move(text)});
}

bool RangeMap::covers(std::uint32_t pos) const {
  for (const Edit& e : edits_) {
    if (e.range.begin <= pos && pos < e.range.end) return true;
  }
  return false;
}

std::string RangeMap::apply(std::string_view bytes, ByteRange base) const {
  // Outermost edits only; inner edits are shadowed by their container.
  std::vector<const Edit*> top;
  for (const Edit& e : edits_) {
    bool inner = false;
    for (const Edit& other : edits_) {
      if (&other == &e) continue;
      if (other.range.contains(e.range) &&
          !(other.range.begin == e.range.begin && other.range.end == e.range.end)) {
        inner = true;
        break;
      }
    }
    if (!inner) top.push_back(&e);
  }
  std::sort(top.begin(), top.end(), [](const Edit* a, const Edit* b) {
    if (a->range.begin != b->range.begin) return a->range.begin < b->range.begin;
    return a->range.end < b->range.end;
  });
  std::string out;
  std::uint32_t pos = base.begin;
  for (const Edit* e : top) {
    if (e->range.end <= base.begin || e->range.begin >= base.end) continue;
    std::uint32_t from = std::max(pos, e->range.begin);
    if (from > pos) out.append(bytes.substr(pos, from - pos));
    if (e->action == Action::Replace) out.append(e->text);
    pos = std::max(pos, e->range.end);
  }
  if (pos < base.end) out.append(bytes.substr(pos, base.end - pos));
  return out;
}

}  // namespace slicevc

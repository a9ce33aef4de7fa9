#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "slicevc/frontend/unified.hpp"

namespace slicevc {

struct DefUse {
  std::set<std::string> defs;
  std::set<std::string> uses;
  bool uncertain = false;  // opaque statement; the slicer keeps it
};

class UnknownLanguage : public std::runtime_error {
public:
  explicit UnknownLanguage(const std::string& tag)
      : std::runtime_error("no grammar adapter registered for language '" + tag + "'") {}
};

/// Per-language grammar adapter. Parsing is approximate by design:
/// unrecognized regions become Other leaf nodes, never failures. A single
/// adapter instance is stateless and may be shared.
class GrammarAdapter {
public:
  virtual ~GrammarAdapter() = default;

  virtual std::string language() const = 0;

  /// Parses bytes into a SourceUnit whose tree satisfies the range invariants.
  virtual SourceUnit parse(std::string bytes, std::string fileId) const = 0;

  /// defs/uses of one executable node. The default scans the node's text for
  /// identifiers: all count as uses; for call-like statements the callee
  /// counts as a use and bare-identifier arguments additionally count as defs
  /// when the language passes by reference.
  virtual DefUse defUses(const SourceUnit& unit, UnifiedId id) const;

  /// Statement text asserting cond (or its negation) in this language.
  virtual std::string assumeText(std::string_view cond, bool negate) const;

  /// The unreachability marker statement.
  virtual std::string unreachableText() const { return "assume(0)"; }

  /// No-op statement for blocks that slicing empties out (indentation-
  /// sensitive languages need one; brace languages return "").
  virtual std::string emptyBlockText() const { return ""; }

  /// True when the node consumes external input and must survive slicing.
  virtual bool isInputOp(const SourceUnit& unit, UnifiedId id) const;

  /// True when the node emits external output; such a node stays in the
  /// slice only when the emitted expression reads a tracked variable.
  virtual bool isOutputOp(const SourceUnit& unit, UnifiedId id) const;

  /// True when re-parsing this text introduces no error (Other) nodes.
  virtual bool reparsesCleanly(const std::string& text) const;

  /// Whether bare identifiers in call arguments may be written through
  /// (by-reference languages).
  virtual bool argumentsMayAlias() const { return false; }
};

/// Identifier scan over source text, skipping string literals and line
/// comments. Language keywords are filtered by the caller.
std::vector<std::string> scanIdentifiers(std::string_view text);

/// Process-wide registry keyed by language tag. Built-in adapters (mini,
/// python, c, java) register on first use; additional adapters may be added.
class AdapterRegistry {
public:
  static AdapterRegistry& instance();

  void add(std::shared_ptr<GrammarAdapter> adapter);
  /// Throws UnknownLanguage for unregistered tags.
  const GrammarAdapter& get(const std::string& tag) const;
  bool has(const std::string& tag) const;

  /// Maps a file extension ("py", "mini", ...) to a language tag, if known.
  std::optional<std::string> languageForExtension(const std::string& ext) const;

private:
  AdapterRegistry();
  std::map<std::string, std::shared_ptr<GrammarAdapter>> adapters_;
};

/// Parses with the registered adapter for the tag. Throws UnknownLanguage.
SourceUnit parseUnit(std::string bytes, const std::string& language,
                     std::string fileId = "<memory>");

}  // namespace slicevc

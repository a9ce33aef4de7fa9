#pragma once

#include <string>
#include <vector>

#include "slicevc/render/render.hpp"

namespace slicevc {

/// The Hoare-triple specification being checked: pre- and post-condition as
/// code, constraints, or natural language, plus optional explicit criterion
/// variables.
struct HoareSpec {
  std::string pre;   // empty means "true"
  std::string post;  // required
  std::vector<std::string> postVars;
};

/// A prompt mirroring the triple {P} S {Q}. Serialization is deterministic:
/// identical inputs produce byte-identical prompts.
struct Prompt {
  std::string preamble;
  std::string preSection;
  std::string sliceText;
  std::string postSection;
  std::string question;
  std::string language;
  std::string sliceFingerprint;  // identity of the rendered slice

  std::string serialize() const;
};

Prompt buildPrompt(const HoareSpec& spec, const RenderedSlice& slice);

}  // namespace slicevc

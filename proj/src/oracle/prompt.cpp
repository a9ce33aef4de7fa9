#include "slicevc/oracle/prompt.hpp"

namespace slicevc {

std::string Prompt::serialize() const {
  std::string out;
  out += preamble;
  out += "\n";
  out += preSection;
  out += "\n\n```";
  out += language;
  out += "\n";
  out += sliceText;
  if (out.back() != '\n') out += "\n";
  out += "```\n\n";
  out += postSection;
  out += "\n\n";
  out += question;
  out += "\n";
  return out;
}

Prompt buildPrompt(const HoareSpec& spec, const RenderedSlice& slice) {
  Prompt p;
  p.language = slice.language;
  p.sliceFingerprint = slice.fingerprint;
  p.preamble =
      "You are verifying a Hoare triple over the code below. "
      "An assume(b) statement (or `assume b`) restricts attention to executions "
      "where b holds at that point; executions violating an assumption are not "
      "considered. assume(0) marks a point as unreachable. "
      "Reason about every execution that satisfies the assumptions, then answer "
      "with a final line that is exactly \"VERDICT: PASS\" if the post-condition "
      "always holds, or exactly \"VERDICT: FAIL\" if it can be violated.";
  std::string pre = spec.pre.empty() ? "true" : spec.pre;
  p.preSection = "Pre-condition: assuming " + pre;
  p.sliceText = slice.text;
  p.postSection = "Post-condition: " + spec.post;
  p.question = "Given the pre-condition, does the post-condition " + spec.post +
               " always hold after executing the code?";
  return p;
}

}  // namespace slicevc

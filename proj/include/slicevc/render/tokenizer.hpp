#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace slicevc {

/// Token counting behind a named interface. The default is a deterministic
/// word/punctuation splitter approximating a byte-pair encoding; a reference
/// tokenizer can be plugged in as an external command for exact counts.
/// Reports always name the tokenizer that produced them.
class Tokenizer {
public:
  virtual ~Tokenizer() = default;
  virtual std::string name() const = 0;
  virtual int count(std::string_view text) const = 0;
};

/// Splits on word/punctuation boundaries: a run of identifier or digit
/// characters is one token, common two-character operators are one token,
/// any other non-space character is one token. Whitespace separates only.
class DefaultTokenizer : public Tokenizer {
public:
  std::string name() const override { return "default-wordpunct"; }
  int count(std::string_view text) const override;
};

/// Pipes the text through an external command that prints a token count
/// (for example a script wrapping a BPE tokenizer).
class CommandTokenizer : public Tokenizer {
public:
  explicit CommandTokenizer(std::string command) : command_(std::move(command)) {}
  std::string name() const override { return "ref:" + command_; }
  int count(std::string_view text) const override;

private:
  std::string command_;
};

const Tokenizer& defaultTokenizer();

/// The reference tokenizer named by SLICEVC_REF_TOKENIZER, when set.
std::unique_ptr<Tokenizer> referenceTokenizerFromEnv();

}  // namespace slicevc

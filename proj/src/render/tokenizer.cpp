#include "slicevc/render/tokenizer.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace slicevc {

int DefaultTokenizer::count(std::string_view text) const {
  static const std::array<const char*, 14> kDigraphs = {
      "==", "!=", "<=", ">=", ":=", "&&", "||", "->", "**", "//", "+=", "-=", "*=", "/="};
  int n = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalnum(c) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      ++n;
      continue;
    }
    bool digraph = false;
    if (i + 1 < text.size()) {
      for (const char* d : kDigraphs) {
        if (text[i] == d[0] && text[i + 1] == d[1]) {
          digraph = true;
          break;
        }
      }
    }
    i += digraph ? 2 : 1;
    ++n;
  }
  return n;
}

int CommandTokenizer::count(std::string_view text) const {
  std::string path = "/tmp/slicevc_tok_" + std::to_string(::getpid()) + ".txt";
  {
    std::ofstream out(path, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  std::string cmd = command_ + " < " + path;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("reference tokenizer failed to start: " + command_);
  char buf[64] = {0};
  std::string output;
  while (std::fgets(buf, sizeof buf, pipe)) output += buf;
  int rc = ::pclose(pipe);
  std::remove(path.c_str());
  if (rc != 0)
    throw std::runtime_error("reference tokenizer exited with status " + std::to_string(rc));
  try {
    return std::stoi(output);
  } catch (const std::exception&) {
    throw std::runtime_error("reference tokenizer produced no count: " + output);
  }
}

const Tokenizer& defaultTokenizer() {
  static DefaultTokenizer tok;
  return tok;
}

std::unique_ptr<Tokenizer> referenceTokenizerFromEnv() {
  const char* cmd = std::getenv("SLICEVC_REF_TOKENIZER");
  if (!cmd || !*cmd) return nullptr;
  return std::make_unique<CommandTokenizer>(cmd);
}

}  // namespace slicevc

#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "slicevc/oracle/prompt.hpp"

namespace slicevc {

enum class Outcome { Pass, Fail, Error };
const char* outcomeName(Outcome o);

enum class OracleErrorKind { None, Transport, Timeout, Unparseable, Misconfigured };
const char* errorKindName(OracleErrorKind k);

struct Verdict {
  Outcome outcome = Outcome::Error;
  OracleErrorKind errorKind = OracleErrorKind::None;
  std::string rawResponse;
  double latencyMs = 0;
  std::string sliceFingerprint;
};

struct OracleConfig {
  std::string endpoint;            // http://host:port/path (chat-completions style)
  std::string model;
  std::string credentialEnvVar;    // name of the env var holding the API key
  double temperature = 0.0;
  int maxRetries = 2;
  int parallelism = 1;
  int timeoutSec = 60;
  int bestOfK = 1;                 // odd majority vote when > 1
};

/// Answers PASS/FAIL for a prompt. Implementations must be safe to call
/// concurrently up to the configured parallelism cap.
class Oracle {
public:
  virtual ~Oracle() = default;
  virtual Verdict query(const Prompt& prompt) = 0;
};

/// Strict verdict-marker parse: the last line of the response starting with
/// "VERDICT:" decides, and only an exact PASS/FAIL token counts. Mentions of
/// the tokens anywhere else are ignored.
std::optional<Outcome> parseVerdictMarker(const std::string& response);

/// Chat-completions HTTP client with retries on transport failures and
/// missing verdict markers. Credentials come only from the environment
/// variable named in the config.
class HttpOracle : public Oracle {
public:
  explicit HttpOracle(OracleConfig config);
  Verdict query(const Prompt& prompt) override;

private:
  Verdict queryOnce(const Prompt& prompt);
  OracleConfig config_;
};

/// Deterministic test double scripted by slice fingerprint. An unknown
/// fingerprint is a scripting error and raises, never answers a default.
class MockOracle : public Oracle {
public:
  explicit MockOracle(std::map<std::string, Outcome> script)
      : script_(std::move(script)) {}

  Verdict query(const Prompt& prompt) override;

  /// Fingerprints in the order queries arrived.
  std::vector<std::string> callLog() const;
  int maxInFlight() const { return maxInFlight_.load(); }

  /// Loads a JSON object mapping fingerprint -> "PASS" | "FAIL" | "ERROR".
  static std::map<std::string, Outcome> scriptFromFile(const std::string& path);

private:
  std::map<std::string, Outcome> script_;
  mutable std::mutex mu_;
  std::vector<std::string> log_;
  std::atomic<int> inFlight_{0};
  std::atomic<int> maxInFlight_{0};
};

}  // namespace slicevc

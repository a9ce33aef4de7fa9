#include "slicevc/oracle/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace slicevc {

using nlohmann::json;

const char* outcomeName(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Error: return "ERROR";
  }
  return "?";
}

const char* errorKindName(OracleErrorKind k) {
  switch (k) {
    case OracleErrorKind::None: return "none";
    case OracleErrorKind::Transport: return "transport";
    case OracleErrorKind::Timeout: return "timeout";
    case OracleErrorKind::Unparseable: return "unparseable";
    case OracleErrorKind::Misconfigured: return "misconfigured";
  }
  return "?";
}

std::optional<Outcome> parseVerdictMarker(const std::string& response) {
  // Scan lines; the last VERDICT: line wins. Only exact tokens count.
  std::optional<Outcome> out;
  std::size_t pos = 0;
  while (pos <= response.size()) {
    std::size_t eol = response.find('\n', pos);
    std::string line = response.substr(pos, eol == std::string::npos ? std::string::npos
                                                                     : eol - pos);
    // Trim both ends.
    std::size_t b = line.find_first_not_of(" \t\r");
    std::size_t e = line.find_last_not_of(" \t\r");
    if (b != std::string::npos) {
      std::string t = line.substr(b, e - b + 1);
      if (t == "VERDICT: PASS") out = Outcome::Pass;
      else if (t == "VERDICT: FAIL") out = Outcome::Fail;
      else if (t.rfind("VERDICT:", 0) == 0) out = std::nullopt;
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return out;
}

HttpOracle::HttpOracle(OracleConfig config) : config_(std::move(config)) {}

namespace {

struct ParsedUrl {
  std::string hostPort;  // scheme://host:port
  std::string path;
};

ParsedUrl splitUrl(const std::string& url) {
  std::size_t scheme = url.find("://");
  std::size_t pathStart = scheme == std::string::npos
                              ? url.find('/')
                              : url.find('/', scheme + 3);
  if (pathStart == std::string::npos) return {url, "/v1/chat/completions"};
  return {url.substr(0, pathStart), url.substr(pathStart)};
}

}  // namespace

Verdict HttpOracle::queryOnce(const Prompt& prompt) {
  Verdict v;
  v.sliceFingerprint = prompt.sliceFingerprint;
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  };
  if (config_.endpoint.empty()) {
    v.errorKind = OracleErrorKind::Misconfigured;
    v.rawResponse = "no endpoint configured";
    return v;
  }
  ParsedUrl url = splitUrl(config_.endpoint);
  httplib::Client client(url.hostPort);
  client.set_connection_timeout(config_.timeoutSec, 0);
  client.set_read_timeout(config_.timeoutSec, 0);
  if (!config_.credentialEnvVar.empty()) {
    if (const char* key = std::getenv(config_.credentialEnvVar.c_str())) {
      client.set_default_headers({{"Authorization", std::string("Bearer ") + key}});
    }
  }
  json body = {
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"messages", json::array({json{{"role", "user"}, {"content", prompt.serialize()}}})},
  };
  httplib::Result res = client.Post(url.path, body.dump(), "application/json");
  v.latencyMs = elapsed();
  if (!res) {
    v.errorKind = res.error() == httplib::Error::ConnectionTimeout ||
                          res.error() == httplib::Error::Read
                      ? OracleErrorKind::Timeout
                      : OracleErrorKind::Transport;
    v.rawResponse = httplib::to_string(res.error());
    return v;
  }
  if (res->status != 200) {
    v.errorKind = OracleErrorKind::Transport;
    v.rawResponse = "HTTP " + std::to_string(res->status) + ": " + res->body;
    return v;
  }
  std::string content;
  try {
    json reply = json::parse(res->body);
    if (reply.contains("choices") && !reply["choices"].empty()) {
      const json& choice = reply["choices"][0];
      if (choice.contains("message"))
        content = choice["message"].value("content", "");
      else
        content = choice.value("text", "");
    }
  } catch (const json::exception&) {
    v.errorKind = OracleErrorKind::Unparseable;
    v.rawResponse = res->body;
    return v;
  }
  v.rawResponse = content;
  if (auto outcome = parseVerdictMarker(content)) {
    v.outcome = *outcome;
    v.errorKind = OracleErrorKind::None;
  } else {
    v.errorKind = OracleErrorKind::Unparseable;
  }
  return v;
}

Verdict HttpOracle::query(const Prompt& prompt) {
  int attempts = std::max(1, config_.maxRetries + 1);
  int samples = std::max(1, config_.bestOfK);
  auto sampleOnce = [&]() {
    Verdict last;
    for (int i = 0; i < attempts; ++i) {
      last = queryOnce(prompt);
      if (last.errorKind == OracleErrorKind::None ||
          last.errorKind == OracleErrorKind::Misconfigured)
        return last;
    }
    last.outcome = Outcome::Error;
    return last;
  };
  if (samples == 1) return sampleOnce();
  // Opt-in majority vote; ties and errors degrade to ERROR.
  int pass = 0, fail = 0;
  Verdict last;
  for (int i = 0; i < samples; ++i) {
    last = sampleOnce();
    if (last.errorKind != OracleErrorKind::None) return last;
    (last.outcome == Outcome::Pass ? pass : fail) += 1;
  }
  if (pass == fail) {
    last.outcome = Outcome::Error;
    last.errorKind = OracleErrorKind::Unparseable;
    last.rawResponse = "best-of-" + std::to_string(samples) + " tie";
  } else {
    last.outcome = pass > fail ? Outcome::Pass : Outcome::Fail;
  }
  return last;
}

Verdict MockOracle::query(const Prompt& prompt) {
  int current = ++inFlight_;
  int seen = maxInFlight_.load();
  while (current > seen && !maxInFlight_.compare_exchange_weak(seen, current)) {
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    log_.push_back(prompt.sliceFingerprint);
  }
  auto it = script_.find(prompt.sliceFingerprint);
  --inFlight_;
  if (it == script_.end()) {
    throw std::runtime_error("mock oracle: unscripted slice fingerprint " +
                             prompt.sliceFingerprint);
  }
  Verdict v;
  v.outcome = it->second;
  v.errorKind = it->second == Outcome::Error ? OracleErrorKind::Transport
                                             : OracleErrorKind::None;
  v.rawResponse = std::string("scripted ") + outcomeName(it->second) + "\nVERDICT: " +
                  (it->second == Outcome::Pass ? "PASS" : "FAIL");
  v.sliceFingerprint = prompt.sliceFingerprint;
  return v;
}

std::vector<std::string> MockOracle::callLog() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

std::map<std::string, Outcome> MockOracle::scriptFromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mock oracle script: " + path);
  json j = json::parse(in);
  std::map<std::string, Outcome> script;
  for (auto& [fp, value] : j.items()) {
    std::string s = value.get<std::string>();
    Outcome o = s == "PASS"   ? Outcome::Pass
                : s == "FAIL" ? Outcome::Fail
                              : Outcome::Error;
    script[fp] = o;
  }
  return script;
}

}  // namespace slicevc

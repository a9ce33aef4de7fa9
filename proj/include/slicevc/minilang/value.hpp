#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace slicevc::mini {

/// Sign-magnitude arbitrary-precision integer. Limbs are base 10^9, least
/// significant first, always normalized (no leading zero limbs, zero is
/// non-negative). Only the operations the mini-language needs are provided:
/// +, -, *, unary minus and comparisons.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);

  /// Parses an optionally signed decimal string. Throws std::invalid_argument
  /// on anything that is not a pure decimal literal.
  static BigInt fromDecimal(const std::string& text);

  bool isZero() const { return limbs_.empty(); }
  bool isNegative() const { return neg_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& rhs) const;
  BigInt operator-(const BigInt& rhs) const;
  BigInt operator*(const BigInt& rhs) const;

  std::strong_ordering operator<=>(const BigInt& rhs) const;
  bool operator==(const BigInt& rhs) const = default;

  std::string toString() const;

  /// Narrows to int64 for tests and small-domain checks; throws
  /// std::overflow_error when the value does not fit.
  long long toInt64() const;

private:
  static constexpr std::uint32_t kBase = 1000000000u;

  static int compareMagnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> addMagnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> subMagnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b);
  void normalize();

  bool neg_ = false;
  std::vector<std::uint32_t> limbs_;
};

using IntSeq = std::vector<BigInt>;

/// Runtime value of the mini-language: an integer or an integer sequence
/// (the concrete model for the multiset operations).
class Value {
public:
  Value() : v_(BigInt()) {}
  Value(BigInt i) : v_(std::move(i)) {}
  Value(IntSeq s) : v_(std::move(s)) {}

  bool isInt() const { return std::holds_alternative<BigInt>(v_); }
  bool isSeq() const { return std::holds_alternative<IntSeq>(v_); }
  const BigInt& asInt() const& { return std::get<BigInt>(v_); }
  BigInt asInt() && { return std::get<BigInt>(std::move(v_)); }
  const IntSeq& asSeq() const { return std::get<IntSeq>(v_); }
  IntSeq& asSeq() { return std::get<IntSeq>(v_); }

  bool operator==(const Value& rhs) const = default;
  std::string toString() const;

private:
  std::variant<BigInt, IntSeq> v_;
};

}  // namespace slicevc::mini

#include "slicevc/minilang/value.hpp"

#include <cstdlib>
#include <stdexcept>

namespace slicevc::mini {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  neg_ = v < 0;
  // Avoid overflow on LLONG_MIN by working in unsigned space.
  unsigned long long mag = neg_ ? 0ull - static_cast<unsigned long long>(v)
                                : static_cast<unsigned long long>(v);
  while (mag != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
    mag /= kBase;
  }
}

BigInt BigInt::fromDecimal(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i >= text.size()) throw std::invalid_argument("empty integer literal");
  BigInt out;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9')
      throw std::invalid_argument("bad integer literal: " + text);
  }
  // Consume 9-digit groups from the right.
  std::size_t pos = text.size();
  while (pos > i) {
    std::size_t take = std::min<std::size_t>(9, pos - i);
    out.limbs_.push_back(
        static_cast<std::uint32_t>(std::stoul(text.substr(pos - take, take))));
    pos -= take;
  }
  out.neg_ = neg;
  out.normalize();
  return out;
}

void BigInt::normalize() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) neg_ = false;
}

int BigInt::compareMagnitude(const std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::addMagnitude(const std::vector<std::uint32_t>& a,
                                                const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
    std::uint64_t cur = carry;
    if (i < a.size()) cur += a[i];
    if (i < b.size()) cur += b[i];
    out.push_back(static_cast<std::uint32_t>(cur % kBase));
    carry = static_cast<std::uint32_t>(cur / kBase);
  }
  return out;
}

std::vector<std::uint32_t> BigInt::subMagnitude(const std::vector<std::uint32_t>& a,
                                                const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                       (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (cur < 0) {
      cur += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(cur));
  }
  return out;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  if (!out.isZero()) out.neg_ = !out.neg_;
  return out;
}

BigInt BigInt::operator+(const BigInt& rhs) const {
  BigInt out;
  if (neg_ == rhs.neg_) {
    out.neg_ = neg_;
    out.limbs_ = addMagnitude(limbs_, rhs.limbs_);
  } else {
    int cmp = compareMagnitude(limbs_, rhs.limbs_);
    if (cmp == 0) return BigInt();
    if (cmp > 0) {
      out.neg_ = neg_;
      out.limbs_ = subMagnitude(limbs_, rhs.limbs_);
    } else {
      out.neg_ = rhs.neg_;
      out.limbs_ = subMagnitude(rhs.limbs_, limbs_);
    }
  }
  out.normalize();
  return out;
}

BigInt BigInt::operator-(const BigInt& rhs) const { return *this + (-rhs); }

BigInt BigInt::operator*(const BigInt& rhs) const {
  if (isZero() || rhs.isZero()) return BigInt();
  BigInt out;
  out.neg_ = neg_ != rhs.neg_;
  out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < rhs.limbs_.size() || carry; ++j) {
      std::uint64_t cur = out.limbs_[i + j] + carry;
      if (j < rhs.limbs_.size())
        cur += static_cast<std::uint64_t>(limbs_[i]) * rhs.limbs_[j];
      out.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
  }
  out.normalize();
  return out;
}

std::strong_ordering BigInt::operator<=>(const BigInt& rhs) const {
  if (neg_ != rhs.neg_)
    return neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
  int cmp = compareMagnitude(limbs_, rhs.limbs_);
  if (neg_) cmp = -cmp;
  if (cmp < 0) return std::strong_ordering::less;
  if (cmp > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string BigInt::toString() const {
  if (limbs_.empty()) return "0";
  std::string out = neg_ ? "-" : "";
  out += std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

long long BigInt::toInt64() const {
  long long out = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (out > (static_cast<long long>(1) << 61) / static_cast<long long>(kBase) * 4)
      throw std::overflow_error("BigInt does not fit in int64: " + toString());
    out = out * static_cast<long long>(kBase) + limbs_[i];
  }
  return neg_ ? -out : out;
}

std::string Value::toString() const {
  if (isInt()) return asInt().toString();
  std::string out = "[";
  const IntSeq& s = asSeq();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i].toString();
  }
  return out + "]";
}

}  // namespace slicevc::mini

#pragma once

#include <cstdint>
#include <string>

namespace koszul {

using Coeff = std::uint32_t;

bool is_prime(std::uint32_t n);

/// Arithmetic in F_p. Residues are kept in [0, p).
class PrimeField {
 public:
  PrimeField() = default;
  explicit PrimeField(std::uint32_t p);  // throws invalid_params unless p is prime

  std::uint32_t p() const noexcept { return p_; }

  Coeff add(Coeff a, Coeff b) const noexcept {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Coeff inv(Coeff a) const;  // throws invalid_params on zero
  Coeff from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }
  /// Symmetric lift used only for display: values above p/2 become negative.
  long long lift(Coeff a) const noexcept {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_ = 2;
};

/// A residue together with its modulus.
class Scalar {
 public:
  Scalar(long long value, std::uint32_t p);

  Coeff value() const noexcept { return value_; }
  std::uint32_t p() const noexcept { return p_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar inverse() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  Coeff value_;
  std::uint32_t p_;
};

}  // namespace koszul

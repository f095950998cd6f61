#include "koszul/field.hpp"

#include "koszul/error.hpp"

namespace koszul {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::invalid_params, "modulus " + std::to_string(p) + " is not prime");
  }
}

Coeff PrimeField::inv(Coeff a) const {
  if (a % p_ == 0) throw Error(ErrorCode::invalid_params, "inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p_;
  std::uint32_t e = p_ - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Coeff>(result);
}

Scalar::Scalar(long long value, std::uint32_t p) : value_(PrimeField(p).from_int(value)), p_(p) {}

namespace {
PrimeField common_field(const Scalar& a, const Scalar& b) {
  if (a.p() != b.p()) throw Error(ErrorCode::invalid_params, "scalars over different fields");
  return PrimeField(a.p());
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(common_field(*this, o).add(value_, o.value_), p_);
}
Scalar Scalar::operator-(const Scalar& o) const {
  return Scalar(common_field(*this, o).sub(value_, o.value_), p_);
}
Scalar Scalar::operator*(const Scalar& o) const {
  return Scalar(common_field(*this, o).mul(value_, o.value_), p_);
}
Scalar Scalar::inverse() const { return Scalar(PrimeField(p_).inv(value_), p_); }

}  // namespace koszul

#pragma once

// Fixed-width arithmetic in Z/2^B: residues carry their own width, and
// mixing widths is an error rather than a silent coercion.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace odfact {

/// Raised when an operation's precondition on widths or ranges is broken.
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an exact shift or division would discard nonzero bits.
class exactness_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tally of modular multiplications (squarings included).
struct MulCount {
  std::uint64_t multiplications = 0;
  /// Set when an accelerated routine had to take its direct fallback.
  bool fallback = false;

  MulCount& operator+=(const MulCount& o) {
    multiplications += o.multiplications;
    fallback = fallback || o.fallback;
    return *this;
  }
};

class Residue2 {
 public:
  static constexpr unsigned kLimbBits = 64;
  static constexpr unsigned kMaxLimbs = 8;
  static constexpr unsigned kMaxWidth = kLimbBits * kMaxLimbs;

  using limb = std::uint64_t;

  /// Zero-width residue (the zero ring); only produced by exact shifts.
  Residue2() = default;
  Residue2(unsigned width, std::uint64_t value);

  static Residue2 zero(unsigned width) { return Residue2(width, 0); }
  static Residue2 one(unsigned width) { return Residue2(width, 1); }
  /// 2^k mod 2^width.
  static Residue2 power_of_two(unsigned width, unsigned k);
  /// Canonical representative of a signed integer.
  static Residue2 from_signed(unsigned width, std::int64_t value);
  /// Little-endian limbs, reduced mod 2^width.
  static Residue2 from_limbs(unsigned width, std::span<const limb> limbs);

  unsigned width() const { return width_; }
  unsigned limb_count() const { return limbs_for(width_); }
  limb limb_at(unsigned i) const { return i < kMaxLimbs ? limbs_[i] : 0; }

  bool bit(unsigned k) const;
  bool is_odd() const { return width_ > 0 && (limbs_[0] & 1u) != 0; }
  bool is_zero() const;
  /// Low 64 bits of the value.
  std::uint64_t low64() const { return limbs_[0]; }
  /// Value as uint64; contract_violation if it does not fit.
  std::uint64_t to_u64() const;
  std::string to_decimal() const;

  /// Same value at a larger width (high bits zero).
  Residue2 widen(unsigned new_width) const;
  /// Reduction mod 2^new_width.
  Residue2 truncate(unsigned new_width) const;

  friend bool operator==(const Residue2&, const Residue2&) = default;

 private:
  static constexpr unsigned limbs_for(unsigned width) {
    return (width + kLimbBits - 1) / kLimbBits;
  }
  void canonicalize();

  unsigned width_ = 0;
  std::array<limb, kMaxLimbs> limbs_{};

  friend Residue2 add(const Residue2&, const Residue2&);
  friend Residue2 sub(const Residue2&, const Residue2&);
  friend Residue2 neg(const Residue2&);
  friend Residue2 mul(const Residue2&, const Residue2&, MulCount*);
  friend Residue2 shl(const Residue2&, unsigned);
  friend Residue2 shr_exact(const Residue2&, unsigned);
};

Residue2 add(const Residue2& a, const Residue2& b);
Residue2 sub(const Residue2& a, const Residue2& b);
Residue2 neg(const Residue2& a);
/// a*b mod 2^width. Bumps `tally` by one when given.
Residue2 mul(const Residue2& a, const Residue2& b, MulCount* tally = nullptr);
/// Left-to-right square-and-multiply: a^(2^s) costs exactly s squarings.
Residue2 pow(const Residue2& a, std::uint64_t k, MulCount* tally = nullptr);
/// a^(2^s) by s squarings.
Residue2 pow2k(const Residue2& a, unsigned s, MulCount* tally = nullptr);
/// a * 2^s mod 2^width.
Residue2 shl(const Residue2& a, unsigned s);

/// Inverse of an odd residue by Newton lifting x <- x(2 - a x), starting
/// from the 1-bit inverse. Throws std::domain_error on even input.
Residue2 inv_odd(const Residue2& a);

/// a / 2^s at width a.width() - s. Throws exactness_error unless the low s
/// bits of a are zero.
Residue2 shr_exact(const Residue2& a, unsigned s);

/// 2-adic valuation of n >= 1.
unsigned nu(std::uint64_t n);
/// n / 2^nu(n).
std::uint64_t od(std::uint64_t n);

/// Backward binary expansion: character k is bit k.
std::string bbe_encode(const Residue2& a, unsigned n);
/// Inverse of bbe_encode; the width is the string length.
Residue2 bbe_decode(std::string_view bits);
/// Ordinary binary of the low n bits, most significant bit first.
std::string binary_encode(const Residue2& a, unsigned n);

struct BitWindow {
  unsigned lo = 0;
  unsigned d = 0;
  Residue2 value;  // width d
};

/// Bits lo .. lo+d-1 of a, as a d-bit residue.
BitWindow window(const Residue2& a, unsigned lo, unsigned d);

}  // namespace odfact

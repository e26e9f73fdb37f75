#include "odfact/bitring.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace odfact {

namespace {

using u128 = unsigned __int128;
using limb = Residue2::limb;

void require_width(unsigned width) {
  if (width > Residue2::kMaxWidth) {
    throw contract_violation("width " + std::to_string(width) + " exceeds maximum " +
                             std::to_string(Residue2::kMaxWidth));
  }
}

void require_same_width(const Residue2& a, const Residue2& b, const char* op) {
  if (a.width() != b.width()) {
    throw contract_violation(std::string(op) + ": width mismatch (" + std::to_string(a.width()) +
                             " vs " + std::to_string(b.width()) + ")");
  }
}

}  // namespace

Residue2::Residue2(unsigned width, std::uint64_t value) : width_(width) {
  require_width(width);
  limbs_[0] = value;
  canonicalize();
}

Residue2 Residue2::power_of_two(unsigned width, unsigned k) {
  Residue2 r(width, 0);
  if (k < width) r.limbs_[k / kLimbBits] = limb{1} << (k % kLimbBits);
  return r;
}

Residue2 Residue2::from_signed(unsigned width, std::int64_t value) {
  if (value >= 0) return Residue2(width, static_cast<std::uint64_t>(value));
  // -(|v|) computed without overflow for INT64_MIN
  const auto magnitude = static_cast<std::uint64_t>(-(value + 1)) + 1;
  return neg(Residue2(width, magnitude));
}

Residue2 Residue2::from_limbs(unsigned width, std::span<const limb> limbs) {
  Residue2 r(width, 0);
  const auto n = std::min<std::size_t>(limbs.size(), r.limb_count());
  std::copy_n(limbs.begin(), n, r.limbs_.begin());
  r.canonicalize();
  return r;
}

void Residue2::canonicalize() {
  const unsigned n = limb_count();
  for (unsigned i = n; i < kMaxLimbs; ++i) limbs_[i] = 0;
  const unsigned top_bits = width_ % kLimbBits;
  if (n > 0 && top_bits != 0) limbs_[n - 1] &= (limb{1} << top_bits) - 1;
}

bool Residue2::bit(unsigned k) const {
  if (k >= width_) return false;
  return ((limbs_[k / kLimbBits] >> (k % kLimbBits)) & 1u) != 0;
}

bool Residue2::is_zero() const {
  return std::all_of(limbs_.begin(), limbs_.end(), [](limb x) { return x == 0; });
}

std::uint64_t Residue2::to_u64() const {
  for (unsigned i = 1; i < kMaxLimbs; ++i) {
    if (limbs_[i] != 0) throw contract_violation("to_u64: value does not fit in 64 bits");
  }
  return limbs_[0];
}

std::string Residue2::to_decimal() const {
  if (is_zero()) return "0";
  auto digits = limbs_;
  unsigned n = limb_count();
  std::string out;
  while (n > 0) {
    // divide by 10^19 in place
    constexpr limb kChunk = 10'000'000'000'000'000'000ull;
    u128 rem = 0;
    for (unsigned i = n; i-- > 0;) {
      const u128 cur = (rem << 64) | digits[i];
      digits[i] = static_cast<limb>(cur / kChunk);
      rem = cur % kChunk;
    }
    while (n > 0 && digits[n - 1] == 0) --n;
    std::string part = std::to_string(static_cast<limb>(rem));
    if (n > 0) part.insert(0, 19 - part.size(), '0');
    out.insert(0, part);
  }
  return out;
}

Residue2 Residue2::widen(unsigned new_width) const {
  if (new_width < width_) {
    throw contract_violation("widen: new width " + std::to_string(new_width) +
                             " is smaller than " + std::to_string(width_));
  }
  require_width(new_width);
  Residue2 r = *this;
  r.width_ = new_width;
  return r;
}

Residue2 Residue2::truncate(unsigned new_width) const {
  if (new_width > width_) {
    throw contract_violation("truncate: new width " + std::to_string(new_width) +
                             " is larger than " + std::to_string(width_));
  }
  Residue2 r = *this;
  r.width_ = new_width;
  r.canonicalize();
  return r;
}

Residue2 add(const Residue2& a, const Residue2& b) {
  require_same_width(a, b, "add");
  Residue2 r = a;
  const unsigned n = a.limb_count();
  limb carry = 0;
  for (unsigned i = 0; i < n; ++i) {
    const u128 s = u128{a.limbs_[i]} + b.limbs_[i] + carry;
    r.limbs_[i] = static_cast<limb>(s);
    carry = static_cast<limb>(s >> 64);
  }
  r.canonicalize();
  return r;
}

Residue2 neg(const Residue2& a) {
  Residue2 r = a;
  const unsigned n = a.limb_count();
  limb carry = 1;
  for (unsigned i = 0; i < n; ++i) {
    const u128 s = u128{~a.limbs_[i]} + carry;
    r.limbs_[i] = static_cast<limb>(s);
    carry = static_cast<limb>(s >> 64);
  }
  r.canonicalize();
  return r;
}

Residue2 sub(const Residue2& a, const Residue2& b) {
  require_same_width(a, b, "sub");
  return add(a, neg(b));
}

Residue2 mul(const Residue2& a, const Residue2& b, MulCount* tally) {
  require_same_width(a, b, "mul");
  if (tally) ++tally->multiplications;
  Residue2 r(a.width_, 0);
  const unsigned n = a.limb_count();
  if (n == 1) {
    r.limbs_[0] = a.limbs_[0] * b.limbs_[0];
    r.canonicalize();
    return r;
  }
  // schoolbook, keeping only the low n limbs
  for (unsigned i = 0; i < n; ++i) {
    if (a.limbs_[i] == 0) continue;
    limb carry = 0;
    for (unsigned j = 0; i + j < n; ++j) {
      const u128 t = u128{a.limbs_[i]} * b.limbs_[j] + r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<limb>(t);
      carry = static_cast<limb>(t >> 64);
    }
  }
  r.canonicalize();
  return r;
}

Residue2 pow(const Residue2& a, std::uint64_t k, MulCount* tally) {
  if (k == 0) return Residue2::one(a.width());
  Residue2 r = a;
  for (int i = std::bit_width(k) - 2; i >= 0; --i) {
    r = mul(r, r, tally);
    if ((k >> i) & 1u) r = mul(r, a, tally);
  }
  return r;
}

Residue2 pow2k(const Residue2& a, unsigned s, MulCount* tally) {
  Residue2 r = a;
  for (unsigned i = 0; i < s; ++i) r = mul(r, r, tally);
  return r;
}

Residue2 shl(const Residue2& a, unsigned s) {
  Residue2 r(a.width_, 0);
  if (s >= a.width_) return r;
  const unsigned n = a.limb_count();
  const unsigned limb_shift = s / Residue2::kLimbBits;
  const unsigned bit_shift = s % Residue2::kLimbBits;
  for (unsigned i = n; i-- > limb_shift;) {
    limb v = a.limbs_[i - limb_shift] << bit_shift;
    if (bit_shift != 0 && i - limb_shift > 0) {
      v |= a.limbs_[i - limb_shift - 1] >> (Residue2::kLimbBits - bit_shift);
    }
    r.limbs_[i] = v;
  }
  r.canonicalize();
  return r;
}

Residue2 inv_odd(const Residue2& a) {
  if (!a.is_odd()) throw std::domain_error("inv_odd: argument is even");
  const unsigned width = a.width();
  const Residue2 two(width, 2);
  Residue2 x = Residue2::one(width);
  for (unsigned correct = 1; correct < width; correct *= 2) {
    x = mul(x, sub(two, mul(a, x)));
  }
  return x;
}

Residue2 shr_exact(const Residue2& a, unsigned s) {
  if (s > a.width()) {
    throw contract_violation("shr_exact: shift " + std::to_string(s) + " exceeds width " +
                             std::to_string(a.width()));
  }
  for (unsigned k = 0; k < s; ++k) {
    if (a.bit(k)) {
      throw exactness_error("shr_exact: bit " + std::to_string(k) + " is set, shift by " +
                            std::to_string(s) + " is not exact");
    }
  }
  Residue2 r(a.width() - s, 0);
  const unsigned limb_shift = s / Residue2::kLimbBits;
  const unsigned bit_shift = s % Residue2::kLimbBits;
  for (unsigned i = 0; i + limb_shift < Residue2::kMaxLimbs; ++i) {
    limb v = a.limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < Residue2::kMaxLimbs) {
      v |= a.limbs_[i + limb_shift + 1] << (Residue2::kLimbBits - bit_shift);
    }
    r.limbs_[i] = v;
  }
  r.canonicalize();
  return r;
}

unsigned nu(std::uint64_t n) {
  if (n == 0) throw std::domain_error("nu: valuation of 0 is infinite");
  return static_cast<unsigned>(std::countr_zero(n));
}

std::uint64_t od(std::uint64_t n) { return n >> nu(n); }

std::string bbe_encode(const Residue2& a, unsigned n) {
  if (n > a.width()) {
    throw contract_violation("bbe_encode: " + std::to_string(n) + " bits requested from width " +
                             std::to_string(a.width()));
  }
  std::string s(n, '0');
  for (unsigned k = 0; k < n; ++k) {
    if (a.bit(k)) s[k] = '1';
  }
  return s;
}

Residue2 bbe_decode(std::string_view bits) {
  if (bits.size() > Residue2::kMaxWidth) throw parse_error("bbe_decode: string too long");
  std::array<Residue2::limb, Residue2::kMaxLimbs> limbs{};
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const char c = bits[k];
    if (c == '1') {
      limbs[k / Residue2::kLimbBits] |= Residue2::limb{1} << (k % Residue2::kLimbBits);
    } else if (c != '0') {
      throw parse_error("bbe_decode: invalid character '" + std::string(1, c) + "' at position " +
                        std::to_string(k));
    }
  }
  return Residue2::from_limbs(static_cast<unsigned>(bits.size()), limbs);
}

std::string binary_encode(const Residue2& a, unsigned n) {
  std::string s = bbe_encode(a, n);
  std::reverse(s.begin(), s.end());
  return s;
}

BitWindow window(const Residue2& a, unsigned lo, unsigned d) {
  if (lo + d > a.width()) {
    throw contract_violation("window: bits [" + std::to_string(lo) + ", " + std::to_string(lo + d) +
                             ") exceed width " + std::to_string(a.width()));
  }
  std::array<Residue2::limb, Residue2::kMaxLimbs> limbs{};
  for (unsigned k = 0; k < d; ++k) {
    if (a.bit(lo + k)) limbs[k / Residue2::kLimbBits] |= Residue2::limb{1} << (k % Residue2::kLimbBits);
  }
  return BitWindow{lo, d, Residue2::from_limbs(d, limbs)};
}

}  // namespace odfact

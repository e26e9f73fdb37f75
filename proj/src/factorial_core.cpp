#include "odfact/factorial_core.hpp"

#include <algorithm>
#include <string>

namespace odfact {

namespace {

constexpr unsigned kMaxLevel = 64;
constexpr unsigned kDirectDoubleFactorialMax = 20;

void require_level(unsigned m, const char* op) {
  if (m > kMaxLevel) {
    throw contract_violation(std::string(op) + ": level " + std::to_string(m) +
                             " exceeds supported maximum " + std::to_string(kMaxLevel));
  }
}

using Poly = std::vector<Residue2>;

// p(x + 2^k), coefficients in place
void taylor_shift_pow2(Poly& p, unsigned k) {
  const std::size_t n = p.size();
  if (n < 2) return;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) {
      p[j] = add(p[j], shl(p[j + 1], k));
    }
  }
}

Poly mul_truncated(const Poly& a, const Poly& b, std::size_t max_terms) {
  const unsigned width = a.front().width();
  Poly out(std::min(max_terms, a.size() + b.size() - 1), Residue2::zero(width));
  for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j) {
      out[i + j] = add(out[i + j], mul(a[i], b[j]));
    }
  }
  return out;
}

}  // namespace

Residue2 odprod(std::uint64_t lo, std::uint64_t hi, unsigned width, MulCount* tally) {
  if (lo == 0) throw contract_violation("odprod: lower bound must be >= 1");
  std::uint64_t j = lo | 1u;
  if (j > hi) return Residue2::one(width);
  Residue2 acc(width, j);
  while (hi - j >= 2) {
    j += 2;
    acc = mul(acc, Residue2(width, j), tally);
  }
  return acc;
}

Residue2 double_factorial_direct(unsigned e, unsigned width) {
  require_level(e, "double_factorial_direct");
  if (e == 0) return Residue2::one(width);
  return odprod(1, (std::uint64_t{1} << e) - 1, width);
}

Residue2 double_factorial_doubling(unsigned e, unsigned width) {
  if (e == 0 || width == 0) return Residue2::one(width);
  // F_1(x) = x + 1
  Poly f{Residue2::one(width), Residue2::one(width)};
  for (unsigned k = 1; k < e; ++k) {
    Poly shifted = f;
    taylor_shift_pow2(shifted, k);
    f = mul_truncated(f, shifted, width);
  }
  return f.front();
}

Residue2 double_factorial(unsigned e, unsigned width) {
  if (e <= kDirectDoubleFactorialMax) return double_factorial_direct(e, width);
  return double_factorial_doubling(e, width);
}

Residue2 h(unsigned m, unsigned width, MulCount* tally) {
  if (m < 2) throw contract_violation("h: level must be >= 2");
  require_level(m, "h");
  const std::uint64_t base = std::uint64_t{1} << (m - 1);
  return odprod(base + 1, base + (base - 1), width, tally);
}

bool fast_path_applies(unsigned m, unsigned width) {
  return m >= 4 && m - 1 <= width && width + 7 <= 3 * m;
}

int fast_block_exponent(unsigned m, unsigned width) {
  const int diff = static_cast<int>(width) - static_cast<int>(m);
  // floor division, diff may be negative
  const int half = diff >= 0 ? diff / 2 : -((-diff + 1) / 2);
  return 2 + half;
}

std::uint64_t fast_mulcount_closed_form(unsigned m, int d) {
  return (std::uint64_t{1} << (d - 1)) + m - 2 - static_cast<unsigned>(d);
}

std::uint64_t direct_mulcount_closed_form(unsigned m) { return (std::uint64_t{1} << (m - 2)) - 1; }

HFastResult h_fast(unsigned m, unsigned width) {
  if (m < 2) throw contract_violation("h_fast: level must be >= 2");
  require_level(m, "h_fast");
  HFastResult r;
  if (!fast_path_applies(m, width)) {
    r.value = h(m, width, &r.count);
    r.count.fallback = true;
    return r;
  }
  r.d = fast_block_exponent(m, width);
  const std::uint64_t base = std::uint64_t{1} << (m - 1);
  const Residue2 block = odprod(base + 1, base + (std::uint64_t{1} << r.d) - 1, width, &r.count);
  r.value = pow2k(block, m - 1 - static_cast<unsigned>(r.d), &r.count);
  return r;
}

std::string_view to_string(OdAlgorithm a) {
  switch (a) {
    case OdAlgorithm::naive: return "naive";
    case OdAlgorithm::prop14: return "prop14";
    case OdAlgorithm::fast: return "fast";
  }
  return "?";
}

Residue2 od_factorial_naive(unsigned e, unsigned width) {
  require_level(e, "od_factorial_naive");
  const std::uint64_t n = std::uint64_t{1} << e;
  Residue2 acc = Residue2::one(width);
  for (std::uint64_t i = 2; i <= n; ++i) {
    const std::uint64_t o = od(i);
    if (o != 1) acc = mul(acc, Residue2(width, o));
  }
  return acc;
}

Residue2 od_factorial_prop14(unsigned e, unsigned width, MulCount* tally) {
  require_level(e, "od_factorial_prop14");
  Residue2 acc = Residue2::one(width);
  for (unsigned m = 2; m <= e; ++m) {
    acc = mul(acc, pow(h(m, width, tally), e + 1 - m, tally), tally);
  }
  return acc;
}

OdFactorialResult od_factorial_fast(unsigned e, unsigned width) {
  require_level(e, "od_factorial_fast");
  OdFactorialResult result;
  result.e = e;
  result.width = width;
  result.algorithm = OdAlgorithm::fast;
  Residue2 acc = Residue2::one(width);
  for (unsigned m = 2; m <= e; ++m) {
    const unsigned level_width = (m >= 4 && m - 1 > width) ? m - 1 : width;
    HFastResult hr = h_fast(m, level_width);
    result.levels.push_back(
        LevelCount{m, level_width, hr.d, !hr.count.fallback, hr.count.multiplications});
    result.total += hr.count;
    const Residue2 level = hr.value.truncate(width);
    acc = mul(acc, pow(level, e + 1 - m, &result.total), &result.total);
  }
  result.residue = acc;
  return result;
}

BitWindow uns(unsigned e, unsigned d) {
  const Residue2 od_fact = od_factorial_fast(e, e + 1 + d).residue;
  return window(od_fact, e + 1, d);
}

}  // namespace odfact

#pragma once

// Odd parts of 2^e!, double factorials, and the level blocks h(m), each
// reduced mod 2^B, with multiplication accounting for the accelerated path.

#include <cstdint>
#include <string_view>
#include <vector>

#include "odfact/bitring.hpp"

namespace odfact {

/// Product of the odd j with lo <= j <= hi, reduced after every multiply.
/// An empty range gives 1; n factors cost n - 1 multiplications.
Residue2 odprod(std::uint64_t lo, std::uint64_t hi, unsigned width, MulCount* tally = nullptr);

/// (2^e - 1)!! by the ascending product. Cost 2^(e-1) multiplications.
Residue2 double_factorial_direct(unsigned e, unsigned width);

/// (2^e - 1)!! by doubling the block polynomial F_k(x) = prod_{i odd < 2^k} (x + i):
/// F_{k+1}(x) = F_k(x) F_k(x + 2^k). Only evaluations at even x are ever
/// needed, so every F_k is kept below degree `width`.
Residue2 double_factorial_doubling(unsigned e, unsigned width);

/// (2^e - 1)!! mod 2^width, picking whichever route above is cheaper.
Residue2 double_factorial(unsigned e, unsigned width);

/// h(m) = odprod(2^(m-1) + 1, 2^m - 1), the direct product.
Residue2 h(unsigned m, unsigned width, MulCount* tally = nullptr);

/// True when the block-power shortcut for h(m) holds at this width:
/// 2 <= m-1 <= B <= 3m-7 and m >= 4. The single extra point the bare
/// inequality admits, (m, B) = (3, 2), is a counterexample and is excluded.
bool fast_path_applies(unsigned m, unsigned width);

/// d = 2 + floor((B - m) / 2).
int fast_block_exponent(unsigned m, unsigned width);

/// 2^(d-1) + m - 2 - d
std::uint64_t fast_mulcount_closed_form(unsigned m, int d);
/// 2^(m-2) - 1
std::uint64_t direct_mulcount_closed_form(unsigned m);

struct HFastResult {
  Residue2 value;
  MulCount count;  // count.fallback is set when the direct product was used
  int d = 0;       // 0 on fallback
};

/// h(m) mod 2^width as odprod(2^(m-1)+1, 2^(m-1)+2^d-1)^(2^(m-1-d)) when
/// fast_path_applies(m, width); otherwise the direct product, flagged.
HFastResult h_fast(unsigned m, unsigned width);

enum class OdAlgorithm { naive, prop14, fast };

std::string_view to_string(OdAlgorithm a);

struct LevelCount {
  unsigned m = 0;
  unsigned width = 0;  // width h(m) was computed at
  int d = 0;
  bool fast = false;
  std::uint64_t measured = 0;
};

struct OdFactorialResult {
  unsigned e = 0;
  unsigned width = 0;
  Residue2 residue;
  OdAlgorithm algorithm = OdAlgorithm::fast;
  MulCount total;
  std::vector<LevelCount> levels;
};

/// prod_{i=1}^{2^e} od(i). Practical up to e ~ 24.
Residue2 od_factorial_naive(unsigned e, unsigned width);

/// prod_{m=2}^{e} h(m)^(e+1-m) with direct h(m).
Residue2 od_factorial_prop14(unsigned e, unsigned width, MulCount* tally = nullptr);

/// Same product with h_fast per level. A level with m - 1 > width is
/// evaluated at width m - 1, where the shortcut applies, and truncated.
OdFactorialResult od_factorial_fast(unsigned e, unsigned width);

/// Bits e+1 .. e+d of od(2^e!).
BitWindow uns(unsigned e, unsigned d);

}  // namespace odfact

#pragma once

// Finite-precision materialization of the 2-adic limits
//   z  = lim od(2^e!)
//   w  = lim ((2^e - 1)!! - 1) / 2^e
//   zw = z * w,   K = -zw
// Each value comes with the two stages whose agreement mod 2^B was checked.

#include <string_view>
#include <vector>

#include "odfact/bitring.hpp"

namespace odfact {

enum class LimitName { z, w, zw, K };

std::string_view to_string(LimitName n);
/// Throws parse_error for anything but "z", "w", "zw", "K".
LimitName parse_limit_name(std::string_view s);

struct StageCertificate {
  LimitName limit = LimitName::z;
  unsigned stage = 0;       // stage the emitted residue came from
  unsigned check_stage = 0;  // next stage, recomputed independently
  bool agreed = false;
};

struct LimitBits {
  LimitName name = LimitName::z;
  unsigned width = 0;
  Residue2 residue;
  std::vector<StageCertificate> certificates;

  bool certified() const;
};

/// z mod 2^B from od(2^(B-1)!), certified against od(2^B!).
LimitBits z_bits(unsigned width);
/// w mod 2^B from stage e = B+1, certified against stage e+1.
LimitBits w_bits(unsigned width);
LimitBits zw_bits(unsigned width);
LimitBits K_bits(unsigned width);
LimitBits limit_bits(LimitName name, unsigned width);

/// ((2^e - 1)!! - 1) / 2^e truncated to `width` bits; the double factorial
/// is carried at e + width bits so the shift loses nothing.
Residue2 w_stage(unsigned e, unsigned width);

/// (od(2^e!) - od(2^(e-1)!)) / 2^e mod 2^width, e >= 3.
Residue2 difference_quotient(unsigned e, unsigned width);

/// Bits lo .. lo+d-1 of z.
BitWindow stab(unsigned lo, unsigned d);

}  // namespace odfact

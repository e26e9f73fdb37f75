#include "odfact/limits.hpp"

#include <algorithm>
#include <string>

#include "odfact/factorial_core.hpp"

namespace odfact {

namespace {

// od(2^(e-1)!) == od(2^e!) mod 2^e only from e = 3 on, so z mod 2^B for
// B <= 3 is read off stage 2.
constexpr unsigned kFirstStableZStage = 2;
// (2^e - 1)!! == 1 mod 2^e needs e >= 3.
constexpr unsigned kFirstIntegralWStage = 3;

void require_positive(unsigned width, const char* op) {
  if (width == 0) throw contract_violation(std::string(op) + ": width must be >= 1");
}

Residue2 z_stage(unsigned e, unsigned width) { return od_factorial_fast(e, width).residue; }

}  // namespace

std::string_view to_string(LimitName n) {
  switch (n) {
    case LimitName::z: return "z";
    case LimitName::w: return "w";
    case LimitName::zw: return "zw";
    case LimitName::K: return "K";
  }
  return "?";
}

LimitName parse_limit_name(std::string_view s) {
  if (s == "z") return LimitName::z;
  if (s == "w") return LimitName::w;
  if (s == "zw") return LimitName::zw;
  if (s == "K") return LimitName::K;
  throw parse_error("unknown limit '" + std::string(s) + "' (expected z, w, zw or K)");
}

bool LimitBits::certified() const {
  return !certificates.empty() &&
         std::all_of(certificates.begin(), certificates.end(),
                     [](const StageCertificate& c) { return c.agreed; });
}

LimitBits z_bits(unsigned width) {
  require_positive(width, "z_bits");
  const unsigned stage = std::max(width - 1, kFirstStableZStage);
  LimitBits out{LimitName::z, width, z_stage(stage, width), {}};
  const Residue2 check = z_stage(stage + 1, width);
  out.certificates.push_back({LimitName::z, stage, stage + 1, check == out.residue});
  return out;
}

Residue2 w_stage(unsigned e, unsigned width) {
  if (e < kFirstIntegralWStage) {
    throw contract_violation("w_stage: (2^e - 1)!! - 1 is divisible by 2^e only for e >= 3");
  }
  const Residue2 dfact = double_factorial(e, e + width);
  return shr_exact(sub(dfact, Residue2::one(e + width)), e);
}

LimitBits w_bits(unsigned width) {
  require_positive(width, "w_bits");
  const unsigned stage = std::max(width + 1, kFirstIntegralWStage);
  LimitBits out{LimitName::w, width, w_stage(stage, width), {}};
  const Residue2 check = w_stage(stage + 1, width);
  out.certificates.push_back({LimitName::w, stage, stage + 1, check == out.residue});
  return out;
}

LimitBits zw_bits(unsigned width) {
  const LimitBits z = z_bits(width);
  const LimitBits w = w_bits(width);
  LimitBits out{LimitName::zw, width, mul(z.residue, w.residue), z.certificates};
  out.certificates.insert(out.certificates.end(), w.certificates.begin(), w.certificates.end());
  return out;
}

LimitBits K_bits(unsigned width) {
  LimitBits out = zw_bits(width);
  out.name = LimitName::K;
  out.residue = neg(out.residue);
  return out;
}

LimitBits limit_bits(LimitName name, unsigned width) {
  switch (name) {
    case LimitName::z: return z_bits(width);
    case LimitName::w: return w_bits(width);
    case LimitName::zw: return zw_bits(width);
    case LimitName::K: return K_bits(width);
  }
  throw contract_violation("limit_bits: bad name");
}

Residue2 difference_quotient(unsigned e, unsigned width) {
  if (e < 3) throw contract_violation("difference_quotient: e must be >= 3");
  const unsigned full = e + width;
  const Residue2 upper = z_stage(e, full);
  const Residue2 lower = z_stage(e - 1, full);
  return shr_exact(sub(upper, lower), e);
}

BitWindow stab(unsigned lo, unsigned d) {
  return window(z_bits(lo + d).residue, lo, d);
}

}  // namespace odfact

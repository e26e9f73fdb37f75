#pragma once

// Checkers for the congruences about odd parts of 2^e!, double factorials,
// and symmetric functions of S_e = {odd j : 1 <= j < 2^e}. Every checker
// evaluates both sides from scratch and never reuses another checker's
// verdict.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "odfact/bitring.hpp"

namespace odfact {

/// A parameter tuple outside a checker's hypotheses.
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Param = std::pair<std::string, std::int64_t>;

struct CheckReport {
  std::string theorem;
  std::vector<Param> params;
  Residue2 lhs;
  Residue2 rhs;
  unsigned modulus_bits = 0;
  bool pass = false;
  std::string note;

  /// One line, space separated key=value fields in a fixed order.
  std::string to_record() const;
};

/// Builds a report with pass = (lhs == rhs mod 2^modulus_bits).
CheckReport make_report(std::string theorem, std::vector<Param> params, const Residue2& lhs,
                        const Residue2& rhs, unsigned modulus_bits, std::string note = {});

// -- symmetric functions ----------------------------------------------------

/// sigma-hat_i(S_e) = sigma_{n-i}(S_e), i in {1, 2}, mod 2^width.
/// Computed from inverse power sums; sigma-hat_2 halves exactly at width+1.
Residue2 sigma_hat(unsigned e, unsigned i, unsigned width);

/// sigma-hat_1(S_e) == 2^(2e-2) mod 2^(2e-1)
CheckReport check_sigma1(unsigned e);
/// sigma-hat_2(S_e) == 2^(e-2) mod 2^(e-1)
CheckReport check_sigma2(unsigned e);

// -- products over shifted odd blocks ---------------------------------------

/// prod (A 2^e + i) == prod i mod 2^(3e-1), i over S_e
CheckReport check_hard(unsigned e, std::int64_t A);
/// prod (A 2^e + i)^(2^j) == prod (A2 2^e + i)^(2^j) mod 2^(3e-1+j)
CheckReport check_abcor(unsigned e, std::int64_t A, std::int64_t A2, unsigned j);
/// prod i == prod (2^e + i) mod 2^(2e)
CheckReport check_weak1(unsigned e);

// -- the auxiliary sum H_e --------------------------------------------------

/// Which index range the H_e sum runs over. `literal` starts at i = 1 as
/// written; `from_zero` also includes the i = 0 pairing (j = 1 with
/// j = 2^e - 1), which is what makes sigma-hat_1 = 2^e H_e hold.
enum class HSumRange { literal, from_zero };

/// sum_i (2^e-1)!! / ((2i+1)(2^e-1-2i)) mod 2^width, i up to 2^(e-2)-1.
Residue2 h_sum(unsigned e, HSumRange range, unsigned width);
/// H_e == 2^(e-2) mod 2^(e-1)
CheckReport check_H(unsigned e, HSumRange range);
/// 2^e H_e == sigma-hat_1(S_e) mod 2^(2e-1)
CheckReport check_H_display(unsigned e, HSumRange range);

// -- squares and the inverse-square sum --------------------------------------

/// i^2 mod 2^e over S_e hits every class == 1 mod 8 exactly four times.
/// lhs counts such classes, rhs is 2^(e-3).
CheckReport check_square_census(unsigned e);
/// sigma-hat_1 of four copies of {1, 9, ..., 2^e - 7} == 2^(e-1) mod 2^e
CheckReport check_four_copy(unsigned e);
/// sum_{i in S_e} ((2^e-1)!!)^2 / i^2 == 2^(e-1) mod 2^e
CheckReport check_sqprop(unsigned e);

struct TSplit {
  Residue2 t1;  // pairs a < b with a != b mod 2^(e-1)
  Residue2 t2;  // pairs with a == b mod 2^(e-1)
};

/// Both halves of sigma-hat_2(S_e) mod 2^width, from per-class inverse sums.
TSplit t_split(unsigned e, unsigned width);
/// T1 == 0, T2 == 2^(e-2), T1 + T2 == sigma-hat_2, all mod 2^(e-1).
std::vector<CheckReport> check_T_split(unsigned e);

// -- factorial odd parts and limits -----------------------------------------

/// uns(e, d) + K == stab(e+1, d) mod 2^d, 1 <= d < e
CheckReport check_thm1(unsigned e, unsigned d);
/// h(m) == odprod(2^(m-1)+1, 2^(m-1)+2^d-1)^(2^(m-1-d)) mod 2^B
CheckReport check_thm2(unsigned m, unsigned B);
/// ((2^e-1)!!-1)/2^e == ((2^(e+1)-1)!!-1)/2^(e+1) mod 2^(e-1), e >= 3
CheckReport check_wcor(unsigned e);
/// (2^e-1)!! == 2^e + 1 mod 2^(e+1), e >= 3
CheckReport check_gauss(unsigned e);
/// od maps (2^(e-1), 2^e] onto S_e one-to-one; also compares the products.
std::vector<CheckReport> check_bijection(unsigned e);
/// od(2^(e-1)!) == od(2^e!) mod 2^e, e >= 3
CheckReport check_stability(unsigned e);
/// (od(2^e!) - od(2^(e-1)!))/2^e == zw mod 2^(e-1)
CheckReport check_prod_thm(unsigned e);

// -- registry and sweeps ----------------------------------------------------

using ParamSet = std::map<std::string, std::int64_t>;

struct ParamSpec {
  std::string name;
  std::int64_t default_lo = 0;
  std::int64_t default_hi = 0;
  /// Overrides the static default given the earlier parameters (e.g. d < e).
  std::function<std::pair<std::int64_t, std::int64_t>(const ParamSet&)> dependent_default;
};

struct CheckerInfo {
  std::string id;
  std::string summary;
  std::vector<ParamSpec> params;
  std::function<std::vector<CheckReport>(const ParamSet&)> run;
};

const std::vector<CheckerInfo>& checker_registry();
/// nullptr when unknown.
const CheckerInfo* find_checker(std::string_view id);

/// Runs every tuple, in parallel when threads != 1, returning reports in
/// tuple order. The first exception in tuple order is rethrown.
std::vector<CheckReport> run_sweep(const CheckerInfo& checker, const std::vector<ParamSet>& tuples,
                                   unsigned threads = 0);

}  // namespace odfact

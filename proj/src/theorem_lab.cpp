#include "odfact/theorem_lab.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "odfact/factorial_core.hpp"
#include "odfact/limits.hpp"

namespace odfact {

namespace {

// S_e is enumerated explicitly; 2^(e-1) elements.
constexpr unsigned kMaxEnumeratedLevel = 30;

void require(bool ok, const std::string& message) {
  if (!ok) throw invalid_parameter(message);
}

void require_level_range(unsigned e, unsigned lo, const char* what) {
  require(e >= lo && e <= kMaxEnumeratedLevel, std::string(what) + ": requires " +
                                                   std::to_string(lo) + " <= e <= " +
                                                   std::to_string(kMaxEnumeratedLevel) +
                                                   " (got e=" + std::to_string(e) + ")");
}

std::uint64_t pow2(unsigned k) { return std::uint64_t{1} << k; }

template <class F>
void for_each_odd_below(std::uint64_t limit, F&& f) {
  for (std::uint64_t j = 1; j < limit; j += 2) f(j);
}

// prod_{i in S_e} (shift + i)
Residue2 shifted_block_product(unsigned e, const Residue2& shift) {
  Residue2 acc = Residue2::one(shift.width());
  for_each_odd_below(pow2(e), [&](std::uint64_t i) {
    acc = mul(acc, add(shift, Residue2(shift.width(), i)));
  });
  return acc;
}

struct InverseSums {
  Residue2 product;  // prod S_e
  Residue2 s1;       // sum 1/j
  Residue2 s2;       // sum 1/j^2
};

InverseSums inverse_sums(unsigned e, unsigned width) {
  InverseSums out{Residue2::one(width), Residue2::zero(width), Residue2::zero(width)};
  for_each_odd_below(pow2(e), [&](std::uint64_t j) {
    const Residue2 r(width, j);
    const Residue2 inv = inv_odd(r);
    out.product = mul(out.product, r);
    out.s1 = add(out.s1, inv);
    out.s2 = add(out.s2, mul(inv, inv));
  });
  return out;
}

}  // namespace

std::string CheckReport::to_record() const {
  std::ostringstream os;
  os << "theorem=" << theorem;
  for (const auto& [name, value] : params) os << ' ' << name << '=' << value;
  os << " modulus=2^" << modulus_bits << " lhs=" << lhs.truncate(modulus_bits).to_decimal()
     << " rhs=" << rhs.truncate(modulus_bits).to_decimal() << " pass=" << (pass ? "true" : "false");
  if (!note.empty()) os << " note=\"" << note << '"';
  return os.str();
}

CheckReport make_report(std::string theorem, std::vector<Param> params, const Residue2& lhs,
                        const Residue2& rhs, unsigned modulus_bits, std::string note) {
  if (lhs.width() < modulus_bits || rhs.width() < modulus_bits) {
    throw contract_violation("make_report: operands narrower than the modulus");
  }
  CheckReport r{std::move(theorem), std::move(params), lhs, rhs, modulus_bits, false,
                std::move(note)};
  r.pass = lhs.truncate(modulus_bits) == rhs.truncate(modulus_bits);
  return r;
}

Residue2 sigma_hat(unsigned e, unsigned i, unsigned width) {
  require_level_range(e, 2, "sigma_hat");
  require(i == 1 || i == 2, "sigma_hat: index must be 1 or 2");
  // one guard bit for the halving in sigma-hat_2
  const InverseSums s = inverse_sums(e, width + 1);
  if (i == 1) return mul(s.product, s.s1).truncate(width);
  const Residue2 pair_sum = shr_exact(sub(mul(s.s1, s.s1), s.s2), 1);
  return mul(s.product.truncate(width), pair_sum);
}

CheckReport check_sigma1(unsigned e) {
  require_level_range(e, 2, "sigma1");
  const unsigned bits = 2 * e - 1;
  return make_report("sigma1", {{"e", e}}, sigma_hat(e, 1, bits),
                     Residue2::power_of_two(bits, 2 * e - 2), bits);
}

CheckReport check_sigma2(unsigned e) {
  require_level_range(e, 2, "sigma2");
  const unsigned bits = e - 1;
  return make_report("sigma2", {{"e", e}}, sigma_hat(e, 2, bits),
                     Residue2::power_of_two(bits, e - 2), bits);
}

CheckReport check_hard(unsigned e, std::int64_t A) {
  require_level_range(e, 1, "hard");
  const unsigned bits = 3 * e - 1;
  const Residue2 shift = shl(Residue2::from_signed(bits, A), e);
  return make_report("hard", {{"e", e}, {"A", A}}, shifted_block_product(e, shift),
                     shifted_block_product(e, Residue2::zero(bits)), bits);
}

CheckReport check_abcor(unsigned e, std::int64_t A, std::int64_t A2, unsigned j) {
  require_level_range(e, 1, "abcor");
  const unsigned bits = 3 * e - 1 + j;
  require(bits <= Residue2::kMaxWidth, "abcor: 3e-1+j exceeds the maximum width");
  const auto side = [&](std::int64_t a) {
    const Residue2 shift = shl(Residue2::from_signed(bits, a), e);
    return pow2k(shifted_block_product(e, shift), j);
  };
  return make_report("abcor", {{"e", e}, {"A", A}, {"A2", A2}, {"j", j}}, side(A), side(A2), bits);
}

CheckReport check_weak1(unsigned e) {
  require_level_range(e, 1, "weak1");
  const unsigned bits = 2 * e;
  return make_report("weak1", {{"e", e}},
                     shifted_block_product(e, Residue2::zero(bits)),
                     shifted_block_product(e, Residue2::power_of_two(bits, e)), bits);
}

Residue2 h_sum(unsigned e, HSumRange range, unsigned width) {
  require_level_range(e, 2, "h_sum");
  const Residue2 dfact = odprod(1, pow2(e) - 1, width);
  Residue2 acc = Residue2::zero(width);
  const std::uint64_t first = range == HSumRange::literal ? 1 : 0;
  for (std::uint64_t i = first; i < pow2(e - 2); ++i) {
    const Residue2 denom =
        mul(Residue2(width, 2 * i + 1), Residue2(width, pow2(e) - 1 - 2 * i));
    acc = add(acc, mul(dfact, inv_odd(denom)));
  }
  return acc;
}

CheckReport check_H(unsigned e, HSumRange range) {
  require_level_range(e, 2, "H");
  const unsigned bits = e - 1;
  const bool literal = range == HSumRange::literal;
  std::string note;
  if (literal) {
    note = "sum starts at i=1; with the i=0 term it is " +
           h_sum(e, HSumRange::from_zero, bits).to_decimal();
  }
  return make_report(literal ? "H" : "H0", {{"e", e}}, h_sum(e, range, bits),
                     Residue2::power_of_two(bits, e - 2), bits, std::move(note));
}

CheckReport check_H_display(unsigned e, HSumRange range) {
  require_level_range(e, 2, "H display");
  const unsigned bits = 2 * e - 1;
  // 2^e H_e mod 2^(2e-1) only needs H_e mod 2^(e-1)
  const Residue2 scaled = shl(h_sum(e, range, e - 1).widen(bits), e);
  return make_report(range == HSumRange::literal ? "Hdisplay" : "H0display", {{"e", e}}, scaled,
                     sigma_hat(e, 1, bits), bits);
}

CheckReport check_square_census(unsigned e) {
  require_level_range(e, 3, "census");
  const std::uint64_t modulus = pow2(e);
  std::vector<std::uint32_t> hits(modulus, 0);
  for_each_odd_below(modulus, [&](std::uint64_t i) {
    const Residue2 r(e, i);
    ++hits[mul(r, r).to_u64()];
  });
  std::uint64_t good_classes = 0;
  std::uint64_t stray = 0;
  for (std::uint64_t r = 0; r < modulus; ++r) {
    if (hits[r] == 0) continue;
    if (r % 8 == 1 && hits[r] == 4) {
      ++good_classes;
    } else {
      ++stray;
    }
  }
  // every square lands in some class, so 2^(e-3) classes of four exhaust S_e
  const unsigned bits = e;
  std::string note;
  if (stray != 0) note = std::to_string(stray) + " classes off the expected pattern";
  return make_report("census", {{"e", e}}, Residue2(bits, good_classes),
                     Residue2(bits, pow2(e - 3)), bits, std::move(note));
}

CheckReport check_four_copy(unsigned e) {
  require_level_range(e, 3, "fourcopy");
  const unsigned bits = e;
  Residue2 base_product = Residue2::one(bits);
  Residue2 inverse_sum = Residue2::zero(bits);
  for (std::uint64_t x = 1; x < pow2(e); x += 8) {
    const Residue2 r(bits, x);
    base_product = mul(base_product, r);
    inverse_sum = add(inverse_sum, inv_odd(r));
  }
  // sigma-hat_1(M) = prod(M) * sum_{x in M} 1/x, M = four copies
  const Residue2 lhs = mul(pow(base_product, 4), shl(inverse_sum, 2));
  return make_report("fourcopy", {{"e", e}}, lhs, Residue2::power_of_two(bits, e - 1), bits);
}

CheckReport check_sqprop(unsigned e) {
  require_level_range(e, 3, "sqprop");
  const unsigned bits = e;
  const Residue2 dfact = odprod(1, pow2(e) - 1, bits);
  const Residue2 dfact_sq = mul(dfact, dfact);
  Residue2 acc = Residue2::zero(bits);
  for_each_odd_below(pow2(e), [&](std::uint64_t i) {
    const Residue2 r(bits, i);
    acc = add(acc, mul(dfact_sq, inv_odd(mul(r, r))));
  });
  return make_report("sqprop", {{"e", e}}, acc, Residue2::power_of_two(bits, e - 1), bits);
}

TSplit t_split(unsigned e, unsigned width) {
  require_level_range(e, 3, "t_split");
  const unsigned guarded = width + 1;
  const std::uint64_t half = pow2(e - 1);
  Residue2 product = Residue2::one(guarded);
  Residue2 total = Residue2::zero(guarded);       // sum over all of 1/a
  Residue2 class_squares = Residue2::zero(guarded);  // sum over classes of (class sum)^2
  Residue2 same_class = Residue2::zero(guarded);     // sum of 1/(r (r + 2^(e-1)))
  for_each_odd_below(half, [&](std::uint64_t r) {
    const Residue2 a(guarded, r);
    const Residue2 b(guarded, r + half);
    product = mul(product, mul(a, b));
    const Residue2 ia = inv_odd(a);
    const Residue2 ib = inv_odd(b);
    const Residue2 class_sum = add(ia, ib);
    total = add(total, class_sum);
    class_squares = add(class_squares, mul(class_sum, class_sum));
    same_class = add(same_class, mul(ia, ib));
  });
  const Residue2 cross_pairs = shr_exact(sub(mul(total, total), class_squares), 1);
  const Residue2 p = product.truncate(width);
  return TSplit{mul(p, cross_pairs), mul(p, same_class.truncate(width))};
}

std::vector<CheckReport> check_T_split(unsigned e) {
  require_level_range(e, 3, "tsplit");
  const unsigned bits = e - 1;
  const TSplit t = t_split(e, bits);
  std::vector<CheckReport> out;
  out.push_back(make_report("tsplit.T1", {{"e", e}}, t.t1, Residue2::zero(bits), bits));
  out.push_back(
      make_report("tsplit.T2", {{"e", e}}, t.t2, Residue2::power_of_two(bits, e - 2), bits));
  out.push_back(
      make_report("tsplit.sum", {{"e", e}}, add(t.t1, t.t2), sigma_hat(e, 2, bits), bits));
  return out;
}

CheckReport check_thm1(unsigned e, unsigned d) {
  require(d >= 1 && d < e, "thm1: requires 1 <= d < e (got e=" + std::to_string(e) +
                               ", d=" + std::to_string(d) + ")");
  require(e + 1 + d <= 64, "thm1: requires e + d <= 63");
  const Residue2 unstable = uns(e, d).value;
  const Residue2 k = K_bits(d).residue;
  const Residue2 stable = stab(e + 1, d).value;
  return make_report("thm1", {{"e", e}, {"d", d}}, add(unstable, k), stable, d);
}

CheckReport check_thm2(unsigned m, unsigned B) {
  require(m <= 64, "thm2: requires m <= 64");
  require(m - 1 >= 2 && m - 1 <= B && B + 7 <= 3 * m,
          "thm2: requires 2 <= m-1 <= B <= 3m-7 (got m=" + std::to_string(m) +
              ", B=" + std::to_string(B) + ")");
  require(m != 3,
          "thm2: m=3, B=2 satisfies 2 <= m-1 <= B <= 3m-7 but d=1 gives 5^2=1 against h(3)=35=3 "
          "mod 4; the congruence holds only for m >= 4");
  const int d = fast_block_exponent(m, B);
  const std::uint64_t base = pow2(m - 1);
  const Residue2 block = odprod(base + 1, base + pow2(static_cast<unsigned>(d)) - 1, B);
  return make_report("thm2", {{"m", m}, {"B", B}, {"d", d}}, h(m, B),
                     pow2k(block, m - 1 - static_cast<unsigned>(d)), B);
}

CheckReport check_wcor(unsigned e) {
  require_level_range(e, 3, "wcor");
  const unsigned bits = e - 1;
  const auto quotient = [&](unsigned stage) {
    const unsigned full = stage + bits;
    const Residue2 dfact = odprod(1, pow2(stage) - 1, full);
    return shr_exact(sub(dfact, Residue2::one(full)), stage);
  };
  return make_report("wcor", {{"e", e}}, quotient(e), quotient(e + 1), bits);
}

CheckReport check_gauss(unsigned e) {
  require_level_range(e, 3, "gauss");
  const unsigned bits = e + 1;
  return make_report("gauss", {{"e", e}}, odprod(1, pow2(e) - 1, bits),
                     Residue2(bits, pow2(e) + 1), bits);
}

std::vector<CheckReport> check_bijection(unsigned e) {
  require_level_range(e, 1, "bijection");
  const unsigned bits = 64;
  std::vector<std::uint8_t> seen(pow2(e - 1), 0);
  std::uint64_t collisions = 0;
  Residue2 image_product = Residue2::one(bits);
  for (std::uint64_t i = pow2(e - 1) + 1; i <= pow2(e); ++i) {
    const std::uint64_t o = od(i);
    image_product = mul(image_product, Residue2(bits, o));
    if (o >= pow2(e) || seen[o / 2]++ != 0) ++collisions;
  }
  const auto hit = static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), 1));
  std::vector<CheckReport> out;
  std::string note;
  if (collisions != 0) note = std::to_string(collisions) + " collisions or out-of-range images";
  out.push_back(make_report("bijection.image", {{"e", e}}, Residue2(bits, hit),
                            Residue2(bits, pow2(e - 1)), bits, std::move(note)));
  out.push_back(make_report("bijection.product", {{"e", e}}, image_product,
                            odprod(1, pow2(e) - 1, bits), bits));
  return out;
}

CheckReport check_stability(unsigned e) {
  require_level_range(e, 3, "stability");
  return make_report("stability", {{"e", e}}, od_factorial_fast(e - 1, e).residue,
                     od_factorial_fast(e, e).residue, e);
}

CheckReport check_prod_thm(unsigned e) {
  require(e >= 3 && e <= 40, "prod: requires 3 <= e <= 40 (got e=" + std::to_string(e) + ")");
  const unsigned bits = e - 1;
  return make_report("prod", {{"e", e}}, difference_quotient(e, bits), zw_bits(bits).residue,
                     bits);
}

// -- registry ----------------------------------------------------------------

namespace {

unsigned as_unsigned(const ParamSet& p, const char* name) {
  const auto it = p.find(name);
  if (it == p.end()) throw invalid_parameter(std::string("missing parameter ") + name);
  if (it->second < 0) {
    throw invalid_parameter(std::string("parameter ") + name + " must be nonnegative");
  }
  return static_cast<unsigned>(it->second);
}

std::int64_t as_signed(const ParamSet& p, const char* name) {
  const auto it = p.find(name);
  if (it == p.end()) throw invalid_parameter(std::string("missing parameter ") + name);
  return it->second;
}

template <class F>
std::function<std::vector<CheckReport>(const ParamSet&)> single(F f) {
  return [f](const ParamSet& p) { return std::vector<CheckReport>{f(p)}; };
}

std::vector<CheckerInfo> build_registry() {
  std::vector<CheckerInfo> r;
  const auto e_only = [](std::int64_t lo, std::int64_t hi) {
    return std::vector<ParamSpec>{{"e", lo, hi, {}}};
  };
  r.push_back({"thm1", "uns(e,d) + K == stab(e+1,d) mod 2^d",
               {{"e", 2, 20, {}},
                {"d", 1, 1,
                 [](const ParamSet& p) {
                   return std::pair<std::int64_t, std::int64_t>{1, p.at("e") - 1};
                 }}},
               single([](const ParamSet& p) {
                 return check_thm1(as_unsigned(p, "e"), as_unsigned(p, "d"));
               })});
  r.push_back({"thm2", "h(m) == odprod(2^(m-1)+1, 2^(m-1)+2^d-1)^(2^(m-1-d)) mod 2^B",
               {{"m", 4, 14, {}},
                {"B", 0, 0,
                 [](const ParamSet& p) {
                   return std::pair<std::int64_t, std::int64_t>{p.at("m") - 1, 3 * p.at("m") - 7};
                 }}},
               single([](const ParamSet& p) {
                 return check_thm2(as_unsigned(p, "m"), as_unsigned(p, "B"));
               })});
  r.push_back({"weak1", "prod i == prod (2^e + i) mod 2^(2e)", e_only(2, 16),
               single([](const ParamSet& p) { return check_weak1(as_unsigned(p, "e")); })});
  r.push_back({"wcor", "w stage e == w stage e+1 mod 2^(e-1)", e_only(3, 16),
               single([](const ParamSet& p) { return check_wcor(as_unsigned(p, "e")); })});
  r.push_back({"gauss", "(2^e-1)!! == 2^e + 1 mod 2^(e+1)", e_only(3, 20),
               single([](const ParamSet& p) { return check_gauss(as_unsigned(p, "e")); })});
  r.push_back({"bijection", "od: (2^(e-1), 2^e] -> S_e is bijective", e_only(3, 20),
               [](const ParamSet& p) { return check_bijection(as_unsigned(p, "e")); }});
  r.push_back({"stability", "od(2^(e-1)!) == od(2^e!) mod 2^e", e_only(3, 20),
               single([](const ParamSet& p) { return check_stability(as_unsigned(p, "e")); })});
  r.push_back({"prod", "(od(2^e!) - od(2^(e-1)!))/2^e == zw mod 2^(e-1)", e_only(4, 20),
               single([](const ParamSet& p) { return check_prod_thm(as_unsigned(p, "e")); })});
  r.push_back({"hard", "prod (A 2^e + i) == prod i mod 2^(3e-1)",
               {{"e", 2, 12, {}}, {"A", -2, 3, {}}},
               single([](const ParamSet& p) {
                 return check_hard(as_unsigned(p, "e"), as_signed(p, "A"));
               })});
  r.push_back({"abcor", "prod (A 2^e + i)^(2^j) == prod (A2 2^e + i)^(2^j) mod 2^(3e-1+j)",
               {{"e", 2, 10, {}}, {"A", -2, 3, {}}, {"A2", -2, 3, {}}, {"j", 0, 3, {}}},
               single([](const ParamSet& p) {
                 return check_abcor(as_unsigned(p, "e"), as_signed(p, "A"), as_signed(p, "A2"),
                                    as_unsigned(p, "j"));
               })});
  r.push_back({"sigma1", "sigma-hat_1(S_e) == 2^(2e-2) mod 2^(2e-1)", e_only(2, 18),
               single([](const ParamSet& p) { return check_sigma1(as_unsigned(p, "e")); })});
  r.push_back({"sigma2", "sigma-hat_2(S_e) == 2^(e-2) mod 2^(e-1)", e_only(2, 18),
               single([](const ParamSet& p) { return check_sigma2(as_unsigned(p, "e")); })});
  r.push_back({"H", "H_e (sum from i=1) == 2^(e-2) mod 2^(e-1)", e_only(2, 14),
               single([](const ParamSet& p) {
                 return check_H(as_unsigned(p, "e"), HSumRange::literal);
               })});
  r.push_back({"H0", "H_e (sum from i=0) == 2^(e-2) mod 2^(e-1)", e_only(2, 14),
               single([](const ParamSet& p) {
                 return check_H(as_unsigned(p, "e"), HSumRange::from_zero);
               })});
  r.push_back({"Hdisplay", "2^e H_e (sum from i=1) == sigma-hat_1(S_e) mod 2^(2e-1)",
               e_only(2, 14), single([](const ParamSet& p) {
                 return check_H_display(as_unsigned(p, "e"), HSumRange::literal);
               })});
  r.push_back({"H0display", "2^e H_e (sum from i=0) == sigma-hat_1(S_e) mod 2^(2e-1)",
               e_only(2, 14), single([](const ParamSet& p) {
                 return check_H_display(as_unsigned(p, "e"), HSumRange::from_zero);
               })});
  r.push_back({"census", "i^2 mod 2^e: each class == 1 mod 8 hit four times", e_only(3, 14),
               single([](const ParamSet& p) {
                 return check_square_census(as_unsigned(p, "e"));
               })});
  r.push_back({"fourcopy", "sigma-hat_1(4 x {1,9,...,2^e-7}) == 2^(e-1) mod 2^e", e_only(3, 14),
               single([](const ParamSet& p) { return check_four_copy(as_unsigned(p, "e")); })});
  r.push_back({"sqprop", "sum ((2^e-1)!!)^2 / i^2 == 2^(e-1) mod 2^e", e_only(3, 14),
               single([](const ParamSet& p) { return check_sqprop(as_unsigned(p, "e")); })});
  r.push_back({"tsplit", "T1 == 0, T2 == 2^(e-2), T1+T2 == sigma-hat_2 mod 2^(e-1)",
               e_only(3, 14),
               [](const ParamSet& p) { return check_T_split(as_unsigned(p, "e")); }});
  return r;
}

}  // namespace

const std::vector<CheckerInfo>& checker_registry() {
  static const std::vector<CheckerInfo> registry = build_registry();
  return registry;
}

const CheckerInfo* find_checker(std::string_view id) {
  for (const auto& c : checker_registry()) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<CheckReport> run_sweep(const CheckerInfo& checker, const std::vector<ParamSet>& tuples,
                                   unsigned threads) {
  std::vector<std::vector<CheckReport>> results(tuples.size());
  std::vector<std::exception_ptr> errors(tuples.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tuples.size())));

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      try {
        results[i] = checker.run(tuples[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& r : results[i]) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace odfact

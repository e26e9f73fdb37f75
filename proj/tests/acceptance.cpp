// Acceptance runner. Prints one [PASS]/[FAIL] line per criterion.
//   acceptance                 all criteria
//   acceptance --criterion N   just N; exit status 0 iff it passed

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "odfact/bfile.hpp"
#include "odfact/commands.hpp"
#include "odfact/factorial_core.hpp"
#include "odfact/limits.hpp"
#include "odfact/theorem_lab.hpp"
#include "oracle.hpp"

using namespace odfact;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome table_reproduction() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = cli::cmd_table(30, 40);
  const double secs = since(t0);
  const std::string golden = read_file(ODFACT_TEST_DATA_DIR "/reference_table_e30_b40.txt");
  o.expect(!golden.empty(), "reference table missing");
  o.expect(r.out == golden, "table differs from the reference");
  o.expect(std::count(r.out.begin(), r.out.end(), '\n') == 29, "expected 29 rows");
  o.expect(secs < 10.0, "took " + std::to_string(secs) + " s");
  return o;
}

Outcome z_prefix() {
  Outcome o;
  const LimitBits z = z_bits(31);
  o.expect(bbe_encode(z.residue, 31) == "1101000101101000101110110001110",
           "z bits 0..30: " + bbe_encode(z.residue, 31));
  o.expect(z.certified(), "certificate failed");
  return o;
}

Outcome k_prefix() {
  Outcome o;
  const Residue2 k = K_bits(7).residue;
  o.expect(bbe_encode(k, 7) == "1011011", "K bits 0..6: " + bbe_encode(k, 7));
  const Residue2 u = uns(17, 7).value;
  o.expect(u == Residue2(7, 74), "uns(17,7) = " + u.to_decimal());
  o.expect(add(u, k) == Residue2(7, 55), "74 + K != 55 mod 2^7");
  o.expect(stab(18, 7).value == Residue2(7, 55), "stab(18,7) != 55");
  return o;
}

Outcome low_bits_of_w_zw_K() {
  Outcome o;
  const std::string w = binary_encode(w_bits(13).residue, 13);
  const std::string zw = binary_encode(zw_bits(12).residue, 12);
  const std::string k = binary_encode(K_bits(12).residue, 12);
  o.expect(w == "1001110011001", "w low 13 bits: " + w);
  o.expect(zw == "011000010011", "zw low 12 bits: " + zw + ", expected 011000010011");
  o.expect(k == "010111101101", "-zw low 12 bits: " + k);
  return o;
}

Outcome thm1_sweep() {
  Outcome o;
  const auto t0 = Clock::now();
  const CheckerInfo* c = find_checker("thm1");
  std::vector<ParamSet> tuples;
  for (std::int64_t e = 2; e <= 20; ++e) {
    for (std::int64_t d = 1; d < e; ++d) tuples.push_back({{"e", e}, {"d", d}});
  }
  for (const auto& r : run_sweep(*c, tuples)) o.expect(r.pass, r.to_record());
  const double secs = since(t0);
  o.expect(tuples.size() == 190, "tuple count");
  o.expect(secs < 30.0, "took " + std::to_string(secs) + " s");
  return o;
}

Outcome thm2_counts() {
  Outcome o;
  int legal = 0;
  for (unsigned m = 2; m <= 14; ++m) {
    for (unsigned B = 1; B <= 64; ++B) {
      if (!fast_path_applies(m, B)) continue;
      ++legal;
      const std::string at = "m=" + std::to_string(m) + " B=" + std::to_string(B);
      const HFastResult f = h_fast(m, B);
      MulCount direct;
      const Residue2 hv = h(m, B, &direct);
      o.expect(f.value == hv, "h_fast != h at " + at);
      const std::uint64_t closed = (std::uint64_t{1} << (f.d - 1)) + m - 2 - f.d;
      o.expect(f.count.multiplications == closed, "fast count at " + at);
      o.expect(direct.multiplications == (std::uint64_t{1} << (m - 2)) - 1, "direct count at " + at);
      o.expect(check_thm2(m, B).pass, "thm2 at " + at);
    }
  }
  o.expect(legal > 0, "no legal pairs");
  return o;
}

Outcome cross_algorithm() {
  Outcome o;
  for (unsigned e = 2; e <= 16; ++e) {
    for (unsigned B : {8u, 16u, 40u, 64u}) {
      const Residue2 a = od_factorial_naive(e, B);
      const Residue2 b = od_factorial_prop14(e, B);
      const Residue2 c = od_factorial_fast(e, B).residue;
      o.expect(a == b && b == c, "disagreement at e=" + std::to_string(e) + " B=" + std::to_string(B));
    }
  }
  // and the naive route against the exact factorial where that is cheap
  for (unsigned e = 2; e <= 9; ++e) {
    o.expect(od_factorial_naive(e, 64) == oracle::to_residue(oracle::od_factorial(e), 64),
             "naive vs exact at e=" + std::to_string(e));
  }
  return o;
}

Outcome difference_quotients() {
  Outcome o;
  o.expect(difference_quotient(7, 6) == Residue2(6, 19), "e=7 instance");
  for (unsigned e = 4; e <= 20; ++e) {
    o.expect(difference_quotient(e, e - 1) == zw_bits(e - 1).residue,
             "e=" + std::to_string(e));
  }
  return o;
}

Outcome section_sweeps() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Job {
    const char* id;
    std::vector<ParamSet> tuples;
  };
  std::vector<Job> jobs;
  const auto e_range = [](std::int64_t lo, std::int64_t hi) {
    std::vector<ParamSet> t;
    for (std::int64_t e = lo; e <= hi; ++e) t.push_back({{"e", e}});
    return t;
  };
  std::vector<ParamSet> hard;
  for (std::int64_t e = 2; e <= 12; ++e) {
    for (std::int64_t A = -2; A <= 3; ++A) hard.push_back({{"e", e}, {"A", A}});
  }
  std::vector<ParamSet> abcor;
  for (std::int64_t e = 2; e <= 10; ++e) {
    for (std::int64_t A = -2; A <= 3; ++A) {
      for (std::int64_t A2 = -2; A2 <= 3; ++A2) {
        for (std::int64_t j = 0; j <= 3; ++j) abcor.push_back({{"e", e}, {"A", A}, {"A2", A2}, {"j", j}});
      }
    }
  }
  jobs.push_back({"hard", hard});
  jobs.push_back({"abcor", abcor});
  jobs.push_back({"sigma1", e_range(2, 18)});
  jobs.push_back({"sigma2", e_range(2, 18)});
  jobs.push_back({"census", e_range(3, 14)});
  jobs.push_back({"fourcopy", e_range(3, 14)});
  jobs.push_back({"sqprop", e_range(3, 14)});
  jobs.push_back({"tsplit", e_range(3, 14)});
  for (const auto& job : jobs) {
    for (const auto& r : run_sweep(*find_checker(job.id), job.tuples)) o.expect(r.pass, r.to_record());
  }
  const double secs = since(t0);
  o.expect(secs < 120.0, "took " + std::to_string(secs) + " s");
  return o;
}

Outcome property_suites() {
  Outcome o;
  constexpr int kCases = 10000;
  std::mt19937_64 rng(20261019);
  const auto width_of = [&] { return 1 + static_cast<unsigned>(rng() % 200); };
  int bad_ring = 0;
  int bad_inv = 0;
  int bad_trunc = 0;
  int bad_square = 0;
  int bad_bbe = 0;
  for (int n = 0; n < kCases; ++n) {
    // ring laws, checked against exact integers
    const unsigned w = width_of();
    const Residue2 a = oracle::random_residue(rng, w);
    const Residue2 b = oracle::random_residue(rng, w);
    const Residue2 c = oracle::random_residue(rng, w);
    const auto A = oracle::from_residue(a);
    const auto B = oracle::from_residue(b);
    const auto C = oracle::from_residue(c);
    const bool ring = mul(a, b) == mul(b, a) && add(a, b) == add(b, a) &&
                      mul(mul(a, b), c) == mul(a, mul(b, c)) &&
                      mul(a, add(b, c)) == add(mul(a, b), mul(a, c)) &&
                      mul(a, Residue2::one(w)) == a && add(a, neg(a)).is_zero() &&
                      mul(a, b) == oracle::to_residue(A * B, w) &&
                      add(a, c) == oracle::to_residue(A + C, w) &&
                      sub(b, c) == oracle::to_residue(B - C, w);
    bad_ring += !ring;

    // inverses of odd residues
    Residue2 odd = a;
    if (!odd.is_odd()) odd = add(odd, Residue2::one(w));
    const Residue2 inv = inv_odd(odd);
    bad_inv += !(mul(odd, inv) == Residue2::one(w) && mul(inv, odd) == Residue2::one(w));

    // reduction to fewer bits is a ring map
    const unsigned k = static_cast<unsigned>(rng() % (w + 1));
    const bool trunc = mul(a, b).truncate(k) == mul(a.truncate(k), b.truncate(k)) &&
                       add(a, b).truncate(k) == add(a.truncate(k), b.truncate(k)) &&
                       a.truncate(k) == oracle::to_residue(A, k);
    bad_trunc += !trunc;

    // x == y mod 2^j, j >= 1, both odd  =>  x^2 == y^2 mod 2^(j+1)
    if (w >= 2) {
      const unsigned j = 1 + static_cast<unsigned>(rng() % (w - 1));
      const Residue2 x = odd;
      const Residue2 y = add(x, shl(oracle::random_residue(rng, w), j));
      bad_square += !(mul(x, x).truncate(j + 1) == mul(y, y).truncate(j + 1));
    }

    // BBE round trip, both directions
    const std::string s = bbe_encode(a, w);
    bool round = bbe_decode(s) == a;
    std::string t(w, '0');
    for (auto& ch : t) ch = (rng() & 1) ? '1' : '0';
    round = round && bbe_encode(bbe_decode(t), w) == t;
    bad_bbe += !round;
  }
  o.expect(bad_ring == 0, std::to_string(bad_ring) + " ring-law failures");
  o.expect(bad_inv == 0, std::to_string(bad_inv) + " inverse failures");
  o.expect(bad_trunc == 0, std::to_string(bad_trunc) + " truncation failures");
  o.expect(bad_square == 0, std::to_string(bad_square) + " squaring failures");
  o.expect(bad_bbe == 0, std::to_string(bad_bbe) + " round-trip failures");
  return o;
}

Outcome z_to_64_bits() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = cli::cmd_bits(LimitName::z, 64, cli::BitsFormat::bfile);
  const double secs = since(t0);
  o.expect(r.status == cli::kExitOk, "bits z 64 status " + std::to_string(r.status));
  std::istringstream back(r.out);
  const auto cmp = cli::cmd_oeis_compare(back);
  o.expect(cmp.status == cli::kExitOk && cmp.out.find("64 bits compared") != std::string::npos,
           "b-file does not round-trip: " + cmp.out);
  o.expect(z_bits(64).certified(), "stage certificate failed");
  o.expect(z_bits(64).residue.truncate(31) == z_bits(31).residue, "prefix disagrees with 31-bit z");
  o.expect(secs < 600.0, "took " + std::to_string(secs) + " s");
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"table e=2..30 at 40 bits", table_reproduction},
      {"z bits 0..30", z_prefix},
      {"K bits 0..6 and 74 + K == 55 mod 2^7", k_prefix},
      {"low bits of w, zw, -zw", low_bits_of_w_zw_K},
      {"uns + K == stab, 1 <= d < e <= 20", thm1_sweep},
      {"h_fast == h and multiplication counts, m <= 14", thm2_counts},
      {"naive, prop14, fast agree", cross_algorithm},
      {"difference quotient == zw, 4 <= e <= 20", difference_quotients},
      {"symmetric-function and block-product sweeps", section_sweeps},
      {"randomized property suites", property_suites},
      {"z to 64 bits as a certified b-file (stretch)", z_to_64_bits},
  };
  return all;
}

bool report(std::size_t n) {
  const Criterion& c = criteria()[n - 1];
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& ex) {
    o.pass = false;
    o.detail.push_back(std::string("exception: ") + ex.what());
  }
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << c.title << " ("
            << since(t0) << " s)\n";
  for (const auto& d : o.detail) std::cout << "       " << d << '\n';
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const std::size_t n = std::strtoul(argv[2], nullptr, 10);
    if (n < 1 || n > criteria().size()) {
      std::cerr << "criterion must be 1.." << criteria().size() << '\n';
      return 2;
    }
    return report(n) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  int failed = 0;
  for (std::size_t n = 1; n <= criteria().size(); ++n) failed += !report(n);
  std::cout << failed << " of " << criteria().size() << " criteria failed\n";
  return failed == 0 ? 0 : 1;
}

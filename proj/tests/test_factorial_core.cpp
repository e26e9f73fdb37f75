#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "odfact/factorial_core.hpp"
#include "oracle.hpp"

using namespace odfact;

namespace {

// Rows of the published table, 40 bits each, e = 2..30.
std::vector<std::string> reference_rows() {
  std::ifstream in(ODFACT_TEST_DATA_DIR "/reference_table_e30_b40.txt");
  REQUIRE(in);
  std::vector<std::string> rows(31);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    unsigned e = 0;
    std::string stable;
    std::string unstable;
    ls >> e >> stable >> unstable;
    rows[e] = stable + unstable;
  }
  return rows;
}

}  // namespace

TEST_CASE("odprod") {
  CHECK(odprod(1, 7, 8) == Residue2(8, 105));
  CHECK(odprod(5, 9, 16) == Residue2(16, 315));
  CHECK(odprod(3, 2, 12) == Residue2(12, 1));
  CHECK(odprod(2, 2, 12) == Residue2(12, 1));
  CHECK(odprod(4, 5, 12) == Residue2(12, 5));
  MulCount c;
  (void)odprod(1, 7, 8, &c);
  CHECK(c.multiplications == 3);
  CHECK_THROWS_AS(odprod(0, 7, 8), contract_violation);
}

TEST_CASE("double factorial") {
  CHECK(double_factorial(3, 16) == Residue2(16, 105));
  CHECK(double_factorial(4, 32) == Residue2(32, 2027025));
  CHECK(double_factorial(3, 4) == Residue2(4, 9));
}

TEST_CASE("doubling route matches the direct product") {
  for (unsigned e = 1; e <= 18; ++e) {
    for (unsigned width : {1u, 5u, 31u, 64u, 65u, 130u}) {
      CAPTURE(e);
      CAPTURE(width);
      CHECK(double_factorial_doubling(e, width) == double_factorial_direct(e, width));
    }
  }
  // against exact integers
  for (unsigned e : {5u, 9u, 12u}) {
    CHECK(double_factorial_doubling(e, 200) ==
          oracle::to_residue(oracle::double_factorial(e), 200));
  }
}

TEST_CASE("h direct") {
  CHECK(h(2, 8) == Residue2(8, 3));
  CHECK(h(3, 8) == Residue2(8, 35));
  CHECK(h(4, 16) == Residue2(16, 19305));
  CHECK(h(4, 14) == Residue2(14, 2921));
  MulCount c;
  (void)h(9, 10, &c);
  CHECK(c.multiplications == direct_mulcount_closed_form(9));
  CHECK(c.multiplications == 127);
}

TEST_CASE("h_fast examples") {
  SUBCASE("m=5, B=8") {
    const HFastResult r = h_fast(5, 8);
    CHECK(r.d == 3);
    CHECK_FALSE(r.count.fallback);
    const auto block = oracle::to_residue(oracle::odprod(17, 23), 8);
    CHECK(r.value == pow2k(block, 1));
    CHECK(r.value == oracle::to_residue(oracle::odprod(17, 31), 8));
    CHECK(r.value == h(5, 8));
  }
  SUBCASE("m=9, B=10") {
    const HFastResult r = h_fast(9, 10);
    CHECK(r.d == 2);
    CHECK(r.value == oracle::to_residue(oracle::odprod(257, 511), 10));
    // one block product, then six squarings
    CHECK(r.count.multiplications == 7);
    CHECK(fast_mulcount_closed_form(9, 2) == 7);
  }
  SUBCASE("m=3 falls back") {
    for (unsigned B = 1; B <= 12; ++B) {
      const HFastResult r = h_fast(3, B);
      CHECK(r.count.fallback);
      CHECK(r.count.multiplications == direct_mulcount_closed_form(3));
      CHECK(r.value == h(3, B));
    }
  }
}

TEST_CASE("the block-power congruence fails at m=3, B=2") {
  // 2 <= m-1 <= B <= 3m-7 admits (3, 2); d = 2 + floor(-1/2) = 1
  CHECK(fast_block_exponent(3, 2) == 1);
  CHECK(h(3, 2) == Residue2(2, 3));  // 35 mod 4
  CHECK(pow2k(odprod(5, 5, 2), 1) == Residue2(2, 1));  // 25 mod 4
  CHECK_FALSE(fast_path_applies(3, 2));
}

TEST_CASE("fast path region and multiplication counts") {
  for (unsigned m = 2; m <= 16; ++m) {
    for (unsigned B = 1; B <= 3 * m; ++B) {
      const bool legal = m - 1 >= 2 && m - 1 <= B && B + 7 <= 3 * m && m >= 4;
      CHECK(fast_path_applies(m, B) == legal);
      if (!legal) continue;
      CAPTURE(m);
      CAPTURE(B);
      const HFastResult r = h_fast(m, B);
      CHECK(r.value == h(m, B));
      CHECK(r.d == 2 + (static_cast<int>(B) - static_cast<int>(m) >= 0
                            ? (static_cast<int>(B) - static_cast<int>(m)) / 2
                            : -1 * ((static_cast<int>(m) - static_cast<int>(B) + 1) / 2)));
      CHECK(r.count.multiplications == fast_mulcount_closed_form(m, r.d));
    }
  }
}

TEST_CASE("od(2^e!) examples") {
  CHECK(od_factorial_naive(2, 8) == Residue2(8, 3));
  CHECK(bbe_encode(od_factorial_naive(2, 8), 3) == "110");
  CHECK(od_factorial_naive(3, 16) == Residue2(16, 315));
  CHECK(bbe_encode(od_factorial_naive(3, 16), 9) == "110111001");
  CHECK(od_factorial_prop14(2, 8) == Residue2(8, 3));
  CHECK(od_factorial_prop14(3, 16) == Residue2(16, 315));

  const auto rows = reference_rows();
  CHECK(bbe_encode(od_factorial_naive(5, 40), 40) == "1101001011001110100011000001101010001001");
  CHECK(bbe_encode(od_factorial_naive(5, 40), 40) == rows[5]);
  CHECK(bbe_encode(od_factorial_prop14(6, 40), 40) == rows[6]);
  CHECK(bbe_encode(od_factorial_fast(30, 40).residue, 40) == rows[30]);
}

TEST_CASE("naive od(2^e!) against the exact factorial") {
  for (unsigned e = 1; e <= 9; ++e) {
    CHECK(od_factorial_naive(e, 100) == oracle::to_residue(oracle::od_factorial(e), 100));
  }
}

TEST_CASE("three algorithms agree") {
  for (unsigned e = 2; e <= 16; ++e) {
    for (unsigned B : {8u, 16u, 40u, 64u}) {
      CAPTURE(e);
      CAPTURE(B);
      const Residue2 naive = od_factorial_naive(e, B);
      CHECK(od_factorial_prop14(e, B) == naive);
      const OdFactorialResult fast = od_factorial_fast(e, B);
      CHECK(fast.residue == naive);
      CHECK(fast.residue.is_odd());
      CHECK(fast.e == e);
      CHECK(fast.width == B);
    }
  }
}

TEST_CASE("fast total multiplication count") {
  // below e = 16 no level reaches B <= 3m - 7 at B = 40
  for (unsigned e = 10; e < 16; ++e) {
    const auto r = od_factorial_fast(e, 40);
    for (const auto& lv : r.levels) CHECK_FALSE(lv.fast);
  }
  for (unsigned e = 16; e <= 22; ++e) {
    CAPTURE(e);
    const auto r = od_factorial_fast(e, 40);
    MulCount direct;
    (void)od_factorial_prop14(e, 40, &direct);
    CHECK(r.total.multiplications < direct.multiplications);
    std::uint64_t direct_levels = 0;
    std::uint64_t fast_levels = 0;
    for (const auto& lv : r.levels) {
      direct_levels += direct_mulcount_closed_form(lv.m);
      fast_levels += lv.measured;
    }
    CHECK(fast_levels < direct_levels);
  }
}

TEST_CASE("narrow widths take the widened shortcut") {
  const auto r = od_factorial_fast(20, 8);
  for (const auto& lv : r.levels) {
    if (lv.m >= 10) {
      CHECK(lv.width == lv.m - 1);
      CHECK(lv.fast);
    }
  }
  CHECK(r.residue == od_factorial_naive(20, 8));
}

TEST_CASE("stability between consecutive stages") {
  for (unsigned e = 3; e <= 20; ++e) {
    CHECK(od_factorial_fast(e - 1, e).residue == od_factorial_fast(e, e).residue);
  }
}

TEST_CASE("od is a bijection from (2^(e-1), 2^e] onto the odd numbers below 2^e") {
  for (unsigned e = 1; e <= 16; ++e) {
    std::set<std::uint64_t> image;
    for (std::uint64_t i = (std::uint64_t{1} << (e - 1)) + 1; i <= (std::uint64_t{1} << e); ++i) {
      image.insert(od(i));
    }
    std::set<std::uint64_t> odds;
    for (std::uint64_t j = 1; j < (std::uint64_t{1} << e); j += 2) odds.insert(j);
    CHECK(image == odds);
  }
}

TEST_CASE("double factorial is 2^e + 1 mod 2^(e+1)") {
  for (unsigned e = 3; e <= 24; ++e) {
    CHECK(double_factorial(e, e + 1) == Residue2(e + 1, (std::uint64_t{1} << e) + 1));
  }
}

TEST_CASE("uns windows") {
  const BitWindow w = uns(17, 7);
  CHECK(w.lo == 18);
  CHECK(w.d == 7);
  CHECK(bbe_encode(w.value, 7) == "0101001");
  CHECK(w.value == Residue2(7, 74));
  // row 2 is zero past bit 4
  CHECK(uns(2, 1).value == Residue2(1, 0));
  CHECK(window(od_factorial_fast(2, 40).residue, 10, 20).value.is_zero());
}

#include "odfact/commands.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "odfact/bfile.hpp"
#include "odfact/factorial_core.hpp"
#include "odfact/theorem_lab.hpp"

namespace odfact::cli {

namespace {

constexpr unsigned kTableMaxE = 40;
constexpr unsigned kTableMaxBits = 64;
constexpr unsigned kDeskBits = 64;
constexpr unsigned kMaxLimitBits = 200;
constexpr unsigned kOeisCap = 64;
// direct h(m) is measured only up to this level in bench
constexpr unsigned kBenchDirectMax = 24;

CommandResult usage(std::string message) {
  return CommandResult{kExitUsage, {}, "error: " + std::move(message) + "\n"};
}

std::int64_t parse_i64(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw parse_error("invalid range '" + std::string(whole) + "'");
  }
  return v;
}

std::string certificate_summary(const LimitBits& bits) {
  std::ostringstream os;
  os << "certificate: " << to_string(bits.name) << " mod 2^" << bits.width;
  for (const auto& c : bits.certificates) {
    os << "; " << to_string(c.limit) << " stage " << c.stage << " vs " << c.check_stage
       << (c.agreed ? " agree" : " DISAGREE");
  }
  return os.str();
}

void expand(const CheckerInfo& checker, const std::map<std::string, Range>& ranges,
            std::size_t index, ParamSet& current, std::vector<ParamSet>& out) {
  if (index == checker.params.size()) {
    out.push_back(current);
    return;
  }
  const ParamSpec& spec = checker.params[index];
  std::int64_t lo = spec.default_lo;
  std::int64_t hi = spec.default_hi;
  if (const auto it = ranges.find(spec.name); it != ranges.end()) {
    lo = it->second.lo;
    hi = it->second.hi;
  } else if (spec.dependent_default) {
    std::tie(lo, hi) = spec.dependent_default(current);
  }
  for (std::int64_t v = lo; v <= hi; ++v) {
    current[spec.name] = v;
    expand(checker, ranges, index + 1, current, out);
  }
  current.erase(spec.name);
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Range parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const std::int64_t v = parse_i64(text, text);
    return {v, v};
  }
  Range r{parse_i64(text.substr(0, dots), text), parse_i64(text.substr(dots + 2), text)};
  if (r.lo > r.hi) throw parse_error("empty range '" + std::string(text) + "'");
  return r;
}

BitsFormat parse_bits_format(std::string_view text) {
  if (text == "bbe") return BitsFormat::bbe;
  if (text == "binary") return BitsFormat::binary;
  if (text == "bfile") return BitsFormat::bfile;
  throw parse_error("unknown format '" + std::string(text) + "' (expected bbe, binary or bfile)");
}

CommandResult cmd_table(unsigned e_max, unsigned bits) {
  if (e_max < 2 || e_max > kTableMaxE) {
    return usage("--e-max must be in 2.." + std::to_string(kTableMaxE));
  }
  if (bits < 1 || bits > kTableMaxBits) {
    return usage("--bits must be in 1.." + std::to_string(kTableMaxBits));
  }
  std::ostringstream os;
  for (unsigned e = 2; e <= e_max; ++e) {
    const std::string row = bbe_encode(od_factorial_fast(e, bits).residue, bits);
    os << std::setw(2) << e << ' ' << row.substr(0, e + 1);
    if (bits > e + 1) os << ' ' << row.substr(e + 1);
    os << '\n';
  }
  return {kExitOk, os.str(), {}};
}

CommandResult cmd_bits(LimitName which, unsigned n, BitsFormat format) {
  if (n < 1 || n > kMaxLimitBits) {
    return usage("bit count must be in 1.." + std::to_string(kMaxLimitBits));
  }
  CommandResult result;
  if (n > kDeskBits) {
    result.err += "warning: more than " + std::to_string(kDeskBits) +
                  " bits requested; this may take a long time\n";
  }
  const LimitBits bits = limit_bits(which, n);
  switch (format) {
    case BitsFormat::bbe: result.out = bbe_encode(bits.residue, n) + "\n"; break;
    case BitsFormat::binary: result.out = binary_encode(bits.residue, n) + "\n"; break;
    case BitsFormat::bfile:
      result.out = format_bfile(bits.residue, n,
                                {"bits of the 2-adic integer " + std::string(to_string(which)) +
                                     ", index k is bit k",
                                 certificate_summary(bits)});
      break;
  }
  result.err += certificate_summary(bits) + "\n";
  if (!bits.certified()) result.status = kExitCheckFailed;
  return result;
}

CommandResult cmd_verify(std::string_view id, const std::map<std::string, Range>& ranges,
                         unsigned threads) {
  const CheckerInfo* checker = find_checker(id);
  if (!checker) return usage("unknown theorem id '" + std::string(id) + "' (see verify --list)");
  for (const auto& [name, range] : ranges) {
    bool known = false;
    for (const auto& p : checker->params) known = known || p.name == name;
    if (!known) return usage("theorem '" + checker->id + "' takes no parameter --" + name);
  }
  std::vector<ParamSet> tuples;
  ParamSet current;
  expand(*checker, ranges, 0, current, tuples);

  std::vector<CheckReport> reports;
  try {
    reports = run_sweep(*checker, tuples, threads);
  } catch (const invalid_parameter& ex) {
    return usage(ex.what());
  }
  CommandResult result;
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    os << r.to_record() << '\n';
    if (!r.pass) ++failed;
  }
  os << "# theorem=" << checker->id << " checks=" << reports.size()
     << " passed=" << reports.size() - failed << " failed=" << failed << '\n';
  result.out = os.str();
  result.status = failed == 0 ? kExitOk : kExitCheckFailed;
  return result;
}

CommandResult cmd_list_checkers() {
  std::ostringstream os;
  for (const auto& c : checker_registry()) {
    os << std::left << std::setw(10) << c.id << ' ';
    for (std::size_t i = 0; i < c.params.size(); ++i) os << (i ? "," : "") << c.params[i].name;
    os << "  " << c.summary << '\n';
  }
  return {kExitOk, os.str(), {}};
}

CommandResult cmd_bench(unsigned e, unsigned B) {
  if (e < 2 || e > kTableMaxE) return usage("--e must be in 2.." + std::to_string(kTableMaxE));
  if (B < 1 || B > kTableMaxBits) return usage("--B must be in 1.." + std::to_string(kTableMaxBits));

  const OdFactorialResult fast = od_factorial_fast(e, B);
  CommandResult result;
  std::ostringstream os;
  os << "# od(2^" << e << "!) mod 2^" << B << "\n";
  os << std::setw(3) << "m" << std::setw(8) << "path" << std::setw(7) << "width" << std::setw(4)
     << "d" << std::setw(16) << "direct" << std::setw(16) << "direct_meas" << std::setw(12)
     << "fast" << std::setw(12) << "fast_meas" << '\n';
  bool mismatch = false;
  std::uint64_t direct_total = 0;
  for (const LevelCount& lv : fast.levels) {
    const std::uint64_t direct = direct_mulcount_closed_form(lv.m);
    direct_total += direct;
    std::string direct_meas = "-";
    if (lv.m <= kBenchDirectMax) {
      MulCount c;
      (void)h(lv.m, lv.width, &c);
      direct_meas = std::to_string(c.multiplications);
      mismatch = mismatch || c.multiplications != direct;
    }
    const std::uint64_t expected = lv.fast ? fast_mulcount_closed_form(lv.m, lv.d) : direct;
    mismatch = mismatch || lv.measured != expected;
    const char* path = !lv.fast ? "direct" : (lv.width != B ? "widened" : "fast");
    os << std::setw(3) << lv.m << std::setw(8) << path << std::setw(7) << lv.width << std::setw(4)
       << (lv.fast ? std::to_string(lv.d) : "-") << std::setw(16) << direct << std::setw(16)
       << direct_meas << std::setw(12) << (lv.fast ? std::to_string(expected) : "-")
       << std::setw(12) << lv.measured << '\n';
  }
  std::uint64_t fast_level_total = 0;
  for (const LevelCount& lv : fast.levels) fast_level_total += lv.measured;
  os << "# h(m) multiplications: direct=" << direct_total << " fast=" << fast_level_total << '\n';
  os << "# od(2^e!) total multiplications (fast, including powers): "
     << fast.total.multiplications << '\n';
  os << "# residue bbe=" << bbe_encode(fast.residue, B) << '\n';

  std::ostringstream timing;
  timing << "time fast: " << seconds([&] { (void)od_factorial_fast(e, B); }) << " s\n";
  if (e <= kBenchDirectMax) {
    Residue2 direct_residue;
    timing << "time prop14 (direct h): "
           << seconds([&] { direct_residue = od_factorial_prop14(e, B); }) << " s\n";
    if (direct_residue != fast.residue) {
      timing << "error: direct and fast residues differ\n";
      mismatch = true;
    }
  } else {
    timing << "time prop14 (direct h): skipped, needs about 2^" << e - 1 << " multiplications\n";
  }
  if (mismatch) timing << "error: a measured count differs from its closed form\n";
  result.out = os.str();
  result.err = timing.str();
  result.status = mismatch ? kExitCheckFailed : kExitOk;
  return result;
}

CommandResult cmd_oeis_compare(std::istream& in, LimitName which) {
  BFile file;
  try {
    file = parse_bfile(in);
  } catch (const parse_error& ex) {
    return usage(std::string("b-file: ") + ex.what());
  }
  CommandResult result;
  std::vector<BFileEntry> used;
  for (const auto& entry : file.entries) {
    if (entry.index < 0) {
      return usage("b-file: line " + std::to_string(entry.line) + ": negative index");
    }
    if (entry.value != 0 && entry.value != 1) {
      return usage("b-file: line " + std::to_string(entry.line) + ": value " +
                   std::to_string(entry.value) + " is not a bit");
    }
    if (entry.index < kOeisCap) used.push_back(entry);
  }
  if (used.size() < file.entries.size()) {
    result.err += "warning: " + std::to_string(file.entries.size() - used.size()) +
                  " entries beyond index " + std::to_string(kOeisCap - 1) + " ignored\n";
  }
  if (used.empty()) {
    result.err += "warning: no data lines; agreement is vacuous\n";
    result.out = "agreement: 0 bits compared\n";
    return result;
  }
  const auto width = static_cast<unsigned>(used.back().index + 1);
  const LimitBits bits = limit_bits(which, width);
  result.err += certificate_summary(bits) + "\n";
  for (const auto& entry : used) {
    const bool expected = bits.residue.bit(static_cast<unsigned>(entry.index));
    if (expected != (entry.value == 1)) {
      result.out = "mismatch at index " + std::to_string(entry.index) + " (line " +
                   std::to_string(entry.line) + "): file has " + std::to_string(entry.value) +
                   ", " + std::string(to_string(which)) + " has " + (expected ? "1" : "0") + "\n";
      result.status = kExitCheckFailed;
      return result;
    }
  }
  result.out = "agreement: " + std::to_string(used.size()) + " bits compared, indices " +
               std::to_string(used.front().index) + ".." + std::to_string(used.back().index) + "\n";
  if (!bits.certified()) result.status = kExitCheckFailed;
  return result;
}

CommandResult cmd_oeis_compare_file(const std::string& path, LimitName which) {
  std::ifstream in(path);
  if (!in) return usage("cannot open '" + path + "'");
  return cmd_oeis_compare(in, which);
}

}  // namespace odfact::cli

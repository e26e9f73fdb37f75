// odfact: odd parts of 2^e! and the 2-adic limits z, w, zw, K.
//
//   odfact table [--e-max N] [--bits N]
//   odfact bits z|w|zw|K N [--format bbe|binary|bfile]
//   odfact verify ID [--e R] [--d R] [--m R] [--B R] [--A R] [--A2 R] [--j R]
//   odfact bench [--e N] [--B N]
//   odfact oeis-compare FILE [--which z]
//
// Exit status: 0 all checks pass, 1 verification failure, 2 usage error.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odfact/commands.hpp"
#include "odfact/limits.hpp"

namespace {

int emit(const odfact::cli::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}

// "--A -2..3" would otherwise be read as an unknown short flag.
std::vector<std::string> glue_negative_values(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    const bool is_long_opt = a.size() > 2 && a.rfind("--", 0) == 0 && a.find('=') == std::string::npos;
    const bool next_negative = i + 1 < args.size() && args[i + 1].size() > 1 &&
                               args[i + 1][0] == '-' && std::isdigit(static_cast<unsigned char>(args[i + 1][1]));
    if (is_long_opt && next_negative) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace odfact::cli;

  CLI::App app{"odd parts of 2^e! and related 2-adic integers", "odfact"};
  app.require_subcommand(1);

  auto* table = app.add_subcommand("table", "BBE rows of od(2^e!) with the stable/unstable split");
  unsigned table_e_max = 30;
  unsigned table_bits = 40;
  table->add_option("--e-max", table_e_max, "largest e (2..40)")->capture_default_str();
  table->add_option("--bits", table_bits, "bits per row (1..64)")->capture_default_str();

  auto* bits = app.add_subcommand("bits", "first N bits of z, w, zw or K");
  std::string bits_which;
  unsigned bits_n = 0;
  std::string bits_format = "bbe";
  bits->add_option("which", bits_which, "z, w, zw or K")->required();
  bits->add_option("n", bits_n, "number of bits")->required();
  bits->add_option("--format", bits_format, "bbe (bit 0 first), binary, or bfile")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "sweep a congruence checker");
  std::string verify_id;
  bool verify_list = false;
  unsigned verify_threads = 0;
  std::map<std::string, std::string> range_text;
  verify->add_option("id", verify_id, "checker id (see --list)");
  verify->add_flag("--list", verify_list, "list checker ids");
  verify->add_option("--threads", verify_threads, "worker threads, 0 = all cores");
  for (const char* name : {"e", "d", "m", "B", "A", "A2", "j"}) {
    verify->add_option(std::string("--") + name, range_text[name], "value or range lo..hi");
  }

  auto* bench = app.add_subcommand("bench", "multiplication counts, direct vs accelerated h(m)");
  unsigned bench_e = 30;
  unsigned bench_B = 40;
  bench->add_option("--e", bench_e, "exponent (2..40)")->capture_default_str();
  bench->add_option("--B", bench_B, "width in bits (1..64)")->capture_default_str();

  auto* oeis = app.add_subcommand(
      "oeis-compare",
      "compare an OEIS b-file with the bits of z. The file's own indices are trusted: index k "
      "is compared with bit k (bit 0 is the units bit). Indices past 63 are ignored.");
  std::string oeis_path;
  std::string oeis_which = "z";
  oeis->add_option("file", oeis_path, "b-file path")->required();
  oeis->add_option("--which", oeis_which, "limit to compare against")->capture_default_str();

  const auto args = glue_negative_values(argc, argv);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*table) return emit(cmd_table(table_e_max, table_bits));
    if (*bits) {
      return emit(cmd_bits(odfact::parse_limit_name(bits_which), bits_n,
                           parse_bits_format(bits_format)));
    }
    if (*verify) {
      if (verify_list) return emit(cmd_list_checkers());
      if (verify_id.empty()) {
        std::cerr << "error: verify needs a checker id (see verify --list)\n";
        return kExitUsage;
      }
      std::map<std::string, Range> ranges;
      for (const auto& [name, text] : range_text) {
        if (!text.empty()) ranges[name] = parse_range(text);
      }
      return emit(cmd_verify(verify_id, ranges, verify_threads));
    }
    if (*bench) return emit(cmd_bench(bench_e, bench_B));
    if (*oeis) return emit(cmd_oeis_compare_file(oeis_path, odfact::parse_limit_name(oeis_which)));
  } catch (const odfact::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

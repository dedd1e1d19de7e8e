// Command line front end: verify, normal-form, dims.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "leftengel/leftengel.hpp"

namespace le = leftengel;

namespace {

constexpr int usage_exit = 2;

le::Tag parse_tag(char c) {
  switch (c) {
    case 'x': return le::Tag::X;
    case 'u': return le::Tag::U;
    case 'v': return le::Tag::V;
    case 'w': return le::Tag::W;
    default: throw le::UsageError(std::string("bad basis symbol '") + c + "'");
  }
}

// "ab=c" sets a.b = b.a = c, where c is a sum of symbols or 0.
le::SeedTable faulty_table(const std::string& text) {
  if (text.size() < 4 || text[2] != '=') throw le::UsageError("fault must look like wx=v");
  le::SeedVector value;
  for (char c : text.substr(3)) {
    if (c == '0') continue;
    if (c == '+') continue;
    value += le::SeedVector::basis(parse_tag(c));
  }
  le::SeedTable t = le::SeedTable::standard();
  t.define(parse_tag(text[0]), parse_tag(text[1]), value);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact GF(2) verification of a left 3-Engel element with non-nilpotent normal closure"};
  app.require_subcommand(1);

  std::string check = "all";
  int n = 4, k = 0, r = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::string format = "text", out_path, fault;
  bool no_timing = false, deep = false;
  auto* verify = app.add_subcommand("verify", "Run one check or all of them");
  verify->add_option("check", check, "Check id or 'all'");
  verify->add_option("--n", n, "Ground set size")->check(CLI::Range(1, le::max_ground_size));
  verify->add_option("--k", k, "Witness chain length (default: every k with 2k+1 <= n)");
  verify->add_option("--r", r, "Number of conjugates (default: 1 and 2)");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--budget", budget, "Samples for randomized checks");
  verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out_path, "Write reports to this file");
  verify->add_flag("--no-timing", no_timing, "Omit elapsed_ms");
  verify->add_flag("--deep", deep, "Run at n = 4, 5, 6, 7 instead of --n");
  verify->add_option("--inject-fault", fault)->group("");

  std::string word_text;
  int nf_n = 4;
  auto* nf = app.add_subcommand("normal-form", "Collect a word into normal form");
  nf->add_option("word", word_text, "Word such as \"w{1} x u{1,2}\"")->required();
  nf->add_option("--n", nf_n, "Ground set size")->check(CLI::Range(1, le::max_ground_size));

  int dims_n = 4;
  auto* dims = app.add_subcommand("dims", "Print dim V* and dim E*");
  dims->add_option("--n", dims_n, "Ground set size")->check(CLI::Range(1, le::max_ground_size));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : usage_exit;
  }

  try {
    if (*verify) {
      le::SuiteConfig cfg;
      cfg.ground_sizes = deep ? std::vector<int>{4, 5, 6, 7} : std::vector<int>{n};
      cfg.seed = seed;
      cfg.sample_budget = budget;
      cfg.checks = {check};
      cfg.k = k;
      cfg.r = r;
      if (!fault.empty()) cfg.table = faulty_table(fault);
      const auto reports = le::run_suite(cfg);
      const auto fmt = format == "json" ? le::Format::json : le::Format::text;
      return le::report_emit(reports, fmt, out_path, std::cout, !no_timing);
    }
    if (*nf) {
      const le::GroundSet gs(nf_n);
      const le::Word w = le::parse_word(word_text, gs);
      const le::NormalForm form = le::collect(w, gs);
      const le::GroupEngine eng(gs);
      const bool roundtrip = eng.word_matrix(w) == eng.normal_form_matrix(form);
      std::cout << form.dump() << '\n' << "roundtrip " << (roundtrip ? 1 : 0) << '\n';
      return roundtrip ? 0 : 1;
    }
    if (*dims) {
      const le::GroundSet gs(dims_n);
      std::cout << "n " << dims_n << "\nD " << gs.star_dim() << "\ndim_Estar " << gs.estar_dim() << '\n';
      return 0;
    }
  } catch (const le::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return usage_exit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage_exit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// One pass/fail line per acceptance criterion.  Optional argv[1]: path to the
// command line tool, used for the determinism criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "leftengel/leftengel.hpp"

using namespace leftengel;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
  void require(const VerificationReport& r) {
    require(r.passed(), r.check_id + ": " + r.details + (r.witness ? " " + r.witness->dump() : ""));
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream limit;
  limit << "runtime " << secs << "s exceeds " << limit_s << "s";
  o.require(secs < limit_s, limit.str());
  if (!o.ok) ++failures;
  std::printf("criterion %2d: %s  %-58s %8.3fs%s%s\n", id, o.ok ? "PASS" : "FAIL", title.c_str(), secs,
              o.note.empty() ? "" : "  ", o.note.c_str());
  std::fflush(stdout);
}

std::string run_command(const std::string& cmd, int& status) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe.get())) out.append(buf, got);
  status = pclose(pipe.release());
  return out;
}

std::string suite_json(std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.ground_sizes = {4};
  cfg.seed = seed;
  std::ostringstream os;
  write_reports(os, run_suite(cfg), Format::json, false);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const SeedAlgebra seed;

  criterion(1, "enveloping algebra: dim 12, basis, relations", 1, [&](Outcome& o) {
    const auto b = seed.enveloping_basis();
    o.require(b.closure_dims.back() == 12, "closure dimension is not 12");
    o.require(span_dimension(b.e) == 12, "e_1..e_12 are dependent");
    o.require(verify_enveloping_basis(seed));
    o.require(verify_enveloping_relations(seed));
  });

  criterion(2, "seed structure: Jacobi, center, W simple", 1,
            [&](Outcome& o) { o.require(verify_seed_structure(seed)); });

  criterion(3, "ad(x)^2 = 0 and ad(x)ad(y)ad(x) = 0, n <= 6", 5, [&](Outcome& o) {
    for (int n = 1; n <= 6; ++n) o.require(verify_adx_sandwich(StarAlgebra(GroundSet(n))));
  });

  criterion(4, "commutator relations, exhaustive n <= 5", 10, [&](Outcome& o) {
    for (int n = 1; n <= 5; ++n) {
      const auto r = verify_commutator_relations(GroupEngine(GroundSet(n)));
      o.require(r);
      const std::size_t masks = (std::size_t{1} << n) - 1;
      o.require(r.params.at("pairs") == masks * masks, "not every ordered pair was checked");
    }
  });

  criterion(5, "normal forms: round trip n=4, 256 elements at n=2", 30, [&](Outcome& o) {
    const auto rt = verify_normal_form_roundtrip(GroupEngine(GroundSet(4)), 1000, 2024, 64);
    o.require(rt);
    const auto un = verify_normal_form_uniqueness(GroupEngine(GroundSet(2)));
    o.require(un);
    o.require(un.params.value("normal_forms", 0) == 256, "normal form count is not 256");
    o.require(un.params.value("group_order", 0) == 256, "group closure size is not 256");
  });

  criterion(6, "left 3-Engel: all 128 W-conjugators n=3, 10^4 words n=5", 120, [&](Outcome& o) {
    const auto ex = engel3_sweep(GroupEngine(GroundSet(3)), SweepMode::exhaustive_w, 1000, 1);
    o.require(ex);
    o.require(ex.params.value("checked", 0) == 128, "exhaustive sweep did not cover 128 conjugators");
    const auto rnd = engel3_sweep(GroupEngine(GroundSet(5)), SweepMode::random, 10000, 2, 64);
    o.require(rnd);
    o.require(rnd.params.value("checked", 0) == 10000, "random sweep did not cover 10^4 words");
  });

  criterion(7, "closed conjugate formula, 10^3 mask lists, n <= 5", 30, [&](Outcome& o) {
    for (int n : {3, 5}) o.require(verify_conjugate_formula(GroupEngine(GroundSet(n)), 1000, 3));
  });

  criterion(8, "witness chains k=1..4 at n=3,5,7,9", 60, [&](Outcome& o) {
    int previous = 0;
    for (int k = 1; k <= 4; ++k) {
      const GroupEngine eng{GroundSet(2 * k + 1)};
      const auto r = witness_chain(eng, k);
      o.require(r);
      o.require(r.params.value("witness", "") == Generator::w(Mask::range(1, 2 * k + 1)).to_string(),
                "wrong witness value");
      const int bound = r.params.value("class_lower_bound", 0);
      o.require(bound == 3 * k && bound > previous, "class lower bounds are not 3k");
      previous = bound;
    }
  });

  criterion(9, "dim E* = 12*2^n - 20 for n = 2, 3, 4", 60, [&](Outcome& o) {
    for (int n : {2, 3, 4}) {
      const StarAlgebra alg{GroundSet(n)};
      o.require(verify_estar_basis(alg));
      o.require(span_dimension(estar_basis(alg).ops) == 12 * (std::size_t{1} << n) - 20, "dimension mismatch");
    }
  });

  criterion(10, "ebar^16 = 0, (1+f)^32 = 1, orders in G divide 32", 60, [&](Outcome& o) {
    o.require(verify_exponent(GroupEngine(GroundSet(4)), 1000, 5));
  });

  criterion(11, "elevated algebra, Q nilpotent, class of 2 conjugates <= 10", 300, [&](Outcome& o) {
    const auto q1 = verify_elevated_algebra(StarAlgebra(GroundSet(3)), 1);
    o.require(q1);
    const auto q2 = verify_elevated_algebra(StarAlgebra(GroundSet(6)), 2);
    o.require(q2);
    const GroupEngine eng(GroundSet(6));
    const std::vector<int> one{3}, two{3, 3};
    o.require(conjugate_block_decomposition(eng, one));
    o.require(conjugate_block_decomposition(eng, two));
    const std::vector<Word> conj{singleton_w_word(Mask::range(1, 3)), singleton_w_word(Mask::range(4, 6))};
    const auto c = conjugates_class_check(eng, conj, 1, 0);
    o.require(c);
    o.require(c.params.value("mode", "") == "exhaustive", "class check was not exhaustive");
    o.require(c.params.value("weight_4r+3_sequences", 0) == 2048, "not all 2^11 commutators evaluated");
  });

  criterion(12, "determinism of 'verify all --n 4 --seed 7'", 60, [&](Outcome& o) {
    o.require(suite_json(7) == suite_json(7), "library runs differ");
    if (!cli.empty()) {
      const std::string cmd = "\"" + cli + "\" verify all --n 4 --seed 7 --format json --no-timing";
      int s1 = 0, s2 = 0;
      const std::string a = run_command(cmd, s1), b = run_command(cmd, s2);
      o.require(s1 == 0 && s2 == 0, "command line run failed");
      o.require(!a.empty() && a == b, "command line outputs differ");
    }
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

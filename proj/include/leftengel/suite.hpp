#pragma once

// Check registry, suite runner and report output.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "engel.hpp"
#include "group.hpp"
#include "report.hpp"
#include "seed_algebra.hpp"
#include "star_algebra.hpp"

namespace leftengel {

struct SuiteConfig {
  std::vector<int> ground_sizes{4};
  std::uint64_t seed = 0;
  std::size_t sample_budget = 1000;
  /// Check ids, or {"all"}.
  std::vector<std::string> checks{"all"};
  /// Witness chain length; 0 runs every k with 2k+1 <= n.
  int k = 0;
  /// Number of conjugates; 0 runs r = 1, 2.
  int r = 0;
  /// Seed table, replaceable for fault injection.
  SeedTable table = SeedTable::standard();
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Registered ids in the order they run.
inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{
      "seed-structure",  "enveloping-basis",  "enveloping-relations", "adx-sandwich",   "local-nilpotency",
      "commutator-relations", "subgroups",    "normal-form",          "normal-form-unique", "engel",
      "conjugate-formula", "witness",         "estar-basis",          "exponent",       "elevated-algebra",
      "block-decomposition", "conjugates-class"};
  return ids;
}

inline void validate(const SuiteConfig& cfg) {
  if (cfg.ground_sizes.empty()) throw UsageError("no ground sizes given");
  for (int n : cfg.ground_sizes) {
    if (n < 1 || n > max_ground_size) throw UsageError("ground size " + std::to_string(n) + " outside [1,10]");
  }
  if (cfg.sample_budget == 0) throw UsageError("sample budget must be positive");
  if (cfg.k < 0 || cfg.r < 0) throw UsageError("k and r must be non-negative");
  if (cfg.checks.empty()) throw UsageError("no checks selected");
  for (const auto& c : cfg.checks) {
    if (c == "all") continue;
    const auto& ids = check_ids();
    if (std::find(ids.begin(), ids.end(), c) == ids.end()) throw UsageError("unknown check id: " + c);
  }
}

namespace detail {

inline std::vector<std::vector<StarBasisElement>> local_nilpotency_sets(const GroundSet& gs) {
  using B = StarBasisElement;
  std::vector<std::vector<B>> sets{{B::x()}, {B::x(), B::w(Mask::of({1}))}};
  if (gs.n >= 2) {
    sets.push_back({B::x(), B::w(Mask::of({1})), B::w(Mask::of({2}))});
    sets.push_back({B::u(Mask::of({1})), B::v(Mask::of({2})), B::w(Mask::of({1, 2}))});
  }
  if (gs.n >= 3) {
    sets.push_back({B::x(), B::w(Mask::of({1})), B::w(Mask::of({2})), B::w(Mask::of({3}))});
  }
  return sets;
}

/// Conjugators for the class check: products of singleton w's over the
/// blocks {1,2,3}, {4,5,6}, ... while they fit, else single w_{j}.
inline std::vector<Word> class_conjugators(const GroundSet& gs, int r) {
  std::vector<Word> out;
  const bool blocks = 3 * r <= gs.n;
  for (int j = 1; j <= r; ++j) {
    if (blocks) {
      out.push_back(singleton_w_word(Mask::range(3 * j - 2, 3 * j)));
    } else {
      out.push_back(Word{{Generator::w(Mask::of({(j - 1) % gs.n + 1}))}});
    }
  }
  return out;
}

}  // namespace detail

/// Runs one check id at one ground size, appending its reports.
inline void run_check(const std::string& id, int n, const SuiteConfig& cfg, std::vector<VerificationReport>& out) {
  const SeedAlgebra seed(cfg.table);
  const GroundSet gs(n);
  auto skipped = [&](const std::string& why, nlohmann::json params) {
    VerificationReport rep;
    rep.check_id = id;
    rep.params = std::move(params);
    rep.status = Status::skipped;
    rep.details = why;
    out.push_back(std::move(rep));
  };

  if (id == "seed-structure") return out.push_back(verify_seed_structure(seed));
  if (id == "enveloping-basis") return out.push_back(verify_enveloping_basis(seed));
  if (id == "enveloping-relations") return out.push_back(verify_enveloping_relations(seed));

  const StarAlgebra alg(gs, seed);
  if (id == "adx-sandwich") return out.push_back(verify_adx_sandwich(alg));
  if (id == "local-nilpotency") {
    for (const auto& gens : detail::local_nilpotency_sets(gs)) out.push_back(verify_local_nilpotency_bound(alg, gens));
    return;
  }
  if (id == "estar-basis") {
    if (n > 5) return skipped("brute-force span limited to n <= 5", {{"n", n}});
    return out.push_back(verify_estar_basis(alg));
  }
  if (id == "elevated-algebra") {
    const int lo = cfg.r ? cfg.r : 1, hi = cfg.r ? cfg.r : 2;
    for (int r = lo; r <= hi; ++r) out.push_back(verify_elevated_algebra(alg, r));
    return;
  }

  const GroupEngine eng(alg);
  const std::size_t budget = cfg.sample_budget;
  if (id == "commutator-relations") return out.push_back(verify_commutator_relations(eng, budget, cfg.seed));
  if (id == "subgroups") return out.push_back(verify_subgroup_structure(eng));
  if (id == "normal-form") return out.push_back(verify_normal_form_roundtrip(eng, budget, cfg.seed));
  if (id == "normal-form-unique") return out.push_back(verify_normal_form_uniqueness(eng, budget, cfg.seed));
  if (id == "engel") {
    if (n <= exhaustive_w_limit) out.push_back(engel3_sweep(eng, SweepMode::exhaustive_w, budget, cfg.seed));
    out.push_back(engel3_sweep(eng, SweepMode::random, budget, cfg.seed));
    return;
  }
  if (id == "conjugate-formula") return out.push_back(verify_conjugate_formula(eng, budget, cfg.seed));
  if (id == "witness") {
    if (cfg.k) return out.push_back(witness_chain(eng, cfg.k));
    if (n < 3) return skipped("needs n >= 3", {{"n", n}});
    for (int k = 1; 2 * k + 1 <= n; ++k) out.push_back(witness_chain(eng, k));
    return;
  }
  if (id == "exponent") return out.push_back(verify_exponent(eng, budget, cfg.seed));
  if (id == "block-decomposition") {
    const int lo = cfg.r ? cfg.r : 1, hi = cfg.r ? cfg.r : 2;
    for (int r = lo; r <= hi; ++r) {
      if (3 * r > n) {
        skipped("needs 3r <= n", {{"n", n}, {"r", r}});
        continue;
      }
      const std::vector<int> sizes(static_cast<std::size_t>(r), 3);
      out.push_back(conjugate_block_decomposition(eng, sizes));
    }
    return;
  }
  if (id == "conjugates-class") {
    const int lo = cfg.r ? cfg.r : 1, hi = cfg.r ? cfg.r : 2;
    for (int r = lo; r <= hi; ++r) {
      const auto conj = detail::class_conjugators(gs, r);
      out.push_back(conjugates_class_check(eng, conj, budget, cfg.seed));
      // Same bound for conjugates by arbitrary elements of G.
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(r));
      std::vector<Word> random_conj;
      for (int j = 0; j < r; ++j) random_conj.push_back(random_word(gs, 16, rng));
      auto rep = conjugates_class_check(eng, random_conj, budget, cfg.seed);
      rep.params["conjugator_seed"] = cfg.seed + static_cast<std::uint64_t>(r);
      out.push_back(std::move(rep));
    }
    return;
  }
  throw UsageError("unknown check id: " + id);
}

/// Ground-size independent checks run once, at the first size.
inline bool size_independent(const std::string& id) {
  return id == "seed-structure" || id == "enveloping-basis" || id == "enveloping-relations";
}

inline std::vector<VerificationReport> run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  const bool all = std::find(cfg.checks.begin(), cfg.checks.end(), "all") != cfg.checks.end();
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < cfg.ground_sizes.size(); ++i) {
    for (const auto& id : check_ids()) {
      if (!all && std::find(cfg.checks.begin(), cfg.checks.end(), id) == cfg.checks.end()) continue;
      if (i > 0 && size_independent(id)) continue;
      run_check(id, cfg.ground_sizes[i], cfg, out);
    }
  }
  return out;
}

enum class Format { text, json };

inline void write_reports(std::ostream& os, const std::vector<VerificationReport>& reports, Format fmt,
                          bool include_timing = true) {
  if (fmt == Format::json) {
    for (const auto& r : reports) os << r.to_json(include_timing).dump() << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& r : reports) width = std::max(width, r.check_id.size());
  std::size_t failed = 0;
  for (const auto& r : reports) {
    std::ostringstream line;
    line << r.check_id << std::string(width - r.check_id.size() + 2, ' ');
    std::string st = to_string(r.status);
    line << st << std::string(9 - st.size(), ' ');
    if (r.params.contains("n")) line << "n=" << r.params["n"].dump() << "  ";
    if (include_timing) line << r.elapsed_ms << "ms  ";
    line << r.details;
    if (r.witness) line << "  witness=" << r.witness->dump();
    os << line.str() << '\n';
    if (r.failed()) ++failed;
  }
  os << reports.size() << " reports, " << failed << " failed\n";
}

inline int exit_code(const std::vector<VerificationReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.failed(); }) ? 1 : 0;
}

/// Writes to `path`, or stdout when it is empty.  Returns the exit code.
inline int report_emit(const std::vector<VerificationReport>& reports, Format fmt, const std::string& path,
                       std::ostream& stdout_stream, bool include_timing = true) {
  if (path.empty()) {
    write_reports(stdout_stream, reports, fmt, include_timing);
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    write_reports(f, reports, fmt, include_timing);
    if (!f) throw std::runtime_error("write failed: " + path);
  }
  return exit_code(reports);
}

}  // namespace leftengel

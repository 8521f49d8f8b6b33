// Acceptance suite: one line per criterion, exit code 1 if any fails.
//
// Regime criteria run at desk scale (50x50, 2*10^4 MC steps, window 1000)
// over 5 seeds and vote per seed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "opd/dynamics.hpp"
#include "opd/experiments.hpp"
#include "opd/io.hpp"
#include "reference_engine.hpp"

namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;  // 0: reported only
  std::function<Verdict()> check;
};

constexpr std::size_t kSeeds = 5;
constexpr std::uint64_t kBaseSeed = 1;

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------------------

Verdict payoff_matrix() {
  using S = opd::Strategy;
  const std::array<S, 3> order = {S::Cooperate, S::Defect, S::Abstain};
  int checked = 0;
  for (double b : {1.18, 1.9}) {
    for (double l : {0.0, 0.6}) {
      // Rows: focal C, D, A; columns: opponent C, D, A.
      const double expected[3][3] = {{1.0, 0.0, l}, {b, 0.0, l}, {l, l, l}};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (opd::payoff(order[i], order[j], opd::GameParams{b, l}) != expected[i][j]) {
            return {false, "mismatch at b=" + fmt(b) + " l=" + fmt(l)};
          }
          ++checked;
        }
      }
    }
  }
  return {true, std::to_string(checked) + " entries exact"};
}

Verdict static_reduction() {
  for (double delta : {0.2, 0.4, 0.8, 1.0}) {
    opd::SimConfig cfg;
    cfg.lattice.side = 20;
    cfg.game = {1.9, 0.6};
    cfg.coevo = {delta, 0.0};
    cfg.mc_steps = 1000;
    cfg.measure_window = 1;
    cfg.seed = 3;
    const auto result = opd::run_simulation(cfg);
    const auto w = result.final_population.weights();
    if (!std::all_of(w.begin(), w.end(), [](double v) { return v == 1.0; })) {
      return {false, "weight drifted at delta=" + fmt(delta)};
    }
  }
  return {true, "all weights exactly 1.0 after 1000 MC steps, delta in {0.2,0.4,0.8,1}"};
}

Verdict weight_bound_fuzz() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr std::uint64_t kTotal = 1'000'000;
  constexpr std::uint64_t kPerConfig = 10'000;
  std::uint64_t steps = 0;
  for (std::uint64_t cfg_index = 0; steps < kTotal; ++cfg_index) {
    const auto side = static_cast<std::uint32_t>(3 + gen() % 10);
    const double b = 1.0 + unit(gen);
    const double l = 0.999 * unit(gen);
    double delta = 1.0 - unit(gen);  // (0, 1]
    double ratio = unit(gen);
    if (cfg_index % 7 == 0) ratio = 1.0;
    if (cfg_index % 11 == 0) delta = 1.0;
    const opd::GameParams g{b, l};
    const opd::CoevolutionParams c{delta, ratio};
    auto pop = opd::build_lattice(opd::LatticeConfig{side}, gen());
    opd::Rng rng(gen());
    for (std::uint64_t i = 0; i < kPerConfig; ++i, ++steps) {
      const auto out = opd::mc_inner_step(pop, g, c, rng);
      for (std::size_t k = 0; k < opd::kNeighborhoodSize; ++k) {
        const double w = pop.weight_at(out.focal, k);
        if (w < c.lower_bound() || w > c.upper_bound()) {
          return {false, "weight " + fmt(w) + " outside band, delta=" + fmt(delta)};
        }
      }
    }
    for (double w : pop.weights()) {
      if (w < c.lower_bound() || w > c.upper_bound()) return {false, "band violated"};
    }
  }
  return {true, std::to_string(steps) + " inner steps, all weights within [1-delta, 1+delta]"};
}

Verdict conservation_and_determinism() {
  opd::SimConfig cfg;
  cfg.lattice.side = 20;
  cfg.game = {1.9, 0.6};
  cfg.coevo = {0.8, 0.2};
  cfg.mc_steps = 500;
  cfg.measure_window = 100;
  cfg.seed = 11;
  const auto a = opd::run_simulation(cfg);
  const auto b = opd::run_simulation(cfg);
  double worst = 0.0;
  for (const auto* run : {&a, &b}) {
    for (const auto& r : run->series) worst = std::max(worst, std::abs(r.sum() - 1.0));
  }
  if (worst > 1e-12) return {false, "fraction sum off by " + std::to_string(worst)};

  const fs::path dir = fs::temp_directory_path() / "opd_acceptance";
  opd::write_fractions_csv(a.series, dir / "a.csv");
  opd::write_fractions_csv(b.series, dir / "b.csv");
  if (opd::read_file(dir / "a.csv") != opd::read_file(dir / "b.csv")) {
    return {false, "CSV outputs differ"};
  }
  return {true, "max |sum-1| = " + std::to_string(worst) + ", CSV byte-identical"};
}

Verdict oracle_equivalence() {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kConfigs = 20;
  for (int trial = 0; trial < kConfigs; ++trial) {
    const int side = 3 + trial % 3;
    const double b = 1.0 + unit(gen);
    const double l = 0.999 * unit(gen);
    const double delta = 1.0 - unit(gen);
    const double ratio = trial % 5 == 0 ? 0.0 : unit(gen);
    const std::uint64_t seed = gen();

    const opd::GameParams g{b, l};
    const opd::CoevolutionParams c{delta, ratio};
    auto pop = opd::build_lattice(opd::LatticeConfig{static_cast<std::uint32_t>(side)}, seed);
    auto rng = opd::Rng::stream(seed, 1);
    oracle::ReferenceEngine ref(side, b, l, delta, ratio, seed);

    for (int step = 0; step <= 10; ++step) {
      if (step > 0) {
        opd::mc_step(pop, g, c, rng);
        ref.mc_step();
      }
      for (opd::AgentIndex x = 0; x < pop.size(); ++x) {
        const int r = static_cast<int>(x) / side;
        const int col = static_cast<int>(x) % side;
        if (static_cast<int>(opd::to_ordinal(pop.strategy(x))) != ref.cell(r, col)) {
          return {false, "strategy mismatch, config " + std::to_string(trial) + " step " +
                             std::to_string(step)};
        }
        for (opd::AgentIndex y : pop.neighborhood(x)) {
          const int yr = static_cast<int>(y) / side;
          const int yc = static_cast<int>(y) % side;
          if (pop.edge_weight(x, y) != ref.weight(r, col, yr, yc)) {
            return {false, "weight mismatch, config " + std::to_string(trial) + " step " +
                               std::to_string(step)};
          }
        }
      }
    }
  }
  return {true, std::to_string(kConfigs) + " configs x 10 MC steps, state-for-state equal"};
}

// Desk-scale regime runs; the monotone-amplitude check reuses the ratio 0
// and ratio 1 runs of regimes A and B.
std::vector<opd::FractionTriple> desk_runs(double b, double l, double ratio) {
  const opd::SimConfig base = opd::presets::desk_config();
  const opd::SweepPoint point{b, l, ratio, 0.8};
  std::vector<opd::FractionTriple> out(kSeeds);
  opd::run_jobs(kSeeds, workers(), [&](std::size_t k) {
    const auto cfg = opd::point_config(base, point, opd::run_seed(kBaseSeed, point, k));
    out[k] = opd::run_simulation(cfg).stationary(cfg.measure_window);
  });
  return out;
}

const std::vector<opd::FractionTriple>& cached(double b, double l, double ratio) {
  static std::vector<std::pair<std::array<double, 3>, std::vector<opd::FractionTriple>>> cache;
  for (const auto& [key, runs] : cache) {
    if (key == std::array<double, 3>{b, l, ratio}) return runs;
  }
  cache.emplace_back(std::array<double, 3>{b, l, ratio}, desk_runs(b, l, ratio));
  return cache.back().second;
}

Verdict vote(const std::vector<opd::FractionTriple>& runs, std::size_t needed,
             const std::function<bool(const opd::FractionTriple&)>& ok,
             const std::function<double(const opd::FractionTriple&)>& shown) {
  std::size_t hits = 0;
  std::string values;
  for (const auto& r : runs) {
    hits += ok(r) ? 1 : 0;
    values += (values.empty() ? "" : " ") + fmt(shown(r));
  }
  return {hits >= needed,
          std::to_string(hits) + "/" + std::to_string(runs.size()) + " seeds [" + values + "]"};
}

Verdict regime_a() {
  return vote(cached(1.9, 0.6, 0.0), 4, [](const auto& f) { return f.c < 0.01; },
              [](const auto& f) { return f.c; });
}

Verdict regime_b() {
  return vote(cached(1.9, 0.6, 1.0), 4, [](const auto& f) { return f.c > 0.6; },
              [](const auto& f) { return f.c; });
}

Verdict regime_c() {
  return vote(cached(1.9, 0.6, 0.2), 3,
              [](const auto& f) { return f.c > 0.05 && f.d > 0.05 && f.a > 0.05; },
              [](const auto& f) { return std::min({f.c, f.d, f.a}); });
}

Verdict loner_degeneracy() {
  return vote(cached(1.18, 0.0, 0.4), 4, [](const auto& f) { return f.a < 0.05; },
              [](const auto& f) { return f.a; });
}

Verdict monotone_amplitude() {
  const auto mean_c = [](const std::vector<opd::FractionTriple>& runs) {
    double s = 0.0;
    for (const auto& r : runs) s += r.c;
    return s / static_cast<double>(runs.size());
  };
  const double low = mean_c(cached(1.9, 0.6, 0.0));
  const double high = mean_c(cached(1.9, 0.6, 1.0));
  return {high - low > 0.5, "mean rho_c " + fmt(high) + " (ratio 1) - " + fmt(low) +
                                " (ratio 0) = " + fmt(high - low)};
}

Verdict snapshot_golden() {
  const fs::path golden = OPD_GOLDEN_DIR;
  opd::SimConfig cfg;
  cfg.lattice.side = 3;
  cfg.game = {1.9, 0.6};
  cfg.coevo = {0.8, 0.2};
  cfg.mc_steps = 3;
  cfg.measure_window = 1;
  cfg.seed = 2024;
  cfg.snapshot_steps = {0, 1, 2, 3};
  const auto result = opd::run_simulation(cfg);
  const fs::path dir = fs::temp_directory_path() / "opd_acceptance" / "snapshots";
  for (const auto& snap : result.snapshots) {
    const auto name = opd::snapshot_filename(snap.step);
    opd::write_snapshot_ppm(snap.population, dir / name);
    if (opd::read_file(dir / name) != opd::read_file(golden / name)) {
      return {false, name + " differs from golden"};
    }
  }
  return {true, std::to_string(result.snapshots.size()) + " files byte-identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"payoff-matrix", 1.0, payoff_matrix},
      {"static-reduction", 5.0, static_reduction},
      {"weight-bound-fuzz", 30.0, weight_bound_fuzz},
      {"conservation-determinism", 10.0, conservation_and_determinism},
      {"oracle-equivalence", 10.0, oracle_equivalence},
      {"regime-a-no-cooperators", 0.0, regime_a},
      {"regime-b-cooperator-dominance", 0.0, regime_b},
      {"regime-c-cyclic-coexistence", 0.0, regime_c},
      {"loner-degeneracy-l0", 0.0, loner_degeneracy},
      {"monotone-amplitude", 0.0, monotone_amplitude},
      {"snapshot-golden", 1.0, snapshot_golden},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      v.pass = false;
      v.detail += " (exceeded " + fmt(c.time_limit_s) + " s)";
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s  %-30s %8.2fs  %s\n", v.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

// Acceptance suite: exercises every stated correctness gate end to end and
// prints one PASS/FAIL line per criterion. Expects the CLI binary path as
// argv[1] for the determinism checks.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <lotteryforge/lotteryforge.hpp>

#include "test_helpers.hpp"

using namespace lotteryforge;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& note) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << index << ": "
            << name;
  if (!note.empty()) std::cout << " (" << note << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

// ----------------------------------------------------------------------
// Independent exhaustive oracle, built from the raw definition only:
// smallest s such that some s-subset of all k-blocks meets every p-set in
// at least r vertices. No solver code involved.

std::vector<std::uint64_t> subset_masks(int n, int size) {
  std::vector<std::uint64_t> out;
  std::vector<int> s;
  if (!first_subset(s, n, size)) return out;
  do {
    std::uint64_t m = 0;
    for (int v : s) m |= std::uint64_t{1} << v;
    out.push_back(m);
  } while (next_subset(s, n));
  return out;
}

std::uint64_t oracle_min_lottery(int n, int k, int r, int p) {
  const std::vector<std::uint64_t> psets = subset_masks(n, p);
  const std::vector<std::uint64_t> blocks = subset_masks(n, k);
  const int total = static_cast<int>(blocks.size());
  for (int s = 0;; ++s) {
    std::vector<int> pick;
    if (!first_subset(pick, total, s)) continue;
    do {
      bool all_met = true;
      for (std::uint64_t P : psets) {
        bool met = false;
        for (int bi : pick)
          if (std::popcount(blocks[bi] & P) >= r) {
            met = true;
            break;
          }
        if (!met) {
          all_met = false;
          break;
        }
      }
      if (all_met) return s;
    } while (next_subset(pick, total));
  }
}

// Brute-force M_{k,n} from cofactor determinants; mirrors nothing in the
// library's determinant code.
long long cofactor_det(const std::vector<std::vector<long long>>& m) {
  const std::size_t d = m.size();
  if (d == 0) return 1;
  if (d == 1) return m[0][0];
  long long acc = 0;
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t i = 1; i < d; ++i) {
      std::vector<long long> row;
      for (std::size_t j = 0; j < d; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    const long long term = m[0][c] * cofactor_det(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

long long brute_m_lcm(int k, int n) {
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  long long acc = 1;
  for (;;) {
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long long e = 1;
        for (int t = 0; t < i; ++t) e *= pick[j];
        m[i][j] = e;
      }
    acc = std::lcm(acc, cofactor_det(m));
    int i = n - 1;
    while (i >= 0 && pick[i] == k - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return acc;
}

// ----------------------------------------------------------------------
// CLI harness.

struct CliResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& binary, const std::string& args) {
  const std::string cmd = "'" + binary + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// ----------------------------------------------------------------------
// Criteria.

bool criterion_gdd(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  const std::array<std::array<int, 3>, 5> cases = {{
      {3, 2, 2}, {3, 2, 4}, {4, 2, 7}, {4, 3, 2}, {5, 3, 13}}};
  for (const auto& [k, r, N] : cases) {
    const SetSystem g = gdd(N, k, r);
    std::uint64_t expected = 1;
    for (int i = 0; i < r; ++i) expected *= static_cast<std::uint64_t>(N);
    ok = ok && g.size() == expected;
    ok = ok && verify_gdd(g, PartiteLayout(k, N), r).ok;
  }
  const double dt = seconds_since(t0);
  note = fmt_seconds(dt);
  return ok && dt < 5.0;
}

bool criterion_m_lcm(std::string& note) {
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    ok = ok && m_lcm(k, 1) == 1;
    ok = ok && brute_m_lcm(k, 1) == 1;
  }
  ok = ok && brute_m_lcm(4, 2) == 6 && m_lcm(4, 2) == 6;
  ok = ok && brute_m_lcm(5, 2) == 12 && m_lcm(5, 2) == 12;
  ok = ok && brute_m_lcm(5, 3) == 48 && m_lcm(5, 3) == 48;
  note = "brute-force enumerator agrees";
  return ok;
}

bool criterion_blowup(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20817);
  int done = 0;
  int bad = 0;
  while (done < 200) {
    const int r = 2 + static_cast<int>(rng() % 2);
    const int n = r + 1 + static_cast<int>(rng() % (8 - r));
    const int N = 2 + static_cast<int>(rng() % 2);
    const int p = r + static_cast<int>(rng() % (std::min(5, n) - r + 1));
    ForbiddenFamily fam({complete_graph(p, r)});
    if (!fam.all_pair_covering()) {
      ++bad;
      continue;
    }
    const SetSystem s = testutil::random_family_free_system(rng, n, r, fam);
    if (!is_family_free(s, fam)) {
      ++bad;
      continue;
    }
    if (!is_family_free(blow_up(s, N), fam)) ++bad;
    ++done;
  }
  const double dt = seconds_since(t0);
  note = "200 cases, " + std::to_string(bad) + " failures, " + fmt_seconds(dt);
  return bad == 0 && dt < 60.0;
}

bool criterion_compose(std::string& note) {
  bool ok = true;
  double worst = 0;
  const SetSystem h(4, 3, {{0, 1, 2}});
  for (int N : {4, 5, 7}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto [sys, rep] = compose(h, Params(4, 3, 2, 3), N);
    ok = ok && rep.size_A == static_cast<std::uint64_t>(N) * N;
    ok = ok && check_patch_coverage(patches(4, N, 3, 2), 4, N, 2).ok;
    ok = ok && verify_lottery(sys, Params(4 * N, 3, 2, 3)).ok;
    worst = std::max(worst, seconds_since(t0));
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const SetSystem h3(3, 3, {{0, 1, 2}});
    auto [sys, rep] = compose(h3, Params(3, 3, 3, 3), 5);
    ok = ok && rep.size_A == 125;
    ok = ok && check_patch_coverage(patches(3, 5, 3, 3), 3, 5, 3).ok;
    ok = ok && verify_lottery(sys, Params(15, 3, 3, 3)).ok;
    worst = std::max(worst, seconds_since(t0));
  }
  note = "worst run " + fmt_seconds(worst);
  return ok && worst < 60.0;
}

bool criterion_exact_values(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;

  // C(n,k,1) = ceil(n/k) for n <= 10, every k.
  for (int n = 1; n <= 10 && ok; ++n)
    for (int k = 1; k <= n && ok; ++k) {
      const std::uint64_t want = static_cast<std::uint64_t>((n + k - 1) / k);
      ok = ok && oracle_min_lottery(n, k, 1, 1) == want;
      const BoundPair got = exact_min_lottery(Params(n, k, 1, 1));
      ok = ok && got.complete && got.upper == want;
    }

  const std::array<std::array<std::uint64_t, 5>, 5> cases = {{
      // n, k, r, p, expected
      {6, 2, 1, 3, 2},
      {4, 3, 2, 3, 1},
      {4, 2, 2, 3, 2},   // T(4,3,2)
      {5, 2, 2, 3, 4},   // T(5,3,2)
      {7, 3, 2, 2, 7},   // C(7,3,2), the heavy exhaustive case
  }};
  for (const auto& [n, k, r, p, want] : cases) {
    const int ni = static_cast<int>(n), ki = static_cast<int>(k),
              ri = static_cast<int>(r), pi = static_cast<int>(p);
    ok = ok && oracle_min_lottery(ni, ki, ri, pi) == want;
    const BoundPair got = exact_min_lottery(Params(ni, ki, ri, pi));
    ok = ok && got.complete && got.upper == want;
    ok = ok && verify_lottery(got.certificate, Params(ni, ki, ri, pi)).ok;
  }

  const double dt = seconds_since(t0);
  note = fmt_seconds(dt);
  return ok && dt < 600.0;
}

bool criterion_turan_bound(std::string& note) {
  // L >= T / C(k,r) with exact rationals on the criterion-5 instances.
  bool ok = true;
  const auto check_pair = [&](int n, int k, int r, int p) {
    const BoundPair lottery = exact_min_lottery(Params(n, k, r, p));
    const BoundPair turan = exact_turan(n, p, r);
    if (!lottery.complete || !turan.complete) return false;
    return rational(bigint(lottery.upper)) >=
           turan_lower_bound(n, k, r, p, turan.upper);
  };
  ok = ok && check_pair(4, 3, 2, 3);  // 1 >= 2/3
  ok = ok && check_pair(7, 3, 2, 2);  // 7 >= 21/3
  ok = ok && check_pair(6, 2, 1, 3);  // 2 >= 4/2
  ok = ok && check_pair(5, 2, 2, 3);  // 4 >= 4/1
  note = "exact rational comparisons";
  return ok;
}

bool criterion_triangle(std::string& note) {
  std::mt19937 rng(20818);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 6);  // up to 9
    const int k = 2 + static_cast<int>(rng() % (n - 1));
    const int r = 1 + static_cast<int>(rng() % std::min(3, k));
    const int p = r + static_cast<int>(rng() % (n - r + 1));
    const SetSystem h = testutil::random_system(rng, n, k, 0.3);

    const bool lottery = verify_lottery(h, Params(n, k, r, p)).ok;
    const SetSystem sh = shadow(h, r);
    const bool turan = verify_turan_property(sh, p).ok;
    const bool comp_free = is_family_free(complement_system(sh),
                                          ForbiddenFamily({complete_graph(p, r)}));
    if (lottery == turan && turan == comp_free) ++agree;
  }
  note = std::to_string(agree) + "/100 agree";
  return agree == 100;
}

bool criterion_density(std::string& note, const std::string& binary) {
  bool ok = true;
  const SearchBudget budget{200000, 0};
  for (int n = 6; n <= 12; ++n) {
    const DensityReport rep = density_report(Params(n, 3, 2, 3), budget);
    const bigint tbound_ceil = (numerator(rep.turan_bound) + denominator(rep.turan_bound) - 1) /
                            denominator(rep.turan_bound);
    ok = ok && tbound_ceil <= bigint(rep.upper);
    ok = ok && rep.reference_limit.has_value() && *rep.reference_limit == rational(1, 6);
    if (rep.exact) ok = ok && *rep.exact == rep.upper;
    ok = ok && rep.density == rational(bigint(rep.upper), choose_big(n, 2));
  }
  // The CLI table reports the rational densities next to the reference.
  const CliResult table = run_cli(
      binary, "density -k 3 -r 2 -p 3 --n-from 6 --n-to 12 --budget-nodes 200000");
  ok = ok && table.output.find("# reference limit: 1/6") != std::string::npos;
  ok = ok && table.output.find("n=12") != std::string::npos;
  ok = ok && table.output.find("density=") != std::string::npos;
  note = "n=6..12, reference 1/6";
  return ok;
}

bool criterion_determinism(std::string& note, const std::string& binary) {
  const std::string base = "/tmp/lotteryforge_accept_h.sys";
  save_system(base, SystemFile{SetSystem(4, 3, {{0, 1, 2}}), 2, 3, "base"});
  const std::string empty = "/tmp/lotteryforge_accept_empty.sys";
  save_system(empty, SystemFile{SetSystem(5, 3), 2, 3, ""});
  const std::string broken = "/tmp/lotteryforge_accept_broken.sys";
  {
    std::ofstream out(broken);
    out << "lottery n=4 k=3\n0 1 9\n";
  }

  // args, expected exit code, substring the output must contain.
  const std::vector<std::tuple<std::string, int, std::string>> invocations = {
      {"construct gdd -N 7 -k 4 -r 2", 0, "lottery n=28 k=4 r=2"},
      {"construct gdd -N 13 -k 5 -r 3", 0, "lottery n=65 k=5 r=3"},
      {"construct gdd -N 6 -k 4 -r 2", 2, "mod 6"},
      {"construct cover -n 7 -k 3 -r 2", 0, "lottery n=7 k=3"},
      {"construct patches -m 4 -N 4 -k 3 -r 2", 0, "lottery n=16 k=3"},
      {"construct compose -H " + base + " -N 4", 0, "size_A = 16"},
      {"solve -n 7 -k 3 -r 2 -p 2", 0, "L(7,3,2,2) = 7"},
      {"solve -n 4 -k 3 -r 2 -p 3", 0, "L(4,3,2,3) = 1"},
      {"solve -n 10 -k 3 -r 2 -p 3 --budget-nodes 50000", 3, "[incomplete]"},
      {"solve turan -n 5 -p 3", 0, "T(5,3,2) = 4"},
      {"density -k 3 -r 2 -p 3 --n-from 6 --n-to 9 --budget-nodes 50000", 3,
       "# reference limit: 1/6"},
      {"verify " + base + " --params 4,3,2,3", 0, "ok"},
      {"verify " + base, 0, "ok"},
      {"verify " + empty, 1, "witness: 0 1 2"},
      {"verify " + broken, 2, "out of range"},
  };

  bool ok = true;
  int compared = 0;
  for (const auto& [args, want_exit, needle] : invocations) {
    const CliResult first = run_cli(binary, args);
    const CliResult second = run_cli(binary, args);
    if (first.exit_code != want_exit || second.exit_code != want_exit) ok = false;
    if (first.output != second.output) ok = false;
    if (first.output.find(needle) == std::string::npos) ok = false;
    ++compared;
  }
  // The emitted design has one block line per kernel solution.
  const CliResult gdd_out = run_cli(binary, "construct gdd -N 7 -k 4 -r 2");
  const long lines = std::count(gdd_out.output.begin(), gdd_out.output.end(), '\n');
  ok = ok && lines == 50;  // header + 49 blocks
  note = std::to_string(compared) + " invocations run twice, byte-compared";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-lotteryforge-cli>\n";
    return 2;
  }
  const std::string binary = argv[1];
  std::string note;

  note.clear();
  report(1, "gdd sizes and exactly-one property", criterion_gdd(note), note);
  note.clear();
  report(2, "M-constant regression values", criterion_m_lcm(note), note);
  note.clear();
  report(3, "blow-up lemma property suite", criterion_blowup(note), note);
  note.clear();
  report(4, "composition end to end", criterion_compose(note), note);
  note.clear();
  report(5, "exact values vs exhaustive oracle", criterion_exact_values(note), note);
  note.clear();
  report(6, "shadow-counting bound consistency", criterion_turan_bound(note), note);
  note.clear();
  report(7, "equivalence triangle", criterion_triangle(note), note);
  note.clear();
  report(8, "density report sanity", criterion_density(note, binary), note);
  note.clear();
  report(9, "CLI determinism and exit codes", criterion_determinism(note, binary), note);

  if (failures != 0) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}

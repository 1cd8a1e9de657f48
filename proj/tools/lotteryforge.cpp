// Command-line front end: construct, verify, solve, and report on lottery
// systems, covering designs, and Turán systems.
//
// Exit codes: 0 success / property holds, 1 property fails (witness
// printed), 2 usage or parse error, 3 search stopped on budget.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lotteryforge/lotteryforge.hpp>

namespace {

using namespace lotteryforge;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;

std::string show_rational(const rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::string show_decimal(const rational& q) {
  const double v = numerator(q).convert_to<double>() /
                   denominator(q).convert_to<double>();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

bigint ceil_rational(const rational& q) {
  const bigint num = numerator(q), den = denominator(q);
  if (num <= 0) return 0;
  return (num + den - 1) / den;
}

Params parse_params_flag(const std::string& csv) {
  std::vector<int> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw parameter_error("--params: bad integer '" + tok + "'");
    }
  }
  if (vals.size() != 4)
    throw parameter_error("--params: expected n,k,r,p");
  return Params(vals[0], vals[1], vals[2], vals[3]);
}

void print_witness(const Verdict& v) {
  std::cout << "FAIL: " << v.detail << " witness:";
  for (int u : *v.witness) std::cout << " " << u;
  std::cout << "\n";
}

// Emits to `out_path` when set (format chosen by extension), otherwise to
// stdout as text, or JSON under --json.
void emit_result(const SystemFile& f, const std::string& out_path, bool as_json) {
  if (!out_path.empty()) {
    save_system(out_path, f);
    return;
  }
  emit_system(std::cout, f, as_json ? FileFormat::json : FileFormat::text);
}

void print_composition_report(std::ostream& os, const CompositionReport& rep) {
  os << "compose: m=" << rep.m << " N=" << rep.N << " k=" << rep.k
     << " r=" << rep.r << " p=" << rep.p << "\n";
  os << "size_A = " << rep.size_A << "\n";
  os << "size_B = " << rep.size_B << "\n";
  os << "overlap = " << rep.overlap << "\n";
  os << "total = " << rep.total << "\n";
  for (const auto& c : rep.covering_sizes)
    os << "covering v=" << c.v << " k'=" << c.k_prime << " size=" << c.size << "\n";
  os << "density = " << show_rational(rep.density) << " ("
     << show_decimal(rep.density) << ")\n";
  os << "verified: ok\n";
}

int run_verify(const std::string& path, const std::string& params_csv) {
  const SystemFile f = load_system(path);
  std::optional<Params> params;
  if (!params_csv.empty()) {
    params = parse_params_flag(params_csv);
  } else if (f.r && f.p) {
    params = Params(f.system.n(), f.system.k(), *f.r, *f.p);
  } else {
    std::cerr << "error: no --params and the file header lacks r/p\n";
    return kExitUsage;
  }
  const Verdict v = verify_lottery(f.system, *params);
  if (v.ok) {
    std::cout << "ok: (" << params->n << "," << params->k << "," << params->r
              << "," << params->p << ") lottery property holds\n";
    return kExitOk;
  }
  print_witness(v);
  return kExitPropertyFail;
}

int run_solve(const Params& params, const SearchBudget& budget, bool symmetry,
              const std::string& emit_path, bool turan_form) {
  const BoundPair bp = exact_min_lottery(params, budget, symmetry);
  std::ostringstream name;
  if (turan_form)
    name << "T(" << params.n << "," << params.p << "," << params.r << ")";
  else
    name << "L(" << params.n << "," << params.k << "," << params.r << ","
         << params.p << ")";
  if (bp.complete) {
    std::cout << name.str() << " = " << bp.upper << "\n";
  } else {
    std::cout << show_rational(bp.lower) << " <= " << name.str() << " <= "
              << bp.upper << " [incomplete]\n";
  }
  std::cout << "method: lower=" << bp.lower_method << " upper=" << bp.upper_method
            << " nodes=" << bp.nodes << "\n";
  if (!emit_path.empty()) {
    save_system(emit_path, SystemFile{bp.certificate, params.r, params.p, ""});
    std::cout << "certificate: " << emit_path << " (" << bp.certificate.size()
              << " blocks)\n";
  }
  return bp.complete ? kExitOk : kExitIncomplete;
}

int run_density(int k, int r, int p, int n_from, int n_to,
                const SearchBudget& budget) {
  if (n_from > n_to) throw parameter_error("density: need --n-from <= --n-to");
  std::cout << "# density k=" << k << " r=" << r << " p=" << p << "\n";
  bool incomplete = false;
  bool reference_shown = false;
  for (int n = n_from; n <= n_to; ++n) {
    const DensityReport rep = density_report(Params(n, k, r, p), budget);
    if (!reference_shown && rep.reference_limit) {
      std::cout << "# reference limit: " << show_rational(*rep.reference_limit)
                << " (" << show_decimal(*rep.reference_limit) << ")"
                << (rep.reference_conjectural ? " [conjectural]" : "") << "\n";
      reference_shown = true;
    }
    std::cout << "n=" << n << " tbound=" << show_rational(rep.turan_bound)
              << (rep.turan_bound_source == "exact" ? "" : "~") << " L_low="
              << ceil_rational(rep.lower) << " L_high=" << rep.upper
              << " exact=";
    if (rep.exact)
      std::cout << *rep.exact;
    else
      std::cout << "-";
    std::cout << " density=" << show_rational(rep.density) << " decimal="
              << show_decimal(rep.density) << "\n";
    incomplete = incomplete || !rep.exact;
  }
  return incomplete ? kExitIncomplete : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lotteryforge: lottery systems, covering designs, Turán systems"};
  app.footer("Environment: LOTTERYFORGE_THREADS caps verification workers "
             "(0 = sequential, the default).");
  app.require_subcommand(1);

  // verify
  std::string verify_file, verify_params;
  auto* cmd_verify = app.add_subcommand("verify", "check the lottery property of a system file");
  cmd_verify->add_option("file", verify_file, "system file (.sys text or .json)")->required();
  cmd_verify->add_option("--params", verify_params, "n,k,r,p (default: from file header)");

  // construct
  auto* cmd_construct = app.add_subcommand("construct", "build designs and write system files");
  cmd_construct->require_subcommand(1);
  std::string out_path;
  bool out_json = false;
  int c_N = 0, c_k = 0, c_r = 0, c_n = 0, c_m = 0;
  std::string compose_h, compose_params;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--out", out_path, "output file (format by extension)");
    sub->add_flag("--json", out_json, "emit JSON to stdout instead of text");
  };
  auto* sub_gdd = cmd_construct->add_subcommand("gdd", "k-partite design with the exactly-one property");
  sub_gdd->add_option("-N", c_N, "part size")->required();
  sub_gdd->add_option("-k", c_k, "number of parts")->required();
  sub_gdd->add_option("-r", c_r, "intersection threshold")->required();
  add_output(sub_gdd);

  auto* sub_cover = cmd_construct->add_subcommand("cover", "greedy covering system");
  sub_cover->add_option("-n", c_n, "points")->required();
  sub_cover->add_option("-k", c_k, "block size")->required();
  sub_cover->add_option("-r", c_r, "subset size")->required();
  add_output(sub_cover);

  auto* sub_patches = cmd_construct->add_subcommand("patches", "patch family for a composition");
  sub_patches->add_option("-m", c_m, "base vertex count")->required();
  sub_patches->add_option("-N", c_N, "part size")->required();
  sub_patches->add_option("-k", c_k, "block size")->required();
  sub_patches->add_option("-r", c_r, "intersection threshold")->required();
  add_output(sub_patches);

  auto* sub_compose = cmd_construct->add_subcommand("compose", "compose H into H_N and report sizes");
  sub_compose->add_option("-H", compose_h, "base system file")->required();
  sub_compose->add_option("-N", c_N, "part size")->required();
  sub_compose->add_option("--params", compose_params, "m,k,r,p (default: from file header)");
  add_output(sub_compose);

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "exact minimization by branch and bound");
  int s_n = 0, s_k = 0, s_r = 0, s_p = 0;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  bool symmetry = false;
  std::string emit_path;
  cmd_solve->add_option("-n", s_n, "vertex count");
  cmd_solve->add_option("-k", s_k, "block size");
  cmd_solve->add_option("-r", s_r, "intersection threshold");
  cmd_solve->add_option("-p", s_p, "probe-set size");
  cmd_solve->add_option("--budget-nodes", budget_nodes, "search node limit (0 = unlimited)");
  cmd_solve->add_option("--budget-seconds", budget_seconds, "wall-clock limit (0 = unlimited; non-deterministic)");
  cmd_solve->add_flag("--symmetry", symmetry, "fix the first block to {0..k-1}");
  cmd_solve->add_option("--emit", emit_path, "write the certificate system here");

  auto* sub_turan = cmd_solve->add_subcommand("turan", "Turán number T(n,p,r)");
  int t_n = 0, t_p = 0, t_r = 2;
  sub_turan->add_option("-n", t_n, "vertex count")->required();
  sub_turan->add_option("-p", t_p, "probe-set size")->required();
  sub_turan->add_option("-r", t_r, "uniformity (default 2)");

  // density
  auto* cmd_density = app.add_subcommand("density", "per-n density table with reference limits");
  int d_k = 0, d_r = 0, d_p = 0, d_from = 0, d_to = 0;
  cmd_density->add_option("-k", d_k, "block size")->required();
  cmd_density->add_option("-r", d_r, "intersection threshold")->required();
  cmd_density->add_option("-p", d_p, "probe-set size")->required();
  cmd_density->add_option("--n-from", d_from, "first n")->required();
  cmd_density->add_option("--n-to", d_to, "last n")->required();
  cmd_density->add_option("--budget-nodes", budget_nodes, "node limit per sub-solve (default 200000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_verify->parsed()) return run_verify(verify_file, verify_params);

    if (cmd_construct->parsed()) {
      if (sub_gdd->parsed()) {
        const SetSystem sys = gdd(c_N, c_k, c_r);
        emit_result(SystemFile{sys, c_r, std::nullopt, ""}, out_path, out_json);
        return kExitOk;
      }
      if (sub_cover->parsed()) {
        const SetSystem sys = greedy_covering(c_n, c_k, c_r);
        emit_result(SystemFile{sys, c_r, c_r, ""}, out_path, out_json);
        return kExitOk;
      }
      if (sub_patches->parsed()) {
        const SetSystem sys = patches(c_m, c_N, c_k, c_r);
        emit_result(SystemFile{sys, c_r, std::nullopt, ""}, out_path, out_json);
        return kExitOk;
      }
      if (sub_compose->parsed()) {
        const SystemFile base = load_system(compose_h);
        Params params = [&] {
          if (!compose_params.empty()) return parse_params_flag(compose_params);
          if (base.r && base.p)
            return Params(base.system.n(), base.system.k(), *base.r, *base.p);
          throw parameter_error("compose: no --params and the file header lacks r/p");
        }();
        auto [sys, rep] = compose(base.system, params, c_N);
        emit_result(SystemFile{sys, params.r, params.p, ""}, out_path, out_json);
        print_composition_report(out_path.empty() ? std::cerr : std::cout, rep);
        return kExitOk;
      }
    }

    if (cmd_solve->parsed()) {
      const SearchBudget budget{budget_nodes, budget_seconds};
      if (sub_turan->parsed())
        return run_solve(Params(t_n, t_r, t_r, t_p), budget, symmetry, emit_path, true);
      if (s_n == 0 || s_k == 0 || s_r == 0 || s_p == 0) {
        std::cerr << "error: solve requires -n -k -r -p (or the 'turan' subcommand)\n";
        return kExitUsage;
      }
      return run_solve(Params(s_n, s_k, s_r, s_p), budget, symmetry, emit_path, false);
    }

    if (cmd_density->parsed()) {
      SearchBudget budget{budget_nodes == 0 ? 200000 : budget_nodes, 0};
      return run_density(d_k, d_r, d_p, d_from, d_to, budget);
    }
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nonunit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

// gaplab: exact-arithmetic laboratory for two-dimensional gap structures
// of the sets {n*alpha + m*beta mod 1}.  Subcommands: construct, scan,
// verify, export.  Exit codes: 0 ok, 1 verification failure, 2 usage error,
// 3 resource cap exceeded.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "gaplab/io_json.hpp"
#include "gaplab/verify.hpp"
#include "gaplab/version.hpp"

namespace {

using namespace gaplab;

constexpr long kBoundedLevelCap = 6;
constexpr long kUnboundedLevelCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family parse_family(const std::string& s) {
  if (s == "bounded") return Family::bounded;
  if (s == "unbounded") return Family::unbounded;
  throw UsageError("unknown family '" + s + "' (expected bounded|unbounded)");
}

void check_level_cap(Family fam, long levels) {
  long cap = fam == Family::bounded ? kBoundedLevelCap : kUnboundedLevelCap;
  if (levels < 1 || levels > cap)
    throw UsageError("levels must be in 1.." + std::to_string(cap) + " for the " +
                     std::string(to_string(fam)) + " family");
}

// Writes to the path, or to stdout for "-".
void write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << data;
}

long default_levels_for(Family fam) { return fam == Family::bounded ? 3 : 2; }

struct ScanSelection {
  long from = 0, to = 0;  // inclusive range, 0 = unset
  long all_upto = 0;      // 1..K
  std::string plus;       // comma-separated list

  std::vector<long> resolve(long cap) const {
    std::set<long> ns;
    if (from > 0 || to > 0) {
      long lo = from > 0 ? from : 1, hi = to > 0 ? to : lo;
      for (long n = lo; n <= hi; ++n) ns.insert(n);
    }
    for (long n = 1; n <= all_upto; ++n) ns.insert(n);
    if (!plus.empty()) {
      std::stringstream ss(plus);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        ns.insert(to_long(parse_int(tok)));
      }
    }
    if (ns.empty())
      throw UsageError("scan: empty N selection (use --from/--to, --all-upto, --plus)");
    if (*ns.begin() < 1) throw UsageError("scan: N must be >= 1");
    if (*ns.rbegin() > cap)
      throw resource_error("scan: N=" + std::to_string(*ns.rbegin()) + " exceeds cap " +
                           std::to_string(cap));
    return {ns.begin(), ns.end()};
  }
};

int run_scan(Family fam, long levels, const ScanSelection& sel, long cap, int jobs,
             const std::string& out_path) {
  std::vector<long> ns = sel.resolve(cap);
  std::vector<std::string> blocks(ns.size());
  std::vector<std::string> summaries(ns.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    PairConstruction c = make_family(fam, levels);  // thread-private state
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= ns.size()) return;
      Int N(ns[i]);
      Int budget = Int(cap) * Int(cap) + 1;
      std::int64_t pcap =
          fits_long(budget) ? to_long(budget) : (std::int64_t(1) << 31) - 1;
      GapScan s = gap_set(N, N, c.alpha, c.beta, /*with_neighbors=*/false,
                          default_certified_depth(), pcap);
      if (s.set.total_multiplicity() != N * N)
        throw structural_error("scan: multiplicities do not sum to N^2");
      std::vector<bool> prim = primitive_flags(s.set, c.alpha, c.beta);
      std::ostringstream os;
      write_gap_csv_rows(os, s.set, prim, c.alpha, c.beta);
      blocks[i] = os.str();
      summaries[i] = "N=" + N.get_str() + " distinct=" + std::to_string(s.set.entries.size());
    }
  };

  int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::ostringstream os;
  write_gap_csv_header(os);
  for (const std::string& b : blocks) os << b;
  write_output(out_path, os.str());
  for (const std::string& s : summaries) std::cerr << s << "\n";
  return 0;
}

int run_verify(const std::string& target, Family fam, long levels, long i, long j,
               const std::string& bprime, long k, const std::string& N_str, int count,
               long max_modulus, unsigned seed, long point_cap) {
  CheckReport r;
  if (target == "identities") {
    r = verify_identities(fam, levels);
  } else if (target == "exchange") {
    PairConstruction c = make_family(fam, levels);
    std::optional<Int> bp;
    if (!bprime.empty()) bp = parse_int(bprime);
    r = verify_exchange(c, i, j, bp, point_cap);
  } else if (target == "three-gap") {
    r = verify_three_gap(count, max_modulus, seed);
  } else if (target == "seven") {
    if (N_str.empty()) throw UsageError("verify seven: --N is required");
    if (fam != Family::bounded) throw UsageError("verify seven: bounded family only");
    PairConstruction c = bounded_family(levels);
    r = verify_seven(c, parse_int(N_str), point_cap);
  } else if (target == "prop42") {
    PairConstruction c = unbounded_family(std::max(levels, k));
    r = verify_prop42(c, k, point_cap);
  } else if (target == "phi-induction") {
    PairConstruction c = unbounded_family(std::max(levels, k));
    r = verify_phi_induction(c, k, point_cap);
  } else if (target == "witnesses") {
    PairConstruction c = unbounded_family(std::max(levels, k));
    r = verify_witnesses(c, k, point_cap);
  } else if (target == "delta") {
    PairConstruction c = unbounded_family(std::max(levels, k));
    r = verify_delta(c, k);
  } else if (target == "badly-approx") {
    if (fam != Family::bounded) throw UsageError("verify badly-approx: bounded family only");
    PairConstruction c = bounded_family(std::max(levels, k));
    r = verify_badly_approx(c, k);
  } else {
    throw UsageError("unknown verify target '" + target + "'");
  }
  r.print(std::cout);
  if (const CheckLine* f = r.first_failure()) {
    std::cout << "RESULT FAIL (" << f->name << ")\n";
    return 1;
  }
  std::cout << "RESULT PASS (" << r.lines.size() << " checks)\n";
  return 0;
}

CFReal real_from_spec(Family fam, long levels, Role role, const std::string& quotients) {
  if (!quotients.empty())
    return CFReal(std::make_shared<ExplicitQuotients>(quotients_from_json(quotients)));
  PairConstruction c = make_family(fam, levels);
  return role == Role::alpha ? c.alpha : c.beta;
}

int run_export(const std::string& kind, Family fam, long levels, const std::string& table,
               long i, long j, const std::string& bprime, long k, const std::string& N_str,
               const std::string& role_str, long conv_depth, const std::string& alpha_q,
               const std::string& beta_q, long point_cap, const std::string& out_path) {
  if (kind == "construction") {
    check_level_cap(fam, levels);
    PairConstruction c = make_family(fam, levels);
    write_output(out_path, construction_to_text(c));
    return 0;
  }
  if (kind == "table") {
    PairConstruction c = make_family(fam, levels);
    CaseTable t;
    if (table == "exchange") {
      Int bp = bprime.empty() ? (c.family == Family::bounded ? c.bp_at(i) : Int(1))
                              : parse_int(bprime);
      t = exchange_table(c, i, j, bp);
    } else if (table == "seven") {
      if (N_str.empty()) throw UsageError("export table seven: --N is required");
      t = seven_table_auto(c, parse_int(N_str));
    } else if (table == "prop42") {
      t = near_square_table(c, k);
    } else {
      throw UsageError("unknown table kind '" + table + "'");
    }
    write_output(out_path, case_table_to_json(t).dump(1) + "\n");
    return 0;
  }
  if (kind == "gaps") {
    if (N_str.empty()) throw UsageError("export gaps: --N is required (point set E_{N,N})");
    Int N = parse_int(N_str);
    CFReal a = real_from_spec(fam, levels, Role::alpha, alpha_q);
    CFReal b = real_from_spec(fam, levels, Role::beta, beta_q);
    GapScan s = gap_set(N, N, a, b, false, default_certified_depth(), point_cap);
    std::vector<bool> prim = primitive_flags(s.set, a, b);
    std::ostringstream os;
    write_gap_csv_header(os);
    write_gap_csv_rows(os, s.set, prim, a, b);
    write_output(out_path, os.str());
    return 0;
  }
  if (kind == "convergents") {
    Role role = role_str == "beta" ? Role::beta : Role::alpha;
    CFReal x = real_from_spec(fam, levels, role, role == Role::alpha ? alpha_q : beta_q);
    x.extend_to(conv_depth);
    write_output(out_path, convergents_to_json(x.table(), conv_depth).dump(1) + "\n");
    return 0;
  }
  throw UsageError("unknown export kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact gap-structure laboratory for pairs (alpha, beta)"};
  app.require_subcommand(1);

  bool no_banner = false;
  long depth_flag = 0;
  app.add_flag("--no-banner", no_banner, "suppress the version banner");
  app.add_option("--depth", depth_flag, "certified-arithmetic depth ceiling (default 64)");

  std::string family_str = "bounded";
  long levels = -1;  // -1 = pick the per-family default
  std::string out_path = "-";

  auto* construct = app.add_subcommand("construct", "build a family pair and emit its JSON");
  construct->fallthrough();
  construct->add_option("--family", family_str, "bounded|unbounded")->required();
  construct->add_option("--levels", levels, "construction levels")->required();
  construct->add_option("--out", out_path, "output path ('-' = stdout)");

  auto* scan = app.add_subcommand("scan", "gap statistics of E_N over a set of N");
  scan->fallthrough();
  ScanSelection sel;
  long scan_cap = 3000;
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  scan->add_option("--family", family_str, "bounded|unbounded")->required();
  scan->add_option("--levels", levels, "construction levels (default per family)");
  scan->add_option("--from", sel.from, "first N of a range");
  scan->add_option("--to", sel.to, "last N of a range");
  scan->add_option("--all-upto", sel.all_upto, "include every N up to this bound");
  scan->add_option("--plus", sel.plus, "comma-separated extra N values");
  scan->add_option("--cap", scan_cap, "largest allowed N (default 3000)");
  scan->add_option("--jobs", jobs, "worker threads (results are order-independent)");
  scan->add_option("--out", out_path, "output CSV path ('-' = stdout)");

  auto* verify = app.add_subcommand("verify", "run a named verification, exit 0 iff all PASS");
  verify->fallthrough();
  std::string target;
  long vi = 1, vj = 1, vk = 1;
  std::string bprime, N_str;
  int tg_count = 200;
  long tg_maxmod = 500;
  unsigned tg_seed = 20240811;
  long point_cap = default_point_cap();
  verify->add_option("target", target,
                     "identities|exchange|three-gap|seven|prop42|phi-induction|witnesses|"
                     "delta|badly-approx")
      ->required();
  verify->add_option("--family", family_str, "bounded|unbounded");
  verify->add_option("--levels", levels, "construction levels");
  verify->add_option("--i", vi, "first index");
  verify->add_option("--j", vj, "second index");
  verify->add_option("--bprime", bprime, "override b' (decimal string)");
  verify->add_option("--k", vk, "level index");
  verify->add_option("--N", N_str, "window size (decimal string)");
  verify->add_option("--count", tg_count, "three-gap random instances");
  verify->add_option("--max-modulus", tg_maxmod, "three-gap modulus bound");
  verify->add_option("--seed", tg_seed, "three-gap RNG seed");
  verify->add_option("--point-cap", point_cap, "largest brute-forced point count");

  auto* exp = app.add_subcommand("export", "export constructions, tables, gaps, convergents");
  exp->fallthrough();
  std::string kind, table = "exchange", role_str = "alpha", alpha_q, beta_q;
  long conv_depth = 8;
  exp->add_option("kind", kind, "construction|table|gaps|convergents")->required();
  exp->add_option("--family", family_str, "bounded|unbounded");
  exp->add_option("--levels", levels, "construction levels");
  exp->add_option("--table", table, "exchange|seven|prop42");
  exp->add_option("--i", vi, "first index");
  exp->add_option("--j", vj, "second index");
  exp->add_option("--bprime", bprime, "override b'");
  exp->add_option("--k", vk, "level index");
  exp->add_option("--N", N_str, "window size (decimal string)");
  exp->add_option("--role", role_str, "alpha|beta (convergents)");
  exp->add_option("--cf-depth", conv_depth, "convergent rows to export");
  exp->add_option("--alpha-quotients", alpha_q, "JSON array of decimal strings");
  exp->add_option("--beta-quotients", beta_q, "JSON array of decimal strings");
  exp->add_option("--point-cap", point_cap, "largest brute-forced point count");
  exp->add_option("--out", out_path, "output path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!no_banner) std::cerr << "gaplab " << gaplab::kVersion << "\n";
  if (depth_flag >= 1) certified_depth_override() = depth_flag;

  try {
    Family fam = parse_family(family_str);
    if (levels == -1) levels = default_levels_for(fam);

    if (construct->parsed()) {
      check_level_cap(fam, levels);
      PairConstruction c = make_family(fam, levels);
      write_output(out_path, construction_to_text(c));
      return 0;
    }
    if (scan->parsed()) {
      check_level_cap(fam, levels);
      return run_scan(fam, levels, sel, scan_cap, jobs, out_path);
    }
    if (verify->parsed())
      return run_verify(target, fam, levels, vi, vj, bprime, vk, N_str, tg_count, tg_maxmod,
                        tg_seed, point_cap);
    if (exp->parsed())
      return run_export(kind, fam, levels, table, vi, vj, bprime, vk, N_str, role_str,
                        conv_depth, alpha_q, beta_q, point_cap, out_path);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 1;
  }
}

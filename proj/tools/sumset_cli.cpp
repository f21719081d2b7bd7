// sumset: command-line front end for the sumset census library.
//
// Exit codes: 0 success, 1 violation found, 2 usage error, 3 budget/overflow.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sumset/sumset.hpp"

namespace {

using namespace sumset;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Common {
  int threads = std::max(1u, std::thread::hardware_concurrency());
  int shards = 0;  // 0: 4 per thread
  std::uint64_t max_subsets = 0;
  std::uint64_t max_compositions = 0;

  Budget budget() const {
    Budget b = Budget::from_env();
    if (max_subsets) b.max_subsets = max_subsets;
    if (max_compositions) b.max_compositions = max_compositions;
    return b;
  }
  int shard_count() const { return shards > 0 ? shards : 4 * threads; }
};

void add_common(CLI::App* cmd, Common& c, bool sharded) {
  cmd->add_option("--max-subsets", c.max_subsets, "Override the subset budget guard");
  cmd->add_option("--max-compositions", c.max_compositions,
                  "Override the composition budget guard");
  if (sharded) {
    cmd->add_option("--shards", c.shards, "Shard count (1 = reference mode)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path + " for writing");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int run_sumset(const std::vector<Value>& raw, Value q, int h, int cap, const Common& c) {
  const auto a = SetVector::make(raw, q);
  const auto budget = c.budget();
  auto j = to_json(profile_naive(a, h, budget), a);
  j["classification"] = to_json(classify(a, cap, budget));
  j["h_cap"] = cap;
  std::cout << dump(j);
  return kExitOk;
}

struct CensusArgs {
  int q = 40, k = 4, h_cap = 6;
  double threshold = 10.0;
  std::string json_path, csv_path;
};

CensusReport census(const CensusArgs& a, const Common& c) {
  CensusOptions opt;
  opt.shards = c.shard_count();
  opt.threads = c.threads;
  opt.gap_threshold = a.threshold;
  opt.budget = c.budget();
  return run_census(a.q, a.k, a.h_cap, opt);
}

int run_census_cmd(const CensusArgs& a, const Common& c) {
  const auto r = census(a, c);
  write_text(a.json_path, dump(to_json(r)));
  if (!a.csv_path.empty()) {
    std::ostringstream csv;
    write_histogram_csv(csv, r);
    write_text(a.csv_path, csv.str());
  }
  return kExitOk;
}

int run_gaps(int q, int h, double threshold, const std::string& json_path,
             const std::string& csv_path, const std::string& svg_path, const Common& c) {
  if (h < 2) throw InvalidArgument("gaps needs h >= 2");
  CensusArgs a;
  a.q = q;
  a.k = 4;
  a.h_cap = h;
  a.threshold = threshold;
  const auto r = census(a, c);
  const auto& g = r.gaps.at(h);
  Json counts = Json::object();
  const auto& hist = r.histogram(h);
  for (auto it = hist.counts.rbegin(); it != hist.counts.rend(); ++it)
    counts[std::to_string(it->first)] = it->second;
  Json j{{"q", q}, {"k", 4}, {"h", h}, {"gap", to_json(g)}, {"histogram", counts}};
  write_text(json_path, dump(j));
  if (!csv_path.empty()) {
    std::ostringstream csv;
    csv << "h,size,count\n";
    for (auto it = hist.counts.rbegin(); it != hist.counts.rend(); ++it)
      csv << h << ',' << it->first << ',' << it->second << '\n';
    write_text(csv_path, csv.str());
  }
  if (!svg_path.empty()) write_text(svg_path, render_histogram_svg(hist, g));
  return kExitOk;
}

int run_family(int h, Value q, std::uint64_t limit, std::uint64_t seed, int steps,
               const std::vector<Value>& check_set, const Common& c) {
  const auto budget = c.budget();
  bool all_ok = true;
  auto emit = [&](const SetVector& a) {
    const auto v = verify_member(a, h, steps, budget);
    all_ok = all_ok && v.passed();
    std::cout << to_json(v).dump() << '\n';
  };
  if (!check_set.empty()) {
    emit(SetVector::make(check_set, q > 0 ? q : 0));
    return all_ok ? kExitOk : kExitViolation;
  }
  const auto p = FamilyParams::make(h, q);
  Json header{{"family", to_json(p)}, {"limit", limit}, {"seed", seed}, {"L", steps}};
  std::cout << header.dump() << '\n';
  for (const auto& a : generate_family(p, limit, seed)) emit(a);
  return all_ok ? kExitOk : kExitViolation;
}

int emit_verdicts(const std::vector<Json>& verdicts, bool any_fail) {
  for (const auto& v : verdicts) std::cout << v.dump() << '\n';
  return any_fail ? kExitViolation : kExitOk;
}

SumVector parse_vector(const std::vector<int>& v) { return SumVector(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated sumsets of k-subsets of [1..q]: census, B_h classification, checks"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Common common;

  // sumset
  auto* sumset_cmd = app.add_subcommand("sumset", "Profile hA for one set");
  std::vector<Value> set_raw;
  Value set_q = 0;
  int set_h = 2, set_cap = 8;
  sumset_cmd->add_option("--set", set_raw, "Comma-separated elements")
      ->required()
      ->delimiter(',');
  sumset_cmd->add_option("--h", set_h, "Fold count")->check(CLI::PositiveNumber);
  sumset_cmd->add_option("--q", set_q, "Ambient bound (default max element)");
  sumset_cmd->add_option("--h-cap", set_cap, "Classification cap")->check(CLI::PositiveNumber);
  add_common(sumset_cmd, common, false);

  // census
  auto* census_cmd = app.add_subcommand("census", "Exhaustive size histograms");
  CensusArgs cargs;
  census_cmd->add_option("--q", cargs.q)->check(CLI::PositiveNumber);
  census_cmd->add_option("--k", cargs.k)->check(CLI::PositiveNumber);
  census_cmd->add_option("--h-cap", cargs.h_cap)->check(CLI::PositiveNumber);
  census_cmd->add_option("--threshold", cargs.threshold, "Ratio for strongly confirmed rungs");
  census_cmd->add_option("--json", cargs.json_path, "JSON report path (default stdout)");
  census_cmd->add_option("--csv", cargs.csv_path, "CSV histogram path");
  add_common(census_cmd, common, true);

  // gaps
  auto* gaps_cmd = app.add_subcommand("gaps", "Triangular-gap ladder for one fold");
  int gq = 60, gh = 5;
  double gthreshold = 10.0;
  std::string gjson, gcsv, gsvg;
  gaps_cmd->add_option("--q", gq)->check(CLI::PositiveNumber);
  gaps_cmd->add_option("--h", gh)->check(CLI::PositiveNumber);
  gaps_cmd->add_option("--threshold", gthreshold);
  gaps_cmd->add_option("--json", gjson, "JSON path (default stdout)");
  gaps_cmd->add_option("--csv", gcsv);
  gaps_cmd->add_option("--svg", gsvg);
  add_common(gaps_cmd, common, true);

  // family
  auto* family_cmd = app.add_subcommand("family", "Generate and verify the explicit B*_h family");
  int fh = 2, fsteps = 1;
  Value fq = 8000;
  std::uint64_t flimit = 100, fseed = 1;
  std::vector<Value> fset;
  family_cmd->add_option("--h", fh)->check(CLI::Range(2, 1000));
  family_cmd->add_option("--q", fq)->check(CLI::PositiveNumber);
  family_cmd->add_option("--limit", flimit);
  family_cmd->add_option("--seed", fseed);
  family_cmd->add_option("--L", fsteps, "Steps past h to verify")->check(CLI::PositiveNumber);
  family_cmd->add_option("--verify-set", fset, "Verify this set instead of generating")
      ->delimiter(',');
  add_common(family_cmd, common, false);

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "Disjoint-support pair census or T_{x,y}");
  int ph = 2, pk = 4, pq = 12;
  std::vector<int> px, py;
  bool pbstar = false;
  pairs_cmd->add_option("--h", ph)->check(CLI::PositiveNumber);
  pairs_cmd->add_option("--k", pk)->check(CLI::PositiveNumber);
  pairs_cmd->add_option("--x", px)->delimiter(',');
  pairs_cmd->add_option("--y", py)->delimiter(',');
  pairs_cmd->add_option("--q", pq)->check(CLI::PositiveNumber);
  pairs_cmd->add_flag("--bstar", pbstar, "Count only A in B*_{deg-1}");
  add_common(pairs_cmd, common, false);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Finite lemma checks; exit 1 on any violation");
  verify_cmd->require_subcommand(1);
  bool timing = false;
  verify_cmd->add_flag("--timing", timing, "Include elapsed_ms in verdicts");
  int vq = 30, vh = 2, vk = 4, vhmax = 12, vcap = 6;
  std::uint64_t vsample = 0, vseed = 1;
  auto* v_pairs = verify_cmd->add_subcommand("pairs", "Pair-count closed form");
  v_pairs->add_option("--h-max", vhmax)->check(CLI::PositiveNumber);
  auto* v_ortho = verify_cmd->add_subcommand("ortho", "Disjoint supports of colliding vectors");
  v_ortho->add_option("--q", vq);
  v_ortho->add_option("--h", vh);
  v_ortho->add_option("--sample", vsample, "Sample this many subsets (0 = all)");
  v_ortho->add_option("--seed", vseed);
  auto* v_repno = verify_cmd->add_subcommand("repno", "Representation bound at fold h+1");
  v_repno->add_option("--q", vq);
  v_repno->add_option("--k", vk);
  v_repno->add_option("--h", vh);
  auto* v_gap = verify_cmd->add_subcommand("gap", "Forced deficits after the first collision");
  v_gap->add_option("--q", vq);
  v_gap->add_option("--h-cap", vcap);
  auto* v_ddp = verify_cmd->add_subcommand("ddp", "Attainable dot products");
  v_ddp->add_option("--q", vq);
  v_ddp->add_option("--h", vh);
  auto* v_exc = verify_cmd->add_subcommand("exceptional", "Sets with deficit >= 2 at h+1");
  v_exc->add_option("--q", vq);
  v_exc->add_option("--h", vh);
  auto* v_all = verify_cmd->add_subcommand("all", "Every check over q in {20,30,40}, h in {2,3,4}");
  for (auto* sub : {v_pairs, v_ortho, v_repno, v_gap, v_ddp, v_exc, v_all})
    add_common(sub, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sumset_cmd) return run_sumset(set_raw, set_q, set_h, set_cap, common);
    if (*census_cmd) return run_census_cmd(cargs, common);
    if (*gaps_cmd) return run_gaps(gq, gh, gthreshold, gjson, gcsv, gsvg, common);
    if (*family_cmd) return run_family(fh, fq, flimit, fseed, fsteps, fset, common);
    if (*pairs_cmd) {
      const auto budget = common.budget();
      if (px.empty() != py.empty()) throw InvalidArgument("--x and --y go together");
      if (!px.empty()) {
        const auto x = parse_vector(px), y = parse_vector(py);
        const Count t = count_pair_solutions(x, y, pq, pbstar, budget);
        std::cout << Json{{"x", to_json(x)}, {"y", to_json(y)}, {"q", pq},
                          {"restrict_bstar", pbstar}, {"count", t}}
                         .dump()
                  << '\n';
        return kExitOk;
      }
      std::cout << to_json(disjoint_support_pairs(ph, pk, budget)).dump() << '\n';
      return kExitOk;
    }
    if (*verify_cmd) {
      const auto budget = common.budget();
      std::vector<Json> out;
      bool fail = false;
      auto add = [&](const LemmaVerdict& v, std::optional<Json> extra = std::nullopt) {
        auto j = to_json(v, timing);
        if (extra) j["range"] = *extra;
        fail = fail || !v.pass();
        out.push_back(std::move(j));
      };
      if (*v_pairs) add(verify_paircount(vhmax, budget));
      if (*v_ortho) add(verify_ortho(vq, vh, vsample, vseed, budget));
      if (*v_repno) add(verify_repno(vq, vk, vh, budget));
      if (*v_gap) {
        SweepOptions opt;
        opt.budget = budget;
        add(verify_gap(vq, vcap, opt));
      }
      if (*v_ddp) {
        const auto r = verify_ddp(vq, vh, budget);
        add(r.verdict, to_json(r.range));
      }
      if (*v_exc) add(verify_exceptional(vq, vh, budget));
      if (*v_all) {
        add(verify_paircount(12, budget));
        for (int q : {20, 30, 40}) {
          for (int h : {2, 3, 4}) {
            add(verify_ortho(q, h, 0, 1, budget));
            add(verify_repno(q, 4, h, budget));
            add(verify_exceptional(q, h, budget));
            const auto r = verify_ddp(q, h, budget);
            add(r.verdict, to_json(r.range));
          }
          SweepOptions opt;
          opt.budget = budget;
          add(verify_gap(q, 6, opt));
        }
      }
      return emit_verdicts(out, fail);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

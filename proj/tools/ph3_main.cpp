// Batch front end: pack instances, print ensemble plans, sweep the
// copies-vs-ratio trade-off, generate tightness instances, and cross-check
// the whole pipeline against its closed-form predictions.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binpack/adversary.hpp"
#include "binpack/model.hpp"
#include "binpack/packers.hpp"
#include "binpack/planner.hpp"
#include "binpack/ratio.hpp"

namespace {

using namespace binpack;

// A ratio cell is always printed twice: exact p/q and rounded up at 4
// decimal places.
std::string ratio_cells(const Rational& r) { return r.str_pq() + "," + r.decimal_ceil(4); }

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  // Returns false when the file cannot be opened.
  bool redirect(const std::string& path) {
    if (path.empty()) return true;
    file.open(path);
    if (!file) return false;
    os = &file;
    return true;
  }
  std::ostream& stream() { return *os; }
};

int cmd_pack(const std::string& path, const std::string& alg_text, bool trace, Output& out) {
  Instance inst = parse_instance_file(path);
  AlgorithmSpec spec = AlgorithmSpec::parse(alg_text);
  auto t0 = std::chrono::steady_clock::now();
  PackingResult res = run_online(spec, inst, trace);
  auto t1 = std::chrono::steady_clock::now();
  double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  OptBounds ob = opt_bounds(inst);

  std::ostream& os = out.stream();
  os << "label,algorithm,bins_used,opt_lb,ffd_ub,ratio_lo,ratio_lo_dec,ratio_hi,ratio_hi_dec,"
        "wall_ms\n";
  os << inst.label << ',' << spec.str() << ',' << res.bins_used << ',' << ob.lb.get_str() << ','
     << ob.ub_ffd << ',';
  if (ob.lb == 0) {
    os << "-,-,-,-";
  } else {
    RatioBracket br = empirical_ratio(res.bins_used, ob);
    os << ratio_cells(br.lower) << ',' << ratio_cells(br.upper);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", wall_ms);
  os << ',' << buf << '\n';

  if (trace) {
    os << "# trace: item_index,size,class,bin_id,decision\n";
    for (const TraceRow& row : res.trace)
      os << "# " << row.item_index << ',' << row.size.str_pq() << ',' << to_string(row.cls) << ','
         << row.bin_id << ',' << row.decision << '\n';
  }
  return 0;
}

void print_plan_rows(const CoverPlan& plan, std::ostream& os) {
  os << "copy_index,r_l,r_min,r_max,verified_max_bound,verified_max_bound_dec\n";
  for (std::size_t i = 0; i < plan.copies.size(); ++i) {
    const CopySpec& c = plan.copies[i];
    os << i << ',' << c.r_l.str_pq() << ',' << c.r_min.str_pq() << ',' << c.r_max.str_pq() << ','
       << ratio_cells(c.verified_max_bound) << '\n';
  }
}

int cmd_plan(const std::string& r_text, Output& out) {
  CoverPlan plan = plan_cover(Rational::parse(r_text));
  std::ostream& os = out.stream();
  os << "# target_ratio," << ratio_cells(plan.target_r) << ",copies," << plan.k() << '\n';
  print_plan_rows(plan, os);
  return 0;
}

int cmd_best_ratio(std::size_t k, const std::string& tol_text, Output& out) {
  BestRatioResult res = best_ratio(k, Rational::parse(tol_text));
  std::ostream& os = out.stream();
  os << "# k," << k << ",best_ratio," << ratio_cells(res.ratio) << ",copies_used,"
     << res.plan.k() << '\n';
  print_plan_rows(res.plan, os);
  return 0;
}

int cmd_table1(const std::string& tol_text, Output& out) {
  Rational tol = Rational::parse(tol_text);
  std::ostream& os = out.stream();
  os << "bits,k,redblue,ph3\n";
  for (std::size_t l = 4; l <= 16; ++l) {
    std::size_t k = copies_for_bits(l);
    os << l << ',' << k << ',' << redblue_bound_str(l) << ','
       << best_ratio(k, tol).ratio.decimal_ceil(4) << '\n';
    os.flush();
  }
  return 0;
}

void write_curve_svg(const std::string& path, const std::vector<std::pair<std::size_t, double>>& pts) {
  std::ofstream svg(path);
  if (!svg) throw std::invalid_argument("cannot write svg file '" + path + "'");
  const double w = 640, h = 400, ml = 60, mr = 20, mt = 20, mb = 40;
  double xmin = 1, xmax = static_cast<double>(pts.back().first);
  double ymin = 1.5, ymax = pts.front().second;
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1e-4;
  auto X = [&](double k) { return ml + (k - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto Y = [&](double r) { return h - mb - (r - ymin) / (ymax - ymin) * (h - mt - mb); };
  char buf[128];
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 400\">\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                ml, h - mb, w - mr, h - mb);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                ml, mt, ml, h - mb);
  svg << buf;
  svg << "<polyline fill=\"none\" stroke=\"blue\" points=\"";
  for (const auto& [k, r] : pts) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(static_cast<double>(k)), Y(r));
    svg << buf;
  }
  svg << "\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">k (copies)</text>\n", w / 2, h - 10.0);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"8\" y=\"%.1f\" font-size=\"12\">ratio %.4f</text>\n", mt + 10.0, ymax);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"8\" y=\"%.1f\" font-size=\"12\">%.4f</text>\n", h - mb, ymin);
  svg << buf;
  svg << "</svg>\n";
}

int cmd_curve(std::size_t k_max, const std::string& tol_text, const std::string& svg_path,
              Output& out) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  Rational tol = Rational::parse(tol_text);
  std::ostream& os = out.stream();
  os << "k,best_ratio,best_ratio_dec\n";
  std::vector<std::pair<std::size_t, double>> pts;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    Rational r = best_ratio(k, tol).ratio;
    os << k << ',' << ratio_cells(r) << '\n';
    double y = r.to_double();
    pts.emplace_back(k, y);
    double x = 1.0 / (static_cast<double>(k) + std::log2(static_cast<double>(k) + 1.0));
    sxx += x * x;
    sxy += x * (y - 1.5);
  }
  // Conjectured decay shape, reported as a fitted curve only (a log entry,
  // not an assertion): ratio(k) ~ 3/2 + c / (k + log2(k+1)).
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", sxx > 0 ? sxy / sxx : 0.0);
  os << "# fit: ratio(k) ~ 3/2 + c/(k + log2(k+1)) with c = " << buf << '\n';
  if (!svg_path.empty()) write_curve_svg(svg_path, pts);
  return 0;
}

int cmd_adversary(unsigned long n, const std::string& rl_text, const std::string& rs_text,
                  const std::string& out_path, Output& out) {
  AdversaryInstance adv =
      generate_adversary(n, Rational::parse(rl_text), Rational::parse(rs_text));
  write_instance_file(out_path, adv.instance);

  nlohmann::json meta;
  meta["n"] = adv.params.n;
  meta["r_l"] = adv.params.r_l.str_pq();
  meta["r_star"] = adv.params.r_star.str_pq();
  meta["epsilon"] = adv.params.epsilon.str_pq();
  meta["n_large"] = adv.params.n_large;
  meta["n_medium"] = adv.params.n_medium;
  meta["n_ss"] = adv.params.n_ss;
  meta["n_sl"] = adv.params.n_sl;
  meta["items"] = adv.instance.items.size();
  meta["realized_r_star"] = adv.realized_r_star.str_pq();
  meta["predicted"] = {{"ph3_lower", adv.predicted.ph3_lower.str_pq()},
                       {"ffd_upper", adv.predicted.ffd_upper.str_pq()},
                       {"ffd_upper_applicable", ffd_bound_applicable(adv.params)}};
  std::string sidecar = out_path + ".jsonl";
  std::ofstream side(sidecar);
  if (!side) throw std::invalid_argument("cannot write sidecar '" + sidecar + "'");
  side << meta.dump() << '\n';

  Rational dev = (adv.realized_r_star - adv.params.r_star).abs();
  if (dev > Rational(2) / Rational(static_cast<long>(n)))
    std::cerr << "warning: realized balance " << adv.realized_r_star.str()
              << " deviates from requested " << adv.params.r_star.str() << " by more than 2/"
              << n << '\n';

  std::ostream& os = out.stream();
  os << "n,r_l,r_star,items,ph3_lower,ph3_lower_dec,ffd_upper,ffd_upper_dec,ffd_ceiling_applies\n";
  os << n << ',' << adv.params.r_l.str_pq() << ',' << adv.params.r_star.str_pq() << ','
     << adv.instance.items.size() << ',' << ratio_cells(adv.predicted.ph3_lower) << ','
     << ratio_cells(adv.predicted.ffd_upper) << ','
     << (ffd_bound_applicable(adv.params) ? "yes" : "no") << '\n';
  return 0;
}

struct VerifyConfig {
  std::vector<std::pair<Rational, Rational>> grid;  // (r_l, r_star)
  std::vector<unsigned long> n_values;
  Rational tolerance_pct = Rational(5);
};

VerifyConfig default_verify_config() {
  VerifyConfig cfg;
  std::vector<Rational> axis = {Rational(0), Rational(1, 19), Rational(1, 3), Rational(1, 2),
                                Rational(1)};
  for (const auto& rl : axis)
    for (const auto& rs : axis) cfg.grid.emplace_back(rl, rs);
  cfg.n_values = {50, 200, 500};
  return cfg;
}

VerifyConfig load_verify_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config '" + path + "'");
  nlohmann::json j;
  in >> j;
  VerifyConfig cfg;
  for (const auto& pair : j.at("grid")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("config grid entries must be [r_l, r_star] pairs");
    cfg.grid.emplace_back(Rational::parse(pair[0].get<std::string>()),
                          Rational::parse(pair[1].get<std::string>()));
  }
  for (const auto& n : j.at("n_values")) cfg.n_values.push_back(n.get<unsigned long>());
  if (j.contains("tolerance_pct")) {
    const auto& t = j.at("tolerance_pct");
    cfg.tolerance_pct = Rational::parse(t.is_string() ? t.get<std::string>() : t.dump());
  }
  return cfg;
}

int cmd_verify(const std::string& config_path, Output& out) {
  VerifyConfig cfg =
      config_path.empty() ? default_verify_config() : load_verify_config(config_path);
  std::ostream& os = out.stream();

  if (cfg.grid.empty() || cfg.n_values.empty()) {
    std::cerr << "warning: empty grid, zero checks performed\n";
    os << "# checked,0,violations,0,skipped_ceilings,0\n";
    return 0;
  }

  Rational band_lo_f = Rational(1) - cfg.tolerance_pct / Rational(100);
  Rational band_hi_f = Rational(1) + cfg.tolerance_pct / Rational(100);

  // Points are independent, so the sweep runs on a small thread pool; each
  // task owns all of its state and the outcomes are gathered and emitted in
  // grid order afterwards, keeping the CSV bytes identical to a serial run.
  struct PointTask {
    unsigned long n;
    Rational rl, rs;
  };
  struct PointOutcome {
    std::string csv_row;
    std::vector<std::string> violations;
    bool ceiling_skipped = false;
    std::string error;
  };
  std::vector<PointTask> tasks;
  for (unsigned long n : cfg.n_values)
    for (const auto& [rl, rs] : cfg.grid) tasks.push_back({n, rl, rs});
  std::vector<PointOutcome> outcomes(tasks.size());

  auto run_point = [&](const PointTask& task, PointOutcome& res) {
    const unsigned long n = task.n;
    const Rational &rl = task.rl, &rs = task.rs;
    AdversaryInstance adv = generate_adversary(n, rl, rs);
    PackingResult ph3 = run_online(AlgorithmSpec{AlgorithmSpec::Kind::PH3, rl}, adv.instance);
    PackingResult ffd = run_ffd(adv.instance);
    OptBounds ob = opt_bounds(adv.instance);

    Rational ph3_bins(static_cast<long>(ph3.bins_used));
    Rational ffd_bins(static_cast<long>(ffd.bins_used));

    bool balance_ok =
        (adv.realized_r_star - rs).abs() <= Rational(2) / Rational(static_cast<long>(n));
    bool floor_ok = ph3_bins >= adv.predicted.ph3_lower;
    bool ceiling_applies = ffd_bound_applicable(adv.params);
    bool ceiling_ok = !ceiling_applies || ffd_bins <= adv.predicted.ffd_upper;
    res.ceiling_skipped = !ceiling_applies;

    // Empirical bracket vs the closed-form bound, within the band.
    RatioBracket br = empirical_ratio(ph3.bins_used, ob);
    Rational t = theorem1_bound(rl, rs);
    bool band_ok = !(br.upper < t * band_lo_f) && !(br.lower > t * band_hi_f);

    std::string at = "n=" + std::to_string(n) + ",r_l=" + rl.str_pq() + ",r_star=" + rs.str_pq();
    if (!balance_ok) res.violations.push_back(at + ": realized balance off by more than 2/N");
    if (!floor_ok)
      res.violations.push_back(at + ": measured bins " + std::to_string(ph3.bins_used) +
                               " under the predicted floor " + adv.predicted.ph3_lower.str());
    if (!ceiling_ok)
      res.violations.push_back(at + ": ffd bins " + std::to_string(ffd.bins_used) +
                               " over the predicted ceiling " + adv.predicted.ffd_upper.str());
    if (!band_ok)
      res.violations.push_back(at + ": bracket [" + br.lower.decimal_ceil(4) + "," +
                               br.upper.decimal_ceil(4) + "] misses the bound band around " +
                               t.decimal_ceil(4));

    std::ostringstream row;
    row << n << ',' << rl.str_pq() << ',' << rs.str_pq() << ',' << ph3.bins_used << ','
        << ffd.bins_used << ',' << ob.lb.get_str() << ',' << adv.realized_r_star.str_pq() << ','
        << (balance_ok ? "ok" : "fail") << ',' << (floor_ok ? "ok" : "fail") << ','
        << (!ceiling_applies ? "skip" : (ceiling_ok ? "ok" : "fail")) << ','
        << (band_ok ? "ok" : "fail") << '\n';
    res.csv_row = row.str();
  };

  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > tasks.size()) workers = tasks.size();
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
        try {
          run_point(tasks[i], outcomes[i]);
        } catch (const std::exception& e) {
          outcomes[i].error = e.what();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& o : outcomes)
    if (!o.error.empty()) throw std::runtime_error(o.error);

  os << "n,r_l,r_star,ph3_bins,ffd_bins,opt_lb,realized_r_star,balance,floor,ceiling,band\n";
  std::vector<std::string> violations;
  std::size_t skipped = 0;
  for (const PointOutcome& o : outcomes) {
    os << o.csv_row;
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    if (o.ceiling_skipped) ++skipped;
  }
  for (const std::string& v : violations) os << "# violation," << v << '\n';
  os << "# checked," << tasks.size() << ",violations," << violations.size()
     << ",skipped_ceilings," << skipped << '\n';
  return violations.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "k-copy bin-packing workbench: pack instances, plan routing-fraction "
      "covers, sweep the copies-vs-ratio trade-off, generate tightness "
      "instances, and cross-check measurements against closed-form bounds."};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the primary CSV to this file instead of stdout");
  long long seed = 0;
  app.add_option("--seed", seed,
                 "seed for randomized harnesses; the built-in subcommands are deterministic and "
                 "ignore it");

  auto* pack = app.add_subcommand("pack", "pack one instance file and report a run summary");
  std::string pack_path, pack_alg;
  bool pack_trace = false;
  pack->add_option("instance", pack_path, "instance file (one size per line)")->required();
  pack->add_option("algorithm", pack_alg, "nf | ff | bf | ffd | ph3:<r_l>")->required();
  pack->add_flag("--trace", pack_trace, "append per-item routing decisions as comment rows");

  auto* plan = app.add_subcommand("plan", "print the copy cover for a target ratio");
  std::string plan_r;
  plan->add_option("ratio", plan_r, "target ratio in (3/2, 33/19), p/q or decimal")->required();

  auto* best = app.add_subcommand("best-ratio", "smallest certified ratio for a copy budget");
  std::size_t best_k = 1;
  std::string best_tol = "1e-9";
  best->add_option("k", best_k, "number of copies (>= 1)")->required();
  best->add_option("--tol", best_tol, "binary-search tolerance (default 1e-9)");

  auto* table = app.add_subcommand(
      "table1", "bits/copies table: reference scheme bound vs best certified ratio, l = 4..16");
  std::string table_tol = "1e-7";
  table->add_option("--tol", table_tol, "binary-search tolerance (default 1e-7)");

  auto* curve = app.add_subcommand("curve", "best certified ratio for every k up to a limit");
  std::size_t curve_kmax = 1;
  std::string curve_tol = "1e-7", curve_svg;
  curve->add_option("k_max", curve_kmax, "largest copy count")->required();
  curve->add_option("--tol", curve_tol, "binary-search tolerance (default 1e-7)");
  curve->add_option("--svg", curve_svg, "also write a minimal line plot to this file");

  auto* adv = app.add_subcommand("adversary", "generate a tightness instance plus JSON sidecar");
  unsigned long adv_n = 0;
  std::string adv_rl, adv_rs, adv_out;
  adv->add_option("n", adv_n, "scale (>= 1); epsilon = 1/(12n+2)")->required();
  adv->add_option("r_l", adv_rl, "routing fraction in [0,1], p/q or decimal")->required();
  adv->add_option("r_star", adv_rs, "target balance in [0,1], p/q or decimal")->required();
  adv->add_option("--out", adv_out, "instance file path; sidecar goes to <path>.jsonl")
      ->required();

  auto* verify = app.add_subcommand(
      "verify", "generate, replay and cross-check a parameter grid against the closed forms");
  std::string verify_cfg;
  verify->add_option(
      "config", verify_cfg,
      "JSON config {\"grid\": [[r_l, r_star], ...], \"n_values\": [...], \"tolerance_pct\": 5}; "
      "default: n in {50,200,500} x {0, 1/19, 1/3, 1/2, 1}^2, tolerance 5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Output out;
    if (!out.redirect(out_path)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    if (pack->parsed()) return cmd_pack(pack_path, pack_alg, pack_trace, out);
    if (plan->parsed()) return cmd_plan(plan_r, out);
    if (best->parsed()) return cmd_best_ratio(best_k, best_tol, out);
    if (table->parsed()) return cmd_table1(table_tol, out);
    if (curve->parsed()) return cmd_curve(curve_kmax, curve_tol, curve_svg, out);
    if (adv->parsed()) return cmd_adversary(adv_n, adv_rl, adv_rs, adv_out, out);
    if (verify->parsed()) return cmd_verify(verify_cfg, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

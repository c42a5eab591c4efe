#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "binpack/model.hpp"
#include "binpack/rational.hpp"

namespace binpack {

enum class BinCategory { XL, L, M, S, Generic };

const char* to_string(BinCategory c);

// A capacity-limited slot inside a bin. Plain bins have one sub-bin of
// capacity 1; L-bins are split into a 2/3 sub-bin (holds one large item)
// and a 1/3 sub-bin (holds small items).
struct SubBin {
  Rational capacity;
  Rational content;         // cached sum of item sizes
  std::vector<Item> items;  // insertion order kept for replay/audit
};

struct Bin {
  std::size_t id = 0;  // creation order, unique per run
  BinCategory category = BinCategory::Generic;
  std::vector<SubBin> subs;

  Rational content() const;
  std::size_t item_count() const;
};

// One row of the optional per-item routing log.
struct TraceRow {
  std::size_t item_index = 0;
  Rational size;
  ItemClass cls = ItemClass::Small;
  std::string decision;
  std::size_t bin_id = 0;
};

// Summary of a PH3 run's internal accounting.
struct PH3Stats {
  Rational small_total;    // size of all small items seen
  Rational small_into_l;   // size of small items routed into L-bins
  std::size_t xl_bins = 0, l_bins = 0, m_bins = 0, s_bins = 0;
};

struct PackingResult {
  std::size_t bins_used = 0;
  std::vector<Bin> bins;  // final bins in id order
  std::optional<PH3Stats> ph3;
  std::vector<TraceRow> trace;  // nonempty only when tracing was requested
};

struct PH3Config {
  Rational r_l;  // target fraction of small mass routed into L-bins, in [0, 1]
};

// PH3: class-routed online packing with a tunable small-item split.
//   XL  -> own bin.
//   L   -> claims the oldest L-bin whose 2/3 sub-bin is still empty, else
//          opens a new L-bin.
//   M   -> pairs up: joins the open M-bin (closing it) or opens one.
//   S   -> routed into L-bins' 1/3 sub-bins (next-fit over the L-bin list,
//          opening fresh L-bins past the end) while
//              small_into_l < r_l * small_total,
//          both totals taken BEFORE the current item; otherwise strict
//          next-fit into dedicated S-bins (single active bin).
class PH3Packer {
public:
  explicit PH3Packer(PH3Config cfg, bool collect_trace = false);

  void step(const Item& item);

  // The routing predicate as it stands now, i.e. for the NEXT small item
  // (its value does not depend on that item's size). Exposed for adaptive
  // adversaries that key emissions off the packer's internal state.
  bool would_route_small_to_l() const;

  std::size_t bins_used() const { return bins_.size(); }
  const std::vector<Bin>& bins() const { return bins_; }
  const PH3Stats& stats() const { return stats_; }
  // S-bins currently filled strictly below 2/3; stays <= 1 throughout.
  std::size_t under_two_thirds_s_bins() const;

  PackingResult result() const;

private:
  Bin& new_bin(BinCategory cat);
  void place(std::size_t bin_id, std::size_t sub, const Item& item);
  void trace(const Item& item, const char* decision, std::size_t bin_id);

  PH3Config cfg_;
  bool collect_trace_;
  std::vector<Bin> bins_;
  std::vector<std::size_t> l_bins_;       // ids of L-bins, creation order
  std::deque<std::size_t> reserved_l_;    // L-bins with an empty 2/3 sub-bin
  std::optional<std::size_t> open_m_;     // M-bin holding a single item
  std::optional<std::size_t> open_s_;     // active S-bin
  std::size_t l_cursor_ = 0;              // next-fit position within l_bins_
  bool l_cursor_started_ = false;
  std::size_t under_s_ = 0;               // S-bins currently below 2/3
  PH3Stats stats_;
  std::vector<TraceRow> trace_;
};

// Classic baselines. All operate on one-sub-bin Generic bins of capacity 1.
class NextFitPacker {
public:
  explicit NextFitPacker(bool collect_trace = false);
  void step(const Item& item);
  std::size_t bins_used() const { return bins_.size(); }
  const std::vector<Bin>& bins() const { return bins_; }
  PackingResult result() const;

private:
  bool collect_trace_;
  std::vector<Bin> bins_;
  std::vector<TraceRow> trace_;
};

class FirstFitPacker {
public:
  explicit FirstFitPacker(bool collect_trace = false);
  void step(const Item& item);
  std::size_t bins_used() const { return bins_.size(); }
  const std::vector<Bin>& bins() const { return bins_; }
  PackingResult result() const;

private:
  // Segment tree over per-bin residual capacity; find-first-fit in O(log n).
  std::size_t find_first_fit(const Rational& need) const;
  void tree_update(std::size_t leaf, const Rational& residual);
  void tree_grow();

  bool collect_trace_;
  std::vector<Bin> bins_;
  std::vector<Rational> residuals_;
  std::vector<Rational> tree_;  // max-residual segment tree, 1-based heap layout
  std::size_t leaves_ = 0;
  std::vector<TraceRow> trace_;
};

class BestFitPacker {
public:
  explicit BestFitPacker(bool collect_trace = false);
  void step(const Item& item);
  std::size_t bins_used() const { return bins_.size(); }
  const std::vector<Bin>& bins() const { return bins_; }
  PackingResult result() const;

private:
  bool collect_trace_;
  std::vector<Bin> bins_;
  // (residual, bin id) ordered ascending: lower_bound(need) is the fullest
  // bin that still fits, lowest id breaking ties.
  std::set<std::pair<Rational, std::size_t>> by_residual_;
  std::vector<TraceRow> trace_;
};

struct AlgorithmSpec {
  enum class Kind { NextFit, FirstFit, BestFit, PH3, FFD } kind = Kind::NextFit;
  Rational r_l;  // only for PH3

  // Accepts "nf", "ff", "bf", "ffd", "ph3:<r_l>" with r_l as p/q or decimal.
  static AlgorithmSpec parse(const std::string& text);
  std::string str() const;
};

// Streams the instance through the requested online algorithm.
PackingResult run_online(const AlgorithmSpec& alg, const Instance& inst,
                         bool collect_trace = false);

// Offline First Fit Decreasing: sort by size descending (ties broken by
// original index ascending), then First Fit. Upper bound on OPT.
PackingResult run_ffd(const Instance& inst, bool collect_trace = false);

// Recomputes structural invariants from scratch; returns human-readable
// violations (empty means valid). `ph3` enables the PH3-specific checks
// (class discipline, sub-bin shapes, routing ledger, S-bin density).
std::vector<std::string> validate_packing(const PackingResult& result,
                                          const std::optional<PH3Config>& ph3 = std::nullopt);

}  // namespace binpack

#include "binpack/packers.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace binpack {

namespace {
const Rational kOne(1);
const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);
}  // namespace

const char* to_string(BinCategory c) {
  switch (c) {
    case BinCategory::XL: return "XL";
    case BinCategory::L: return "L";
    case BinCategory::M: return "M";
    case BinCategory::S: return "S";
    case BinCategory::Generic: return "generic";
  }
  return "?";
}

Rational Bin::content() const {
  Rational total;
  for (const auto& s : subs) total += s.content;
  return total;
}

std::size_t Bin::item_count() const {
  std::size_t n = 0;
  for (const auto& s : subs) n += s.items.size();
  return n;
}

// ---------------------------------------------------------------- PH3Packer

PH3Packer::PH3Packer(PH3Config cfg, bool collect_trace)
    : cfg_(std::move(cfg)), collect_trace_(collect_trace) {
  if (cfg_.r_l.sign() < 0 || cfg_.r_l > kOne)
    throw std::domain_error("PH3: r_l " + cfg_.r_l.str() + " outside [0, 1]");
}

Bin& PH3Packer::new_bin(BinCategory cat) {
  Bin b;
  b.id = bins_.size();
  b.category = cat;
  if (cat == BinCategory::L) {
    b.subs.resize(2);
    b.subs[0].capacity = kTwoThirds;
    b.subs[1].capacity = kThird;
  } else {
    b.subs.resize(1);
    b.subs[0].capacity = kOne;
  }
  bins_.push_back(std::move(b));
  switch (cat) {
    case BinCategory::XL: ++stats_.xl_bins; break;
    case BinCategory::L: ++stats_.l_bins; break;
    case BinCategory::M: ++stats_.m_bins; break;
    case BinCategory::S: ++stats_.s_bins; break;
    default: break;
  }
  return bins_.back();
}

void PH3Packer::place(std::size_t bin_id, std::size_t sub, const Item& item) {
  SubBin& s = bins_[bin_id].subs[sub];
  Rational before = s.content;
  s.content += item.size;
  if (s.content > s.capacity)
    throw std::logic_error("PH3 internal error: sub-bin overfull");
  s.items.push_back(item);
  if (bins_[bin_id].category == BinCategory::S) {
    // Track the count of S-bins filled strictly below 2/3 (creation is
    // counted in step(); only the under -> at-or-over transition matters).
    if (before < kTwoThirds && s.content >= kTwoThirds && under_s_ > 0) --under_s_;
  }
}

void PH3Packer::trace(const Item& item, const char* decision, std::size_t bin_id) {
  if (collect_trace_) trace_.push_back(TraceRow{item.index, item.size, item.cls, decision, bin_id});
}

bool PH3Packer::would_route_small_to_l() const {
  return stats_.small_into_l < cfg_.r_l * stats_.small_total;
}

std::size_t PH3Packer::under_two_thirds_s_bins() const { return under_s_; }

void PH3Packer::step(const Item& item) {
  ItemClass cls = classify(item.size);  // authoritative even if item.cls is stale
  Item it = item;
  it.cls = cls;
  switch (cls) {
    case ItemClass::XLarge: {
      Bin& b = new_bin(BinCategory::XL);
      place(b.id, 0, it);
      trace(it, "new-xl-bin", b.id);
      break;
    }
    case ItemClass::Large: {
      if (!reserved_l_.empty()) {
        std::size_t id = reserved_l_.front();
        reserved_l_.pop_front();
        place(id, 0, it);
        trace(it, "large-claims-reserved-l-bin", id);
      } else {
        Bin& b = new_bin(BinCategory::L);
        l_bins_.push_back(b.id);
        place(b.id, 0, it);
        trace(it, "new-l-bin", b.id);
      }
      break;
    }
    case ItemClass::Medium: {
      if (open_m_) {
        std::size_t id = *open_m_;
        place(id, 0, it);
        open_m_.reset();
        trace(it, "medium-joins-open-m-bin", id);
      } else {
        Bin& b = new_bin(BinCategory::M);
        place(b.id, 0, it);
        open_m_ = b.id;
        trace(it, "new-m-bin", b.id);
      }
      break;
    }
    case ItemClass::Small: {
      bool route_to_l = would_route_small_to_l();
      if (route_to_l) {
        if (l_bins_.empty()) {
          // Open an L-bin for its 1/3 sub-bin; the 2/3 side stays reserved
          // for a future large item.
          Bin& b = new_bin(BinCategory::L);
          l_bins_.push_back(b.id);
          reserved_l_.push_back(b.id);
        }
        if (!l_cursor_started_) {
          l_cursor_ = 0;
          l_cursor_started_ = true;
        }
        std::size_t cur = l_bins_[l_cursor_];
        if (bins_[cur].subs[1].content + it.size <= kThird) {
          place(cur, 1, it);
          trace(it, "small-into-l-sub", cur);
        } else {
          // Next fit: the active 1/3 sub-bin closes, move to the next L-bin
          // (whose 1/3 sub-bin has never been touched, so the item fits).
          ++l_cursor_;
          if (l_cursor_ >= l_bins_.size()) {
            Bin& b = new_bin(BinCategory::L);
            l_bins_.push_back(b.id);
            reserved_l_.push_back(b.id);
            place(b.id, 1, it);
            trace(it, "small-opens-l-bin", b.id);
          } else {
            std::size_t next = l_bins_[l_cursor_];
            place(next, 1, it);
            trace(it, "small-advances-l-sub", next);
          }
        }
      } else {
        if (open_s_ && bins_[*open_s_].subs[0].content + it.size <= kOne) {
          place(*open_s_, 0, it);
          trace(it, "small-into-s-bin", *open_s_);
        } else {
          Bin& b = new_bin(BinCategory::S);
          ++under_s_;  // opens empty, i.e. under 2/3; place() may clear it
          open_s_ = b.id;
          place(b.id, 0, it);
          trace(it, "small-opens-s-bin", b.id);
        }
      }
      stats_.small_total += it.size;
      if (route_to_l) stats_.small_into_l += it.size;
      break;
    }
  }
}

PackingResult PH3Packer::result() const {
  PackingResult r;
  r.bins_used = bins_.size();
  r.bins = bins_;
  r.ph3 = stats_;
  r.trace = trace_;
  return r;
}

// ------------------------------------------------------------ NextFitPacker

NextFitPacker::NextFitPacker(bool collect_trace) : collect_trace_(collect_trace) {}

void NextFitPacker::step(const Item& item) {
  classify(item.size);  // validates (0, 1]
  if (!bins_.empty()) {
    Bin& last = bins_.back();
    if (last.subs[0].content + item.size <= kOne) {
      last.subs[0].content += item.size;
      last.subs[0].items.push_back(item);
      if (collect_trace_)
        trace_.push_back(TraceRow{item.index, item.size, item.cls, "nf-continue", last.id});
      return;
    }
  }
  Bin b;
  b.id = bins_.size();
  b.subs.resize(1);
  b.subs[0].capacity = kOne;
  b.subs[0].content = item.size;
  b.subs[0].items.push_back(item);
  bins_.push_back(std::move(b));
  if (collect_trace_)
    trace_.push_back(TraceRow{item.index, item.size, item.cls, "nf-new-bin", bins_.back().id});
}

PackingResult NextFitPacker::result() const {
  return PackingResult{bins_.size(), bins_, std::nullopt, trace_};
}

// ----------------------------------------------------------- FirstFitPacker

FirstFitPacker::FirstFitPacker(bool collect_trace) : collect_trace_(collect_trace) {
  leaves_ = 1;
  tree_.assign(2 * leaves_, Rational(-1));
}

void FirstFitPacker::tree_grow() {
  std::size_t new_leaves = leaves_ * 2;
  std::vector<Rational> nt(2 * new_leaves, Rational(-1));
  for (std::size_t i = 0; i < residuals_.size(); ++i) nt[new_leaves + i] = residuals_[i];
  for (std::size_t i = new_leaves - 1; i >= 1; --i)
    nt[i] = std::max(nt[2 * i], nt[2 * i + 1]);
  tree_ = std::move(nt);
  leaves_ = new_leaves;
}

void FirstFitPacker::tree_update(std::size_t leaf, const Rational& residual) {
  std::size_t i = leaves_ + leaf;
  tree_[i] = residual;
  for (i /= 2; i >= 1; i /= 2) tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
}

std::size_t FirstFitPacker::find_first_fit(const Rational& need) const {
  if (tree_[1] < need) return static_cast<std::size_t>(-1);
  std::size_t node = 1;
  while (node < leaves_) {
    node = (tree_[2 * node] >= need) ? 2 * node : 2 * node + 1;
  }
  return node - leaves_;
}

void FirstFitPacker::step(const Item& item) {
  classify(item.size);
  std::size_t idx = find_first_fit(item.size);
  if (idx == static_cast<std::size_t>(-1) || idx >= bins_.size()) {
    Bin b;
    b.id = bins_.size();
    b.subs.resize(1);
    b.subs[0].capacity = kOne;
    b.subs[0].content = item.size;
    b.subs[0].items.push_back(item);
    bins_.push_back(std::move(b));
    residuals_.push_back(kOne - item.size);
    if (residuals_.size() > leaves_) tree_grow();
    tree_update(residuals_.size() - 1, residuals_.back());
    if (collect_trace_)
      trace_.push_back(TraceRow{item.index, item.size, item.cls, "ff-new-bin", bins_.back().id});
  } else {
    Bin& b = bins_[idx];
    b.subs[0].content += item.size;
    b.subs[0].items.push_back(item);
    residuals_[idx] -= item.size;
    tree_update(idx, residuals_[idx]);
    if (collect_trace_)
      trace_.push_back(TraceRow{item.index, item.size, item.cls, "ff-place", b.id});
  }
}

PackingResult FirstFitPacker::result() const {
  return PackingResult{bins_.size(), bins_, std::nullopt, trace_};
}

// ------------------------------------------------------------ BestFitPacker

BestFitPacker::BestFitPacker(bool collect_trace) : collect_trace_(collect_trace) {}

void BestFitPacker::step(const Item& item) {
  classify(item.size);
  auto it = by_residual_.lower_bound(std::make_pair(item.size, std::size_t{0}));
  if (it == by_residual_.end()) {
    Bin b;
    b.id = bins_.size();
    b.subs.resize(1);
    b.subs[0].capacity = kOne;
    b.subs[0].content = item.size;
    b.subs[0].items.push_back(item);
    bins_.push_back(std::move(b));
    by_residual_.insert(std::make_pair(kOne - item.size, b.id));
    if (collect_trace_)
      trace_.push_back(TraceRow{item.index, item.size, item.cls, "bf-new-bin", bins_.back().id});
  } else {
    std::size_t id = it->second;
    Rational residual = it->first - item.size;
    by_residual_.erase(it);
    by_residual_.insert(std::make_pair(residual, id));
    Bin& b = bins_[id];
    b.subs[0].content += item.size;
    b.subs[0].items.push_back(item);
    if (collect_trace_)
      trace_.push_back(TraceRow{item.index, item.size, item.cls, "bf-place", id});
  }
}

PackingResult BestFitPacker::result() const {
  return PackingResult{bins_.size(), bins_, std::nullopt, trace_};
}

// ------------------------------------------------------------ entry points

AlgorithmSpec AlgorithmSpec::parse(const std::string& text) {
  AlgorithmSpec spec;
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "nf") {
    spec.kind = Kind::NextFit;
  } else if (t == "ff") {
    spec.kind = Kind::FirstFit;
  } else if (t == "bf") {
    spec.kind = Kind::BestFit;
  } else if (t == "ffd") {
    spec.kind = Kind::FFD;
  } else if (t.rfind("ph3:", 0) == 0) {
    spec.kind = Kind::PH3;
    spec.r_l = Rational::parse(text.substr(4));
    if (spec.r_l.sign() < 0 || spec.r_l > kOne)
      throw std::invalid_argument("algorithm spec: ph3 r_l outside [0, 1]: " + text);
  } else {
    throw std::invalid_argument("algorithm spec: expected nf|ff|bf|ffd|ph3:<r_l>, got '" + text +
                                "'");
  }
  return spec;
}

std::string AlgorithmSpec::str() const {
  switch (kind) {
    case Kind::NextFit: return "nf";
    case Kind::FirstFit: return "ff";
    case Kind::BestFit: return "bf";
    case Kind::FFD: return "ffd";
    case Kind::PH3: return "ph3:" + r_l.str();
  }
  return "?";
}

PackingResult run_online(const AlgorithmSpec& alg, const Instance& inst, bool collect_trace) {
  switch (alg.kind) {
    case AlgorithmSpec::Kind::NextFit: {
      NextFitPacker p(collect_trace);
      for (const auto& it : inst.items) p.step(it);
      return p.result();
    }
    case AlgorithmSpec::Kind::FirstFit: {
      FirstFitPacker p(collect_trace);
      for (const auto& it : inst.items) p.step(it);
      return p.result();
    }
    case AlgorithmSpec::Kind::BestFit: {
      BestFitPacker p(collect_trace);
      for (const auto& it : inst.items) p.step(it);
      return p.result();
    }
    case AlgorithmSpec::Kind::PH3: {
      PH3Packer p(PH3Config{alg.r_l}, collect_trace);
      for (const auto& it : inst.items) p.step(it);
      return p.result();
    }
    case AlgorithmSpec::Kind::FFD:
      return run_ffd(inst, collect_trace);
  }
  throw std::logic_error("run_online: unknown algorithm");
}

PackingResult run_ffd(const Instance& inst, bool collect_trace) {
  std::vector<const Item*> order;
  order.reserve(inst.items.size());
  for (const auto& it : inst.items) order.push_back(&it);
  std::sort(order.begin(), order.end(), [](const Item* a, const Item* b) {
    if (a->size != b->size) return a->size > b->size;
    return a->index < b->index;
  });
  FirstFitPacker p(collect_trace);
  for (const Item* it : order) p.step(*it);
  return p.result();
}

// -------------------------------------------------------------- validation

std::vector<std::string> validate_packing(const PackingResult& result,
                                          const std::optional<PH3Config>& ph3) {
  std::vector<std::string> bad;
  auto flag = [&bad](const std::string& msg) { bad.push_back(msg); };

  if (result.bins_used != result.bins.size())
    flag("bins_used " + std::to_string(result.bins_used) + " != bin count " +
         std::to_string(result.bins.size()));

  std::size_t cat_counts[5] = {0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < result.bins.size(); ++i) {
    const Bin& b = result.bins[i];
    std::string tag = "bin " + std::to_string(b.id);
    if (b.id != i) flag(tag + ": id out of order");
    ++cat_counts[static_cast<int>(b.category)];
    Rational cap_total;
    for (const auto& s : b.subs) {
      cap_total += s.capacity;
      Rational sum;
      for (const auto& it : s.items) sum += it.size;
      if (sum != s.content) flag(tag + ": cached content differs from item sum");
      if (s.content > s.capacity)
        flag(tag + ": overfull sub-bin (" + s.content.str() + " > " + s.capacity.str() + ")");
    }
    if (cap_total > kOne) flag(tag + ": sub-bin capacities exceed 1");
  }

  if (ph3) {
    std::size_t under_two_thirds = 0;
    std::size_t open_m = 0;
    Rational small_in_l, small_in_s, small_total_check;
    for (const Bin& b : result.bins) {
      std::string tag = "bin " + std::to_string(b.id);
      switch (b.category) {
        case BinCategory::XL:
          if (b.subs.size() != 1 || b.item_count() != 1 ||
              b.subs[0].items[0].cls != ItemClass::XLarge)
            flag(tag + ": XL bin must hold exactly one XL item");
          break;
        case BinCategory::L: {
          if (b.subs.size() != 2 || b.subs[0].capacity != kTwoThirds ||
              b.subs[1].capacity != kThird) {
            flag(tag + ": L bin must have 2/3 + 1/3 sub-bins");
            break;
          }
          if (b.subs[0].items.size() > 1) flag(tag + ": 2/3 sub-bin holds more than one item");
          for (const auto& it : b.subs[0].items)
            if (classify(it.size) != ItemClass::Large) flag(tag + ": non-large item in 2/3 sub-bin");
          for (const auto& it : b.subs[1].items)
            if (classify(it.size) != ItemClass::Small) flag(tag + ": non-small item in 1/3 sub-bin");
          small_in_l += b.subs[1].content;
          break;
        }
        case BinCategory::M:
          if (b.item_count() > 2) flag(tag + ": M bin holds more than two items");
          if (b.item_count() == 1) ++open_m;
          for (const auto& s : b.subs)
            for (const auto& it : s.items)
              if (classify(it.size) != ItemClass::Medium) flag(tag + ": non-medium item in M bin");
          break;
        case BinCategory::S:
          for (const auto& s : b.subs)
            for (const auto& it : s.items)
              if (classify(it.size) != ItemClass::Small) flag(tag + ": non-small item in S bin");
          if (b.content() < kTwoThirds) ++under_two_thirds;
          small_in_s += b.content();
          break;
        case BinCategory::Generic:
          flag(tag + ": generic bin in a PH3 packing");
          break;
      }
    }
    if (under_two_thirds > 1)
      flag("more than one S-bin filled below 2/3 (" + std::to_string(under_two_thirds) + ")");
    if (open_m > 1) flag("more than one half-filled M bin");
    if (result.ph3) {
      if (result.ph3->small_into_l != small_in_l)
        flag("routing ledger: small_into_l mismatch");
      small_total_check = small_in_l + small_in_s;
      if (result.ph3->small_total != small_total_check)
        flag("routing ledger: small_total != small in L-bins + small in S-bins");
      if (result.ph3->xl_bins != cat_counts[0] || result.ph3->l_bins != cat_counts[1] ||
          result.ph3->m_bins != cat_counts[2] || result.ph3->s_bins != cat_counts[3])
        flag("per-category bin counts disagree with stats");
    }
  }
  return bad;
}

}  // namespace binpack

#include "rearr/colour_game.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace rearr {

NotFullyColouredError::NotFullyColouredError(const DyadicInterval& interval)
    : std::invalid_argument("member " + to_string(interval) + " is not coloured"), interval_(interval) {}

// ---------------------------------------------------------------------------
// ColouredCollection

ColouredCollection::ColouredCollection(int level, int colours, Rational eta)
    : level_(level), colours_(colours) {
  if (level < 0 || level > kMaxGameLevel) {
    throw DomainError("level must lie in [0, " + std::to_string(kMaxGameLevel) + "]");
  }
  if (colours < 1) throw DomainError("need at least one colour");
  set_eta(eta);
}

void ColouredCollection::set_eta(Rational eta) {
  if (eta <= Rational(0) || eta > Rational(1, 2)) throw DomainError("η must lie in (0, 1/2], got " + to_string(eta));
  eta_ = eta;
}

void ColouredCollection::check_member(const DyadicInterval& interval) const {
  if (interval.level() != level_) {
    throw DomainError(to_string(interval) + " is not on level " + std::to_string(level_));
  }
}

void ColouredCollection::check_colour(int colour) const {
  if (colour < 0 || colour > colours_) {
    throw DomainError("colour " + std::to_string(colour) + " outside 0.." + std::to_string(colours_));
  }
}

void ColouredCollection::insert(const DyadicInterval& interval, int colour) {
  check_member(interval);
  check_colour(colour);
  if (!members_.emplace(interval.index(), colour).second) {
    throw DomainError(to_string(interval) + " is already a member");
  }
}

void ColouredCollection::set_colour(const DyadicInterval& interval, int colour) {
  check_member(interval);
  check_colour(colour);
  auto it = members_.find(interval.index());
  if (it == members_.end()) throw DomainError(to_string(interval) + " is not a member");
  it->second = colour;
}

bool ColouredCollection::contains(const DyadicInterval& interval) const {
  return interval.level() == level_ && members_.count(interval.index()) != 0;
}

int ColouredCollection::colour_of(const DyadicInterval& interval) const {
  check_member(interval);
  auto it = members_.find(interval.index());
  if (it == members_.end()) throw DomainError(to_string(interval) + " is not a member");
  return it->second;
}

bool ColouredCollection::fully_coloured() const {
  return std::all_of(members_.begin(), members_.end(), [](const auto& e) { return e.second != 0; });
}

bool ColouredCollection::covers_level() const {
  return static_cast<std::int64_t>(members_.size()) == (std::int64_t{1} << level_);
}

IntervalCollection ColouredCollection::collection() const {
  IntervalCollection out;
  for (const auto& [k, colour] : members_) out.insert(DyadicInterval(level_, k));
  return out;
}

std::pair<std::int64_t, std::int64_t> ColouredCollection::index_range(const DyadicInterval& L) const {
  if (L.level() > level_) throw DomainError("testing interval finer than the collection level");
  const int shift = level_ - L.level();
  return {((L.index() - 1) << shift) + 1, L.index() << shift};
}

std::int64_t ColouredCollection::rho(const DyadicInterval& L) const {
  const auto [first, last] = index_range(L);
  return std::distance(members_.lower_bound(first), members_.upper_bound(last));
}

std::vector<std::int64_t> ColouredCollection::colour_counts(const DyadicInterval& L) const {
  const auto [first, last] = index_range(L);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(colours_), 0);
  for (auto it = members_.lower_bound(first); it != members_.end() && it->first <= last; ++it) {
    if (it->second > 0) ++counts[static_cast<std::size_t>(it->second - 1)];
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Homogeneity

namespace {

int alpha_of(int d) {
  int alpha = 0;
  while ((2 << alpha) <= d) ++alpha;
  return alpha;
}

/// η·max <= min by cross-multiplication.
bool balanced(const Rational& eta, const std::vector<std::int64_t>& counts) {
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return eta.numerator() * *hi <= eta.denominator() * *lo;
}

HomogeneityVerdict check_up_to(const ColouredCollection& c, int max_level) {
  const int j = c.level();
  const auto d = static_cast<std::size_t>(c.colours());
  std::map<std::int64_t, std::vector<std::int64_t>> current;  // 0-based index -> counts
  for (const auto& [k, colour] : c.members()) {
    if (colour == 0) throw NotFullyColouredError(DyadicInterval(j, k));
    auto& counts = current[k - 1];
    counts.resize(d, 0);
    ++counts[static_cast<std::size_t>(colour - 1)];
  }
  HomogeneityVerdict verdict;
  for (int l = j; l >= 0; --l) {
    if (l <= max_level) {
      for (const auto& [idx, counts] : current) {
        const std::int64_t rho = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
        const bool hom1 = rho <= c.colours();
        const bool ok = hom1 ? *std::max_element(counts.begin(), counts.end()) <= 1 : balanced(c.eta(), counts);
        if (!ok) verdict.violations.push_back({DyadicInterval(l, idx + 1), hom1 ? "hom1" : "hom2", rho, counts});
      }
    }
    if (l == 0) break;
    std::map<std::int64_t, std::vector<std::int64_t>> parent;
    for (const auto& [idx, counts] : current) {
      auto& p = parent[idx >> 1];
      p.resize(d, 0);
      for (std::size_t i = 0; i < d; ++i) p[i] += counts[i];
    }
    current = std::move(parent);
  }
  std::sort(verdict.violations.begin(), verdict.violations.end(),
            [](const HomogeneityViolation& a, const HomogeneityViolation& b) { return a.L < b.L; });
  verdict.ok = verdict.violations.empty();
  return verdict;
}

}  // namespace

HomogeneityVerdict check_homogeneous(const ColouredCollection& c) { return check_up_to(c, c.level()); }

HomogeneityVerdict check_homogeneous_reduced(const ColouredCollection& c) {
  return check_up_to(c, std::max(0, c.level() - alpha_of(c.colours())));
}

// ---------------------------------------------------------------------------
// Previsibility

PrevisibilityVerdict check_previsible(const IntervalCollection& u, const IntervalCollection& c, int level,
                                      int colours, bool symmetric) {
  if (level < 0 || level > kMaxGameLevel) throw DomainError("level out of range");
  for (const auto* coll : {&u, &c}) {
    for (const DyadicInterval& i : *coll) {
      if (i.level() != level) throw DomainError(to_string(i) + " is not on level " + std::to_string(level));
    }
  }
  for (const DyadicInterval& i : u) {
    if (c.contains(i)) throw DomainError("U and C overlap at " + to_string(i));
  }
  // ρ(U ∪ C, K) and ρ(U, K) for every K meeting U, keyed by (level, index).
  std::map<std::pair<int, std::int64_t>, std::int64_t> all;
  std::map<std::pair<int, std::int64_t>, std::int64_t> in_u;
  auto count = [&](const DyadicInterval& i, auto& target) {
    for (int l = 0; l <= level; ++l) ++target[{l, i.ancestor(l).index()}];
  };
  for (const DyadicInterval& i : u) {
    count(i, all);
    count(i, in_u);
  }
  for (const DyadicInterval& i : c) count(i, all);
  auto rho = [&](const auto& table, const DyadicInterval& k) {
    auto it = table.find({k.level(), k.index()});
    return it == table.end() ? std::int64_t{0} : it->second;
  };

  PrevisibilityVerdict verdict;
  std::set<DyadicInterval> parents;
  for (const DyadicInterval& i : u) {
    for (int l = 0; l + 1 <= level; ++l) parents.insert(i.ancestor(l));
  }
  for (const DyadicInterval& parent : parents) {
    const DyadicInterval left = parent.left_child();
    const DyadicInterval right = parent.right_child();
    // Literal orientation: left small, right big and touched by U.
    if (rho(all, left) < colours && rho(all, right) >= colours && rho(in_u, right) > 0) {
      verdict.violations.push_back({parent, left, right});
    }
    if (symmetric && rho(all, right) < colours && rho(all, left) >= colours && rho(in_u, left) > 0) {
      verdict.violations.push_back({parent, right, left});
    }
  }
  verdict.ok = verdict.violations.empty();
  return verdict;
}

// ---------------------------------------------------------------------------
// Round robin

ColouredCollection round_robin(const IntervalCollection& c, int level, int colours, Rational eta) {
  ColouredCollection out(level, colours, eta);
  std::int64_t l = 0;
  for (const DyadicInterval& i : c) out.insert(i, static_cast<int>(l++ % colours) + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Player B

namespace {

class Extender {
 public:
  Extender(const ColouredCollection& c, const IntervalCollection& u)
      : j_(c.level()), d_(c.colours()), work_(c.members()) {
    for (const DyadicInterval& i : u) {
      work_[i.index()] = 0;
      u_.insert(i.index());
    }
  }

  void run(ExtensionOutcome& out) {
    const int base = std::max(0, j_ - alpha_of(d_));
    for (int nu = base; nu >= 0; --nu) {
      std::set<std::int64_t> nodes;
      for (std::int64_t k : u_) nodes.insert(((k - 1) >> (j_ - nu)) + 1);
      for (std::int64_t idx : nodes) {
        const DyadicInterval L(nu, idx);
        if (nu == base) {
          base_case(L, out);
        } else {
          upper_case(L, out);
        }
      }
    }
    const DyadicInterval root(0, 1);
    if (rho(root) < d_ && !uncoloured(root).empty()) {
      // II.1 at the root: fewer than d intervals in total.
      auto used = c_colours(root);
      std::vector<int> free;
      for (int i = 1; i <= d_; ++i) {
        if (!used[static_cast<std::size_t>(i - 1)]) free.push_back(i);
      }
      assign(uncoloured(root), free, 0);
      out.trace.push_back("II.1 at " + to_string(root));
    }
  }

  const std::map<std::int64_t, int>& colours() const { return work_; }

 private:
  std::pair<std::int64_t, std::int64_t> range(const DyadicInterval& L) const {
    const int shift = j_ - L.level();
    return {((L.index() - 1) << shift) + 1, L.index() << shift};
  }

  std::int64_t rho(const DyadicInterval& L) const {
    const auto [first, last] = range(L);
    return std::distance(work_.lower_bound(first), work_.upper_bound(last));
  }

  std::int64_t rho_u(const DyadicInterval& L) const {
    const auto [first, last] = range(L);
    return std::distance(u_.lower_bound(first), u_.upper_bound(last));
  }

  std::vector<std::int64_t> uncoloured(const DyadicInterval& L) const {
    const auto [first, last] = range(L);
    std::vector<std::int64_t> out;
    for (auto it = u_.lower_bound(first); it != u_.end() && *it <= last; ++it) {
      if (work_.at(*it) == 0) out.push_back(*it);
    }
    return out;
  }

  /// Colours carried by members of C inside L.
  std::vector<bool> c_colours(const DyadicInterval& L) const {
    std::vector<bool> present(static_cast<std::size_t>(d_), false);
    const auto counts = c_counts(L);
    for (std::size_t i = 0; i < counts.size(); ++i) present[i] = counts[i] > 0;
    return present;
  }

  std::vector<std::int64_t> c_counts(const DyadicInterval& L) const {
    const auto [first, last] = range(L);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(d_), 0);
    for (auto it = work_.lower_bound(first); it != work_.end() && it->first <= last; ++it) {
      if (u_.count(it->first) == 0) ++counts[static_cast<std::size_t>(it->second - 1)];
    }
    return counts;
  }

  std::int64_t rho_c(const DyadicInterval& L) const { return rho(L) - rho_u(L); }

  void assign(const std::vector<std::int64_t>& targets, const std::vector<int>& palette, std::size_t from) {
    if (palette.size() < from + targets.size()) {
      throw DefectError("strategy ran out of colours");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) work_[targets[i]] = palette[from + i];
  }

  void base_case(const DyadicInterval& L, ExtensionOutcome& out) {
    const std::int64_t r = rho(L);
    if (r < d_) return;  // I.1: leave uncoloured
    if (r > d_) throw DefectError("ρ(H, L) > d on the base level at " + to_string(L));
    // I.2: the d members must carry every colour once.
    const auto present = c_colours(L);
    std::vector<int> missing;
    for (int i = 1; i <= d_; ++i) {
      if (!present[static_cast<std::size_t>(i - 1)]) missing.push_back(i);
    }
    assign(uncoloured(L), missing, 0);
    out.trace.push_back("I.2 at " + to_string(L));
  }

  void upper_case(const DyadicInterval& L, ExtensionOutcome& out) {
    const DyadicInterval left = L.left_child();
    const DyadicInterval right = L.right_child();
    const std::int64_t r1 = rho(left);
    const std::int64_t r2 = rho(right);
    if (r1 + r2 < d_) return;                 // II.1 (root handled separately)
    if (r1 >= d_ && r2 >= d_) return;         // II.2.1
    if (r1 < d_ && r2 < d_) {
      both_small(L, left, right, out);
    } else if (r1 < d_) {
      mixed(L, left, right, out, "II.2.3");
    } else {
      mixed(L, right, left, out, "II.2.4");
    }
  }

  // II.2.2
  void both_small(const DyadicInterval& L, const DyadicInterval& left, const DyadicInterval& right,
                  ExtensionOutcome& out) {
    const auto u1 = uncoloured(left);
    const auto u2 = uncoloured(right);
    if (u1.empty() && u2.empty()) return;
    const std::int64_t m = rho_c(left);
    const std::int64_t n = rho_c(right);
    const auto a1 = c_colours(left);
    const auto a2 = c_colours(right);
    std::vector<int> in1, in2, rest;
    for (int i = 1; i <= d_; ++i) {
      const bool p1 = a1[static_cast<std::size_t>(i - 1)];
      const bool p2 = a2[static_cast<std::size_t>(i - 1)];
      if (p1) in1.push_back(i);
      if (p2) in2.push_back(i);
      if (!p1 && !p2) rest.push_back(i);
    }
    if (m + n < d_) {
      // U in L' takes the free colours first, then colours of C in L''.
      std::vector<int> palette1 = rest;
      palette1.insert(palette1.end(), in2.begin(), in2.end());
      assign(u1, palette1, 0);
      const std::size_t x = u1.size();
      std::vector<int> palette2;
      if (m + n + static_cast<std::int64_t>(x) < d_) {
        // Free colours unused in L', then colours of C in L', then the
        // free colours already used in L'.
        palette2.assign(rest.begin() + static_cast<std::ptrdiff_t>(x), rest.end());
        palette2.insert(palette2.end(), in1.begin(), in1.end());
        palette2.insert(palette2.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(x));
      } else {
        for (int i = 1; i <= d_; ++i) {
          if (!a2[static_cast<std::size_t>(i - 1)]) palette2.push_back(i);
        }
      }
      assign(u2, palette2, 0);
      out.trace.push_back("II.2.2 (m+n<d) at " + to_string(L));
    } else {
      std::vector<int> only2, only1;
      for (int i = 1; i <= d_; ++i) {
        const bool p1 = a1[static_cast<std::size_t>(i - 1)];
        const bool p2 = a2[static_cast<std::size_t>(i - 1)];
        if (p2 && !p1) only2.push_back(i);
        if (p1 && !p2) only1.push_back(i);
      }
      assign(u1, only2, 0);
      assign(u2, only1, 0);
      out.trace.push_back("II.2.2 (m+n>=d) at " + to_string(L));
    }
  }

  // II.2.3 with small = L', big = L''; II.2.4 is the same with roles swapped.
  void mixed(const DyadicInterval& L, const DyadicInterval& small, const DyadicInterval& big,
             ExtensionOutcome& out, const char* name) {
    if (rho_u(big) > 0 && !uncoloured(big).empty()) {
      throw DefectError(std::string(name) + ": uncoloured U inside a big successor at " + to_string(L));
    }
    const auto targets = uncoloured(small);
    if (targets.empty()) return;
    const auto present = c_colours(small);
    const auto big_counts = c_counts(big);
    std::vector<int> t;
    for (int i = 1; i <= d_; ++i) {
      if (!present[static_cast<std::size_t>(i - 1)]) t.push_back(i);
    }
    std::stable_sort(t.begin(), t.end(), [&](int x, int y) {
      return big_counts[static_cast<std::size_t>(x - 1)] < big_counts[static_cast<std::size_t>(y - 1)];
    });
    assign(targets, t, 0);
    out.trace.push_back(std::string(name) + " at " + to_string(L));
  }

  int j_;
  int d_;
  std::map<std::int64_t, int> work_;
  std::set<std::int64_t> u_;
};

}  // namespace

ExtensionOutcome player_b_extend(const ColouredCollection& c, const IntervalCollection& u) {
  ExtensionOutcome out;
  const HomogeneityVerdict before = check_homogeneous(c);
  if (!before.ok) throw DomainError("the given colouring of C is not homogeneous");
  out.previsibility = check_previsible(u, c.collection(), c.level(), c.colours(), true);
  if (!out.previsibility.ok) return out;
  out.applicable = true;

  Extender ext(c, u);
  ext.run(out);
  ColouredCollection result(c.level(), c.colours(), c.eta());
  for (const auto& [k, colour] : ext.colours()) {
    if (colour == 0) throw DefectError("strategy left " + to_string(DyadicInterval(c.level(), k)) + " uncoloured");
    result.insert(DyadicInterval(c.level(), k), colour);
  }
  for (const auto& [k, colour] : c.members()) {
    if (result.members().at(k) != colour) throw DefectError("strategy changed a colour of C");
  }
  const HomogeneityVerdict after = check_homogeneous(result);
  if (!after.ok) {
    const auto& v = after.violations.front();
    throw DefectError("strategy output violates " + v.condition + " at " + to_string(v.L));
  }
  out.result = std::move(result);
  return out;
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

std::uint64_t saturating_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

class Search {
 public:
  Search(const ColouredCollection& c, const std::vector<DyadicInterval>& order, const BruteForceOptions& opt,
         BruteForceResult& result)
      : c_(c), d_(static_cast<std::size_t>(c.colours())), opt_(opt), result_(result), order_(order) {
    const int j = c.level();
    std::map<std::pair<int, std::int64_t>, std::size_t> ids;
    auto node_of = [&](int l, std::int64_t idx) {
      auto [it, inserted] = ids.emplace(std::make_pair(l, idx), rho_.size());
      if (inserted) {
        rho_.push_back(0);
        counts_.emplace_back(d_, 0);
      }
      return it->second;
    };
    for (const auto& [k, colour] : c.members()) {
      const DyadicInterval i(j, k);
      for (int l = 0; l < j; ++l) {
        const std::size_t n = node_of(l, i.ancestor(l).index());
        ++rho_[n];
        if (colour == 0) throw NotFullyColouredError(i);
        ++counts_[n][static_cast<std::size_t>(colour - 1)];
      }
    }
    std::set<std::size_t> touched;
    for (const DyadicInterval& i : order) {
      std::vector<std::size_t> path;
      for (int l = 0; l < j; ++l) {
        const std::size_t n = node_of(l, i.ancestor(l).index());
        ++rho_[n];
        path.push_back(n);
        touched.insert(n);
      }
      paths_.push_back(std::move(path));
    }
    touched_.assign(touched.begin(), touched.end());
    // Nodes without U keep their counts; if one of them fails, nothing works.
    fixed_ok_ = true;
    for (std::size_t n = 0; n < rho_.size(); ++n) {
      if (touched.count(n) == 0 && !node_ok(n)) fixed_ok_ = false;
    }
    if (opt.timeout) deadline_ = std::chrono::steady_clock::now() + *opt.timeout;
    colours_.assign(order.size(), 0);
  }

  void run() {
    if (!fixed_ok_) return;
    dfs(0);
  }

 private:
  bool node_ok(std::size_t n) const {
    const auto& counts = counts_[n];
    if (rho_[n] <= static_cast<std::int64_t>(d_)) {
      return *std::max_element(counts.begin(), counts.end()) <= 1;
    }
    return balanced(c_.eta(), counts);
  }

  bool expired() {
    if (!deadline_) return false;
    if (++ticks_ % 1024 != 0) return false;
    if (std::chrono::steady_clock::now() > *deadline_) result_.timed_out = true;
    return result_.timed_out;
  }

  void dfs(std::size_t pos) {
    if (result_.timed_out || result_.stopped || expired()) return;
    if (pos == order_.size()) {
      for (std::size_t n : touched_) {
        if (!node_ok(n)) return;
      }
      ++result_.count;
      if (!opt_.count_only && result_.extensions.size() < opt_.list_limit) result_.extensions.push_back(colours_);
      if (opt_.stop_after != 0 && result_.count >= opt_.stop_after) result_.stopped = true;
      return;
    }
    for (std::size_t colour = 0; colour < d_; ++colour) {
      bool ok = true;
      for (std::size_t n : paths_[pos]) {
        // hom1 can be decided as soon as the count reaches 2.
        if (rho_[n] <= static_cast<std::int64_t>(d_) && counts_[n][colour] >= 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t n : paths_[pos]) ++counts_[n][colour];
      colours_[pos] = static_cast<int>(colour) + 1;
      dfs(pos + 1);
      for (std::size_t n : paths_[pos]) --counts_[n][colour];
      if (result_.timed_out || result_.stopped) return;
    }
    colours_[pos] = 0;
  }

  const ColouredCollection& c_;
  std::size_t d_;
  const BruteForceOptions& opt_;
  BruteForceResult& result_;
  const std::vector<DyadicInterval>& order_;
  std::vector<std::int64_t> rho_;
  std::vector<std::vector<std::int64_t>> counts_;
  std::vector<std::vector<std::size_t>> paths_;
  std::vector<std::size_t> touched_;
  std::vector<int> colours_;
  bool fixed_ok_ = true;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t ticks_ = 0;
};

}  // namespace

BruteForceResult brute_force_extensions(const ColouredCollection& c, const IntervalCollection& u,
                                        const BruteForceOptions& options) {
  BruteForceResult result;
  for (const DyadicInterval& i : u) {
    if (i.level() != c.level()) throw DomainError(to_string(i) + " is not on level " + std::to_string(c.level()));
    if (c.contains(i)) throw DomainError("U and C overlap at " + to_string(i));
    result.order.push_back(i);
  }
  result.required = saturating_power(static_cast<std::uint64_t>(c.colours()), result.order.size());
  if (result.required > options.cap) {
    result.refused = true;
    return result;
  }
  Search search(c, result.order, options, result);
  search.run();
  return result;
}

// ---------------------------------------------------------------------------
// Adversary

AdversaryInstance adversary_instance(int a, int n, int level) {
  if (a < 1 || a > 10) throw DomainError("adversary: a must lie in [1, 10]");
  if (n < 2) throw DomainError("adversary: n must be >= 2 so that η = 1/n <= 1/2");
  if (level < n + a + 1) {
    throw DomainError("adversary: need j >= n + a + 1 = " + std::to_string(n + a + 1));
  }
  if (level > kMaxGameLevel) throw DomainError("adversary: level too large");
  const int d = 1 << a;
  AdversaryInstance inst;
  inst.a = a;
  inst.n = n;
  inst.level = level;
  for (int i = 1; i <= n + 2; ++i) inst.chain.push_back(DyadicInterval(level - a - i + 1, 1));
  for (int i = 1; i <= n + 1; ++i) inst.brothers.push_back(DyadicInterval(level - a - i + 1, 2));
  for (int i = 1; i <= d - 1; ++i) inst.i_intervals.push_back(DyadicInterval(level, i));
  for (int i = 1; i <= n + 1; ++i) {
    inst.j_intervals.push_back(DyadicInterval(level, (std::int64_t{1} << (a + i - 1)) + 1));
  }
  inst.initial = ColouredCollection(level, d, Rational(1, n));
  for (int i = 1; i <= d - 1; ++i) inst.initial.insert(inst.i_intervals[static_cast<std::size_t>(i - 1)], i + 1);
  inst.initial.insert(inst.j_intervals.back(), 1);
  for (int k = 0; k <= n - 1; ++k) inst.script.push_back(inst.j_intervals[static_cast<std::size_t>(n - k - 1)]);
  return inst;
}

}  // namespace rearr

#include "rearr/shift.hpp"

#include <algorithm>
#include <set>

namespace rearr {

ShiftSequence::ShiftSequence(std::vector<std::int64_t> m) : m_(std::move(m)) {
  if (static_cast<int>(m_.size()) > kMaxLevel) {
    throw DomainError("shift sequence longer than the supported depth " + std::to_string(kMaxLevel));
  }
  for (std::size_t i = 0; i < m_.size(); ++i) {
    const std::int64_t bound = std::int64_t{1} << (i + 1);
    if (m_[i] > bound || m_[i] < -bound) {
      throw DomainError("|m_" + std::to_string(i + 1) + "| = " + std::to_string(m_[i]) +
                        " exceeds 2^" + std::to_string(i + 1));
    }
  }
}

std::int64_t ShiftSequence::m(int level) const {
  if (level == 0) return 0;
  if (level < 0 || level > depth()) {
    throw DomainError("level " + std::to_string(level) + " outside shift sequence of depth " +
                      std::to_string(depth()));
  }
  return m_[static_cast<std::size_t>(level - 1)];
}

std::int64_t ShiftSequence::reduced(int level) const {
  const std::int64_t n = std::int64_t{1} << level;
  std::int64_t r = m(level) % n;
  return r < 0 ? r + n : r;
}

Rearrangement ShiftSequence::rearrangement() const {
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(depth()) + 1, 0);
  for (int l = 1; l <= depth(); ++l) offsets[static_cast<std::size_t>(l)] = m(l);
  return Rearrangement::shifts(std::move(offsets));
}

DyadicInterval shift_map(const ShiftSequence& m, const DyadicInterval& interval) {
  return interval.translated(m.m(interval.level()));
}

std::int64_t compute_nj(const ShiftSequence& m, int level, int truncation) {
  if (level < 0 || level > truncation || truncation > m.depth()) {
    throw DomainError("compute_nj needs 0 <= j <= J <= depth");
  }
  std::set<std::int64_t> cells;
  for (int l = level; l <= truncation; ++l) cells.insert(m.reduced(l) >> (l - level));
  return static_cast<std::int64_t>(cells.size());
}

std::vector<std::int64_t> all_nj(const ShiftSequence& m, int truncation) {
  std::vector<std::int64_t> out;
  for (int j = 0; j <= truncation; ++j) out.push_back(compute_nj(m, j, truncation));
  return out;
}

Rational semenov_ratio(const Rearrangement& tau, const DyadicInterval& interval, int depth) {
  std::vector<IntervalSet::Piece> pieces;
  for (int l = interval.level(); l <= depth; ++l) {
    const int shift = l - interval.level();
    const std::int64_t first = ((interval.index() - 1) << shift) + 1;
    const std::int64_t count = std::int64_t{1} << shift;
    for (std::int64_t k = first; k < first + count; ++k) {
      const DyadicInterval image = tau(DyadicInterval(l, k));
      pieces.push_back({image.lo(), image.hi()});
    }
  }
  return Rational(IntervalSet::from_pieces(std::move(pieces)).measure_ticks(), interval.length());
}

SemenovReport semenov_constant(const Rearrangement& tau, int depth) {
  if (depth > tau.depth()) throw DomainError("semenov_constant: rearrangement too shallow");
  SemenovReport report{Rational(0), DyadicInterval(0, 1), depth};
  for (int j = 0; j <= depth; ++j) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << j); ++k) {
      const DyadicInterval interval(j, k);
      const Rational r = semenov_ratio(tau, interval, depth);
      if (r > report.constant) {
        report.constant = r;
        report.witness = interval;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Decompositions

std::size_t Decomposition::band_of(int level) const {
  for (std::size_t k = 1; k < jk.size(); ++k) {
    if (level >= jk[k - 1] && level < jk[k]) return k;
  }
  return 0;
}

DecompositionResult extract_decomposition(const ShiftSequence& m, int depth) {
  if (depth < 1 || depth > m.depth()) throw DomainError("extract_decomposition: bad depth");
  DecompositionResult result;
  result.nj = all_nj(m, depth);
  const auto& nj = result.nj;
  Decomposition& d = result.decomposition;
  d.depth = depth;

  int last_bad = 0;
  for (int j = 1; j <= depth; ++j) {
    if (nj[static_cast<std::size_t>(j)] >= 3) last_bad = j;
  }
  if (last_bad > 0) result.offending_level = last_bad;
  if (last_bad > 0 && 2 * last_bad > depth) {
    result.diagnosis = "N_" + std::to_string(last_bad) + " = " +
                       std::to_string(nj[static_cast<std::size_t>(last_bad)]) +
                       " persists into the second half of the truncated range";
    return result;
  }
  result.applicable = true;

  auto first_double_after = [&](int from) -> std::optional<int> {
    for (int j = from; j <= depth; ++j) {
      if (nj[static_cast<std::size_t>(j)] == 2) return j;
    }
    return std::nullopt;
  };

  const std::optional<int> j0 = first_double_after(std::max(1, last_bad + 1));
  if (!j0) {
    // Every tail count is 1: x_l < 2^-j for l >= j, nothing to decompose.
    d.jk.push_back(last_bad + 1);
    result.diagnosis = "tail counts all equal 1; trivial decomposition";
    return result;
  }
  d.jk.push_back(*j0);
  while (true) {
    const int jprev = d.jk.back();
    // Largest level whose x_j reaches the second cell of level j_k. The
    // inequality is non-strict: x_j = 2^-j_k already lies in that cell.
    const Tick threshold = Tick{1} << (kMaxLevel - jprev);
    int n_next = -1;
    for (int j = jprev; j <= depth; ++j) {
      if (m.x_ticks(j) >= threshold) n_next = j;
    }
    if (n_next < 0) {
      result.diagnosis = "no level beyond j_k reaches 2^-j_k; stopping";
      break;
    }
    d.a.push_back(m.x(n_next));
    const std::optional<int> j_next = first_double_after(n_next + 1);
    if (!j_next) {
      d.jk.push_back(depth + 1);
      break;
    }
    d.jk.push_back(*j_next);
  }
  // A band with no anchor (loop ended on the first branch) is dropped.
  if (d.jk.size() > d.a.size() + 1) d.jk.resize(d.a.size() + 1);

  const DecomposabilityReport check = is_decomposable(m, d);
  if (!check.ok) {
    result.applicable = false;
    result.offending_level = check.violations.front().level;
    result.diagnosis = "extracted bands fail the decomposability check at level " +
                       std::to_string(check.violations.front().level) + " (" +
                       check.violations.front().condition + ")";
  }
  return result;
}

DecomposabilityReport is_decomposable(const ShiftSequence& m, const Decomposition& d) {
  DecomposabilityReport report;
  if (d.w1 < 1 || d.w2 < 1) {
    report.ok = false;
    report.violations.push_back({0, 0, "w1, w2 must be >= 1"});
    return report;
  }
  if (d.jk.size() != d.a.size() + 1) {
    report.ok = false;
    report.violations.push_back({0, 0, "need one more j_k than a_k"});
    return report;
  }
  for (std::size_t k = 1; k < d.jk.size(); ++k) {
    if (d.jk[k] <= d.jk[k - 1]) {
      report.ok = false;
      report.violations.push_back({d.jk[k], k, "j_k not strictly increasing"});
      return report;
    }
  }
  const int depth = std::min(d.depth > 0 ? d.depth : m.depth(), m.depth());
  for (std::size_t k = 1; k < d.jk.size(); ++k) {
    const Rational ak = d.a[k - 1];
    for (int j = d.jk[k - 1]; j < d.jk[k] && j <= depth; ++j) {
      const Rational xj = m.x(j);
      const Rational unit(1, std::int64_t{1} << j);
      const Rational diff = ak > xj ? ak - xj : xj - ak;
      if (!(xj <= d.w1 * unit || diff < d.w2 * unit)) {
        report.ok = false;
        report.violations.push_back({j, k, "x_j > w1/2^j and |a_k - x_j| >= w2/2^j"});
      }
    }
    // Tail bound for j >= j_k, checked against the truncation.
    const Rational tail_bound = d.w1 * Rational(2, std::int64_t{1} << std::min(d.jk[k], kMaxLevel));
    for (int j = d.jk[k]; j <= depth; ++j) {
      if (m.x(j) > tail_bound) {
        report.ok = false;
        report.violations.push_back({j, k, "x_j > w1/2^(j_k - 1) beyond j_k"});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Level selection

LevelSelection select_levels(const ShiftSequence& m, int depth) {
  if (depth < 1 || depth > m.depth()) throw DomainError("select_levels: bad depth");
  LevelSelection out;
  int first = -1;
  for (int n = 1; n <= depth; ++n) {
    if (m.reduced(n) != 0) {
      first = n;
      break;
    }
  }
  if (first < 0) {
    out.diagnosis = "every x_j vanishes; no subsequence with x_{n_l} != 0";
    return out;
  }
  // The subsequence n_l is chosen adaptively: the next member is the first
  // later level with 0 < x_n < 2^-j_k, so every later member automatically
  // stays below the current threshold.
  out.levels.push_back(first);
  bool later_nonzero = false;
  while (true) {
    const int jk = out.levels.back();
    const Tick threshold = Tick{1} << (kMaxLevel - jk);
    int next = -1;
    for (int n = jk + 1; n <= depth; ++n) {
      const Tick x = m.x_ticks(n);
      if (x != 0) later_nonzero = true;
      if (x != 0 && x < threshold) {
        next = n;
        break;
      }
    }
    if (next < 0) break;
    out.levels.push_back(next);
  }
  if (out.levels.size() == 1 && later_nonzero) {
    out.diagnosis = "no nonzero x_n approaches 0 after level " + std::to_string(first) +
                    "; the accumulation point is not 0 (relabel the shift first)";
    return out;
  }

  std::vector<std::int64_t> induced(static_cast<std::size_t>(m.depth()), 0);
  for (int l : out.levels) induced[static_cast<std::size_t>(l - 1)] = m.m(l);
  out.induced = ShiftSequence(std::move(induced));
  out.nj = all_nj(out.induced, depth);

  out.ok = true;
  for (int j = 1; j <= depth; ++j) {
    const bool selected = std::find(out.levels.begin(), out.levels.end(), j) != out.levels.end();
    const std::int64_t n = out.nj[static_cast<std::size_t>(j)];
    // At the truncation level only x_J itself remains, so N_J = 1.
    const std::int64_t expected_selected = j < depth ? 2 : 1;
    if (selected && n != expected_selected) {
      out.ok = false;
      out.diagnosis = "N_" + std::to_string(j) + "(M') = " + std::to_string(n) + " on a selected level";
    } else if (!selected && n > 2) {
      out.ok = false;
      out.diagnosis = "N_" + std::to_string(j) + "(M') = " + std::to_string(n) + " off the selection";
    } else if (!selected && n == 2) {
      out.off_selection_doubles.push_back(j);
    }
  }
  return out;
}

}  // namespace rearr

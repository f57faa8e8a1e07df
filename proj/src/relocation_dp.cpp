#include <algorithm>
#include <cmath>
#include <limits>

#include "mobiprod/errors.hpp"
#include "mobiprod/relocation.hpp"

namespace mobiprod {

namespace {

struct Score {
  double cost = std::numeric_limits<double>::infinity();
  int moves = 0;
  bool finite() const { return std::isfinite(cost); }
};

bool better(const Score& a, const Score& b) {
  if (!b.finite()) return a.finite();
  if (!a.finite()) return false;
  const double tol = kRelocationCostTolerance * std::max(1.0, std::abs(b.cost));
  if (a.cost < b.cost - tol) return true;
  if (a.cost > b.cost + tol) return false;
  return a.moves < b.moves;
}

bool ties(const Score& a, const Score& target) {
  const double tol =
      kRelocationCostTolerance * std::max(1.0, std::abs(target.cost));
  return a.finite() && std::abs(a.cost - target.cost) <= tol &&
         a.moves <= target.moves;
}

struct Box {
  int s_lo = 0, s_hi = -1, m_lo = 0, m_hi = -1;
  bool contains(int s, int m) const {
    return s >= s_lo && s <= s_hi && m >= m_lo && m <= m_hi;
  }
  int width() const { return m_hi - m_lo + 1; }
  std::size_t size() const {
    if (s_hi < s_lo || m_hi < m_lo) return 0;
    return static_cast<std::size_t>(s_hi - s_lo + 1) * width();
  }
  std::size_t index(int s, int m) const {
    return static_cast<std::size_t>(s - s_lo) * width() + (m - m_lo);
  }
};

void check_nonempty(const OptionTable& options) {
  for (const auto& list : options)
    if (list.empty())
      throw ValidationError("relocation: empty option list for a location");
}

}  // namespace

RelocationSelection solve_relocation_dp(const OptionTable& options) {
  check_nonempty(options);
  const int L = static_cast<int>(options.size());
  std::vector<int> min_s(L), max_s(L), min_m(L), max_m(L);
  for (int l = 0; l < L; ++l) {
    min_s[l] = max_s[l] = options[l][0].transship;
    min_m[l] = max_m[l] = options[l][0].module_delta;
    for (const auto& o : options[l]) {
      min_s[l] = std::min(min_s[l], o.transship);
      max_s[l] = std::max(max_s[l], o.transship);
      min_m[l] = std::min(min_m[l], o.module_delta);
      max_m[l] = std::max(max_m[l], o.module_delta);
    }
  }
  // boxes[k]: cumulative sums after the first k locations that can still be
  // completed to (0, 0) by the remaining ones.
  std::vector<int> pre_lo_s(L + 1, 0), pre_hi_s(L + 1, 0), pre_lo_m(L + 1, 0),
      pre_hi_m(L + 1, 0), suf_lo_s(L + 1, 0), suf_hi_s(L + 1, 0),
      suf_lo_m(L + 1, 0), suf_hi_m(L + 1, 0);
  for (int l = 0; l < L; ++l) {
    pre_lo_s[l + 1] = pre_lo_s[l] + min_s[l];
    pre_hi_s[l + 1] = pre_hi_s[l] + max_s[l];
    pre_lo_m[l + 1] = pre_lo_m[l] + min_m[l];
    pre_hi_m[l + 1] = pre_hi_m[l] + max_m[l];
  }
  for (int l = L - 1; l >= 0; --l) {
    suf_lo_s[l] = suf_lo_s[l + 1] + min_s[l];
    suf_hi_s[l] = suf_hi_s[l + 1] + max_s[l];
    suf_lo_m[l] = suf_lo_m[l + 1] + min_m[l];
    suf_hi_m[l] = suf_hi_m[l + 1] + max_m[l];
  }
  std::vector<Box> boxes(L + 1);
  for (int k = 0; k <= L; ++k) {
    boxes[k] = {std::max(pre_lo_s[k], -suf_hi_s[k]),
                std::min(pre_hi_s[k], -suf_lo_s[k]),
                std::max(pre_lo_m[k], -suf_hi_m[k]),
                std::min(pre_hi_m[k], -suf_lo_m[k])};
  }
  if (boxes[0].size() == 0 || !boxes[0].contains(0, 0))
    throw InfeasibleProblem("relocation: coupling sums cannot reach zero");

  std::vector<std::vector<Score>> f(L + 1);
  f[L].assign(boxes[L].size(), Score{});
  if (boxes[L].contains(0, 0)) f[L][boxes[L].index(0, 0)] = Score{0.0, 0};
  for (int k = L - 1; k >= 0; --k) {
    const Box& box = boxes[k];
    const Box& next = boxes[k + 1];
    f[k].assign(box.size(), Score{});
    for (int cs = box.s_lo; cs <= box.s_hi; ++cs) {
      for (int cm = box.m_lo; cm <= box.m_hi; ++cm) {
        Score best;
        for (const auto& o : options[k]) {
          const int ns = cs + o.transship, nm = cm + o.module_delta;
          if (!next.contains(ns, nm)) continue;
          const Score& tail = f[k + 1][next.index(ns, nm)];
          if (!tail.finite()) continue;
          const Score cand{o.cost + tail.cost, o.moves() + tail.moves};
          if (better(cand, best)) best = cand;
        }
        f[k][box.index(cs, cm)] = best;
      }
    }
  }
  const Score total = f[0][boxes[0].index(0, 0)];
  if (!total.finite())
    throw InfeasibleProblem("relocation: no feasible selection");

  RelocationSelection sel;
  sel.choice.resize(L);
  int cs = 0, cm = 0;
  Score target = total;
  double realized = 0.0;
  for (int k = 0; k < L; ++k) {
    const Box& next = boxes[k + 1];
    bool found = false;
    for (std::size_t i = 0; i < options[k].size() && !found; ++i) {
      const auto& o = options[k][i];
      const int ns = cs + o.transship, nm = cm + o.module_delta;
      if (!next.contains(ns, nm)) continue;
      const Score& tail = f[k + 1][next.index(ns, nm)];
      if (!tail.finite()) continue;
      const Score cand{o.cost + tail.cost, o.moves() + tail.moves};
      if (!ties(cand, target)) continue;
      sel.choice[k] = static_cast<int>(i);
      realized += o.cost;
      cs = ns;
      cm = nm;
      target = tail;
      found = true;
    }
    if (!found) throw Error("relocation: DP reconstruction failed");
  }
  sel.cost = realized;
  return sel;
}

MipProblem relocation_mip(const OptionTable& options) {
  check_nonempty(options);
  MipProblem p;
  std::vector<Term> sum_s, sum_m;
  for (std::size_t l = 0; l < options.size(); ++l) {
    std::vector<Term> one;
    for (std::size_t i = 0; i < options[l].size(); ++i) {
      const auto& o = options[l][i];
      const int w = p.add_var(o.cost, 0.0, 1.0, true,
                              "w_" + std::to_string(l) + "_" + std::to_string(i));
      one.push_back({w, 1.0});
      if (o.transship != 0) sum_s.push_back({w, static_cast<double>(o.transship)});
      if (o.module_delta != 0)
        sum_m.push_back({w, static_cast<double>(o.module_delta)});
    }
    p.add_constraint(std::move(one), Sense::kEqual, 1.0,
                     "pick_" + std::to_string(l));
  }
  p.add_constraint(std::move(sum_s), Sense::kEqual, 0.0, "transship_balance");
  p.add_constraint(std::move(sum_m), Sense::kEqual, 0.0, "module_balance");
  return p;
}

RelocationSelection solve_relocation_mip(const OptionTable& options,
                                         const MipOptions& mip_options) {
  const MipProblem p = relocation_mip(options);
  const Solution sol = solve_mip(p, mip_options);
  if (sol.status == SolveStatus::kInfeasible)
    throw InfeasibleProblem("relocation MIP infeasible");
  if (sol.status == SolveStatus::kBudgetExceeded)
    throw BudgetExceeded("relocation MIP node budget exceeded");
  if (sol.status != SolveStatus::kOptimal)
    throw Error("relocation MIP: unexpected status");
  RelocationSelection sel;
  sel.choice.assign(options.size(), -1);
  int var = 0;
  for (std::size_t l = 0; l < options.size(); ++l) {
    for (std::size_t i = 0; i < options[l].size(); ++i, ++var)
      if (sol.values[var] > 0.5) sel.choice[l] = static_cast<int>(i);
    if (sel.choice[l] < 0) throw Error("relocation MIP: location unassigned");
  }
  sel.cost = 0.0;
  for (std::size_t l = 0; l < options.size(); ++l)
    sel.cost += options[l][sel.choice[l]].cost;
  return sel;
}

RelocationSelection solve_relocation_brute_force(const OptionTable& options) {
  check_nonempty(options);
  const std::size_t L = options.size();
  std::vector<int> idx(L, 0);
  Score best;
  std::vector<int> best_choice;
  for (;;) {
    int ss = 0, sm = 0;
    Score cur{0.0, 0};
    for (std::size_t l = 0; l < L; ++l) {
      const auto& o = options[l][idx[l]];
      ss += o.transship;
      sm += o.module_delta;
      cur.cost += o.cost;
      cur.moves += o.moves();
    }
    if (ss == 0 && sm == 0 && better(cur, best)) {
      best = cur;
      best_choice = idx;
    }
    std::size_t l = L;
    while (l > 0) {
      --l;
      if (++idx[l] < static_cast<int>(options[l].size())) break;
      idx[l] = 0;
      if (l == 0) {
        l = L + 1;
        break;
      }
    }
    if (l == L + 1 || L == 0) break;
  }
  if (!best.finite()) throw InfeasibleProblem("relocation: no feasible selection");
  return {best_choice, best.cost};
}

}  // namespace mobiprod

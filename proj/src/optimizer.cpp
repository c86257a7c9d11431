#include "dismed/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dismed/calculus.hpp"
#include "dismed/parallel.hpp"
#include "dismed/rng.hpp"

namespace dismed {
namespace {

constexpr double kInitialStep = 1.0 / 8.0;
constexpr double kMinStep = 1e-6;
constexpr std::uint64_t kRestartStream = 0x6f70742d72657374ULL;

double rel(double x) { return std::max(1.0, std::fabs(x)); }

struct Problem {
  const Scenario& s;
  DecisionBounds bounds;
  ListingState state;
  std::optional<double> budget;
  std::function<double(const DecisionVector&)> objective;

  bool admissible(const DecisionVector& d) const {
    if (!commission_covers(s, d)) return false;
    return !budget || d.cost() <= *budget + 1e-12 * rel(*budget);
  }
};

struct Point {
  DecisionVector d;
  double f = 0;
  double cost = 0;
};

// Higher objective wins; equal objectives prefer lower cost.
bool better(const Point& a, const Point& b) {
  const double tol = 1e-12 * rel(b.f);
  if (a.f > b.f + tol) return true;
  if (a.f < b.f - tol) return false;
  return a.cost < b.cost - 1e-12 * rel(b.cost);
}

DecisionVector lower_corner(const Problem& p) {
  DecisionVector d;
  for (std::size_t i = 0; i < 4; ++i) d[i] = p.bounds.range[i].lo;
  d.state = p.state;
  return d;
}

std::optional<DecisionVector> start_point(const Problem& p, std::uint64_t seed, int restart) {
  auto rng = substream(seed, kRestartStream, static_cast<std::uint64_t>(restart));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DecisionVector d;
  d.state = p.state;
  for (std::size_t i = 0; i < 4; ++i) {
    const Range& r = p.bounds.range[i];
    d[i] = r.lo + u(rng) * r.width();
  }
  // Pull an infeasible draw toward the cheapest corner until it is admissible.
  const DecisionVector corner = lower_corner(p);
  for (int k = 0; k < 64 && !p.admissible(d); ++k) {
    for (std::size_t i = 0; i < 4; ++i) d[i] = corner[i] + 0.5 * (d[i] - corner[i]);
  }
  if (p.admissible(d)) return d;
  if (p.admissible(corner)) return corner;
  return std::nullopt;
}

struct SearchOutcome {
  std::optional<Point> best;
  int iterations = 0;
};

SearchOutcome pattern_search(const Problem& p, DecisionVector start, int max_iterations) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < 4; ++i) {
    if (p.bounds.range[i].width() > 0) free.push_back(i);
  }
  auto clamp = [&](DecisionVector d) {
    for (std::size_t i = 0; i < 4; ++i) {
      d[i] = std::clamp(d[i], p.bounds.range[i].lo, p.bounds.range[i].hi);
    }
    return d;
  };
  auto eval = [&](const DecisionVector& d) { return Point{d, p.objective(d), d.cost()}; };

  Point cur = eval(start);
  SearchOutcome out;
  double frac = kInitialStep;
  while (frac >= kMinStep && out.iterations < max_iterations) {
    ++out.iterations;
    std::optional<Point> best;
    auto consider = [&](const DecisionVector& cand) {
      if (cand == cur.d || !p.admissible(cand)) return;
      Point pt = eval(cand);
      if (better(pt, best ? *best : cur)) best = pt;
    };
    for (std::size_t i : free) {
      const double step = frac * p.bounds.range[i].width();
      for (double sign : {1.0, -1.0}) {
        DecisionVector cand = cur.d;
        cand[i] += sign * step;
        consider(clamp(cand));
      }
    }
    // Exchange moves keep B_b + B_s + B_i fixed, so the search can slide
    // along an active commission constraint.
    for (std::size_t i : free) {
      for (std::size_t j : free) {
        if (i == j) continue;
        const double step =
            frac * std::min(p.bounds.range[i].width(), p.bounds.range[j].width());
        DecisionVector cand = cur.d;
        cand[i] += step;
        cand[j] -= step;
        consider(clamp(cand));
      }
    }
    if (best) {
      cur = *best;
    } else {
      frac *= 0.5;
    }
  }
  out.best = cur;
  return out;
}

OptResult solve(const Problem& p, const OptimizerConfig& cfg, int workers) {
  const int restarts = std::max(1, cfg.restarts);
  std::vector<SearchOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(outcomes.size(), workers, [&](std::size_t r) {
    auto start = start_point(p, cfg.seed, static_cast<int>(r));
    if (start) outcomes[r] = pattern_search(p, *start, cfg.max_iterations);
  });

  OptResult res;
  res.mode = cfg.mode;
  res.decision = lower_corner(p);
  std::optional<Point> best;
  for (const auto& o : outcomes) {
    res.iterations += o.iterations;
    if (o.best && (!best || better(*o.best, *best))) best = o.best;
  }
  if (best) {
    res.feasible = true;
    res.decision = best->d;
    res.objective = best->f;
    res.cost = best->cost;
    res.capital = broker_capital(p.s, best->d);
  }
  return res;
}

void require_capital_response(const Scenario& s) {
  const Context ctx = context_of(broker_state(s));
  for (Symbol x : {Symbol::SC_br, Symbol::RC_br}) {
    for (Symbol k : kDecisionSymbols) {
      if (find_response(s, x, k, ctx) != nullptr) return;
    }
  }
  throw Error(Errc::MissingCapitalResponse,
              "SC_br and RC_br have no declared response on B_b, B_s, B_i or B_n");
}

double cover_margin(double cp) { return 1e-9 * rel(cp); }

double commission(const Scenario& s) {
  const SymbolValues v = context_values(s, context_of(broker_state(s)));
  return v[index_of(Symbol::c)] * v[index_of(Symbol::P)];
}

}  // namespace

double& DecisionVector::operator[](std::size_t i) {
  switch (i) {
    case 0: return B_b;
    case 1: return B_s;
    case 2: return B_i;
    default: return B_n;
  }
}

double DecisionVector::operator[](std::size_t i) const {
  return const_cast<DecisionVector&>(*this)[i];
}

DecisionBounds DecisionBounds::fixed_at(const Scenario& s) {
  DecisionBounds b;
  for (std::size_t i = 0; i < 4; ++i) {
    const double v = get_symbol(s, kDecisionSymbols[i]);
    b.range[i] = {v, v};
  }
  return b;
}

void DecisionBounds::check() const {
  for (std::size_t i = 0; i < 4; ++i) {
    const Range& r = range[i];
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
      throw Error(Errc::InvalidArgument,
                  "bounds for " + std::string(symbol_name(kDecisionSymbols[i])) +
                      " must be finite with lo <= hi");
    }
  }
}

ListingState broker_state(const Scenario& s) { return argmin_state(s.states); }

double broker_capital(const Scenario& s, const DecisionVector& d) {
  require_capital_response(s);
  const Context ctx = context_of(broker_state(s));
  const SymbolValues v = context_values(s, ctx);
  double total = 0;
  for (Symbol x : {Symbol::SC_br, Symbol::RC_br}) {
    total += v[index_of(x)];
    for (std::size_t k = 0; k < 4; ++k) {
      const ResponseFunction* rf = find_response(s, x, kDecisionSymbols[k], ctx);
      if (rf == nullptr) continue;
      total += (*rf)(d[k]) - (*rf)(v[index_of(kDecisionSymbols[k])]);
    }
  }
  return total;
}

double broker_objective(const Scenario& s, const DecisionVector& d, ObjectiveMode mode,
                        double w_capital, double w_cost) {
  const double capital = broker_capital(s, d);
  if (mode == ObjectiveMode::Combined) return capital - d.cost();
  return w_capital * capital - w_cost * d.cost();
}

bool commission_covers(const Scenario& s, const DecisionVector& d) {
  const double cp = commission(s);
  return cp >= std::max(0.0, d.B_b + d.B_s + d.B_i) + cover_margin(cp);
}

OptResult optimize_broker(const Scenario& s, const DecisionBounds& bounds,
                          const OptimizerConfig& cfg) {
  bounds.check();
  require_capital_response(s);
  Problem p{s, bounds, broker_state(s), std::nullopt, [&](const DecisionVector& d) {
              return broker_objective(s, d, cfg.mode, cfg.w_capital, cfg.w_cost);
            }};
  return solve(p, cfg, cfg.workers);
}

OptResult maximize_capital(const Scenario& s, const DecisionBounds& bounds, double budget,
                           const OptimizerConfig& cfg) {
  bounds.check();
  require_capital_response(s);
  Problem p{s, bounds, broker_state(s), budget,
            [&](const DecisionVector& d) { return broker_capital(s, d); }};
  return solve(p, cfg, cfg.workers);
}

std::optional<Range> feasible_cost_range(const Scenario& s, const DecisionBounds& bounds) {
  bounds.check();
  DecisionVector corner;
  for (std::size_t i = 0; i < 4; ++i) corner[i] = bounds.range[i].lo;
  if (!commission_covers(s, corner)) return std::nullopt;
  const double cp = commission(s);
  double hi_bsi = 0;
  for (std::size_t i = 0; i < 3; ++i) hi_bsi += bounds.range[i].hi;
  return Range{corner.cost(), bounds.range[3].hi + std::min(hi_bsi, cp - cover_margin(cp))};
}

std::vector<ParetoPoint> pareto_sweep(const Scenario& s, const DecisionBounds& bounds, int k,
                                      const OptimizerConfig& cfg) {
  if (k < 2) throw Error(Errc::InvalidArgument, "pareto sweep needs at least 2 points");
  require_capital_response(s);
  const auto span = feasible_cost_range(s, bounds);
  if (!span) return {};

  std::vector<OptResult> results(static_cast<std::size_t>(k));
  parallel_for(results.size(), cfg.workers, [&](std::size_t j) {
    const double eps = j + 1 == results.size()
                           ? span->hi
                           : span->lo + span->width() * static_cast<double>(j) / (k - 1);
    Problem p{s, bounds, broker_state(s), eps,
              [&](const DecisionVector& d) { return broker_capital(s, d); }};
    results[j] = solve(p, cfg, 1);
  });

  std::vector<ParetoPoint> pts;
  for (const auto& r : results) {
    if (r.feasible) pts.push_back({r.cost, r.capital, r.decision});
  }
  std::sort(pts.begin(), pts.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.capital > b.capital;
  });
  std::vector<ParetoPoint> frontier;
  for (const auto& pt : pts) {
    if (frontier.empty() || pt.capital > frontier.back().capital + 1e-9 * rel(frontier.back().capital)) {
      frontier.push_back(pt);
    }
  }
  return frontier;
}

}  // namespace dismed

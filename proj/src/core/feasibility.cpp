#include "homtoric/core/feasibility.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace homtoric {
namespace {

Rational dot(const RatVector& a, const RatVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) s += a[i] * x[i];
  return s;
}

// Fourier-Motzkin over primitive integer rows a . x >= b. The elimination is
// templated on the coefficient type: machine words are tried first and the
// whole run is repeated with GMP integers if any intermediate overflows.

struct Overflow {};

struct Word {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t neg(std::int64_t a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
  static std::int64_t div(std::int64_t a, std::int64_t b) { return a / b; }
  static int sign(std::int64_t a) { return (a > 0) - (a < 0); }
  static Integer big(std::int64_t a) { return Integer(static_cast<long>(a)); }
};

struct Big {
  static Integer mul(const Integer& a, const Integer& b) { return a * b; }
  static Integer add(const Integer& a, const Integer& b) { return a + b; }
  static Integer neg(const Integer& a) { return -a; }
  static Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static Integer div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static int sign(const Integer& a) { return sgn(a); }
  static const Integer& big(const Integer& a) { return a; }
};

template <typename Z>
struct Row {
  std::vector<Z> a;
  Z b;
};

// Deduplicates parallel rows, keeping the tightest bound. Returns false if
// a constant row 0 >= b with b > 0 shows up.
template <typename Ops, typename Z>
bool simplify(std::vector<Row<Z>>& rows) {
  struct Keyed {
    std::vector<Z> dir;
    Z num;  // bound = num / den after dividing by the coefficient gcd
    Z den;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(rows.size());
  for (auto& r : rows) {
    Z g = 0;
    for (const auto& x : r.a) g = Ops::gcd(g, x);
    if (Ops::sign(g) == 0) {
      if (Ops::sign(r.b) > 0) return false;
      continue;
    }
    Keyed k;
    k.dir.reserve(r.a.size());
    for (const auto& x : r.a) k.dir.push_back(Ops::div(x, g));
    Z h = Ops::gcd(r.b, g);
    k.num = Ops::div(r.b, h);
    k.den = Ops::div(g, h);
    keyed.push_back(std::move(k));
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) { return x.dir < y.dir; });
  rows.clear();
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t best = i, j = i + 1;
    for (; j < keyed.size() && keyed[j].dir == keyed[i].dir; ++j)
      if (Ops::mul(keyed[j].num, keyed[best].den) > Ops::mul(keyed[best].num, keyed[j].den)) best = j;
    // den * dir . x >= num, already primitive.
    Row<Z> r;
    r.a.reserve(keyed[best].dir.size());
    for (const auto& x : keyed[best].dir) r.a.push_back(Ops::mul(x, keyed[best].den));
    r.b = keyed[best].num;
    rows.push_back(std::move(r));
    i = j;
  }
  return true;
}

template <typename Z>
struct Elimination {
  std::size_t variable;
  std::vector<Row<Z>> rows;  // the rows that involved `variable`
};

template <typename Ops, typename Z>
std::optional<RatVector> fourier_motzkin(std::size_t n, std::vector<Row<Z>> rows) {
  std::vector<Elimination<Z>> steps;
  std::vector<bool> eliminated(n, false);
  if (!simplify<Ops>(rows)) return std::nullopt;

  for (std::size_t round = 0; round < n; ++round) {
    // Pick the variable whose elimination creates the fewest new rows.
    std::size_t chosen = n;
    long best_cost = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      long pos = 0, neg = 0;
      for (const auto& r : rows) {
        int s = Ops::sign(r.a[v]);
        pos += s > 0;
        neg += s < 0;
      }
      long cost = pos * neg - pos - neg;
      if (chosen == n || cost < best_cost) {
        chosen = v;
        best_cost = cost;
      }
    }
    eliminated[chosen] = true;

    std::vector<Row<Z>> lower, upper, rest;
    for (auto& r : rows) {
      int s = Ops::sign(r.a[chosen]);
      if (s > 0)
        lower.push_back(std::move(r));
      else if (s < 0)
        upper.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    for (const auto& lo : lower) {
      for (const auto& up : upper) {
        // lo: a x >= b with a_v > 0; up: c x >= e with c_v < 0.
        Z wl = Ops::neg(up.a[chosen]);
        Z wu = lo.a[chosen];
        Z g = Ops::gcd(wl, wu);
        wl = Ops::div(wl, g);
        wu = Ops::div(wu, g);
        Row<Z> comb;
        comb.a.resize(n);
        for (std::size_t k = 0; k < n; ++k) comb.a[k] = Ops::add(Ops::mul(wl, lo.a[k]), Ops::mul(wu, up.a[k]));
        comb.a[chosen] = 0;
        comb.b = Ops::add(Ops::mul(wl, lo.b), Ops::mul(wu, up.b));
        rest.push_back(std::move(comb));
      }
    }
    Elimination<Z> step{chosen, {}};
    step.rows.reserve(lower.size() + upper.size());
    for (auto& r : lower) step.rows.push_back(std::move(r));
    for (auto& r : upper) step.rows.push_back(std::move(r));
    steps.push_back(std::move(step));
    rows = std::move(rest);
    if (!simplify<Ops>(rows)) return std::nullopt;
  }

  RatVector x(n, Rational(0));
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const std::size_t v = it->variable;
    std::optional<Rational> lo, up;
    for (const auto& c : it->rows) {
      Rational rest_sum = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != v && Ops::sign(c.a[k]) != 0) rest_sum += Rational(Ops::big(c.a[k])) * x[k];
      Rational bound = (Rational(Ops::big(c.b)) - rest_sum) / Rational(Ops::big(c.a[v]));
      if (Ops::sign(c.a[v]) > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!up || bound < *up) up = bound;
      }
    }
    if (lo)
      x[v] = *lo;
    else if (up && sgn(*up) < 0)
      x[v] = *up;
    else
      x[v] = 0;
    assert(!(lo && up && *lo > *up));
  }
  return x;
}

// Clears denominators row by row.
std::vector<Row<Integer>> integer_rows(const std::vector<LinearConstraint>& constraints) {
  std::vector<Row<Integer>> out;
  out.reserve(constraints.size());
  for (const auto& c : constraints) {
    Integer den = c.bound.get_den();
    for (const auto& a : c.coefficients)
      if (sgn(a) != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    Row<Integer> r;
    r.a.reserve(c.coefficients.size());
    for (const auto& a : c.coefficients) r.a.push_back(a.get_num() * (den / a.get_den()));
    r.b = c.bound.get_num() * (den / c.bound.get_den());
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<std::vector<Row<std::int64_t>>> word_rows(const std::vector<Row<Integer>>& rows) {
  std::vector<Row<std::int64_t>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    Row<std::int64_t> w;
    w.a.reserve(r.a.size());
    for (const auto& x : r.a) {
      if (!x.fits_slong_p()) return std::nullopt;
      w.a.push_back(x.get_si());
    }
    if (!r.b.fits_slong_p()) return std::nullopt;
    w.b = r.b.get_si();
    out.push_back(std::move(w));
  }
  return out;
}

template <typename Ops, typename Z>
void reduce(Row<Z>& r) {
  Z g = r.b;
  for (const auto& x : r.a) g = Ops::gcd(g, x);
  if (Ops::sign(g) == 0 || g == Z(1)) return;
  for (auto& x : r.a) x = Ops::div(x, g);
  r.b = Ops::div(r.b, g);
}

// target := p * target - t * pivot, where p > 0 is the pivot entry and t the
// target entry in column `col`; clears that column of `target`.
template <typename Ops, typename Z>
void clear_column(Row<Z>& target, const Row<Z>& pivot, std::size_t col) {
  if (Ops::sign(target.a[col]) == 0) return;
  Z p = pivot.a[col];
  Z t = target.a[col];
  Z g = Ops::gcd(p, t);
  p = Ops::div(p, g);
  t = Ops::div(t, g);
  for (std::size_t k = 0; k < target.a.size(); ++k)
    target.a[k] = Ops::add(Ops::mul(p, target.a[k]), Ops::neg(Ops::mul(t, pivot.a[k])));
  target.b = Ops::add(Ops::mul(p, target.b), Ops::neg(Ops::mul(t, pivot.b)));
  reduce<Ops>(target);
}

template <typename Ops, typename Z>
std::optional<RatVector> solve(std::size_t n, std::vector<Row<Z>> eqs, std::vector<Row<Z>> ineqs) {
  // Gauss-Jordan on the equalities; each pivot variable is then eliminated
  // from the inequalities with a positive multiplier.
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(n, false);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < eqs.size(); ++col) {
    std::size_t p = r;
    while (p < eqs.size() && Ops::sign(eqs[p].a[col]) == 0) ++p;
    if (p == eqs.size()) continue;
    std::swap(eqs[r], eqs[p]);
    if (Ops::sign(eqs[r].a[col]) < 0) {
      for (auto& x : eqs[r].a) x = Ops::neg(x);
      eqs[r].b = Ops::neg(eqs[r].b);
    }
    for (std::size_t i = 0; i < eqs.size(); ++i)
      if (i != r) clear_column<Ops>(eqs[i], eqs[r], col);
    for (auto& q : ineqs) clear_column<Ops>(q, eqs[r], col);
    pivot_col.push_back(col);
    is_pivot[col] = true;
    ++r;
  }
  for (std::size_t i = r; i < eqs.size(); ++i)
    if (Ops::sign(eqs[i].b) != 0) return std::nullopt;

  std::vector<std::size_t> free_vars;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_pivot[v]) free_vars.push_back(v);
  std::vector<Row<Z>> compact;
  compact.reserve(ineqs.size());
  for (auto& q : ineqs) {
    Row<Z> c;
    c.a.reserve(free_vars.size());
    for (auto v : free_vars) c.a.push_back(std::move(q.a[v]));
    c.b = std::move(q.b);
    compact.push_back(std::move(c));
  }

  auto free_point = fourier_motzkin<Ops>(free_vars.size(), std::move(compact));
  if (!free_point) return std::nullopt;

  RatVector x(n, Rational(0));
  for (std::size_t j = 0; j < free_vars.size(); ++j) x[free_vars[j]] = (*free_point)[j];
  for (std::size_t i = 0; i < r; ++i) {
    const auto& e = eqs[i];
    Rational v = Ops::big(e.b);
    for (auto k : free_vars)
      if (Ops::sign(e.a[k]) != 0) v -= Rational(Ops::big(e.a[k])) * x[k];
    x[pivot_col[i]] = v / Rational(Ops::big(e.a[pivot_col[i]]));
  }
  return x;
}

}  // namespace

std::optional<RatVector> find_feasible_point(const LinearSystem& system) {
  const std::size_t n = system.variables;
  for (const auto* group : {&system.equalities, &system.inequalities})
    for (const auto& c : *group)
      if (c.coefficients.size() != n) throw std::invalid_argument("constraint length does not match variable count");
  auto eqs = integer_rows(system.equalities);
  auto ineqs = integer_rows(system.inequalities);
  auto weq = word_rows(eqs);
  auto wineq = word_rows(ineqs);
  if (weq && wineq) {
    try {
      return solve<Word>(n, std::move(*weq), std::move(*wineq));
    } catch (const Overflow&) {
    }
  }
  return solve<Big>(n, std::move(eqs), std::move(ineqs));
}

std::optional<RatVector> find_feasible_point(const WordSystem& system) {
  const std::size_t n = system.variables;
  auto convert = [n](const std::vector<WordConstraint>& in) {
    std::vector<Row<std::int64_t>> out;
    out.reserve(in.size());
    for (const auto& c : in) {
      if (c.coefficients.size() != n)
        throw std::invalid_argument("constraint length does not match variable count");
      out.push_back({c.coefficients, c.bound});
    }
    return out;
  };
  auto eqs = convert(system.equalities);
  auto ineqs = convert(system.inequalities);
  try {
    return solve<Word>(n, eqs, ineqs);
  } catch (const Overflow&) {
  }
  auto widen = [](const std::vector<Row<std::int64_t>>& in) {
    std::vector<Row<Integer>> out;
    out.reserve(in.size());
    for (const auto& r : in) {
      Row<Integer> w;
      for (auto x : r.a) w.a.emplace_back(static_cast<long>(x));
      w.b = static_cast<long>(r.b);
      out.push_back(std::move(w));
    }
    return out;
  };
  return solve<Big>(n, widen(eqs), widen(ineqs));
}

bool satisfies(const LinearSystem& system, const RatVector& point) {
  if (point.size() != system.variables) return false;
  for (const auto& c : system.inequalities)
    if (dot(c.coefficients, point) < c.bound) return false;
  for (const auto& c : system.equalities)
    if (dot(c.coefficients, point) != c.bound) return false;
  return true;
}

}  // namespace homtoric

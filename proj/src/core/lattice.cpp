#include "homtoric/core/lattice.hpp"

#include "homtoric/core/feasibility.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

namespace homtoric {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("IntMatrix: ragged initializer");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("IntMatrix::from_rows: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows)
      throw DimensionError("IntMatrix::from_columns: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw DimensionError("IntMatrix::apply: dimension mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("IntMatrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t k = 0; k < cols_; ++k) (*this)(target, k) += factor * (*this)(source, k);
}

void IntMatrix::combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                             const Integer& c, const Integer& d) {
  for (std::size_t k = 0; k < cols_; ++k) {
    Integer x = (*this)(i, k);
    Integer y = (*this)(j, k);
    (*this)(i, k) = a * x + b * y;
    (*this)(j, k) = c * x + d * y;
  }
}

void IntMatrix::swap_columns(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::negate_column(std::size_t j) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source,
                                    const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, target) += factor * (*this)(k, source);
}

void IntMatrix::combine_columns(std::size_t i, std::size_t j, const Integer& a,
                                const Integer& b, const Integer& c, const Integer& d) {
  for (std::size_t k = 0; k < rows_; ++k) {
    Integer x = (*this)(k, i);
    Integer y = (*this)(k, j);
    (*this)(k, i) = a * x + b * y;
    (*this)(k, j) = c * x + d * y;
  }
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << homtoric::to_string(row(i));
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Vector helpers

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s + ")";
}

namespace {

struct Bezout {
  Integer g, s, t;  // s*a + t*b = g >= 0
};

Bezout bezout(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Normal forms

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = out.hermite;
  IntMatrix& u = out.transform;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (sgn(h(i, c)) == 0) continue;
      const Integer a = h(r, c);
      const Integer b = h(i, c);
      auto [g, s, t] = bezout(a, b);
      Integer bg = b / g;
      Integer ag = a / g;
      h.combine_rows(r, i, s, t, -bg, ag);
      u.combine_rows(r, i, s, t, -bg, ag);
    }
    if (sgn(h(r, c)) == 0) continue;
    if (sgn(h(r, c)) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      Integer q = floor_div(h(k, c), h(r, c));
      if (sgn(q) == 0) continue;
      h.add_row_multiple(k, r, -q);
      u.add_row_multiple(k, r, -q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

bool is_hermite_normal_form(const IntMatrix& h) {
  std::size_t next_col = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && sgn(h(i, p)) == 0) ++p;
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row || p < next_col) return false;
    if (sgn(h(i, p)) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (sgn(h(k, p)) < 0 || h(k, p) >= h(i, p)) return false;
    next_col = p + 1;
  }
  return true;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = out.diagonal;
  IntMatrix& u = out.left;
  IntMatrix& v = out.right;
  const std::size_t limit = std::min(d.rows(), d.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = d.rows(), pj = d.cols();
    for (std::size_t i = t; i < d.rows(); ++i)
      for (std::size_t j = t; j < d.cols(); ++j)
        if (sgn(d(i, j)) != 0 && (pi == d.rows() || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == d.rows()) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_columns(t, pj);
    v.swap_columns(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (sgn(d(i, t)) == 0) continue;
        const Integer a = d(t, t), b = d(i, t);
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
          Integer q = -(b / a);
          d.add_row_multiple(i, t, q);
          u.add_row_multiple(i, t, q);
          continue;
        }
        auto [g, s, x] = bezout(a, b);
        Integer bg = b / g, ag = a / g;
        d.combine_rows(t, i, s, x, -bg, ag);
        u.combine_rows(t, i, s, x, -bg, ag);
      }
      bool row_clear = true;
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (sgn(d(t, j)) == 0) continue;
        const Integer a = d(t, t), b = d(t, j);
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
          Integer q = -(b / a);
          d.add_column_multiple(j, t, q);
          v.add_column_multiple(j, t, q);
          continue;
        }
        row_clear = false;
        auto [g, s, x] = bezout(a, b);
        Integer bg = b / g, ag = a / g;
        d.combine_columns(t, j, s, x, -bg, ag);
        v.combine_columns(t, j, s, x, -bg, ag);
      }
      if (!row_clear) {
        bool col_clear = true;
        for (std::size_t i = t + 1; i < d.rows(); ++i)
          if (sgn(d(i, t)) != 0) col_clear = false;
        if (!col_clear) continue;
      }
      // Divisibility: fold an offending row into the pivot row and repeat.
      std::size_t bad_row = d.rows();
      for (std::size_t i = t + 1; i < d.rows() && bad_row == d.rows(); ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == d.rows()) break;
      d.add_row_multiple(t, bad_row, 1);
      u.add_row_multiple(t, bad_row, 1);
    }
    if (sgn(d(t, t)) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t matrix_rank(const IntMatrix& m) {
  // Fraction-free elimination; every intermediate entry is a minor of m.
  IntMatrix a = m;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        Integer num = a(i, j) * a(r, c) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sublattices

SublatticeBasis::SublatticeBasis(std::size_t ambient) : ambient_(ambient) {}

SublatticeBasis SublatticeBasis::full(std::size_t ambient) {
  return row_span(IntMatrix::identity(ambient));
}

bool SublatticeBasis::contains(const IntVector& v) const { return membership(v, *this).has_value(); }

SublatticeBasis row_span(const IntMatrix& m) {
  auto hnf = hermite_normal_form(m);
  SublatticeBasis out(m.cols());
  out.basis_.reserve(hnf.rank);
  for (std::size_t i = 0; i < hnf.rank; ++i) out.basis_.push_back(hnf.hermite.row(i));
  return out;
}

SublatticeBasis row_span(const std::vector<IntVector>& rows, std::size_t ambient) {
  return row_span(IntMatrix::from_rows(rows, ambient));
}

std::optional<IntVector> membership(const IntVector& v, const SublatticeBasis& lattice) {
  if (v.size() != lattice.ambient_rank())
    throw DimensionError("membership: vector length " + std::to_string(v.size()) +
                         " does not match ambient rank " +
                         std::to_string(lattice.ambient_rank()));
  IntVector residual = v;
  IntVector coeffs(lattice.rank());
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    const IntVector& b = lattice.basis()[i];
    std::size_t p = 0;
    while (sgn(b[p]) == 0) ++p;
    // Columns left of the pivot are already cleared by earlier rows.
    for (std::size_t j = 0; j < p; ++j)
      if (sgn(residual[j]) != 0) return std::nullopt;
    if (!mpz_divisible_p(residual[p].get_mpz_t(), b[p].get_mpz_t())) return std::nullopt;
    mpz_divexact(coeffs[i].get_mpz_t(), residual[p].get_mpz_t(), b[p].get_mpz_t());
    for (std::size_t j = p; j < residual.size(); ++j) residual[j] -= coeffs[i] * b[j];
  }
  if (!is_zero(residual)) return std::nullopt;
  return coeffs;
}

SublatticeBasis kernel(const IntMatrix& m) {
  // Rows of U that kill M^T span the integer kernel of M.
  auto hnf = hermite_normal_form(m.transpose());
  std::vector<IntVector> rows;
  for (std::size_t i = hnf.rank; i < hnf.transform.rows(); ++i) rows.push_back(hnf.transform.row(i));
  return row_span(rows, m.cols());
}

SublatticeBasis annihilator(const SublatticeBasis& lattice) { return kernel(lattice.matrix()); }

namespace {

std::vector<Integer> nonzero_smith_invariants(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (sgn(snf.diagonal(i, i)) != 0) out.push_back(snf.diagonal(i, i));
  return out;
}

}  // namespace

Saturation saturation_and_index(const SublatticeBasis& lattice) {
  Saturation out{annihilator(annihilator(lattice)), Integer(1)};
  for (const auto& f : nonzero_smith_invariants(lattice.matrix())) out.index *= f;
  return out;
}

SublatticeBasis preimage(const IntMatrix& f, const SublatticeBasis& target) {
  if (f.rows() != target.ambient_rank())
    throw DimensionError("preimage: map has " + std::to_string(f.rows()) +
                         " rows but target lattice lives in rank " +
                         std::to_string(target.ambient_rank()));
  const std::size_t d = f.cols();
  const std::size_t k = target.rank();
  // Kernel of [F | -B^T] projected to its first d coordinates.
  IntMatrix joint(f.rows(), d + k);
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) joint(i, j) = f(i, j);
    for (std::size_t j = 0; j < k; ++j) joint(i, d + j) = -target.basis()[j][i];
  }
  auto ker = kernel(joint);
  std::vector<IntVector> rows;
  rows.reserve(ker.rank());
  for (const auto& z : ker.basis()) rows.emplace_back(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(d));
  return row_span(rows, d);
}

SublatticeBasis image(const IntMatrix& f, const SublatticeBasis& source) {
  if (f.cols() != source.ambient_rank()) throw DimensionError("image: dimension mismatch");
  std::vector<IntVector> rows;
  for (const auto& b : source.basis()) rows.push_back(f.apply(b));
  return row_span(rows, f.rows());
}

// ---------------------------------------------------------------------------
// Abelian groups

std::size_t AbelianGroupInvariants::free_rank() const {
  return static_cast<std::size_t>(
      std::count_if(factors.begin(), factors.end(), [](const Integer& f) { return sgn(f) == 0; }));
}

std::string AbelianGroupInvariants::to_string() const {
  if (factors.empty()) return "0";
  std::string s;
  const std::size_t free = free_rank();
  if (free > 0) s = free == 1 ? "Z" : "Z^" + std::to_string(free);
  for (const auto& f : factors) {
    if (sgn(f) == 0) continue;
    if (!s.empty()) s += " + ";
    s += "Z/" + f.get_str();
  }
  return s;
}

AbelianGroupInvariants quotient_invariants(const SublatticeBasis& lattice) {
  AbelianGroupInvariants out;
  for (const auto& f : nonzero_smith_invariants(lattice.matrix()))
    if (f != 1) out.factors.push_back(f);
  for (std::size_t i = lattice.rank(); i < lattice.ambient_rank(); ++i) out.factors.emplace_back(0);
  return out;
}

// ---------------------------------------------------------------------------
// Sign-constrained witnesses

namespace {

struct SpanParameterization {
  std::vector<RatVector> rows;  // reduced row echelon basis of the rational span
};

SpanParameterization rational_rref(const SublatticeBasis& lattice) {
  const std::size_t d = lattice.ambient_rank();
  std::vector<RatVector> rows;
  for (const auto& b : lattice.basis()) {
    RatVector r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = b[j];
    rows.push_back(std::move(r));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < d; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return {std::move(rows)};
}

// Rational point of the span -> lattice vector with the same sign pattern.
IntVector lattice_witness(const RatVector& point, const SublatticeBasis& lattice) {
  Integer den = 1;
  for (const auto& x : point) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntVector v(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) v[i] = point[i].get_num() * (den / point[i].get_den());
  auto prim = primitive(v);
  if (lattice.contains(prim)) return prim;
  const Integer index = saturation_and_index(lattice).index;
  for (auto& x : prim) x *= index;
  assert(lattice.contains(prim));
  return prim;
}

std::optional<IntVector> sign_witness(const SublatticeBasis& lattice, bool strict) {
  const std::size_t d = lattice.ambient_rank();
  if (lattice.rank() == 0) {
    if (strict && d == 0) return IntVector{};
    return std::nullopt;
  }
  auto param = rational_rref(lattice);
  const std::size_t k = param.rows.size();
  LinearSystem sys;
  sys.variables = k;
  for (std::size_t j = 0; j < d; ++j) {
    LinearConstraint c;
    c.coefficients.resize(k);
    for (std::size_t i = 0; i < k; ++i) c.coefficients[i] = param.rows[i][j];
    c.bound = strict ? 1 : 0;
    sys.inequalities.push_back(std::move(c));
  }
  if (!strict) {
    LinearConstraint total;
    total.coefficients.assign(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) total.coefficients[i] += param.rows[i][j];
    total.bound = 1;
    sys.equalities.push_back(std::move(total));
  }
  auto lambda = find_feasible_point(sys);
  if (!lambda) return std::nullopt;
  RatVector x(d, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d; ++j) x[j] += (*lambda)[i] * param.rows[i][j];
  return lattice_witness(x, lattice);
}

}  // namespace

std::optional<IntVector> strictly_positive_in_span(const SublatticeBasis& lattice) {
  return sign_witness(lattice, true);
}

std::optional<IntVector> nonneg_nonzero_in_span(const SublatticeBasis& lattice) {
  return sign_witness(lattice, false);
}

}  // namespace homtoric

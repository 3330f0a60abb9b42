#include "toricgw/linalg.hpp"

#include <algorithm>

#include "toricgw/error.hpp"

namespace toricgw {

ZVector SmithForm::invariant_factors() const {
  ZVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(S(i, i));
  return out;
}

SmithForm smith_normal_form(const ZMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{ZMatrix::identity(m), a, ZMatrix::identity(n), 0};
  ZMatrix& S = f.S;
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          Integer v = abs(S(i, j));
          if (pi == m || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;
      S.swap_rows(t, pi);
      f.U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      f.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_row(i, t, -q);
        f.U.add_row(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_col(j, t, -q);
        f.V.add_col(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            S.add_row(t, i, 1);
            f.U.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (S(t, t) == 0) break;
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < m; ++j) f.U(t, j) = -f.U(t, j);
    }
  }
  f.rank = t;
  return f;
}

QMatrix to_rational(const ZMatrix& a) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

ZMatrix to_integer(const QMatrix& a) {
  ZMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j)))
        fail_validation("linalg", "to_integer", "non-integral entry", to_string(a(i, j)));
      out(i, j) = a(i, j).get_num();
    }
  return out;
}

ZMatrix columns_matrix(const std::vector<LatticeVector>& cols, std::size_t dim) {
  ZMatrix out(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) out(i, j) = Integer(static_cast<long>(cols[j][i]));
  return out;
}

namespace {

// Row reduction to reduced echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a, std::size_t ncols_to_reduce) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols_to_reduce && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.add_row(i, r, -a(i, c));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const QMatrix& a) {
  QMatrix w = a;
  return rref(w, w.cols()).size();
}

Rational determinant(QMatrix a) {
  if (a.rows() != a.cols()) fail_validation("linalg", "determinant", "matrix is not square");
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i)
      if (a(i, c) != 0) a.add_row(i, c, -a(i, c) / a(c, c));
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) return std::nullopt;
  QMatrix w(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    w(i, n + i) = 1;
  }
  if (rref(w, n).size() != n) return std::nullopt;
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, n + j);
  return out;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  QMatrix w(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    w(i, n) = b[i];
  }
  auto pivots = rref(w, n);
  for (std::size_t i = pivots.size(); i < m; ++i)
    if (w(i, n) != 0) return std::nullopt;
  QVector x(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = w(r, n);
  return x;
}

std::vector<std::size_t> independent_rows(const QMatrix& a) {
  auto pivots = [&] {
    QMatrix t = a.transpose();
    return rref(t, t.cols());
  }();
  return pivots;
}

std::vector<QVector> nullspace(const QMatrix& a) {
  QMatrix w = a;
  auto pivots = rref(w, w.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Phase 1 on A x = b, x >= 0, b >= 0. Returns x or empty.
std::optional<QVector> phase_one(const QMatrix& A, const QVector& b) {
  const std::size_t m = A.rows(), n = A.cols();
  const std::size_t width = n + m + 1;
  QMatrix T(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T(i, j) = A(i, j);
    T(i, n + i) = 1;
    T(i, width - 1) = b[i];
    basis[i] = n + i;
  }
  // Objective row: reduced costs of sum of artificials.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) T(m, j) -= A(i, j);
  for (std::size_t i = 0; i < m; ++i) T(m, width - 1) -= b[i];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (T(m, j) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T(i, enter) <= 0) continue;
      Rational ratio = T(i, width - 1) / T(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase 1
    Rational inv = 1 / T(leave, enter);
    for (std::size_t j = 0; j < width; ++j) T(leave, j) *= inv;
    for (std::size_t i = 0; i <= m; ++i)
      if (i != leave && T(i, enter) != 0) T.add_row(i, leave, -T(i, enter));
    basis[leave] = enter;
  }
  if (T(m, width - 1) != 0) return std::nullopt;
  QVector x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T(i, width - 1);
  return x;
}

}  // namespace

std::optional<QVector> nonnegative_solution(const QMatrix& a, const QVector& b) {
  QMatrix A = a;
  QVector rhs = b;
  for (std::size_t i = 0; i < A.rows(); ++i)
    if (rhs[i] < 0) {
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
      rhs[i] = -rhs[i];
    }
  return phase_one(A, rhs);
}

std::optional<QVector> feasible_point(std::size_t num_vars,
                                      const std::vector<LinearConstraint>& constraints) {
  std::size_t slacks = 0;
  for (const auto& c : constraints)
    if (c.sense != LinearConstraint::Sense::Equal) ++slacks;
  QMatrix A(constraints.size(), 2 * num_vars + slacks);
  QVector b(constraints.size());
  std::size_t s = 2 * num_vars;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    for (std::size_t k = 0; k < num_vars; ++k) {
      A(i, k) = c.coefficients[k];
      A(i, num_vars + k) = -c.coefficients[k];
    }
    if (c.sense == LinearConstraint::Sense::LessEqual) A(i, s++) = 1;
    if (c.sense == LinearConstraint::Sense::GreaterEqual) A(i, s++) = -1;
    b[i] = c.rhs;
  }
  auto y = nonnegative_solution(A, b);
  if (!y) return std::nullopt;
  QVector x(num_vars);
  for (std::size_t k = 0; k < num_vars; ++k) x[k] = (*y)[k] - (*y)[num_vars + k];
  return x;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace toricgw

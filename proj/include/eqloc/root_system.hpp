#pragma once

// Crystallographic root systems at desk scale.
//
// Coordinate convention: every weight (roots included) is an integer
// vector in the fundamental-weight basis, and a Cartan parameter X is
// the tuple of its simple-coroot evaluations, so <weight, X> is the
// plain dot product used everywhere else in the library. The inner
// product on weight coordinates is carried explicitly as a symmetric
// positive-definite matrix; reflections derived from it must preserve
// the lattice (checked on construction).

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "eqloc/types.hpp"

namespace eqloc {

namespace detail {

using IntMatrix = std::vector<std::vector<long>>;

inline IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  int n = int(a.size());
  IntMatrix c(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline long int_determinant(IntMatrix m) {
  // Bareiss fraction-free elimination.
  int n = int(m.size());
  long prev = 1;
  long sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  int n = int(m.size());
  long det = int_determinant(m);
  if (det != 1 && det != -1)
    throw EvalError("matrix is not unimodular; cannot invert over the lattice");
  // Adjugate via cofactors; n stays tiny.
  IntMatrix inv(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix minor;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<long> row;
        for (int c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      long cof = (n == 1) ? 1 : int_determinant(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv[j][i] = cof * det;  // det = 1/det for +-1
    }
  return inv;
}

}  // namespace detail

// One Weyl group element: its action on weight coordinates, the
// contragredient action on Cartan parameters, and the sign det(w).
struct WeylElement {
  detail::IntMatrix weight_matrix;
  detail::IntMatrix cartan_matrix;  // inverse-transpose of weight_matrix
  int sign = +1;

  Weight apply(const Weight& w) const {
    int n = int(weight_matrix.size());
    Weight out;
    out.coeffs.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.coeffs[i] += int(weight_matrix[i][j]) * w.coeffs[j];
    return out;
  }

  template <class Scalar>
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    int n = int(weight_matrix.size());
    std::vector<Scalar> out(n, Scalar{});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[i] += double(weight_matrix[i][j]) * v[j];
    return out;
  }

  // Natural action on the Cartan side: <w.apply(lam), w.apply_cartan(X)>
  // equals <lam, X>.
  template <class Scalar>
  std::vector<Scalar> apply_cartan(const std::vector<Scalar>& x) const {
    int n = int(cartan_matrix.size());
    std::vector<Scalar> out(n, Scalar{});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[i] += double(cartan_matrix[i][j]) * x[j];
    return out;
  }
};

struct RootSystem {
  int rank = 0;
  std::string type;  // "A1", "A2", "B2", or "custom"
  std::vector<Weight> simple_roots;
  std::vector<std::vector<double>> inner_product;  // Gram matrix on coords
  std::vector<Weight> positive_roots;
  std::vector<double> rho;  // half-sum of positive roots
  std::vector<WeylElement> weyl;

  double inner(const std::vector<double>& u, const std::vector<double>& v) const {
    double s = 0.0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) s += u[i] * inner_product[i][j] * v[j];
    return s;
  }
  double inner(const Weight& a, const Weight& b) const {
    return inner(to_real(a), to_real(b));
  }
  static std::vector<double> to_real(const Weight& w) {
    return std::vector<double>(w.coeffs.begin(), w.coeffs.end());
  }

  bool is_dominant(const Weight& lambda) const {
    for (int c : lambda.coeffs)
      if (c < 0) return false;
    return true;
  }
};

namespace detail {

// Reflection in simple root alpha_j as an integer matrix on weight
// coordinates. Non-integer entries mean the input is not a weight
// lattice basis for this root datum.
inline IntMatrix reflection_matrix(const std::vector<Weight>& simple_roots,
                                   const std::vector<std::vector<double>>& B,
                                   int j) {
  int n = int(simple_roots[0].coeffs.size());
  std::vector<double> alpha(simple_roots[j].coeffs.begin(),
                            simple_roots[j].coeffs.end());
  std::vector<double> b_alpha(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) b_alpha[i] += B[i][k] * alpha[k];
  double alpha_sq = 0.0;
  for (int i = 0; i < n; ++i) alpha_sq += alpha[i] * b_alpha[i];
  if (alpha_sq <= 0.0)
    throw ConfigError("root_system: simple root " + std::to_string(j) +
                      " has non-positive length in the given inner product");
  IntMatrix s = identity_matrix(n);
  for (int k = 0; k < n; ++k) {
    double coef = 2.0 * b_alpha[k] / alpha_sq;  // <e_k, alpha^vee>
    double rounded = std::round(coef);
    if (std::abs(coef - rounded) > 1e-9)
      throw ConfigError(
          "root_system: reflection in simple root " + std::to_string(j) +
          " does not preserve the integer lattice (non-integer Cartan pairing)");
    for (int i = 0; i < n; ++i) s[i][k] -= long(rounded) * simple_roots[j].coeffs[i];
  }
  return s;
}

}  // namespace detail

// Full Weyl group by closure under the simple reflections.
inline std::vector<WeylElement> generate_weyl_group(
    const std::vector<Weight>& simple_roots,
    const std::vector<std::vector<double>>& B,
    std::size_t guard = 1000000) {
  int n = int(simple_roots[0].coeffs.size());
  std::vector<detail::IntMatrix> gens;
  for (int j = 0; j < int(simple_roots.size()); ++j)
    gens.push_back(detail::reflection_matrix(simple_roots, B, j));

  std::map<std::vector<long>, std::size_t> seen;
  auto key = [n](const detail::IntMatrix& m) {
    std::vector<long> k;
    k.reserve(std::size_t(n) * n);
    for (const auto& row : m) k.insert(k.end(), row.begin(), row.end());
    return k;
  };

  std::vector<detail::IntMatrix> elements{detail::identity_matrix(n)};
  seen[key(elements[0])] = 0;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      auto m = detail::mat_mul(g, elements[head]);
      auto k = key(m);
      if (seen.emplace(k, elements.size()).second) {
        elements.push_back(std::move(m));
        if (elements.size() > guard)
          throw ConfigError(
              "root_system: Weyl group generation exceeded the element guard; "
              "input is not a finite root system");
      }
    }
  }

  std::vector<WeylElement> out;
  out.reserve(elements.size());
  for (auto& m : elements) {
    WeylElement e;
    long det = detail::int_determinant(m);
    if (det != 1 && det != -1)
      throw ConfigError("root_system: reflection closure produced a "
                        "non-unimodular element");
    e.sign = int(det);
    e.cartan_matrix = detail::unimodular_inverse(m);
    // transpose in place: cartan action is inverse-transpose
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        std::swap(e.cartan_matrix[i][j], e.cartan_matrix[j][i]);
    e.weight_matrix = std::move(m);
    out.push_back(std::move(e));
  }
  return out;
}

namespace detail {

inline std::vector<Weight> generate_positive_roots(
    const std::vector<Weight>& simple_roots,
    const std::vector<std::vector<double>>& B) {
  int n = int(simple_roots[0].coeffs.size());
  int nsimple = int(simple_roots.size());

  // Root coordinates: solve R^T a = v where R rows are the simple roots.
  // Gaussian elimination each time; systems are tiny.
  auto root_coords = [&](const Weight& v) {
    std::vector<std::vector<double>> m(n, std::vector<double>(nsimple + 1, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < nsimple; ++j) m[i][j] = simple_roots[j].coeffs[i];
      m[i][nsimple] = v.coeffs[i];
    }
    // forward elimination with partial pivoting
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < nsimple && row < n; ++col) {
      int best = row;
      for (int r = row; r < n; ++r)
        if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
      if (std::abs(m[best][col]) < 1e-12) continue;
      std::swap(m[row], m[best]);
      for (int r = 0; r < n; ++r) {
        if (r == row) continue;
        double f = m[r][col] / m[row][col];
        for (int c = col; c <= nsimple; ++c) m[r][c] -= f * m[row][c];
      }
      pivot_col.push_back(col);
      ++row;
    }
    std::vector<double> a(nsimple, 0.0);
    for (int k = 0; k < int(pivot_col.size()); ++k)
      a[pivot_col[k]] = m[k][nsimple] / m[k][pivot_col[k]];
    return a;
  };

  std::vector<IntMatrix> gens;
  for (int j = 0; j < nsimple; ++j)
    gens.push_back(reflection_matrix(simple_roots, B, j));
  auto apply = [n](const IntMatrix& m, const Weight& w) {
    Weight out;
    out.coeffs.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.coeffs[i] += int(m[i][j]) * w.coeffs[j];
    return out;
  };

  std::vector<Weight> all = simple_roots;
  for (std::size_t head = 0; head < all.size(); ++head) {
    for (const auto& g : gens) {
      Weight r = apply(g, all[head]);
      bool known = false;
      for (const auto& q : all)
        if (q == r || q == r.negated()) {
          known = true;
          break;
        }
      if (!known) {
        all.push_back(r);
        if (all.size() > 10000)
          throw ConfigError("root_system: root closure exceeded guard");
      }
    }
  }

  std::vector<Weight> positive;
  for (const auto& r : all) {
    auto a = root_coords(r);
    double mx = 0.0;
    for (double c : a) mx = std::max(mx, std::abs(c));
    bool pos = false, neg = false;
    for (double c : a) {
      if (c > 1e-9 * std::max(1.0, mx)) pos = true;
      if (c < -1e-9 * std::max(1.0, mx)) neg = true;
    }
    if (pos && neg)
      throw ConfigError("root_system: mixed-sign root coordinates; "
                        "input roots are not simple");
    positive.push_back(pos ? r : r.negated());
  }
  // dedup
  std::vector<Weight> uniq;
  for (const auto& r : positive) {
    bool dup = false;
    for (const auto& q : uniq)
      if (q == r) dup = true;
    if (!dup) uniq.push_back(r);
  }
  return uniq;
}

}  // namespace detail

inline RootSystem make_custom_root_system(std::vector<Weight> simple_roots,
                                          std::vector<std::vector<double>> B,
                                          std::string type = "custom") {
  if (simple_roots.empty()) throw ConfigError("root_system: no simple roots");
  int n = int(simple_roots[0].coeffs.size());
  for (const auto& r : simple_roots)
    if (int(r.coeffs.size()) != n || r.is_zero())
      throw ConfigError("root_system: malformed simple root");
  if (int(B.size()) != n)
    throw ConfigError("root_system: inner_product must be rank x rank");
  for (const auto& row : B)
    if (int(row.size()) != n)
      throw ConfigError("root_system: inner_product must be rank x rank");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(B[i][j] - B[j][i]) > 1e-12)
        throw ConfigError("root_system: inner_product must be symmetric");

  RootSystem rs;
  rs.rank = n;
  rs.type = std::move(type);
  rs.simple_roots = std::move(simple_roots);
  rs.inner_product = std::move(B);
  rs.positive_roots =
      detail::generate_positive_roots(rs.simple_roots, rs.inner_product);
  rs.rho.assign(n, 0.0);
  for (const auto& r : rs.positive_roots)
    for (int i = 0; i < n; ++i) rs.rho[i] += 0.5 * r.coeffs[i];
  rs.weyl = generate_weyl_group(rs.simple_roots, rs.inner_product);
  return rs;
}

// Named constructors. Simple roots are the rows of the Cartan-integer
// matrix (alpha_i in the fundamental-weight basis); the coordinate Gram
// matrix is Chat^{-1} A Chat^{-T} for A the simple-root Gram matrix.
inline RootSystem make_root_system(const std::string& type) {
  auto build = [&](std::vector<std::vector<long>> cartan,
                   std::vector<std::vector<double>> gram) {
    int n = int(cartan.size());
    std::vector<Weight> roots;
    for (int i = 0; i < n; ++i) {
      Weight w;
      for (int j = 0; j < n; ++j) w.coeffs.push_back(int(cartan[i][j]));
      roots.push_back(std::move(w));
    }
    // B = Chat^{-1} gram Chat^{-T} via two linear solves (n <= 2 here,
    // but keep it generic with Gaussian elimination).
    auto solve = [n](std::vector<std::vector<double>> m,
                     std::vector<std::vector<double>> rhs) {
      for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col; r < n; ++r)
          if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
        std::swap(m[col], m[best]);
        std::swap(rhs[col], rhs[best]);
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          double f = m[r][col] / m[col][col];
          for (int c = 0; c < n; ++c) {
            m[r][c] -= f * m[col][c];
            rhs[r][c] -= f * rhs[col][c];
          }
        }
      }
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) rhs[r][c] /= m[r][r];
      return rhs;
    };
    std::vector<std::vector<double>> chat(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) chat[i][j] = double(cartan[i][j]);
    auto tmp = solve(chat, gram);  // Chat^{-1} A
    // now multiply by Chat^{-T}: solve (Chat X^T = tmp^T) then transpose
    std::vector<std::vector<double>> tmp_t(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tmp_t[i][j] = tmp[j][i];
    auto bt = solve(chat, tmp_t);
    std::vector<std::vector<double>> B(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B[i][j] = 0.5 * (bt[j][i] + bt[i][j]);
    return make_custom_root_system(std::move(roots), std::move(B), type);
  };

  if (type == "A1") return build({{2}}, {{2.0}});
  if (type == "A2") return build({{2, -1}, {-1, 2}}, {{2.0, -1.0}, {-1.0, 2.0}});
  if (type == "B2")
    return build({{2, -2}, {-1, 2}}, {{2.0, -1.0}, {-1.0, 1.0}});
  throw ConfigError("unknown root system type '" + type +
                    "' (expected A1, A2, B2, or custom)");
}

}  // namespace eqloc

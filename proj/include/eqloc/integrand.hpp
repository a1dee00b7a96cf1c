#pragma once

// The degree-zero data a localized sum consumes: the value of the
// integrand at each fixed point, as a function of the Cartan parameter.

#include <map>
#include <string>
#include <vector>

#include "eqloc/types.hpp"

namespace eqloc {

// One exponential-polynomial term: coef * prod_k X_k^{powers[k]}
// * exp(<exponent, X>).
struct ExpPolyTerm {
  double coef = 0.0;
  std::vector<int> powers;
  std::vector<double> exponent;
};

struct ExpPoly {
  std::vector<ExpPolyTerm> terms;

  template <class Scalar>
  Scalar evaluate(const std::vector<Scalar>& x) const {
    Scalar total{};
    for (const auto& t : terms) {
      Scalar v = t.coef;
      for (std::size_t k = 0; k < t.powers.size(); ++k)
        for (int p = 0; p < t.powers[k]; ++p) v *= x[k];
      Scalar e{};
      for (std::size_t k = 0; k < t.exponent.size(); ++k)
        e += t.exponent[k] * x[k];
      using std::exp;
      v *= exp(e);
      total += v;
    }
    return total;
  }
};

struct LocalizedIntegrand {
  enum class Kind {
    ExponentialOfMoment,  // f(p, X) = exp(<phi(p), X>)
    Constant,             // f(p, X) = c
    EulerForm,            // f(p, X) = sign(p) * prod_j <w_{p,j}, X>
    Table,                // f(p, X) = table[p.label](X)
  };

  Kind kind = Kind::ExponentialOfMoment;
  double constant = 1.0;
  std::map<std::string, ExpPoly> table;

  static LocalizedIntegrand exponential_of_moment() {
    return LocalizedIntegrand{Kind::ExponentialOfMoment, 1.0, {}};
  }
  static LocalizedIntegrand constant_form(double c) {
    return LocalizedIntegrand{Kind::Constant, c, {}};
  }
  static LocalizedIntegrand euler_form() {
    return LocalizedIntegrand{Kind::EulerForm, 1.0, {}};
  }
  static LocalizedIntegrand from_table(std::map<std::string, ExpPoly> t) {
    return LocalizedIntegrand{Kind::Table, 1.0, std::move(t)};
  }

  // Table integrands must cover every fixed point of the target spec.
  void check_against(const ProblemSpec& spec) const {
    if (kind != Kind::Table) return;
    for (const auto& p : spec.fixed_points)
      if (table.find(p.label) == table.end())
        throw EvalError("integrand table has no entry for fixed point '" +
                        p.label + "'");
  }

  template <class Scalar>
  Scalar evaluate(const FixedPointDatum& p, const std::vector<Scalar>& x) const {
    switch (kind) {
      case Kind::ExponentialOfMoment: {
        Scalar e{};
        for (std::size_t k = 0; k < p.moment.size(); ++k) e += p.moment[k] * x[k];
        using std::exp;
        return exp(e);
      }
      case Kind::Constant:
        return Scalar{1} * constant;
      case Kind::EulerForm: {
        Scalar v = double(p.sign);
        for (const auto& w : p.weights) v *= pairing(w, x);
        return v;
      }
      case Kind::Table: {
        auto it = table.find(p.label);
        if (it == table.end())
          throw EvalError("integrand table has no entry for fixed point '" +
                          p.label + "'");
        return it->second.evaluate(x);
      }
    }
    return Scalar{};
  }
};

}  // namespace eqloc

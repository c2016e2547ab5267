#include "wcalc/cylinder.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <variant>

#include "wcalc/derivative.hpp"
#include "wcalc/errors.hpp"

namespace wcalc {

struct OuterMap::Node {
  struct Linear {
    std::vector<double> weights;
    double constant;
  };
  struct Product {
    std::size_t arity;
  };
  struct Power {
    int exponent;
  };
  struct SinOf {
    std::vector<double> weights;
  };
  struct ExpOf {
    std::vector<double> weights;
  };
  struct ScaledSum {
    double alpha;
    OuterMap f;
    OuterMap g;
  };
  struct ProductOf {
    OuterMap f;
    OuterMap g;
  };

  std::variant<Linear, Product, Power, SinOf, ExpOf, ScaledSum, ProductOf> kind;
  std::size_t arity;
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("outer map parameters must be finite");
  }
}

Jet zero_jet(std::size_t k) {
  Jet j;
  j.gradient.assign(k, 0.0);
  j.hessian.assign(k * k, 0.0);
  return j;
}

// h(s) composed with s = w . v: gradient h'(s) w, Hessian h''(s) w w^T.
Jet ridge_jet(const std::vector<double>& w, double h0, double h1, double h2) {
  const std::size_t k = w.size();
  Jet j = zero_jet(k);
  j.value = h0;
  for (std::size_t a = 0; a < k; ++a) {
    j.gradient[a] = h1 * w[a];
    for (std::size_t b = 0; b < k; ++b) j.hessian[a * k + b] = h2 * (w[a] * w[b]);
  }
  return j;
}

double dot(const std::vector<double>& w, std::span<const double> v) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * v[i];
  return acc.value();
}

}  // namespace

OuterMap OuterMap::linear(std::vector<double> weights, double constant) {
  require_finite(weights);
  require_finite({constant});
  const std::size_t k = weights.size();
  return OuterMap(std::make_shared<const Node>(Node{Node::Linear{std::move(weights), constant}, k}));
}

OuterMap OuterMap::product(std::size_t arity) {
  return OuterMap(std::make_shared<const Node>(Node{Node::Product{arity}, arity}));
}

OuterMap OuterMap::power(int exponent) {
  if (exponent < 0) throw InvalidInput("power exponent must be non-negative");
  return OuterMap(std::make_shared<const Node>(Node{Node::Power{exponent}, 1}));
}

OuterMap OuterMap::sin_of(std::vector<double> weights) {
  require_finite(weights);
  const std::size_t k = weights.size();
  return OuterMap(std::make_shared<const Node>(Node{Node::SinOf{std::move(weights)}, k}));
}

OuterMap OuterMap::exp_of(std::vector<double> weights) {
  require_finite(weights);
  const std::size_t k = weights.size();
  return OuterMap(std::make_shared<const Node>(Node{Node::ExpOf{std::move(weights)}, k}));
}

OuterMap OuterMap::constant(double value) { return linear({}, value); }

OuterMap OuterMap::scaled_sum(double alpha, const OuterMap& f, const OuterMap& g) {
  require_finite({alpha});
  return OuterMap(
      std::make_shared<const Node>(Node{Node::ScaledSum{alpha, f, g}, f.arity() + g.arity()}));
}

OuterMap OuterMap::product_of(const OuterMap& f, const OuterMap& g) {
  return OuterMap(
      std::make_shared<const Node>(Node{Node::ProductOf{f, g}, f.arity() + g.arity()}));
}

std::size_t OuterMap::arity() const { return node_->arity; }

Jet OuterMap::jet(std::span<const double> v) const {
  const std::size_t k = arity();
  if (v.size() != k) throw InvalidInput("outer map called with wrong number of moments");

  return std::visit(
      Overloaded{
          [&](const Node::Linear& l) {
            Jet j = zero_jet(k);
            j.value = l.constant + dot(l.weights, v);
            j.gradient = l.weights;
            return j;
          },
          [&](const Node::Product&) {
            Jet j = zero_jet(k);
            // Products over "all but a" (and "all but a, b") without division,
            // so zero moments are handled exactly.
            j.value = std::accumulate(v.begin(), v.end(), 1.0, std::multiplies<>());
            for (std::size_t a = 0; a < k; ++a) {
              double ga = 1.0;
              for (std::size_t c = 0; c < k; ++c) {
                if (c != a) ga *= v[c];
              }
              j.gradient[a] = ga;
              for (std::size_t b = 0; b < k; ++b) {
                if (b == a) continue;
                double hab = 1.0;
                for (std::size_t c = 0; c < k; ++c) {
                  if (c != a && c != b) hab *= v[c];
                }
                j.hessian[a * k + b] = hab;
              }
            }
            return j;
          },
          [&](const Node::Power& p) {
            Jet j = zero_jet(1);
            const double n = p.exponent;
            j.value = std::pow(v[0], n);
            j.gradient[0] = p.exponent >= 1 ? n * std::pow(v[0], n - 1.0) : 0.0;
            j.hessian[0] = p.exponent >= 2 ? n * (n - 1.0) * std::pow(v[0], n - 2.0) : 0.0;
            return j;
          },
          [&](const Node::SinOf& s) {
            const double arg = dot(s.weights, v);
            return ridge_jet(s.weights, std::sin(arg), std::cos(arg), -std::sin(arg));
          },
          [&](const Node::ExpOf& e) {
            const double ex = std::exp(dot(e.weights, v));
            return ridge_jet(e.weights, ex, ex, ex);
          },
          [&](const Node::ScaledSum& s) {
            const std::size_t kf = s.f.arity();
            const Jet jf = s.f.jet(v.subspan(0, kf));
            const Jet jg = s.g.jet(v.subspan(kf));
            Jet j = zero_jet(k);
            j.value = s.alpha * jf.value + jg.value;
            for (std::size_t a = 0; a < k; ++a) {
              j.gradient[a] = a < kf ? s.alpha * jf.gradient[a] : jg.gradient[a - kf];
              for (std::size_t b = 0; b < k; ++b) {
                if (a < kf && b < kf) {
                  j.hessian[a * k + b] = s.alpha * jf.hess(a, b);
                } else if (a >= kf && b >= kf) {
                  j.hessian[a * k + b] = jg.hess(a - kf, b - kf);
                }
              }
            }
            return j;
          },
          [&](const Node::ProductOf& p) {
            const std::size_t kf = p.f.arity();
            const Jet jf = p.f.jet(v.subspan(0, kf));
            const Jet jg = p.g.jet(v.subspan(kf));
            Jet j = zero_jet(k);
            j.value = jf.value * jg.value;
            for (std::size_t a = 0; a < k; ++a) {
              j.gradient[a] = a < kf ? jg.value * jf.gradient[a] : jf.value * jg.gradient[a - kf];
              for (std::size_t b = 0; b < k; ++b) {
                double h = 0.0;
                if (a < kf && b < kf) {
                  h = jg.value * jf.hess(a, b);
                } else if (a >= kf && b >= kf) {
                  h = jf.value * jg.hess(a - kf, b - kf);
                } else if (a < kf) {
                  h = jf.gradient[a] * jg.gradient[b - kf];
                } else {
                  h = jg.gradient[a - kf] * jf.gradient[b];
                }
                j.hessian[a * k + b] = h;
              }
            }
            return j;
          },
      },
      node_->kind);
}

CylinderFunction::CylinderFunction(std::vector<ScalarFunction> inner, OuterMap outer)
    : inner_(std::move(inner)), outer_(std::move(outer)) {
  if (inner_.size() != outer_.arity()) {
    throw InvalidInput("cylinder function has " + std::to_string(inner_.size()) +
                       " inner functions but its outer map takes " +
                       std::to_string(outer_.arity()));
  }
}

CylinderFunction CylinderFunction::moment(ScalarFunction phi) {
  return CylinderFunction({std::move(phi)}, OuterMap::linear({1.0}));
}

CylinderFunction CylinderFunction::constant(double value) {
  return CylinderFunction({}, OuterMap::constant(value));
}

CylinderFunction CylinderFunction::scaled_sum(double alpha, const CylinderFunction& f,
                                              const CylinderFunction& g) {
  std::vector<ScalarFunction> inner(f.inner_);
  inner.insert(inner.end(), g.inner_.begin(), g.inner_.end());
  return CylinderFunction(std::move(inner), OuterMap::scaled_sum(alpha, f.outer_, g.outer_));
}

CylinderFunction CylinderFunction::product(const CylinderFunction& f, const CylinderFunction& g) {
  std::vector<ScalarFunction> inner(f.inner_);
  inner.insert(inner.end(), g.inner_.begin(), g.inner_.end());
  return CylinderFunction(std::move(inner), OuterMap::product_of(f.outer_, g.outer_));
}

std::vector<double> CylinderFunction::moments(const DiscreteMeasure& m) const {
  std::vector<double> v;
  v.reserve(inner_.size());
  for (const ScalarFunction& phi : inner_) v.push_back(integrate(m, phi));
  return v;
}

double CylinderFunction::evaluate(const DiscreteMeasure& m) const {
  return outer_.value(moments(m));
}

double CylinderFunction::exact_delta(const DiscreteMeasure& m, double x) const {
  const std::vector<double> v = moments(m);
  const Jet j = outer_.jet(v);
  CompensatedSum acc;
  for (std::size_t i = 0; i < v.size(); ++i) acc += j.gradient[i] * (inner_[i](x) - v[i]);
  return acc.value();
}

double CylinderFunction::exact_delta_dx(const DiscreteMeasure& m, double x) const {
  const std::vector<double> v = moments(m);
  const Jet j = outer_.jet(v);
  CompensatedSum acc;
  for (std::size_t i = 0; i < v.size(); ++i) acc += j.gradient[i] * inner_[i].derivative(x);
  return acc.value();
}

double CylinderFunction::exact_delta2(const DiscreteMeasure& m, double x, double y) const {
  const std::vector<double> v = moments(m);
  const Jet j = outer_.jet(v);
  const std::size_t k = v.size();
  std::vector<double> cx(k);
  std::vector<double> cy(k);
  for (std::size_t i = 0; i < k; ++i) {
    cx[i] = inner_[i](x) - v[i];
    cy[i] = inner_[i](y) - v[i];
  }
  CompensatedSum acc;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) acc += j.hess(a, b) * cx[a] * cy[b];
    acc -= j.gradient[a] * cy[a];
  }
  return acc.value();
}

MeasureFunction as_measure_function(const CylinderFunction& f) {
  return MeasureFunction([f](const DiscreteMeasure& m) { return f.evaluate(m); });
}

DerivativeField lift_to_field(const CylinderFunction& f) {
  DerivativeField h;
  h.value = [f](const DiscreteMeasure& m, double x) { return f.exact_delta(m, x); };
  h.dx = [f](const DiscreteMeasure& m, double x) { return f.exact_delta_dx(m, x); };
  h.linear_delta = [f](const DiscreteMeasure& m, double x, double y) {
    return f.exact_delta2(m, x, y);
  };
  return h;
}

}  // namespace wcalc

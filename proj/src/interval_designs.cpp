#include "sdesign/interval_designs.hpp"

#include <cmath>

#include "sdesign/errors.hpp"
#include "sdesign/numerics.hpp"
#include "sdesign/root_isolation.hpp"

namespace sdesign {

namespace {

WideFloat wide_value(const Surd& s) {
  using boost::multiprecision::sqrt;
  return to_real<WideFloat>(s.rational) +
         to_real<WideFloat>(s.coefficient) * sqrt(to_real<WideFloat>(s.radicand));
}

}  // namespace

double Surd::value() const { return static_cast<double>(wide_value(*this)); }

double Surd::sqrt_value() const {
  using boost::multiprecision::sqrt;
  return static_cast<double>(sqrt(wide_value(*this)));
}

IntervalDesign interval5_design(int d) {
  if (d < 1) throw InvalidArgument("interval5_design: d must be >= 1");
  const Rational two_d_plus_1 = 2 * d + 1;
  const Surd a{Rational(1) / (4 * two_d_plus_1), 0, 0};
  const Rational base = Rational(13) / (8 * two_d_plus_1);
  const Rational coeff = Rational(1) / (8 * two_d_plus_1);
  const Rational radicand = Rational(330 * d - 177, 2 * d + 3);
  const Surd b{base, coeff, radicand};
  const Surd c{base, -coeff, radicand};

  IntervalDesign out;
  out.d = d;
  out.squared_nodes = {a, b, c};
  const double ra = a.sqrt_value();
  const double rb = b.sqrt_value();
  const double rc = c.sqrt_value();
  out.nodes = {-rb, -ra, -rc, 0.0, rc, ra, rb};
  out.weights.assign(7, 1.0 / 7.0);
  out.strength = 5;
  out.recipe = {"interval5_design", {{"d", d}}, {}};
  return out;
}

IntervalDesign interval_from_nodes(int d, std::vector<double> nodes) {
  if (d < 1) throw InvalidArgument("interval design: d must be >= 1");
  if (nodes.empty()) throw InvalidArgument("interval design: no nodes");
  IntervalDesign out;
  out.d = d;
  out.weights.assign(nodes.size(), 1.0 / static_cast<double>(nodes.size()));
  out.nodes = std::move(nodes);
  out.recipe = {"interval_from_nodes", {{"d", d}, {"nodes", out.nodes}}, {}};
  return out;
}

VerificationReport verify_interval(const IntervalDesign& design, int t, double tol) {
  if (t < 0) throw InvalidArgument("verify_interval: t must be >= 0");
  if (design.nodes.size() != design.weights.size()) {
    throw InvalidArgument("verify_interval: node and weight counts differ");
  }
  for (double v : design.nodes) {
    if (!(v >= -1.0 && v <= 1.0)) throw InvalidArgument("verify_interval: node outside [-1, 1]");
  }
  NeumaierSum total;
  for (double w : design.weights) total.add(w);
  const double wsum = total.value();

  VerificationReport rep;
  rep.method = "beta-moment";
  rep.tolerance = tol;
  for (int k = 0; k <= t; ++k) {
    NeumaierSum acc;
    for (std::size_t i = 0; i < design.nodes.size(); ++i) {
      acc.add(design.weights[i] * std::pow(design.nodes[i], k));
    }
    const double expected = to_double(interval_moment(design.d, k));
    rep.record(k, std::abs(acc.value() / wsum - expected));
  }
  rep.finish();
  return rep;
}

}  // namespace sdesign

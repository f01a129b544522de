#include "fpsi/reference.hpp"

#include <cmath>

#include "fpsi/error.hpp"

namespace fpsi {

BasisValues reference_basis_unchecked(Element kind, const std::array<double, 3>& b) {
  BasisValues out;
  if (kind == Element::P1) {
    out.count = 3;
    for (int i = 0; i < 3; ++i) {
      out.value[i] = b[i];
      out.dlambda[i] = {0.0, 0.0, 0.0};
      out.dlambda[i][i] = 1.0;
    }
    return out;
  }
  out.count = 6;
  for (int i = 0; i < 3; ++i) {
    out.value[i] = b[i] * (2.0 * b[i] - 1.0);
    out.dlambda[i] = {0.0, 0.0, 0.0};
    out.dlambda[i][i] = 4.0 * b[i] - 1.0;
  }
  for (int k = 0; k < 3; ++k) {
    int i = k;
    int j = (k + 1) % 3;
    out.value[3 + k] = 4.0 * b[i] * b[j];
    out.dlambda[3 + k] = {0.0, 0.0, 0.0};
    out.dlambda[3 + k][i] = 4.0 * b[j];
    out.dlambda[3 + k][j] = 4.0 * b[i];
  }
  return out;
}

BasisValues reference_basis(Element kind, const std::array<double, 3>& bary) {
  double sum = 0.0;
  for (double v : bary) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::Domain, "barycentric coordinate outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-14) {
    fail(ErrorKind::Domain, "barycentric coordinates do not sum to one");
  }
  return reference_basis_unchecked(kind, bary);
}

std::array<double, 3> edge_basis(Element kind, double s) {
  if (kind == Element::P1) return {1.0 - s, s, 0.0};
  return {(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0), 4.0 * s * (1.0 - s)};
}

namespace {

void add_orbit3(std::vector<QuadraturePoint>& rule, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  rule.push_back({{b, a, a}, w});
  rule.push_back({{a, b, a}, w});
  rule.push_back({{a, a, b}, w});
}

void add_orbit6(std::vector<QuadraturePoint>& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  rule.push_back({{a, b, c}, w});
  rule.push_back({{b, a, c}, w});
  rule.push_back({{a, c, b}, w});
  rule.push_back({{c, a, b}, w});
  rule.push_back({{b, c, a}, w});
  rule.push_back({{c, b, a}, w});
}

std::vector<QuadraturePoint> make_centroid() {
  return {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.5}};
}

std::vector<QuadraturePoint> make_degree2() {
  std::vector<QuadraturePoint> r;
  add_orbit3(r, 1.0 / 6.0, 1.0 / 6.0);
  return r;
}

// Radon's 7-point rule, degree 5, positive weights.
std::vector<QuadraturePoint> make_degree5() {
  std::vector<QuadraturePoint> r;
  const double s15 = std::sqrt(15.0);
  r.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 80.0});
  add_orbit3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 2400.0);
  add_orbit3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 2400.0);
  return r;
}

// Dunavant's 12-point rule, degree 6.
std::vector<QuadraturePoint> make_degree6() {
  std::vector<QuadraturePoint> r;
  add_orbit3(r, 0.063089014491502228340331602870819, 0.5 * 0.050844906370206816920936809106869);
  add_orbit3(r, 0.24928674517091042129163855310702, 0.5 * 0.11678627572637936602528961138558);
  add_orbit6(r, 0.053145049844816947353249671631398, 0.31035245103378440541660773395655,
             0.5 * 0.082851075618373575193553456420442);
  return r;
}

}  // namespace

const std::vector<QuadraturePoint>& quadrature_rule(int order) {
  static const std::vector<QuadraturePoint> o1 = make_centroid();
  static const std::vector<QuadraturePoint> o2 = make_degree2();
  static const std::vector<QuadraturePoint> o5 = make_degree5();
  static const std::vector<QuadraturePoint> o6 = make_degree6();
  switch (order) {
    case 1: return o1;
    case 2: return o2;
    case 3:
    case 4:
    case 5: return o5;
    case 6: return o6;
    default:
      fail(ErrorKind::Capability,
           "quadrature order " + std::to_string(order) + " is not supported (1..6)");
  }
}

const std::array<GaussPoint, 5>& gauss_5() {
  static const std::array<GaussPoint, 5> rule = [] {
    const double r = std::sqrt(10.0 / 7.0);
    const double x1 = std::sqrt(5.0 - 2.0 * r) / 3.0;
    const double x2 = std::sqrt(5.0 + 2.0 * r) / 3.0;
    const double s70 = std::sqrt(70.0);
    const double w0 = 128.0 / 225.0;
    const double w1 = (322.0 + 13.0 * s70) / 900.0;
    const double w2 = (322.0 - 13.0 * s70) / 900.0;
    return std::array<GaussPoint, 5>{{{0.5 * (1.0 - x2), 0.5 * w2},
                                      {0.5 * (1.0 - x1), 0.5 * w1},
                                      {0.5, 0.5 * w0},
                                      {0.5 * (1.0 + x1), 0.5 * w1},
                                      {0.5 * (1.0 + x2), 0.5 * w2}}};
  }();
  return rule;
}

}  // namespace fpsi

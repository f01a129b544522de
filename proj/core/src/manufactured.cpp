#include "fpsi/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fpsi/error.hpp"

namespace fpsi {

namespace {

constexpr double pi = std::numbers::pi;

struct Amplitude {
  int id;
  double a(double t) const { return id == 1 ? std::exp(t) : std::sin(pi * t + pi / 4.0); }
  double da(double t) const { return id == 1 ? std::exp(t) : pi * std::cos(pi * t + pi / 4.0); }
};

Vec2 shape(const Vec2& x) { return {-3.0 * x.x() + std::cos(x.y()), x.y() + 1.0}; }

void check_case(int id) {
  if (id != 1 && id != 2) fail(ErrorKind::Argument, "benchmark case must be 1 or 2");
}

}  // namespace

ExactSolution exact_solution(int case_id) {
  check_case(case_id);
  const Amplitude A{case_id};
  ExactSolution e;
  e.case_id = case_id;
  e.eta = [](const Vec2& x, double t) { return Vec2(std::sin(pi * t) * shape(x)); };
  e.xi = [](const Vec2& x, double t) { return Vec2(pi * std::cos(pi * t) * shape(x)); };
  e.u = e.xi;
  e.phi = [A](const Vec2& x, double t) {
    return A.a(t) * std::sin(pi * x.x()) * std::cos(pi * x.y() / 2.0);
  };
  e.p = [A](const Vec2& x, double t) {
    return A.a(t) * std::sin(pi * x.x()) * std::cos(pi * x.y() / 2.0) + 2.0 * pi * std::cos(pi * t);
  };
  return e;
}

Forcing forcing_terms(int case_id, const PhysicalParams& prm, const ForcingOffsets& off) {
  check_case(case_id);
  const Amplitude A{case_id};
  const PhysicalParams p = prm;
  auto grad_phi = [A](const Vec2& x, double t) {
    const double S = std::sin(pi * x.x());
    const double C = std::cos(pi * x.y() / 2.0);
    return Vec2(A.a(t) * pi * std::cos(pi * x.x()) * C,
                -A.a(t) * (pi / 2.0) * S * std::sin(pi * x.y() / 2.0));
  };
  Forcing f;
  f.F_f = [p, grad_phi, off](const Vec2& x, double t) {
    const double c = pi * std::cos(pi * t);
    const double dc = -pi * pi * std::sin(pi * t);
    return Vec2(p.rho_f * dc * shape(x) + grad_phi(x, t) +
                p.mu_f * c * Vec2(std::cos(x.y()), 0.0) + off.fluid);
  };
  f.g_f = [off](const Vec2&, double t) { return -2.0 * pi * std::cos(pi * t) + off.divergence; };
  f.F_e = [p, grad_phi, off](const Vec2& x, double t) {
    const double s = std::sin(pi * t);
    const double dc = -pi * pi * std::sin(pi * t);
    return Vec2(p.rho_p * dc * shape(x) + p.mu_p * s * Vec2(std::cos(x.y()), 0.0) +
                p.alpha * grad_phi(x, t) + off.solid);
  };
  f.F_d = [p, A, off](const Vec2& x, double t) {
    const double SC = std::sin(pi * x.x()) * std::cos(pi * x.y() / 2.0);
    const double c = pi * std::cos(pi * t);
    return p.c0 * A.da(t) * SC - 2.0 * p.alpha * c + p.K * A.a(t) * (5.0 * pi * pi / 4.0) * SC +
           off.darcy;
  };
  const ExactSolution ex = exact_solution(case_id);
  f.traction = [p, ex](const EdgePoint& e, double t) {
    const Vec2& x = e.x;
    const double c = pi * std::cos(pi * t);
    const double off_diag = -0.5 * std::sin(x.y());
    Eigen::Matrix2d sigma;
    sigma << -3.0, off_diag, off_diag, 1.0;
    sigma *= 2.0 * p.mu_f * c;
    sigma -= ex.p(x, t) * Eigen::Matrix2d::Identity();
    return Vec2(sigma * e.normal);
  };
  f.flux = [p, grad_phi](const EdgePoint& e, double t) { return p.K * grad_phi(e.x, t).dot(e.normal); };
  return f;
}

ProblemData benchmark_problem(int case_id, const PhysicalParams& params) {
  const ExactSolution ex = exact_solution(case_id);
  const Forcing f = forcing_terms(case_id, params);
  ProblemData d;
  d.fluid.force = f.F_f;
  d.fluid.divergence = f.g_f;
  d.fluid.velocity = ex.u;
  d.fluid.traction = f.traction;
  d.biot.force = f.F_e;
  d.biot.source = f.F_d;
  d.biot.velocity = ex.xi;
  d.biot.pressure = ex.phi;
  d.biot.flux = f.flux;
  return d;
}

InitialData benchmark_initial(int case_id) {
  const ExactSolution ex = exact_solution(case_id);
  return {ex.u, ex.p, ex.eta, ex.xi, ex.phi};
}

PhysicalParams benchmark_params(int n) {
  PhysicalParams p;  // all unit coefficients
  p.dt = 0.05 / n;
  p.T = 1.0;
  return p;
}

std::pair<Mesh, Mesh> benchmark_meshes(Index cells) {
  Mesh fluid = build_rect_mesh({0.0, 1.0, 0.0, 1.0}, cells, cells);
  const std::vector<BoundaryRule> fluid_rules = {
      {on_vertical_line(1.0), Marker::NeumannF},
      {on_horizontal_line(0.0), Marker::Interface},
      {any_of({on_vertical_line(0.0), on_horizontal_line(1.0)}), Marker::DirichletF},
  };
  Mesh solid = build_rect_mesh({0.0, 1.0, -1.0, 0.0}, cells, cells);
  const std::vector<BoundaryRule> solid_rules = {
      {on_horizontal_line(0.0), Marker::Interface},
      {on_horizontal_line(-1.0), Marker::NeumannP},
      {any_of({on_vertical_line(0.0), on_vertical_line(1.0)}), Marker::DirichletP},
  };
  return {mark_boundary(std::move(fluid), fluid_rules), mark_boundary(std::move(solid), solid_rules)};
}

double ResidualReport::max() const {
  double m = 0.0;
  for (const auto& [name, v] : entries()) m = std::max(m, v);
  return m;
}

std::vector<std::pair<std::string, double>> ResidualReport::entries() const {
  return {{"fluid_momentum", fluid_momentum}, {"continuity", continuity},
          {"solid_momentum", solid_momentum}, {"darcy", darcy},
          {"kinematics", kinematics},         {"traction", traction},
          {"flux", flux}};
}

namespace {

/// Central-difference derivatives of closed-form fields.
struct Fd {
  double h;

  template <class F>
  auto dx(const F& f, const Vec2& x, double t) const -> std::decay_t<decltype(f(x, t))> {
    return (f(x + Vec2(h, 0), t) - f(x - Vec2(h, 0), t)) / (2 * h);
  }
  template <class F>
  auto dy(const F& f, const Vec2& x, double t) const -> std::decay_t<decltype(f(x, t))> {
    return (f(x + Vec2(0, h), t) - f(x - Vec2(0, h), t)) / (2 * h);
  }
  template <class F>
  auto dt(const F& f, const Vec2& x, double t) const -> std::decay_t<decltype(f(x, t))> {
    return (f(x, t + h) - f(x, t - h)) / (2 * h);
  }
  template <class F>
  auto dxx(const F& f, const Vec2& x, double t) const -> std::decay_t<decltype(f(x, t))> {
    return (f(x + Vec2(h, 0), t) - 2.0 * f(x, t) + f(x - Vec2(h, 0), t)) / (h * h);
  }
  template <class F>
  auto dyy(const F& f, const Vec2& x, double t) const -> std::decay_t<decltype(f(x, t))> {
    return (f(x + Vec2(0, h), t) - 2.0 * f(x, t) + f(x - Vec2(0, h), t)) / (h * h);
  }
  template <class F>
  auto dxy(const F& f, const Vec2& x, double t) const -> std::decay_t<decltype(f(x, t))> {
    return (f(x + Vec2(h, h), t) - f(x + Vec2(h, -h), t) - f(x + Vec2(-h, h), t) +
            f(x + Vec2(-h, -h), t)) /
           (4 * h * h);
  }

  /// div(2 mu D(v) + lambda div(v) I) from second differences.
  Vec2 div_stress(const VectorFieldFn& v, const Vec2& x, double t, double mu, double lambda) const {
    const Vec2 vxx = dxx(v, x, t);
    const Vec2 vyy = dyy(v, x, t);
    const Vec2 vxy = dxy(v, x, t);
    const Vec2 lap = vxx + vyy;
    const Vec2 grad_div(vxx.x() + vxy.y(), vxy.x() + vyy.y());
    return mu * lap + (mu + lambda) * grad_div;
  }

  Eigen::Matrix2d grad(const VectorFieldFn& v, const Vec2& x, double t) const {
    const Vec2 gx = dx(v, x, t);
    const Vec2 gy = dy(v, x, t);
    Eigen::Matrix2d g;
    g << gx.x(), gy.x(), gx.y(), gy.y();  // g(i, j) = d v_i / d x_j
    return g;
  }
};

}  // namespace

ResidualReport residual_check(int case_id, double t, double h, int points,
                              const PhysicalParams& p, const ForcingOffsets& offsets,
                              std::uint32_t seed) {
  if (!(h > 0.0)) fail(ErrorKind::Argument, "finite-difference step must be positive");
  if (points < 1) fail(ErrorKind::Argument, "need at least one sample point");
  const ExactSolution ex = exact_solution(case_id);
  const Forcing f = forcing_terms(case_id, p, offsets);
  const Fd fd{h};
  std::mt19937 rng(seed);
  const double margin = std::max(10.0 * h, 1e-3);
  std::uniform_real_distribution<double> unit(margin, 1.0 - margin);
  ResidualReport r;
  auto upd = [](double& slot, double v) { slot = std::max(slot, std::abs(v)); };
  for (int i = 0; i < points; ++i) {
    // Fluid point in (0,1)^2.
    const Vec2 xf(unit(rng), unit(rng));
    {
      const Vec2 dudt = fd.dt(ex.u, xf, t);
      const Vec2 grad_p(fd.dx(ex.p, xf, t), fd.dy(ex.p, xf, t));
      // div sigma_f = -grad p + mu (lap u + grad div u).
      const Vec2 div_sigma = -grad_p + fd.div_stress(ex.u, xf, t, p.mu_f, 0.0);
      const Vec2 res = f.F_f(xf, t) - (p.rho_f * dudt - div_sigma);
      upd(r.fluid_momentum, res.x());
      upd(r.fluid_momentum, res.y());
      const double div_u = fd.dx(ex.u, xf, t).x() + fd.dy(ex.u, xf, t).y();
      upd(r.continuity, f.g_f(xf, t) - div_u);
    }
    // Solid point in (0,1)x(-1,0).
    const Vec2 xs(unit(rng), unit(rng) - 1.0);
    {
      const Vec2 dxidt = fd.dt(ex.xi, xs, t);
      const Vec2 grad_phi(fd.dx(ex.phi, xs, t), fd.dy(ex.phi, xs, t));
      const Vec2 div_sigma = fd.div_stress(ex.eta, xs, t, p.mu_p, p.lambda_p) - p.alpha * grad_phi;
      const Vec2 res = f.F_e(xs, t) - (p.rho_p * dxidt - div_sigma);
      upd(r.solid_momentum, res.x());
      upd(r.solid_momentum, res.y());
      const double dphidt = fd.dt(ex.phi, xs, t);
      const double div_xi = fd.dx(ex.xi, xs, t).x() + fd.dy(ex.xi, xs, t).y();
      const double lap_phi = fd.dxx(ex.phi, xs, t) + fd.dyy(ex.phi, xs, t);
      upd(r.darcy, f.F_d(xs, t) - (p.c0 * dphidt + p.alpha * div_xi - p.K * lap_phi));
      const Vec2 kin = ex.xi(xs, t) - fd.dt(ex.eta, xs, t);
      upd(r.kinematics, kin.x());
      upd(r.kinematics, kin.y());
    }
    // Neumann data on x = 1 (fluid) and y = -1 (solid).
    {
      EdgePoint e;
      e.x = Vec2(1.0, unit(rng));
      e.normal = Vec2(1.0, 0.0);
      e.tangent = Vec2(0.0, 1.0);
      const Eigen::Matrix2d g = fd.grad(ex.u, e.x, t);
      const Eigen::Matrix2d sigma =
          -ex.p(e.x, t) * Eigen::Matrix2d::Identity() + p.mu_f * (g + g.transpose());
      const Vec2 res = f.traction(e, t) - sigma * e.normal;
      upd(r.traction, res.x());
      upd(r.traction, res.y());
      EdgePoint b;
      b.x = Vec2(unit(rng), -1.0);
      b.normal = Vec2(0.0, -1.0);
      b.tangent = Vec2(-1.0, 0.0);
      const Vec2 grad_phi(fd.dx(ex.phi, b.x, t), fd.dy(ex.phi, b.x, t));
      upd(r.flux, f.flux(b, t) - p.K * grad_phi.dot(b.normal));
    }
  }
  return r;
}

}  // namespace fpsi

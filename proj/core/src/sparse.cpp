#include "fpsi/sparse.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpsi/error.hpp"

namespace fpsi {

void add_constraint(Constraints& c, Index dof, double value) {
  auto [it, inserted] = c.try_emplace(dof, value);
  if (!inserted && std::abs(it->second - value) > 1e-12 * (1.0 + std::abs(value))) {
    std::ostringstream msg;
    msg << "dof " << dof << " constrained to both " << it->second << " and " << value;
    fail(ErrorKind::ConstraintConflict, msg.str());
  }
}

namespace {

SparseMatrix eliminate(const SparseMatrix& a, const std::vector<char>& mask) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(a.nonZeros()));
  for (Index col = 0; col < a.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
      if (!mask[static_cast<size_t>(it.row())] && !mask[static_cast<size_t>(col)]) {
        trips.emplace_back(it.row(), col, it.value());
      }
    }
  }
  for (Index i = 0; i < a.rows(); ++i) {
    if (mask[static_cast<size_t>(i)]) trips.emplace_back(i, i, 1.0);
  }
  SparseMatrix out(a.rows(), a.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

std::vector<char> make_mask(Index n, const std::vector<Index>& dofs) {
  std::vector<char> mask(static_cast<size_t>(n), 0);
  for (Index d : dofs) {
    if (d < 0 || d >= n) {
      fail(ErrorKind::Dimension, "constrained dof " + std::to_string(d) + " out of range");
    }
    mask[static_cast<size_t>(d)] = 1;
  }
  return mask;
}

}  // namespace

SparseSystem apply_dirichlet(SparseSystem system, const Constraints& constraints) {
  const Index n = system.matrix.rows();
  if (system.matrix.cols() != n || system.rhs.size() != n) {
    fail(ErrorKind::Dimension, "system is not square or rhs size differs");
  }
  if (constraints.empty()) return system;
  for (const auto& [dof, value] : constraints) add_constraint(system.constraints, dof, value);
  std::vector<Index> dofs;
  Vector g = Vector::Zero(n);
  for (const auto& [dof, value] : constraints) dofs.push_back(dof);
  const auto mask = make_mask(n, dofs);
  for (const auto& [dof, value] : constraints) g[dof] = value;
  Vector rhs = system.rhs - system.matrix * g;
  for (const auto& [dof, value] : constraints) rhs[dof] = value;
  system.matrix = eliminate(system.matrix, mask);
  system.rhs = std::move(rhs);
  return system;
}

struct SparseDirectSolver::Impl {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  SparseMatrix cached;
  bool factored = false;
  bool analyzed = false;
};

SparseDirectSolver::SparseDirectSolver() : impl_(std::make_unique<Impl>()) {}
SparseDirectSolver::~SparseDirectSolver() = default;
SparseDirectSolver::SparseDirectSolver(SparseDirectSolver&&) noexcept = default;
SparseDirectSolver& SparseDirectSolver::operator=(SparseDirectSolver&&) noexcept = default;

namespace {

bool same_pattern(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.nonZeros() != b.nonZeros()) return false;
  if (!a.isCompressed() || !b.isCompressed()) return false;
  return std::equal(a.outerIndexPtr(), a.outerIndexPtr() + a.outerSize() + 1, b.outerIndexPtr()) &&
         std::equal(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros(), b.innerIndexPtr());
}

bool same_values(const SparseMatrix& a, const SparseMatrix& b) {
  return std::equal(a.valuePtr(), a.valuePtr() + a.nonZeros(), b.valuePtr());
}

}  // namespace

void SparseDirectSolver::factorize(const SparseMatrix& a_in) {
  if (a_in.rows() != a_in.cols()) fail(ErrorKind::Dimension, "matrix is not square");
  SparseMatrix a = a_in;
  a.makeCompressed();
  Impl& s = *impl_;
  const bool pattern = s.analyzed && same_pattern(a, s.cached);
  if (s.factored && pattern && same_values(a, s.cached)) return;
  if (!pattern) {
    s.lu.analyzePattern(a);
    s.analyzed = true;
    ++analyses_;
  }
  s.factored = false;
  s.lu.factorize(a);
  ++factorizations_;
  if (s.lu.info() != Eigen::Success) {
    s.analyzed = false;
    fail(ErrorKind::SingularSystem, "factorization failed: " + s.lu.lastErrorMessage());
  }
  s.cached = std::move(a);
  s.factored = true;
}

Vector SparseDirectSolver::solve(const Vector& b) const {
  if (!impl_->factored) fail(ErrorKind::Argument, "solve called before factorize");
  if (b.size() != impl_->cached.rows()) fail(ErrorKind::Dimension, "rhs size mismatch");
  Vector x = impl_->lu.solve(b);
  if (!x.allFinite()) fail(ErrorKind::SingularSystem, "solution is not finite");
  return x;
}

Vector solve_sparse(const SparseSystem& system) {
  if (system.matrix.rows() != system.rhs.size()) fail(ErrorKind::Dimension, "rhs size mismatch");
  SparseDirectSolver solver;
  Vector x = solver.solve(system.matrix, system.rhs);
  const double bn = system.rhs.norm();
  const double rn = (system.rhs - system.matrix * x).norm();
  if (rn > 1e-10 * std::max(bn, 1e-300) && rn > 1e-300) {
    std::ostringstream msg;
    msg << "relative residual " << rn / bn << " exceeds 1e-10";
    fail(ErrorKind::SingularSystem, msg.str());
  }
  return x;
}

EliminatedOperator::EliminatedOperator(SparseMatrix full, std::vector<Index> constrained)
    : full_(std::move(full)), constrained_(std::move(constrained)) {
  if (full_.rows() != full_.cols()) fail(ErrorKind::Dimension, "matrix is not square");
  full_.makeCompressed();
  std::sort(constrained_.begin(), constrained_.end());
  constrained_.erase(std::unique(constrained_.begin(), constrained_.end()), constrained_.end());
  mask_ = make_mask(full_.rows(), constrained_);
  eliminated_ = eliminate(full_, mask_);
  solver_ = std::make_shared<SparseDirectSolver>();
}

Vector EliminatedOperator::lift(const Vector& b, const Constraints& values) const {
  if (b.size() != full_.rows()) fail(ErrorKind::Dimension, "rhs size mismatch");
  Vector g = Vector::Zero(b.size());
  for (Index d : constrained_) {
    auto it = values.find(d);
    if (it == values.end()) {
      fail(ErrorKind::Argument, "missing value for constrained dof " + std::to_string(d));
    }
    g[d] = it->second;
  }
  Vector out = b - full_ * g;
  for (Index d : constrained_) out[d] = g[d];
  return out;
}

Vector EliminatedOperator::solve(const Vector& b, const Constraints& values) {
  solver_->factorize(eliminated_);
  return solver_->solve(lift(b, values));
}

SparseMatrix from_triplets(Index n, const std::vector<Triplet>& trips) {
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

}  // namespace fpsi

#pragma once

#include <map>
#include <memory>
#include <vector>

#include "fpsi/types.hpp"

namespace fpsi {

/// Dirichlet record: dof -> prescribed value.
using Constraints = std::map<Index, double>;

/// Inserts a constraint; re-adding a dof with a different value (beyond
/// 1e-12 relative) throws ConstraintConflict.
void add_constraint(Constraints& c, Index dof, double value);

struct SparseSystem {
  SparseMatrix matrix;
  Vector rhs;
  Constraints constraints;
};

/// Symmetric elimination: constrained rows and columns are zeroed except a
/// unit diagonal and the rhs is lifted by the boundary values. The applied
/// constraints are merged into system.constraints.
SparseSystem apply_dirichlet(SparseSystem system, const Constraints& constraints);

/// Sparse LU with partial pivoting. Caches the factorization: solving again
/// with a bitwise-identical matrix skips factorization, and a matrix with
/// the same pattern reuses the symbolic analysis.
class SparseDirectSolver {
 public:
  SparseDirectSolver();
  ~SparseDirectSolver();
  SparseDirectSolver(SparseDirectSolver&&) noexcept;
  SparseDirectSolver& operator=(SparseDirectSolver&&) noexcept;

  /// Throws SingularSystem (with the failing pivot) if factorization fails.
  void factorize(const SparseMatrix& a);
  Vector solve(const Vector& b) const;
  Vector solve(const SparseMatrix& a, const Vector& b) {
    factorize(a);
    return solve(b);
  }

  int factorizations() const { return factorizations_; }
  int analyses() const { return analyses_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int factorizations_ = 0;
  int analyses_ = 0;
};

/// Solves system.matrix x = system.rhs. Throws SingularSystem if the
/// factorization fails or the relative residual exceeds 1e-10.
Vector solve_sparse(const SparseSystem& system);

/// Fixed matrix with a fixed set of constrained dofs whose values change
/// from solve to solve. The eliminated matrix is factored once.
class EliminatedOperator {
 public:
  EliminatedOperator() = default;
  EliminatedOperator(SparseMatrix full, std::vector<Index> constrained);

  const SparseMatrix& full() const { return full_; }
  const SparseMatrix& eliminated() const { return eliminated_; }
  const std::vector<Index>& constrained() const { return constrained_; }
  bool is_constrained(Index dof) const { return mask_[static_cast<size_t>(dof)] != 0; }

  /// rhs' = b - A g on free rows, g on constrained rows. Values for every
  /// constrained dof must be present.
  Vector lift(const Vector& b, const Constraints& values) const;
  Vector solve(const Vector& b, const Constraints& values);

  /// Residual b - A x of the unconstrained system (rows of constrained dofs
  /// carry reaction forces).
  Vector residual(const Vector& b, const Vector& x) const { return b - full_ * x; }

 private:
  SparseMatrix full_;
  SparseMatrix eliminated_;
  std::vector<Index> constrained_;
  std::vector<char> mask_;
  std::shared_ptr<SparseDirectSolver> solver_;
};

/// Assembles a square matrix from triplets (duplicates summed).
SparseMatrix from_triplets(Index n, const std::vector<Triplet>& trips);

}  // namespace fpsi

#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fpsi {

using Index = std::ptrdiff_t;
using Vec2 = Eigen::Vector2d;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Closed-form data in space only.
using ScalarFn = std::function<double(const Vec2&)>;
using VectorFn = std::function<Vec2(const Vec2&)>;

/// Closed-form data in space and time.
using ScalarFieldFn = std::function<double(const Vec2&, double)>;
using VectorFieldFn = std::function<Vec2(const Vec2&, double)>;

}  // namespace fpsi

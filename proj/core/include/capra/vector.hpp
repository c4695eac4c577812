#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace capra {

/// Dense real vector; the primal point x or the dual point y.
using Vector = std::vector<double>;
using VectorView = std::span<const double>;

/// Throws DimensionMismatch naming `what` when the sizes differ.
void require_same_dim(VectorView a, VectorView b, std::string_view what);

/// Throws InvalidArgument when an entry is NaN or infinite.
void require_finite(VectorView x, std::string_view what);

double dot(VectorView a, VectorView b);
double max_abs(VectorView x);
bool is_zero(VectorView x);

Vector scaled(VectorView x, double factor);
Vector add(VectorView a, VectorView b);
Vector subtract(VectorView a, VectorView b);

}  // namespace capra

#pragma once

#include <array>
#include <utility>

#include "entsim/cmatrix.hpp"
#include "entsim/states.hpp"

namespace entsim {

/// The fifteen tomographic expectation values, ordered
///   <xa> <xb> <ya> <yb> <xz> <yz> <za> <zb> <zz>   (spin correlations)
///   <xI> <yI> <zI> <Ia> <Ib> <Iz>                  (single-qubit spins)
/// where a, b are the 45-degree-rotated x, y axes on qubit 2.
struct FeatureVector {
    std::array<double, 15> f{};
};

struct EntanglementLabel {
    bool entangled;
    double min_pt_eigenvalue;
};

/// Entangled iff the minimum partial-transpose eigenvalue < -kPptTol.
inline constexpr double kPptTol = 1e-10;
/// Numerically-separable band for concurrence.
inline constexpr double kConcurrenceTol = 1e-8;

/// sigma_a = (sigma_x + sigma_y)/sqrt2, sigma_b = (-sigma_x + sigma_y)/sqrt2.
std::pair<CMatrix, CMatrix> rotated_paulis();

/// The fifteen ordered two-qubit observables.
const std::array<CMatrix, 15>& feature_observables();

/// f_i = Re tr(rho O_i); throws when any |Im tr| exceeds 1e-10 or a value
/// leaves [-1, 1] by more than 1e-9.
FeatureVector extract_features(const DensityOperator& rho);

/// Transpose of the qubit-2 indices: each 2x2 block transposed in place.
CMatrix partial_transpose(const CMatrix& rho);

EntanglementLabel ppt_label(const DensityOperator& rho);

/// Wootters concurrence via the Hermitian reduction: spectrum of
/// sqrt(rho) rho~ sqrt(rho) with rho~ = (sy (x) sy) rho* (sy (x) sy),
/// C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
double concurrence(const DensityOperator& rho);

/// Pure-state shortcut C = 2|c1 c4 - c2 c3|.
double concurrence_pure(const PureState& psi);

}  // namespace entsim

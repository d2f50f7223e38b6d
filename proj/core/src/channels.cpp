#include "entsim/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace entsim {

NoiseStrength::NoiseStrength(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("NoiseStrength: p must lie in [0, 1]");
}

double KrausSet::completeness_defect() const {
    CMatrix sum(dim());
    for (const CMatrix& k : ops) sum += dagger(k) * k;
    return max_abs_diff(sum, CMatrix::identity(dim()));
}

KrausSet dephase_1q_kraus(NoiseStrength p) {
    const double sq = std::sqrt(1.0 - p.value());
    const double sp = std::sqrt(p.value());
    return KrausSet{{CMatrix::from_rows(2, {sq, 0.0, 0.0, sq}),
                     CMatrix::from_rows(2, {sp, 0.0, 0.0, 0.0}),
                     CMatrix::from_rows(2, {0.0, 0.0, 0.0, sp})},
                    ChannelKind::Dephase1Q};
}

KrausSet dephase_global_kraus(NoiseStrength p) {
    const KrausSet one_qubit = dephase_1q_kraus(p);
    KrausSet ks{{}, ChannelKind::DephaseGlobal2Q};
    ks.ops.reserve(9);
    for (const CMatrix& mi : one_qubit.ops)
        for (const CMatrix& mj : one_qubit.ops) ks.ops.push_back(kron(mi, mj));
    return ks;
}

CMatrix apply_kraus(const CMatrix& rho, const KrausSet& ks) {
    if (rho.dim() != ks.dim())
        throw std::invalid_argument("apply_kraus: state/operator dimension mismatch");
    CMatrix out(rho.dim());
    for (const CMatrix& k : ks.ops) out += k * rho * dagger(k);
    return out;
}

DensityOperator apply_kraus(const DensityOperator& rho, const KrausSet& ks) {
    return DensityOperator(apply_kraus(rho.matrix(), ks));
}

DensityOperator dephase_global_closed_form(const DensityOperator& rho, NoiseStrength p) {
    const double q = 1.0 - p.value();
    const double q2 = q * q;
    // Scale factor per entry: 1 on the diagonal, q^2 on the anti-diagonal
    // coherences (03, 12), q elsewhere.
    CMatrix out = rho.matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const bool double_coherence = (i + j == 3);
            out(i, j) *= double_coherence ? q2 : q;
        }
    return DensityOperator(out);
}

DensityOperator depolarize(const DensityOperator& rho, NoiseStrength p) {
    CMatrix out = rho.matrix();
    out *= Complex(1.0 - p.value());
    const double w = p.value() / 4.0;
    for (int i = 0; i < 4; ++i) out(i, i) += w;
    return DensityOperator(out);
}

}  // namespace entsim

#pragma once

#include <vector>

#include "entsim/cmatrix.hpp"
#include "entsim/states.hpp"

namespace entsim {

enum class ChannelKind { Dephase1Q, DephaseGlobal2Q, Depolarize2Q };

/// Scattering probability in [0, 1]; validated on construction.
class NoiseStrength {
public:
    explicit NoiseStrength(double p);
    double value() const { return p_; }

private:
    double p_;
};

/// Kraus operators of uniform dimension with sum K^dag K = I.
struct KrausSet {
    std::vector<CMatrix> ops;
    ChannelKind label;

    int dim() const { return ops.front().dim(); }
    /// Max |sum K^dag K - I| entry.
    double completeness_defect() const;
};

/// Single-qubit dephasing: M1 = sqrt(1-p) I, M2 = sqrt(p) diag(1,0),
/// M3 = sqrt(p) diag(0,1).
KrausSet dephase_1q_kraus(NoiseStrength p);

/// Global two-qubit dephasing: the nine operators E_ij = M_i (x) M_j.
KrausSet dephase_global_kraus(NoiseStrength p);

/// rho' = sum K rho K^dag. Throws on dimension mismatch.
CMatrix apply_kraus(const CMatrix& rho, const KrausSet& ks);
DensityOperator apply_kraus(const DensityOperator& rho, const KrausSet& ks);

/// Entrywise form of global dephasing: diagonals kept, single coherences
/// scaled by (1-p), double coherences (03, 12 and conjugates) by (1-p)^2.
/// Production path; the Kraus sum above is its oracle.
DensityOperator dephase_global_closed_form(const DensityOperator& rho, NoiseStrength p);

/// rho' = (1-p) rho + (p/4) I.
DensityOperator depolarize(const DensityOperator& rho, NoiseStrength p);

}  // namespace entsim

#include "qcm/red_sim.hpp"

#include <cmath>
#include <string>

#include "qcm/convex_roof.hpp"
#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"
#include "qcm/rpbes.hpp"

namespace qcm::red {

namespace {

/// Row `row` of a Kraus operator on a (d2, d3) composite, reshaped to the
/// d2 x d3 matrix that contracts between the two link matrices.
Matrix row_block(const Matrix& op, int row, int d2, int d3) {
    Matrix b(d2, d3);
    for (int k = 0; k < d2; ++k)
        for (int kp = 0; kp < d3; ++kp)
            b(k, kp) = op(row, static_cast<Eigen::Index>(k) * d3 + kp);
    return b;
}

double product_bound(const Ensemble& link12, const Ensemble& link34) {
    const MonotoneSelector g = MonotoneSelector::g();
    return ensemble_average(link12, g) * ensemble_average(link34, g);
}

BoundReport report_from(const std::vector<Branch>& branches, double bound) {
    BoundReport rep;
    rep.bound = bound;
    for (const Branch& b : branches)
        rep.average_g += b.q * g_concurrence(b.state);
    rep.slack = rep.bound - rep.average_g;
    return rep;
}

} // namespace

KrausSet KrausSet::make(std::vector<Matrix> ops, double tol) {
    if (ops.empty())
        throw validation_error("KrausSet: need at least one operator");
    const Eigen::Index d = ops.front().rows();
    for (const Matrix& m : ops)
        if (m.rows() != d || m.cols() != d)
            throw validation_error("KrausSet: operators must be square with equal dims");
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& m : ops)
        sum += m.adjoint() * m;
    const double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > tol)
        throw validation_error("KrausSet: completeness defect " + std::to_string(defect));
    KrausSet k;
    k.ops = std::move(ops);
    return k;
}

KrausSet projective_kraus(const std::vector<PureState>& basis) {
    if (basis.empty())
        throw validation_error("projective_kraus: empty basis");
    std::vector<Matrix> ops;
    ops.reserve(basis.size());
    for (const PureState& s : basis) {
        const Vector v = s.to_vector();
        ops.push_back(v * v.adjoint());
    }
    // Completeness validation doubles as the orthonormality check: d^2
    // rank-1 projectors only resolve the identity if the family is an
    // orthonormal basis.
    return KrausSet::make(std::move(ops));
}

KrausSet rpbes_canonical_kraus(int d) {
    return projective_kraus(rpbes::measurement_basis(rpbes::PhaseMatrix::canonical(d)));
}

std::vector<Branch> supplier_measure(const PureState& link12, const PureState& link34,
                                     const KrausSet& kraus, double cutoff) {
    const int d2 = link12.dim_b;
    const int d3 = link34.dim_a;
    if (kraus.dim() != d2 * d3)
        throw validation_error("supplier_measure: Kraus dim must be d2 * d3");
    if (!link12.normalized || !link34.normalized)
        throw validation_error("supplier_measure: links must be normalized");

    std::vector<Branch> branches;
    for (std::size_t j = 0; j < kraus.size(); ++j) {
        const Matrix& op = kraus.ops[j];
        for (int row = 0; row < kraus.dim(); ++row) {
            const Matrix b = row_block(op, row, d2, d3);
            Matrix y = link12.amps * b * link34.amps;
            const double q = y.squaredNorm();
            if (q < cutoff)
                continue;
            y /= std::sqrt(q);
            branches.push_back(
                {static_cast<int>(j), row, q, PureState::make(std::move(y))});
        }
    }
    return branches;
}

std::vector<Branch> supplier_measure(const Ensemble& link12, const Ensemble& link34,
                                     const KrausSet& kraus, double cutoff) {
    std::vector<Branch> branches;
    for (const auto& m1 : link12.members) {
        for (const auto& m2 : link34.members) {
            const double w = m1.p * m2.p;
            for (Branch b : supplier_measure(m1.state, m2.state, kraus, cutoff)) {
                b.q *= w;
                branches.push_back(std::move(b));
            }
        }
    }
    return branches;
}

BoundReport check_bound(const PureState& link12, const PureState& link34,
                        const KrausSet& kraus) {
    return report_from(supplier_measure(link12, link34, kraus),
                       g_concurrence(link12) * g_concurrence(link34));
}

BoundReport check_bound(const Ensemble& link12, const Ensemble& link34,
                        const KrausSet& kraus) {
    return report_from(supplier_measure(link12, link34, kraus),
                       product_bound(link12, link34));
}

KrausSet random_kraus(rng::Stream& g, int dim, const std::vector<int>& ranks) {
    if (dim < 1)
        throw validation_error("random_kraus: dimension must be positive");
    if (ranks.empty())
        throw validation_error("random_kraus: need at least one rank");
    int total = 0;
    for (int r : ranks) {
        if (r < 1 || r > dim)
            throw validation_error("random_kraus: ranks must lie in [1, dim]");
        total += r;
    }
    if (total < dim)
        throw validation_error("random_kraus: ranks must sum to at least dim");

    const Matrix t = rng::haar_isometry(g, total, dim);
    std::vector<Matrix> ops;
    ops.reserve(ranks.size());
    int offset = 0;
    for (int r : ranks) {
        const Matrix block = t.middleRows(offset, r);
        const Matrix a = rng::haar_isometry(g, dim, r);
        ops.push_back(a * block);
        offset += r;
    }
    return KrausSet::make(std::move(ops));
}

ChainResult chain_compose(const std::vector<PureState>& links, ChainStrategy strategy,
                          const std::vector<KrausSet>& node_kraus, double cutoff) {
    if (links.empty())
        throw validation_error("chain_compose: need at least one link");
    const int d = links.front().dim_a;
    for (const PureState& l : links) {
        if (l.dim_a != d || l.dim_b != d)
            throw validation_error("chain_compose: links must all be d x d");
        if (!l.normalized)
            throw validation_error("chain_compose: links must be normalized");
    }
    const std::size_t nodes = links.size() - 1;
    if (strategy == ChainStrategy::Provided) {
        if (node_kraus.size() != nodes)
            throw validation_error("chain_compose: need one Kraus set per node");
    } else if (!node_kraus.empty()) {
        throw validation_error("chain_compose: CanonicalSwap builds its own measurements");
    }

    Ensemble current = Ensemble::from_pure(links[0]);
    for (std::size_t k = 1; k < links.size(); ++k) {
        KrausSet kraus;
        if (strategy == ChainStrategy::Provided) {
            kraus = node_kraus[k - 1];
        } else {
            // Canonical projectors rotated into the Schmidt bases meeting
            // at this node: the incoming state's right side and the next
            // link's left side.
            const SchmidtData in = schmidt(current.members.front().state);
            const SchmidtData out = schmidt(links[k]);
            const Matrix v2 = complete_basis(in.basis_b, d);
            const Matrix v3 = complete_basis(out.basis_a, d);
            std::vector<PureState> rotated;
            for (const PureState& p :
                 rpbes::measurement_basis(rpbes::PhaseMatrix::canonical(d)))
                rotated.push_back(PureState::make(v2 * p.amps * v3.transpose()));
            kraus = projective_kraus(rotated);
        }

        std::vector<Branch> branches =
            supplier_measure(current, Ensemble::from_pure(links[k]), kraus, cutoff);
        if (branches.empty())
            throw numerical_error("chain_compose: all branches fell below cutoff");

        double total = 0.0;
        for (const Branch& b : branches)
            total += b.q;
        std::vector<Ensemble::Member> members;
        members.reserve(branches.size());
        for (Branch& b : branches)
            members.push_back({b.q / total, std::move(b.state)});
        current = Ensemble::make(std::move(members));
    }

    ChainResult res;
    res.final_ensemble = std::move(current);
    res.average_g = ensemble_average(res.final_ensemble, MonotoneSelector::g());
    res.bound = 1.0;
    for (const PureState& l : links)
        res.bound *= g_concurrence(l);
    res.slack = res.bound - res.average_g;
    return res;
}

} // namespace qcm::red

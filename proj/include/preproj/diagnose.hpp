#ifndef PREPROJ_DIAGNOSE_HPP
#define PREPROJ_DIAGNOSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fixedring.hpp"
#include "matrix.hpp"
#include "molien.hpp"

namespace preproj {

enum class Verdict { FreeConsistent, ProjectiveNotFreeConsistent, NotProjective, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::FreeConsistent: return "FreeConsistent";
        case Verdict::ProjectiveNotFreeConsistent: return "ProjectiveNotFreeConsistent";
        case Verdict::NotProjective: return "NotProjective";
        default: return "Inconclusive";
    }
}

struct DiagnosisReport {
    std::optional<RatMatrix> P;  // matrix_hilbert_A * molien_matrix^{-1}
    std::optional<Poly> freeness_cofactor;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> notes;
    MolienReport molien;
};

// A polynomial whose coefficients are all nonnegative integers.
inline bool is_nonnegative_integer_poly(const RatFun& f) {
    if (!f.is_polynomial()) return false;
    // canonical form keeps the constant denominator at 1
    const Poly& d = f.denominator();
    if (!d.coeff(0).is_one()) return false;
    for (const auto& c : f.numerator().coefficients()) {
        if (!c.is_rational()) return false;
        const Rational& q = c.coefficients()[0];
        if (q.get_den() != 1 || q < 0) return false;
    }
    return true;
}

// Hilbert-series level test of whether A decomposes over A^G as a sum of the
// indecomposable projectives e_j A^G with polynomial multiplicities.
inline DiagnosisReport diagnose_projectivity(const AutGroup& G, std::optional<std::size_t> D = std::nullopt) {
    const int n = G.n();
    DiagnosisReport rep;
    rep.molien = molien_report(G, D);
    const RatFun cof = hilbert_A(n) / rep.molien.scalar;
    if (is_nonnegative_integer_poly(cof)) rep.freeness_cofactor = cof.numerator();
    if (!rep.molien.matrix.matrix) {
        rep.notes.push_back("matrix Molien series did not reconstruct: " + rep.molien.matrix.reason);
        return rep;
    }
    RatMatrix inv;
    try {
        inv = mat_inverse(*rep.molien.matrix.matrix);
    } catch (const SingularMatrixError&) {
        rep.notes.push_back("matrix Molien series is singular, so the decomposition is not determined");
        return rep;
    }
    rep.P = matrix_hilbert_A(n) * inv;
    // P applied to the fixed-ring vector series must give the e_j A series.
    auto lhs = *rep.P * rep.molien.vector;
    for (const auto& e : lhs)
        if (e != hilbert_eA(n))
            throw InternalInconsistencyError("decomposition does not reproduce the Hilbert series of e_j A");
    bool p_ok = true;
    for (std::size_t i = 0; i < rep.P->rows() && p_ok; ++i)
        for (std::size_t j = 0; j < rep.P->cols() && p_ok; ++j)
            if (!is_nonnegative_integer_poly((*rep.P)(i, j))) {
                p_ok = false;
                rep.notes.push_back("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") of P is " +
                                    (*rep.P)(i, j).to_string(true) +
                                    ", not a polynomial with nonnegative integer coefficients");
            }
    if (!p_ok) {
        rep.verdict = Verdict::NotProjective;
        rep.notes.push_back("NotProjective is definitive at the Hilbert-series level: the decomposition candidate is unique");
    } else if (rep.freeness_cofactor) {
        rep.verdict = Verdict::FreeConsistent;
        rep.notes.push_back("Hilbert series are consistent with A being free over the fixed ring; no module isomorphism is constructed");
    } else {
        rep.verdict = Verdict::ProjectiveNotFreeConsistent;
        rep.notes.push_back("Hilbert series are consistent with A being projective but not free over the fixed ring; no module isomorphism is constructed");
    }
    return rep;
}

// Generators, their completeness certificate, discovered relations and the presentation check.
struct FixedRingReport {
    GeneratorReport generators;
    GeneratorCheck generator_check;
    Presentation presentation;
    int relation_degree = 0;
    std::optional<PresentationCheck> check;  // absent when the generators were not certified
};

inline FixedRingReport fixed_ring(const AutGroup& G, std::optional<int> gen_bound = std::nullopt,
                                  std::optional<int> relation_bound = std::nullopt) {
    FixedRingReport rep;
    const int D = gen_bound.value_or(default_generator_bound(G));
    rep.generators = minimal_generators(G, D);
    rep.generator_check = verify_generators(G, rep.generators.paths(), D);
    rep.presentation = presentation_skeleton(G.n(), rep.generators.paths());
    rep.relation_degree = relation_bound.value_or(static_cast<int>(default_relation_bound(rep.presentation)));
    if (!rep.generator_check.complete) return rep;
    rep.presentation = discover_relations(rep.presentation, rep.relation_degree);
    rep.check = verify_presentation(rep.presentation, G);
    return rep;
}

}  // namespace preproj

#endif  // PREPROJ_DIAGNOSE_HPP

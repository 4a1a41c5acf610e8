#pragma once

#include <optional>
#include <vector>

#include "amitsur/coring.hpp"

namespace amitsur {

// The cosickle condition, u_1u_3 = u_2u_4 in S^{(x)4}. The definition line of
// the source prints u_2u_3 on the right; the form used in its own proof is
// adopted, and reports quote this string.
inline constexpr const char* kCosickleCondition = "u1*u3 = u2*u4";

bool is_cosickle(const AmitsurComplex& c, const RingElement& u);
// Cosickle with u^1u^2 (x) u^3 and u^1 (x) u^2u^3 both units.
bool is_almost_invertible(const AmitsurComplex& c, const RingElement& u);

struct CensusEntry {
    RingElement u;
    bool unit = false;
    bool cocycle = false;            // unit 2-cocycle
    bool cosickle = false;
    bool almost_invertible = false;
    bool degenerate = false;         // cosickle with u_1u_3 = 0
    bool coassociative = false;      // direct triple-coproduct test
    bool counit_admitting = false;   // coassociative and some counit exists
    bool azumaya = false;            // coassociative and tilde-Delta bijective
};

struct CosickleClassification {
    ExtPtr ext;
    bool units_only = false;
    std::vector<CensusEntry> entries;  // lexicographic in u
    std::size_t units = 0, cocycles = 0, cosickles = 0, almost_invertible = 0, degenerate = 0;
    std::size_t chain_violations = 0;            // cocycle => almost inv => cosickle => coassociative
    std::size_t coassociative_mismatches = 0;    // coassociative vs cosickle
    std::size_t counit_mismatches = 0;           // counit-admitting vs almost invertible
    std::size_t azumaya_mismatches = 0;          // Azumaya vs unit cocycle
    std::size_t discrepancies() const {
        return chain_violations + coassociative_mismatches + counit_mismatches + azumaya_mismatches;
    }
};
// Sweeps S^{(x)3} (or only its units), throwing RingTooLarge above the cap.
CosickleClassification classify_all(const ComplexPtr& c, bool units_only = false);

// u = Delta(1 (x) 1).
TwistElement recover_twist(const NormalBasisCoring& C);

enum class MonoidKind { full, almost };  // all cosickles, or the almost invertible ones
struct Orbit {
    RingElement representative;        // lexicographically least member
    std::vector<RingElement> members;  // lexicographic
    bool invertible = false;
};
struct MonoidQuotient {
    MonoidKind kind;
    std::vector<RingElement> coboundaries;
    std::vector<Orbit> orbits;  // by representative
};
MonoidQuotient monoid_quotient(const ComplexPtr& c, MonoidKind kind, bool units_only = false);

// A class of unit 2-cocycles modulo coboundaries, represented by the
// lexicographically least norm-1 cocycle of the coset.
struct BrauerClass {
    RingElement representative;
    bool operator==(const BrauerClass& o) const { return representative == o.representative; }
};

// Class arithmetic over one extension, holding B^2 once.
class BrauerClasses {
public:
    explicit BrauerClasses(ComplexPtr c);
    const ComplexPtr& complex() const { return complex_; }
    const std::vector<RingElement>& coboundaries() const { return coboundaries_; }
    // Throws InvalidInput for a non-Azumaya coring.
    BrauerClass of(const NormalBasisCoring& C) const;
    BrauerClass identity() const;
    BrauerClass multiply(const BrauerClass& a, const BrauerClass& b) const;  // via coring_tensor
    BrauerClass inverse(const BrauerClass& a) const;                         // via dual_coring

private:
    BrauerClass of_cocycle(const RingElement& u) const;
    ComplexPtr complex_;
    std::vector<RingElement> coboundaries_;
};

// Brauer equivalence of Azumaya corings over S/R and T/R. Over one extension
// the twists are compared directly; otherwise both are moved to (S (x) T)/R
// along s -> s (x) 1 and t -> 1 (x) t and compared there.
struct RefinementComparison {
    bool equivalent = false;
    ComplexPtr refinement;               // where the comparison happened
    std::optional<RingElement> witness;  // u' = v' delta(witness)
};
RefinementComparison compare_via_refinement(const NormalBasisCoring& C, const NormalBasisCoring& D);

}  // namespace amitsur

#ifndef TROLAB_PRESERVERS_HPP
#define TROLAB_PRESERVERS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trolab/json_io.hpp"
#include "trolab/maps.hpp"

namespace trolab {

enum class Verdict { yes, no, unknown };

const char* to_string(Verdict v);

// Result of a multilinear identity check decided exactly on the
// matrix-unit basis (with i-scaled middle slots where the identity is
// conjugate-linear). A failing check carries the violating tuple.
struct HomCheck {
    bool ok = true;
    double max_defect = 0.0;
    std::vector<Element> witness;  // empty when ok
    explicit operator bool() const { return ok; }
};

HomCheck is_triple_homomorphism(const LinearMap& s);
HomCheck is_tro_homomorphism(const LinearMap& s);
HomCheck is_tro_anti_homomorphism(const LinearMap& s);
HomCheck is_jordan_star_homomorphism(const LinearMap& s);
HomCheck is_multiplicative(const LinearMap& s);

// Searches for an orthogonal pair at level n whose images fail to be
// orthogonal. For the transpose on M_2 at n = 2 the first candidate is
// the known explicit pair.
std::optional<std::pair<Element, Element>> refute_orthogonality_preserving(
    const LinearMap& t, int n, int trials, std::uint64_t seed);

// T(a) = h r(h)* S(a) with S the supporting triple homomorphism.
struct Factorization {
    Element h;       // T(unit)
    Element r;       // range partial isometry of h
    LinearMap s;     // supporting triple homomorphism, zero off the support corner
    double residual = 0.0;  // max basis defect across the verified identities
};

struct FactorizeResult {
    std::optional<Factorization> factorization;
    std::string failure;                 // names the first violated identity
    std::optional<Element> witness;      // basis element of the violation
    // True when a weight-only necessary identity failed, which certifies
    // that the map is not orthogonality preserving.
    bool identity_violation = false;
    bool ok() const { return factorization.has_value(); }
};

FactorizeResult factorize(const LinearMap& t);

struct OpVerdict {
    Verdict verdict = Verdict::unknown;
    std::string evidence;
    std::optional<std::pair<Element, Element>> witness_pair;
    std::optional<Element> witness_basis;
};

// Level-1 orthogonality preservation: certified true via factorization,
// certified false via an identity violation or a sampled witness.
OpVerdict is_orthogonality_preserving(const LinearMap& t, int trials = 200,
                                      std::uint64_t seed = 1);

struct ClassificationReport {
    std::map<std::string, Verdict> verdicts;
    json witnesses = json::object();
    std::optional<Factorization> factorization;
    bool consistent = true;  // the equivalent characterizations agree
};

// Orthogonality-preservation classification: structural verdicts plus the
// five-way equivalence (c.o.p. / 2-OP / weighted TRO hom / zero-TRO
// products / right orthogonality), cross-checked for consistency.
ClassificationReport classify_cop(const LinearMap& t, int trials, std::uint64_t seed);

// Order-zero classification for positive maps; throws std::invalid_argument
// when the map fails the positivity sampler.
ClassificationReport classify_order_zero(const LinearMap& t, int trials, std::uint64_t seed);

class DecompositionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct TripleHomDecomposition {
    LinearMap hom_part;   // TRO homomorphism
    LinearMap anti_part;  // TRO anti-homomorphism, ranges orthogonal to hom_part
};

// Splits a triple homomorphism as hom + anti via the multiplicative-defect
// projection; all postconditions are re-verified and a failure throws.
TripleHomDecomposition decompose_triple_hom(const LinearMap& s);

// ---- ground-truth generators ------------------------------------------

struct GeneratedMap {
    LinearMap map;
    std::optional<Element> weight;        // h0
    std::optional<LinearMap> supporting;  // S0
    json expected = json::object();       // expected verdicts, for oracles
};

// S(a) = U Diag(a,...,a) V* with `multiplicity` copies per block plus
// `padding` zero rows; an injective TRO homomorphism.
GeneratedMap make_tro_hom(const Algebra& domain, int multiplicity, std::uint64_t seed,
                          int padding = 0);
GeneratedMap make_tro_anti_hom(const Algebra& domain, int multiplicity, std::uint64_t seed,
                               int padding = 0);
// T = h r(h)* S with per-copy scalar weights (so the supporting-map
// identities hold); carries (h0, S0).
GeneratedMap make_weighted_tro_hom(const Algebra& domain, int multiplicity,
                                   std::uint64_t seed, int padding = 0,
                                   bool contractive = false);
// Supporting map mixes hom and anti copies; not a TRO homomorphism when
// the domain is non-abelian and anti_copies >= 1.
GeneratedMap make_weighted_mixed_triple_hom(const Algebra& domain, int hom_copies,
                                            int anti_copies, std::uint64_t seed,
                                            bool contractive = false);
// T(a) = h pi(a) with pi a *-homomorphism and h >= 0 commuting with pi(A).
GeneratedMap make_cp_order_zero(const Algebra& domain, int multiplicity,
                                std::uint64_t seed, int padding = 0);
GeneratedMap make_random_map(const Algebra& domain, const Algebra& codomain,
                             std::uint64_t seed);

// The explicit orthogonal pair in M_2(M_2(C)) whose images under the
// amplified transpose fail to be orthogonal.
std::pair<Element, Element> transpose_counterexample_pair();

}  // namespace trolab

#endif

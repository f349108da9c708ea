#pragma once

#include "tropint/cycle.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tropint {

enum class TropicalMode { Max, Min };

struct TropicalTerm {
    ZVec exponent;
    Rat coefficient;
};

/// Max- or min-plus polynomial. Duplicate exponents are merged, keeping the
/// dominating coefficient for the mode.
class TropicalPolynomial {
  public:
    TropicalPolynomial(TropicalMode mode, std::vector<TropicalTerm> terms);

    TropicalMode mode() const { return mode_; }
    const std::vector<TropicalTerm>& terms() const { return terms_; }
    size_t vars() const { return terms_.empty() ? 0 : terms_[0].exponent.size(); }

    Rat evaluate(const QVec& x) const;
    /// Same polynomial with exponents zero-extended to n variables.
    TropicalPolynomial padded(size_t n) const;

    std::string to_string() const;

  private:
    TropicalMode mode_;
    std::vector<TropicalTerm> terms_;
};

/// Grammar: max(...) or min(...) of comma-separated affine terms in x,y,z or
/// x1..xn, with integer variable coefficients and rational constants.
TropicalPolynomial parse_polynomial(const std::string& text);

/// Newton polytope in R^{n+1} and the complete complex of linearity regions
/// in R^n; dominant_term[i] is a term whose affine form equals phi on cell i.
struct NewtonData {
    Polyhedron polytope;
    PolyhedralComplex induced_complex;
    std::vector<size_t> dominant_term;
};
NewtonData linearity_complex(const TropicalPolynomial& phi, size_t ambient_dim);

/// Piecewise affine function given by its domain complex together with
/// values at the pooled vertices and slopes at the pooled rays and lineality
/// generators (in indexed_form order). Affine data per cell is derived and
/// validated at construction: consistent interpolation and integer slopes on
/// lattice directions.
class RationalFunctionOnCycle {
  public:
    static RationalFunctionOnCycle from_data(const PolyhedralComplex& domain,
                                             const std::vector<Rat>& vertex_values,
                                             const std::vector<Rat>& generator_slopes);
    static RationalFunctionOnCycle from_polynomial(const TropicalPolynomial& phi,
                                                   size_t ambient_dim);

    const PolyhedralComplex& domain() const { return domain_; }
    const QVec& linear_part(size_t cell) const { return linear_[cell]; }
    const Rat& constant(size_t cell) const { return constants_[cell]; }

    Rat evaluate(const QVec& point) const;

    const std::vector<Rat>& vertex_values() const { return vertex_values_; }
    const std::vector<Rat>& generator_slopes() const { return generator_slopes_; }

  private:
    PolyhedralComplex domain_;
    std::vector<QVec> linear_;
    std::vector<Rat> constants_;
    std::vector<Rat> vertex_values_;
    std::vector<Rat> generator_slopes_;
};

/// Divisor of a rational function on a balanced cycle: the codimension-one
/// skeleton of the refined complex with the weight
///   ω(τ) = Σ ω(σ) φ_σ(u_{σ/τ}) − φ_τ(Σ ω(σ) u_{σ/τ});
/// zero-weight cells are dropped.
TropicalCycle divisor(const TropicalPolynomial& phi, const TropicalCycle& x);
TropicalCycle divisor(const RationalFunctionOnCycle& f, const TropicalCycle& x);

TropicalCycle divisor_power(const TropicalPolynomial& phi, int k, const TropicalCycle& x);

/// Integer linear combination of functions on the common refinement of their
/// domains.
RationalFunctionOnCycle linear_combination(
    const std::vector<std::pair<Int, RationalFunctionOnCycle>>& combination);

}  // namespace tropint

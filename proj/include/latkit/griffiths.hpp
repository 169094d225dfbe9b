#pragma once

// Jacobian-ring bookkeeping for smooth degree-d hypersurfaces X in P^{n+1}:
// primitive Hodge numbers, the middle lattice rank and signature, and the
// eigenvalues of diagonal automorphisms on residue bases.
//
// Conventions: an automorphism acts on forms by g(F) = F o g^{-1}; a diagonal
// action A = diag(zeta^e_0, ..., zeta^e_{n+1}) with zeta = exp(2 pi i / m)
// scales the top form Omega by det(A). Eigenvalues are returned as exponents
// of zeta modulo m.

#include <optional>
#include <utility>
#include <vector>

#include "latkit/exact_linalg.hpp"

namespace latkit {

/// Coefficient of t^k in ((1 - t^{d-1}) / (1 - t))^{n+2}. Throws InputError
/// unless n >= 1 and d >= 3.
Integer jacobian_hilbert_coefficient(int n, int d, long k);

/// h^{n,0}_prim, h^{n-1,1}_prim, ..., h^{0,n}_prim, where
/// h^{n-a+1,a-1}_prim is the Hilbert coefficient at a*d - n - 2.
std::vector<Integer> primitive_hodge_numbers(int n, int d);

struct MiddleCohomology {
  Integer rank;
  /// (b+, b-) of the middle lattice and of its primitive part; even n only.
  std::optional<std::pair<Integer, Integer>> signature;
  std::optional<std::pair<Integer, Integer>> primitive_signature;
};

/// rank = sum of primitive Hodge numbers, plus one for the hyperplane power
/// when n is even. The signature counts primitive (p,q) classes as positive
/// for even p, negative for odd p, and the hyperplane power as positive.
/// Requesting a signature for odd n throws InputError.
MiddleCohomology middle_rank_and_signature(int n, int d, bool with_signature);

struct Term {
  std::vector<int> exponents;
  Rational coefficient;
};

/// Polynomial in a fixed number of variables with rational coefficients.
/// Like terms are merged and zero terms dropped on construction.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t variables, std::vector<Term> terms);

  std::size_t variables() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree of a homogeneous polynomial; throws InputError if not homogeneous.
  int degree() const;
  Polynomial partial(std::size_t i) const;

  /// sum_i Z_i^d
  static Polynomial fermat(std::size_t variables, int d);

 private:
  std::size_t vars_ = 0;
  std::vector<Term> terms_;
};

/// A = diag(zeta_m^{e_i}).
struct DiagonalAction {
  int order = 1;
  std::vector<int> exponents;
};

/// Exponent c with F o A^{-1} = zeta^c F. Throws InputError when A does not
/// preserve F up to a scalar.
int preserved_scalar_exponent(const Polynomial& f, const DiagonalAction& a);

/// All monomials of degree k in `vars` variables, in descending lex order.
std::vector<std::vector<int>> monomials_of_degree(std::size_t vars, int k);

/// Monomials of degree k spanning (C[Z]/J_F)_k: the non-pivot columns of the
/// reduced row echelon form of J_F in degree k.
std::vector<std::vector<int>> jacobian_quotient_basis(const Polynomial& f, int k);

/// F is smooth iff its partials have no common zero iff the Jacobian ring
/// vanishes in degree (n+2)(d-2)+1.
bool is_smooth(const Polynomial& f);

struct ResidueEigenvalues {
  int order = 1;
  int degree = 0;  // a*d - n - 2
  int scalar_exponent = 0;
  std::vector<std::vector<int>> basis;
  /// eigenvalue exponent for each basis monomial
  std::vector<int> exponents;
};

/// Eigenvalues of A on the residues Res(m Omega / F^a) for the monomial basis
/// m of (C[Z]/J_F)_{a d - n - 2}: zeta^{-sum m_i e_i - sum e_i - a c}.
/// Throws InputError if F is not smooth or A does not preserve F up to scalar.
ResidueEigenvalues residue_eigenvalues(const Polynomial& f, const DiagonalAction& a, int pole_order);

struct SignPatternResult {
  std::vector<int> pattern;  // exponents mod 2
  ResidueEigenvalues eigenvalues;
  bool scalar_minus_one = false;
};

struct MinusIdReport {
  std::vector<SignPatternResult> patterns;  // nontrivial sign changes fixing F
  bool vacuous = false;
  /// no nontrivial pattern acts as -1 on the whole residue space
  bool obstruction_confirmed = false;
};

/// Checks every nontrivial diagonal sign change with F o A^{-1} = F for a
/// cubic threefold form (five variables) at pole order 2.
MinusIdReport minus_id_obstruction(const Polynomial& f);

}  // namespace latkit

#pragma once

#include "jetlc/check.hpp"
#include "jetlc/forms.hpp"

namespace jetlc {

/// Random coefficient: a small polynomial in the active coordinates of
/// dimension n, divided by 1 + y11^2 when `rational` is set.
Expr random_coefficient(int n, Rng& rng, bool rational);

/// Random form of the given degree with `terms` basis monomials over the
/// active slots of dimension n.
DiffForm random_form(int n, int degree, int terms, Rng& rng, bool rational = false);

/// Random evaluated form over slots 0..slots-1.
FormValue random_form_value(int slots, int degree, int terms, Rng& rng);

/// Antisymmetric matrix of random evaluated forms.
MatrixFormValue random_antisymmetric(int size, int degree, int slots, int terms, Rng& rng);

/// Random invertible rational matrix.
RationalMatrix random_invertible(int size, Rng& rng);

// Engine self-checks on seeded random inputs; settings.samples is the number
// of random instances per shape.

/// d(d a) == 0 for polynomial and rational coefficients, degrees 0..2, n = 2, 3.
CheckOutcome check_d_squared(const CheckSettings& settings = {});
/// a ^ b == (-1)^(pq) b ^ a and (a ^ b) ^ c == a ^ (b ^ c), symbolic and evaluated.
CheckOutcome check_wedge_laws(const CheckSettings& settings = {});
/// Pf(B^T A B) == det B Pf(A) and Pf(A)^2 == det(A) for sizes 2 and 4.
CheckOutcome check_pfaffian_congruence(const CheckSettings& settings = {});
/// char_coeff(k, S A S^-1) == char_coeff(k, A) for every k.
CheckOutcome check_char_coeff_conjugation(const CheckSettings& settings = {});

}  // namespace jetlc

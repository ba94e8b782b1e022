#pragma once

#include "wha/weak_hopf.hpp"

namespace wha {

Subspace left_integral_space(const WeakHopf& w);
Subspace right_integral_space(const WeakHopf& w);

// Normalized two-sided integral of w alone (no dual data). Throws NoHaar.
Vec haar_element(const WeakHopf& w);

struct HaarData {
    Vec h;          // in A
    Vec hhat;       // Haar integral of the dual
    Vec lambda_h;   // dual left integral paired with h
    Vec g_L, g_R, g;
    Vec g_L_inv, g_R_inv, g_inv;
};

// Computed once per algebra and shared by copies.
const HaarData& haar(const WeakHopf& w);

// Identities of the Haar integral and its modular elements.
Report verify_haar(const WeakHopf& w);
Report verify_modular(const WeakHopf& w);

// d_sigma(l) = eps_hat_sigma eps_L(l),  n_sigma(l) = eps_hat_sigma eps_R(l)
Vec rn_derivative(const WeakHopf& w, const Vec& l, Side side);
Vec normalization(const WeakHopf& w, const Vec& l, Side side);

struct IntegralClass {
    bool nondegenerate = false;
    bool positive = false;
    bool normalized = false;
    // Independent oracles: Gram matrix of phi, psi -> l(phi* psi) on the dual.
    bool gram_positive = false;
    bool gram_nondegenerate = false;
    // The same form assembled from S(l_1) (x) l_2.
    double split_form_residual = 0.0;
};
IntegralClass classify(const WeakHopf& w, const Vec& l);

// Sesquilinear form matrices on the dual: G(a, b) = l(delta_a* delta_b), and the one built from S(l_1) (x) l_2.
Mat functional_gram(const WeakHopf& w, const Vec& l);
Mat split_gram(const WeakHopf& w, const Vec& l);

// Fourier maps dual -> A: l_L(psi) = l <- psi, l_R(psi) = psi -> l.
Mat fourier_left(const WeakHopf& w, const Vec& l);
Mat fourier_right(const WeakHopf& w, const Vec& l);

// Unique lambda in the dual with lambda -> l = 1. Throws Degenerate.
Vec dual_integral(const WeakHopf& w, const Vec& l);
Report verify_dual_pair(const WeakHopf& w, const Vec& l, const Vec& lambda);

// d_R(l)^{1/2} h d_R(l)^{1/2}
Vec jones_projection(const WeakHopf& w, const Vec& l);
Report verify_jones_projection(const WeakHopf& w, const Vec& l);

// Positive nondegenerate lambda with lambda -> e_l = 1. Throws Degenerate / NotPositive.
Vec p_dual(const WeakHopf& w, const Vec& l);
Report verify_p_dual(const WeakHopf& w, const Vec& l);

// Ind l = n_R(lambda) in the dual, Ind lambda = n_R(l) in A.
struct IntegralIndex {
    Vec index;        // Ind l, element of the dual
    Vec dual_index;   // Ind lambda, element of A
    Vec lambda;
};
IntegralIndex integral_index(const WeakHopf& w, const Vec& l);

// Identities for arbitrary left integrals: normalization laws, rescaling, A_R action.
Report verify_integral_laws(const WeakHopf& w, const Vec& l);

// Random elements of the integral cone used by the tests.
Vec random_left_integral(const WeakHopf& w, unsigned seed);
// h d with d a random positive invertible element of A_R, then normalized.
Vec random_positive_normalized_integral(const WeakHopf& w, unsigned seed);
Vec random_positive(const StarAlgebra& a, const Subspace& s, unsigned seed);

}  // namespace wha

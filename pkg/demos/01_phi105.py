"""
The smallest ternary cyclotomic polynomial
==========================================

Phi_105 is the first cyclotomic polynomial with a coefficient outside
{-1, 0, 1}.  We compute it twice: by exact polynomial division and by the
streaming counting rule, and look at where the -2 coefficients sit.
"""

import numpy as np

from ternpoly import coeff_array, profile_stream, q_poly_coeffs

exact = q_poly_coeffs((3, 5, 7)).coefficients
streamed = coeff_array((3, 5, 7))
print("degree", len(exact) - 1)
print("identical:", np.array_equal(exact, streamed))

# where are the large coefficients?
print("a_m = -2 at m =", np.flatnonzero(exact == -2).tolist())

# the polynomial is palindromic
print("palindromic:", np.array_equal(exact, exact[::-1]))

prof = profile_stream((3, 5, 7))
print("values", sorted(prof.coeff_set), "height", prof.height, "diameter", prof.diameter)

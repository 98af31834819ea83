"""Exact convolution of finitely supported weights, and denominator control.

Run:  python3 demos/06_convolution_and_rationalize.py
"""

from fractions import Fraction

from matchcover import IntegerLattice, convolve, dirac, rationalize, uniform

Z = IntegerLattice(1)

# a lazy random walk step, convolved with itself twice
step = uniform(Z, [(-1,), (1,)])
two = convolve(step, step)
three = convolve(two, step)
print("step^2:", {Z.elem_str(g): str(w) for g, w in two.items()})
print("step^3:", {Z.elem_str(g): str(w) for g, w in three.items()})
print("mass stays exactly 1:", sum(w for _, w in three.items()) == 1)

# point masses multiply like group elements
print("dirac homomorphism:", convolve(dirac(Z, (2,)), dirac(Z, (3,))) == dirac(Z, (5,)))

# squeeze arbitrary weights onto a common denominator within any L1 budget
alpha = {"x": Fraction(17, 37), "y": Fraction(11, 37), "z": Fraction(9, 37)}
for theta in (Fraction(1, 2), Fraction(1, 50), Fraction(1, 5000)):
    beta, n, gamma = rationalize(alpha, theta)
    err = sum(abs(alpha[k] - beta[k]) for k in alpha)
    print(f"theta={theta}: denominator n={n}, parts={gamma}, L1 error {err} <= {theta}")

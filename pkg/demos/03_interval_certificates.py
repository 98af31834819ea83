"""Search for almost-invariant sets in Z and replay the certificate.

Intervals in Z are almost invariant under small shifts: shifting an
interval of length L by g moves only |g| boundary points, so matchings
between F and gF stay large no matter how the window is colored.  The
search scans balls (intervals) until the requested ratio is met, then
emits a self-contained certificate which the checker recomputes from
scratch.

Run:  python3 demos/03_interval_certificates.py
"""

from fractions import Fraction

from matchcover import BallsStrategy, Coloring, IntegerLattice, check_certificate, folner_search
from matchcover.cover import GroundSet

Z = IntegerLattice(1)
E = [(-1,), (1,)]
THETA = Fraction(9, 10)

# a threshold coloring (negative vs non-negative) is the worst two-coloring
# for intervals: each unit shift costs exactly one matched point
window = Z.ball(14)
ground = GroundSet(window)
coloring = Coloring(ground, tuple(int(x[0] >= 0) for x in window), k=1)

result = folner_search(Z, E, coloring, THETA, strategy=BallsStrategy(12))
print("status:", result.status)
cert = result.certificate
print("F is the interval", [x[0] for x in cert.f_set])
for pair in cert.pairs:
    print(
        f"  mu(F, {Z.elem_str(pair.h)}+F) = {pair.value}"
        f"  (need >= {-(-THETA.numerator * len(cert.f_set) // THETA.denominator)})"
    )

# independent replay: witnesses validated, values recomputed, thresholds retested
print("independent check:", check_certificate(cert).status)

# the same interval fails a stricter ratio: the report says exactly where
strict = folner_search(Z, E, coloring, Fraction(99, 100), strategy=BallsStrategy(12))
print("at 99/100 the search is", strict.status, "with best ratio", strict.best_ratio)
